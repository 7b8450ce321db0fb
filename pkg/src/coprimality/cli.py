"""Command line interface: every library operation as a subcommand.

Output contract: exit 0 with the full report on stdout; exit 2 on usage
errors with a diagnostic on stderr; exit 1 on computation errors (cap
exceeded, table too small, unsolvable system) with a structured JSON error
object on stderr and nothing on stdout.  Identical argv and seed produce
identical stdout bytes: reports embed the fully resolved configuration and
never embed wall-clock readings.

Global flags (--format, --mobius-limit, --prime-limit, --brute-cap, --seed)
are accepted both before and after the subcommand name.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import acceptance
from .counting import (
    COPRIME_DENSITY_DECIMAL,
    DEFAULT_BRUTE_CAP,
    DensityReport,
    count_coprime_brute,
    count_coprime_mobius,
    density,
    density_table,
)
from .crt import CongruenceSystem, crt_solve, shift_witness, verify_shift_witness
from .errors import TableTooSmallError
from .measure import (
    SAMPLER_DRAW_ORDER,
    SAMPLER_RNG,
    CylinderSet,
    SetExpression,
    euler_product,
    measure,
    normalize,
    sample_coprime_estimate,
)
from .render import frac_decimal, frac_pair
from .residue import (
    ResidueRect,
    construct_coprime_in_rect,
    r_count,
    rect_coprime_search,
    rect_nonempty_criterion,
    residue_upper_bound,
)
from .sieve import (
    build_mobius_table,
    build_prime_table,
    gcd,
    prime_limit_for_count,
)

MOBIUS_LIMIT_CAP = 10**7

# Prime table limit used when a subcommand needs factorizations of values it
# cannot bound tightly in advance (rectangle witness construction).
FACTORING_TABLE_LIMIT = 10**6


class UsageError(Exception):
    """Bad arguments that argparse alone cannot catch; exits 2."""


@dataclass
class Output:
    result: dict
    csv: tuple[list[str], list[list[str]]] | None = None
    plain: list[str] | None = None
    figures: list[str] = field(default_factory=list)


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    if suppress:
        defaults = {
            "format": argparse.SUPPRESS,
            "mobius_limit": argparse.SUPPRESS,
            "prime_limit": argparse.SUPPRESS,
            "brute_cap": argparse.SUPPRESS,
            "seed": argparse.SUPPRESS,
        }
    else:
        defaults = {
            "format": "json",
            "mobius_limit": None,
            "prime_limit": None,
            "brute_cap": DEFAULT_BRUTE_CAP,
            "seed": acceptance.DEFAULT_SEED,
        }
    parser.add_argument("--format", choices=("json", "csv", "plain"),
                        default=defaults["format"],
                        help="output format (default json)")
    parser.add_argument("--mobius-limit", type=int, dest="mobius_limit",
                        default=defaults["mobius_limit"],
                        help="override the mobius table size")
    parser.add_argument("--prime-limit", type=int, dest="prime_limit",
                        default=defaults["prime_limit"],
                        help="override the prime table size")
    parser.add_argument("--brute-cap", type=int, dest="brute_cap",
                        default=defaults["brute_cap"],
                        help="pair-evaluation cap for brute counting")
    parser.add_argument("--seed", type=int, default=defaults["seed"],
                        help="seed for every randomized operation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coprimality",
        description=(
            "Coprime-pair densities with certified error bounds, residue "
            "rectangles, shift-invariance witnesses, and cylinder measures."
        ),
    )
    _add_global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_global_options(p, suppress=True)
        return p

    p = command("mobius", "mobius function values")
    p.add_argument("--limit", type=int, help="emit values for 1..limit")
    p.add_argument("--value", type=int, help="emit a single value")

    p = command("primes", "primes up to a limit")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--count-only", action="store_true", dest="count_only")

    p = command("count", "count coprime pairs in a rectangle")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--method", choices=("mobius", "brute", "both"),
                   default="mobius")

    p = command("density", "exact density report with certified error bound")
    p.add_argument("--n", type=int, help="square rectangle side")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)

    p = command("density-table", "density reports for several square sides")
    p.add_argument("--n", type=int, action="append", required=True,
                   help="side length (repeatable)")
    p.add_argument("--figures", metavar="DIR",
                   help="also render convergence figures into DIR")

    p = command("rect", "residue rectangle: criterion, search, witness")
    p.add_argument("--j1", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--j2", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--search-cap", type=int, dest="search_cap", default=8)
    p.add_argument("--construct", action="store_true",
                   help="also build a witness constructively")

    p = command("r-count", "count residue rectangles meeting the coprime set")
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--t2", type=int, required=True)

    p = command("residue-bound", "primorial upper bound on the density")
    p.add_argument("--primes", type=int, required=True, dest="prime_count")

    p = command("crt", "solve simultaneous congruences")
    p.add_argument("--congruence", action="append", required=True,
                   metavar="R:M", help="residue:modulus (repeatable)")

    p = command("shift-witness", "defeat a finite shift set by CRT")
    p.add_argument("--pair", action="append", required=True, metavar="A,B",
                   help="shift pair a,b (repeatable)")

    p = command("measure", "measure of a union of divisibility cylinders")
    p.add_argument("--expr", required=True,
                   help="expression like A{2|;3∤} U A{5|}")

    p = command("euler-product", "truncated product over (1 - p^-2)")
    p.add_argument("--primes", type=int, required=True, dest="prime_count")

    p = command("sample", "Monte Carlo estimate of the product model")
    p.add_argument("--primes", type=int, required=True, dest="prime_count")
    p.add_argument("--samples", type=int, required=True)

    p = command("reproduce", "run the acceptance suite and print the table")
    p.add_argument("--quick", action="store_true",
                   help="smaller randomized suites (smoke run)")
    p.add_argument("--figures", metavar="DIR",
                   help="also render the summary figures into DIR")

    return parser


def _base_config(ns: argparse.Namespace) -> dict:
    return {
        "subcommand": ns.subcommand,
        "format": ns.format,
        "seed": ns.seed,
        "brute_cap": ns.brute_cap,
        "mobius_limit": ns.mobius_limit,
        "prime_limit": ns.prime_limit,
    }


def _mobius_table(ns: argparse.Namespace, needed: int):
    limit = ns.mobius_limit if ns.mobius_limit is not None else needed
    return build_mobius_table(limit)


def _prime_table(ns: argparse.Namespace, needed_limit: int):
    limit = ns.prime_limit if ns.prime_limit is not None else needed_limit
    return build_prime_table(max(limit, 2))


def _fraction_fields(prefix: str, value: Fraction) -> dict:
    num, den = frac_pair(value)
    return {
        f"{prefix}_num": num,
        f"{prefix}_den": den,
        f"{prefix}_decimal": frac_decimal(value),
    }


def _handle_mobius(ns) -> Output:
    if ns.limit is None and ns.value is None:
        raise UsageError("mobius requires --limit and/or --value")
    limit = ns.limit if ns.limit is not None else ns.value
    if limit is not None and limit > MOBIUS_LIMIT_CAP:
        raise UsageError(f"--limit above the supported cap {MOBIUS_LIMIT_CAP}")
    table = _mobius_table(ns, limit)
    if ns.value is not None:
        value = table[ns.value]
        return Output(
            result={"k": ns.value, "mobius": value},
            csv=(["k", "mobius"], [[str(ns.value), str(value)]]),
            plain=[f"mobius({ns.value}) = {value}"],
        )
    rows = [[str(k), str(table.values[k])] for k in range(1, ns.limit + 1)]
    return Output(
        result={"limit": ns.limit,
                "values": [[k, table.values[k]] for k in range(1, ns.limit + 1)]},
        csv=(["k", "mobius"], rows),
        plain=[f"mobius({k}) = {v}" for k, v in
               ((k, table.values[k]) for k in range(1, ns.limit + 1))],
    )


def _handle_primes(ns) -> Output:
    table = _prime_table(ns, ns.limit)
    if table.limit < ns.limit:
        raise TableTooSmallError(
            f"--prime-limit {table.limit} below the requested limit {ns.limit}"
        )
    primes = [p for p in table.primes if p <= ns.limit]
    result = {"limit": ns.limit, "count": len(primes)}
    if not ns.count_only:
        result["primes"] = primes
        rows = [[str(i), str(p)] for i, p in enumerate(primes, 1)]
        return Output(result=result, csv=(["rank", "prime"], rows),
                      plain=[f"{len(primes)} primes up to {ns.limit}"]
                      + [f"p_{i} = {p}" for i, p in enumerate(primes, 1)])
    return Output(result=result, csv=(["limit", "count"],
                                      [[str(ns.limit), str(len(primes))]]),
                  plain=[f"{len(primes)} primes up to {ns.limit}"])


def _handle_count(ns) -> Output:
    result = {"n1": ns.n1, "n2": ns.n2, "method": ns.method}
    if ns.method in ("mobius", "both"):
        table = _mobius_table(ns, min(ns.n1, ns.n2))
        result["count"] = str(count_coprime_mobius(ns.n1, ns.n2, table))
    if ns.method in ("brute", "both"):
        brute = count_coprime_brute(ns.n1, ns.n2, cap=ns.brute_cap)
        key = "brute_count" if ns.method == "both" else "count"
        result[key] = str(brute)
    if ns.method == "both":
        result["agree"] = result["count"] == result["brute_count"]
    header = sorted(result)
    return Output(
        result=result,
        csv=(header, [[str(result[k]) for k in header]]),
        plain=[f"{k} = {result[k]}" for k in header],
    )


def _density_sides(ns) -> tuple[int, int]:
    if ns.n is not None:
        if ns.n1 is not None or ns.n2 is not None:
            raise UsageError("give either --n or --n1/--n2, not both")
        return ns.n, ns.n
    if ns.n1 is None or ns.n2 is None:
        raise UsageError("density needs --n or both --n1 and --n2")
    return ns.n1, ns.n2


def _density_output(reports: list[DensityReport], figures: list[str]) -> Output:
    header = DensityReport.CSV_HEADER.split(",")
    return Output(
        result={"rows": [r.to_json_dict() for r in reports]}
        if len(reports) != 1 else reports[0].to_json_dict(),
        csv=(header, [r.csv_row().split(",") for r in reports]),
        plain=[
            f"n1={r.n1} n2={r.n2} count={r.to_json_dict()['count']} "
            f"ratio={frac_decimal(r.ratio)} "
            f"partial_sum={frac_decimal(r.partial_sum)} "
            f"error_bound={frac_decimal(r.error_bound)}"
            for r in reports
        ],
        figures=figures,
    )


def _handle_density(ns) -> Output:
    n1, n2 = _density_sides(ns)
    table = _mobius_table(ns, min(n1, n2))
    return _density_output([density(n1, n2, table)], [])


def _handle_density_table(ns) -> Output:
    sides = ns.n
    table = _mobius_table(ns, max(sides))
    reports = density_table(sides, table)
    figures = []
    if ns.figures:
        from .figures import density_convergence_figure

        figures.append(density_convergence_figure(
            reports, os.path.join(ns.figures, "density_convergence.png")
        ))
    return _density_output(reports, figures)


def _handle_rect(ns) -> Output:
    rect = ResidueRect(j1=ns.j1, k1=ns.k1, j2=ns.j2, k2=ns.k2)
    nonempty = rect_nonempty_criterion(rect)
    found = rect_coprime_search(rect, cap=ns.search_cap)
    result = {
        "rect": {"j1": rect.j1, "k1": rect.k1, "j2": rect.j2, "k2": rect.k2},
        "nonempty": nonempty,
        "search": None if found is None else {"x": found[0], "y": found[1]},
        "search_cap": ns.search_cap,
    }
    plain = [
        f"rectangle ({rect.j1} mod {rect.k1}) x ({rect.j2} mod {rect.k2})",
        f"nonempty criterion: {str(nonempty).lower()}",
        "search: " + ("none" if found is None else f"({found[0]}, {found[1]})"),
    ]
    if ns.construct:
        witness = construct_coprime_in_rect(
            rect, _prime_table(ns, FACTORING_TABLE_LIMIT)
        )
        result["witness"] = {"x": witness.x, "y": witness.y, "via": witness.via}
        plain.append(f"witness: ({witness.x}, {witness.y}) via {witness.via}")
    header = ["j1", "k1", "j2", "k2", "nonempty", "search_x", "search_y"]
    row = [str(rect.j1), str(rect.k1), str(rect.j2), str(rect.k2),
           str(nonempty).lower(),
           "" if found is None else str(found[0]),
           "" if found is None else str(found[1])]
    if ns.construct:
        header += ["witness_x", "witness_y", "via"]
        row += [str(result["witness"]["x"]), str(result["witness"]["y"]),
                result["witness"]["via"]]
    return Output(result=result, csv=(header, [row]), plain=plain)


def _handle_r_count(ns) -> Output:
    table = _prime_table(ns, max(gcd(ns.t1, ns.t2), 2))
    report = r_count(ns.t1, ns.t2, table)
    result = {
        "t1": report.t1,
        "t2": report.t2,
        "nonempty": report.nonempty,
        "common_primes": list(report.common_primes),
        **_fraction_fields("ratio", report.ratio),
    }
    header = ["t1", "t2", "nonempty", "ratio_num", "ratio_den"]
    row = [str(report.t1), str(report.t2), str(report.nonempty),
           *frac_pair(report.ratio)]
    return Output(
        result=result,
        csv=(header, [row]),
        plain=[
            f"moduli ({report.t1}, {report.t2}): {report.nonempty} rectangles "
            f"meet the coprime set",
            f"ratio = {frac_decimal(report.ratio)} "
            f"({report.ratio.numerator}/{report.ratio.denominator})",
            "common primes: "
            + (",".join(map(str, report.common_primes)) or "none"),
        ],
    )


def _handle_residue_bound(ns) -> Output:
    table = _prime_table(ns, prime_limit_for_count(ns.prime_count))
    value = residue_upper_bound(ns.prime_count, table)
    result = {
        "prime_count": ns.prime_count,
        "reference": COPRIME_DENSITY_DECIMAL,
        **_fraction_fields("value", value),
    }
    return Output(
        result=result,
        csv=(["prime_count", "value_num", "value_den"],
             [[str(ns.prime_count), *frac_pair(value)]]),
        plain=[f"residue upper bound over {ns.prime_count} primes = "
               f"{frac_decimal(value)} "
               f"({value.numerator}/{value.denominator})"],
    )


def _parse_congruence(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"bad congruence {text!r}, expected R:M")
    return int(m.group(1)), int(m.group(2))


def _handle_crt(ns) -> Output:
    congruences = [_parse_congruence(c) for c in ns.congruence]
    system = CongruenceSystem(congruences)
    solution = crt_solve(system)
    modulus = 1
    for _, m in system.constraints:
        modulus *= m
    result = {
        "congruences": [[r, m] for r, m in system.constraints],
        "solution": solution,
        "modulus": modulus,
    }
    return Output(
        result=result,
        csv=(["solution", "modulus"], [[str(solution), str(modulus)]]),
        plain=[f"x = {solution} (mod {modulus})"],
    )


def _parse_pair(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"bad pair {text!r}, expected A,B")
    return int(m.group(1)), int(m.group(2))


def _handle_shift_witness(ns) -> Output:
    shifts = [_parse_pair(p) for p in ns.pair]
    table = _prime_table(ns, prime_limit_for_count(max(len(shifts), 1)))
    report = shift_witness(shifts, table)
    verified = verify_shift_witness(report)
    result = {
        "shift_set": [[a, b] for a, b in report.shift_set],
        "assigned_primes": list(report.assigned_primes),
        "witness": [report.witness[0], report.witness[1]],
        "certificates": list(report.certificates),
        "verified": verified,
    }
    header = ["shift_a", "shift_b", "prime", "certificate"]
    rows = [
        [str(a), str(b), str(p), str(d)]
        for (a, b), p, d in zip(report.shift_set, report.assigned_primes,
                                report.certificates)
    ]
    plain = [
        f"witness = ({report.witness[0]}, {report.witness[1]})",
        f"verified: {str(verified).lower()}",
    ] + [
        f"shift ({a},{b}): prime {p} divides both coordinates after the shift"
        for (a, b), p in zip(report.shift_set, report.assigned_primes)
    ]
    return Output(result=result, csv=(header, rows), plain=plain)


_TERM_RE = re.compile(r"A\{([^{}]*)\}")


def _parse_cylinder_term(body: str, table) -> CylinderSet:
    left, _, right = body.partition(";")
    left = left.strip()
    right = right.strip()
    divisible: list[int] = []
    not_divisible: list[int] = []
    if left:
        if not left.endswith("|"):
            raise UsageError(
                f"divisible list {left!r} must end with '|'"
            )
        divisible = [int(x) for x in left[:-1].replace(" ", "").split(",") if x]
    if right:
        if not right.endswith("∤"):
            raise UsageError(
                f"non-divisible list {right!r} must end with '∤'"
            )
        not_divisible = [
            int(x) for x in right[:-1].replace(" ", "").split(",") if x
        ]
    try:
        return CylinderSet(
            frozenset(table.rank_of(p) for p in divisible),
            frozenset(table.rank_of(p) for p in not_divisible),
        )
    except TableTooSmallError:
        raise
    except ValueError as err:
        raise UsageError(str(err)) from err


def parse_cylinder_expression(text: str, table) -> SetExpression:
    """Grammar: terms joined by U; each term A{d1,d2,...|; e1,e2,...F} with F
    the unicode "does not divide" sign, both lists optional."""
    src = text.strip()
    if not src:
        raise UsageError("empty expression")
    terms = []
    for chunk in re.split(r"\s+U\s+", src):
        chunk = chunk.strip()
        m = _TERM_RE.fullmatch(chunk)
        if not m:
            raise UsageError(
                f"bad term {chunk!r}, expected A{{d1,d2,...|; e1,e2,...∤}}"
            )
        terms.append(_parse_cylinder_term(m.group(1), table))
    return SetExpression(tuple(terms))


def _handle_measure(ns) -> Output:
    probe = [int(x) for x in re.findall(r"\d+", ns.expr)]
    table = _prime_table(ns, max(probe, default=2))
    expr = parse_cylinder_expression(ns.expr, table)
    normal = normalize(expr)
    value = measure(normal, table)
    terms_json = [
        {
            "divisible": sorted(table.nth(i) for i in t.divisible),
            "not_divisible": sorted(table.nth(i) for i in t.not_divisible),
        }
        for t in expr.terms
    ]
    result = {
        "expression": ns.expr,
        "terms": terms_json,
        "normal_cells": len(normal.terms),
        **_fraction_fields("measure", value),
    }
    return Output(
        result=result,
        csv=(["expression", "normal_cells", "measure_num", "measure_den"],
             [[ns.expr, str(len(normal.terms)), *frac_pair(value)]]),
        plain=[
            f"expression: {ns.expr}",
            f"normalized cells: {len(normal.terms)}",
            f"measure = {frac_decimal(value)} "
            f"({value.numerator}/{value.denominator})",
        ],
    )


def _handle_euler_product(ns) -> Output:
    table = _prime_table(ns, prime_limit_for_count(ns.prime_count))
    value = euler_product(ns.prime_count, table)
    result = {
        "prime_count": ns.prime_count,
        "reference": COPRIME_DENSITY_DECIMAL,
        **_fraction_fields("value", value),
    }
    return Output(
        result=result,
        csv=(["prime_count", "value_num", "value_den"],
             [[str(ns.prime_count), *frac_pair(value)]]),
        plain=[f"product over the first {ns.prime_count} primes = "
               f"{frac_decimal(value)} "
               f"({value.numerator}/{value.denominator})"],
    )


def _handle_sample(ns) -> Output:
    table = _prime_table(ns, prime_limit_for_count(ns.prime_count))
    estimate = sample_coprime_estimate(
        ns.prime_count, ns.samples, ns.seed, table
    )
    exact = euler_product(ns.prime_count, table)
    gap = abs(estimate.estimate - float(exact))
    result = {
        "prime_count": ns.prime_count,
        "samples": ns.samples,
        "seed": ns.seed,
        "estimate": repr(estimate.estimate),
        "standard_error": repr(estimate.standard_error),
        "within_4_se": gap <= 4.0 * estimate.standard_error,
        "rng": SAMPLER_RNG,
        "draw_order": SAMPLER_DRAW_ORDER,
        **_fraction_fields("exact", exact),
    }
    return Output(
        result=result,
        csv=(["prime_count", "samples", "seed", "estimate", "standard_error"],
             [[str(ns.prime_count), str(ns.samples), str(ns.seed),
               repr(estimate.estimate), repr(estimate.standard_error)]]),
        plain=[
            f"estimate = {estimate.estimate!r} "
            f"(standard error {estimate.standard_error!r})",
            f"exact product = {frac_decimal(exact)}",
            f"within 4 standard errors: "
            f"{str(result['within_4_se']).lower()}",
        ],
    )


def _reproduce_figures(env, directory: str) -> list[str]:
    from .figures import (
        density_convergence_figure,
        monte_carlo_figure,
        product_convergence_figure,
    )

    written = []
    reports = density_table([10, 100, 1000, 10**4, 10**5], env.mobius)
    written.append(density_convergence_figure(
        reports, os.path.join(directory, "density_convergence.png")
    ))
    products = [(k, euler_product(k, env.primes)) for k in range(1, 101)]
    written.append(product_convergence_figure(
        products, os.path.join(directory, "product_convergence.png")
    ))
    exact = products[24][1]
    runs = []
    for size in (10**3, 10**4, 10**5, 10**6):
        est = sample_coprime_estimate(25, size, env.seed, env.primes)
        runs.append((size, est.estimate, est.standard_error))
    written.append(monte_carlo_figure(
        runs, exact, os.path.join(directory, "monte_carlo.png")
    ))
    return written


def _handle_reproduce(ns) -> Output:
    env = acceptance.build_env(seed=ns.seed, quick=ns.quick)
    results = acceptance.run_all(env=env)
    figures = _reproduce_figures(env, ns.figures) if ns.figures else []
    all_passed = all(r.passed for r in results)
    result = {
        "quick": ns.quick,
        "all_passed": all_passed,
        "criteria": [
            {
                "number": r.number,
                "name": r.name,
                "passed": r.passed,
                "checks": [
                    {
                        "label": c.label,
                        "expected": c.expected,
                        "observed": c.observed,
                        "ok": c.ok,
                    }
                    for c in r.checks
                ],
            }
            for r in results
        ],
    }
    header = ["criterion", "name", "check", "expected", "observed", "ok"]
    rows = [
        [str(r.number), r.name, c.label, c.expected, c.observed,
         str(c.ok).lower()]
        for r in results
        for c in r.checks
    ]
    plain = []
    for r in results:
        plain.append(
            f"criterion {r.number} {r.name}: {'PASS' if r.passed else 'FAIL'}"
        )
        for c in r.checks:
            mark = "ok" if c.ok else "FAIL"
            plain.append(
                f"  [{mark}] {c.label}: {c.observed} (expected {c.expected})"
            )
    plain.append("all criteria passed" if all_passed
                 else "some criteria failed")
    return Output(result=result, csv=(header, rows), plain=plain,
                  figures=figures)


_HANDLERS = {
    "mobius": _handle_mobius,
    "primes": _handle_primes,
    "count": _handle_count,
    "density": _handle_density,
    "density-table": _handle_density_table,
    "rect": _handle_rect,
    "r-count": _handle_r_count,
    "residue-bound": _handle_residue_bound,
    "crt": _handle_crt,
    "shift-witness": _handle_shift_witness,
    "measure": _handle_measure,
    "euler-product": _handle_euler_product,
    "sample": _handle_sample,
    "reproduce": _handle_reproduce,
}


def _csv_escape(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _render(output: Output, config: dict) -> str:
    if config["format"] == "json":
        doc = {"config": config, "result": output.result}
        if output.figures:
            doc["figures"] = output.figures
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config["format"] == "csv":
        lines = [
            f"# {key}={config[key]}" for key in sorted(config)
        ]
        lines += [f"# figure {path}" for path in output.figures]
        if output.csv is None:
            lines.append("key,value")
            for key in sorted(output.result):
                lines.append(
                    f"{_csv_escape(key)},"
                    f"{_csv_escape(json.dumps(output.result[key], sort_keys=True))}"
                )
        else:
            header, rows = output.csv
            lines.append(",".join(header))
            lines += [",".join(_csv_escape(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    lines = [f"{key} = {config[key]}" for key in sorted(config)]
    lines.append("")
    if output.plain is None:
        lines += [f"{k} = {output.result[k]}" for k in sorted(output.result)]
    else:
        lines += output.plain
    lines += [f"figure written: {path}" for path in output.figures]
    return "\n".join(lines) + "\n"


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    config = _base_config(ns)
    try:
        output = _HANDLERS[ns.subcommand](ns)
    except UsageError as err:
        print(f"coprimality {ns.subcommand}: {err}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as err:
        doc = {"error": {"type": type(err).__name__, "message": str(err)}}
        print(json.dumps(doc, indent=2, sort_keys=True), file=sys.stderr)
        return 1
    text = _render(output, config)
    if ns.subcommand == "reproduce" and not output.result["all_passed"]:
        sys.stdout.write(text)
        print(json.dumps(
            {"error": {"type": "AcceptanceFailure",
                       "message": "one or more criteria failed"}},
            indent=2, sort_keys=True), file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
