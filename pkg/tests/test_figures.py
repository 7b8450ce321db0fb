"""Figure rendering smoke tests: files appear and are real PNGs."""

from coprimality.counting import density_table
from coprimality.figures import (
    density_convergence_figure,
    monte_carlo_figure,
    product_convergence_figure,
)
from coprimality.measure import euler_product, sample_coprime_estimate
from coprimality.sieve import build_mobius_table, build_prime_table

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def assert_png(path):
    with open(path, "rb") as handle:
        head = handle.read(8)
    assert head == PNG_MAGIC


def test_density_convergence_figure(tmp_path):
    reports = density_table([10, 100, 1000], build_mobius_table(1000))
    out = density_convergence_figure(reports, str(tmp_path / "density.png"))
    assert out == str(tmp_path / "density.png")
    assert_png(out)


def test_product_convergence_figure(tmp_path):
    table = build_prime_table(200)
    products = [(k, euler_product(k, table)) for k in range(1, 21)]
    out = product_convergence_figure(products, str(tmp_path / "product.png"))
    assert_png(out)


def test_monte_carlo_figure(tmp_path):
    table = build_prime_table(200)
    exact = euler_product(10, table)
    runs = []
    for size in (100, 1000, 10000):
        est = sample_coprime_estimate(10, size, 42, table)
        runs.append((size, est.estimate, est.standard_error))
    out = monte_carlo_figure(runs, exact, str(tmp_path / "mc.png"))
    assert_png(out)


def test_figure_creates_missing_directory(tmp_path):
    nested = tmp_path / "a" / "b" / "density.png"
    reports = density_table([10, 100], build_mobius_table(100))
    out = density_convergence_figure(reports, str(nested))
    assert nested.exists()
    assert_png(out)
