import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cohen_moments import MomentQuery, euler_phi, build_sieve, moment_brute, moment_exact, zeta
from cohen_moments.errors import DomainError, ExactOverflowError, ResourceLimitError
from cohen_moments.moments import (
    appendix_decomposition,
    appendix_decomposition_exact,
    error_bound_first,
    error_bound_prop1,
    error_bound_second,
    exact_power_sum,
    in_theorem_range,
    main_term_first,
    main_term_prop1,
    main_term_second,
    make_report,
    mobius_weighted_sum,
    moment_report,
)

from conftest import frac_sawtooth

Z2 = math.pi**2 / 6
Z4 = math.pi**4 / 90


@pytest.fixture(scope="module")
def tables():
    return build_sieve(10**5)


def test_exact_examples(tables):
    assert moment_exact(MomentQuery(1, 1, 2, 5), tables) == 4
    assert moment_exact(MomentQuery(2, 1, 2, 5), tables) == 8
    for k in (1, 2, 5):
        for beta in (1, 3):
            assert moment_exact(MomentQuery(k, beta, 1, 37.9), tables) == 37


def test_brute_examples(tables):
    assert moment_brute(MomentQuery(1, 1, 2, 5)) == 4
    assert moment_brute(MomentQuery(2, 1, 2, 5)) == 8
    assert moment_brute(MomentQuery(1, 2, 3, 10)) == moment_exact(MomentQuery(1, 2, 3, 10), tables)
    assert moment_brute(MomentQuery(3, 2, 1, 12.5)) == 12


def test_oracle_random_sample(tables):
    rng = random.Random(11)
    for _ in range(40):
        q = MomentQuery(rng.choice((1, 2, 3)), rng.choice((1, 2)), rng.randint(1, 40), rng.randint(1, 400))
        assert moment_exact(q, tables) == moment_brute(q)


def test_brute_scale_guard():
    with pytest.raises(ResourceLimitError):
        moment_brute(MomentQuery(1, 1, 2000, 1000))


def test_second_moment_non_negative(tables):
    for x in (3, 17, 90):
        assert moment_exact(MomentQuery(2, 2, x, 999), tables) >= 0


def test_query_validation():
    for args in ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0.5)):
        with pytest.raises(DomainError):
            MomentQuery(*args)


def test_exact_power_sum_overflow_diagnostic():
    vals = np.array([1, 2, 2**43, 5], dtype=np.int64)
    with pytest.raises(ExactOverflowError, match="n = 3"):
        exact_power_sum(vals, 3)
    assert exact_power_sum(np.array([2**40, -(2**40)], dtype=np.int64), 3) == 0
    assert exact_power_sum(np.array([3**20] * 4, dtype=np.int64), 3) == 4 * 3**60


def test_prop1_main_term_examples():
    assert main_term_prop1(MomentQuery(1, 1, 7, 100)) == 100
    assert main_term_prop1(MomentQuery(2, 1, 10, 10**6)) == pytest.approx(10**8 / (2 * Z2), rel=1e-12)
    assert main_term_prop1(MomentQuery(2, 1, 10, 10**6)) == pytest.approx(3.0396355e7, rel=1e-7)
    assert main_term_prop1(MomentQuery(3, 1, 1, 50)) == pytest.approx(15.198, abs=1e-3)


def test_first_main_term_examples():
    assert main_term_first(3, 99, 10**4) == 10**4
    assert main_term_first(1, 10, 10**4) == pytest.approx(10**4 - 100 / (4 * Z2), rel=1e-14)
    assert main_term_first(1, 10, 10**4) == pytest.approx(9984.80, abs=5e-3)
    assert main_term_first(1, 1, 100) == pytest.approx(99.848, abs=1e-3)


def test_second_main_term_examples():
    assert main_term_second(3, 2, 10**6) == pytest.approx(10**6 * 16 / (4 * Z4), rel=1e-12)
    assert main_term_second(3, 2, 10**6) == pytest.approx(3.6958e6, rel=1e-4)
    assert main_term_second(1, 10, 10**5) == pytest.approx(10**7 / (2 * Z2) - 0.5 * 10**4 / (4 * Z2**2), rel=1e-12)
    assert main_term_second(1, 1, 777) == pytest.approx(777 / (2 * Z2) - 1 / (8 * Z2**2), rel=1e-12)


def test_first_bound_examples():
    y = math.e**3
    assert error_bound_first(1, 1, y) == pytest.approx(y ** (1 / 3) * 81 + y ** (-2 / 3) + y ** (-1 / 3), rel=1e-12)
    ly = math.log(1e6)
    assert error_bound_first(2, 10, 1e6) == pytest.approx(1e4 * ly**4 + 10 + 10, rel=1e-12)
    assert error_bound_first(3, 2, 1e6) == pytest.approx(8 * 100 * ly**4, rel=1e-12)
    with pytest.raises(DomainError):
        error_bound_first(1, 2, 2.5)


def test_second_bound_shape():
    x, y = math.e**2, math.e**math.e * 1e6
    lx, ly = 2.0, math.log(y)
    expected = (
        x**2 * y ** (0.5) * ly**5 * math.log(ly) * (lx**4 + math.log(lx) ** 4)
        + y * x**1.5 * (lx**3 + math.log(lx) ** 3)
        + x**6 / y
        + x**3 * (lx + math.log(lx))
    )
    assert error_bound_second(1, x, y) == pytest.approx(expected, rel=1e-12)
    ten = error_bound_second(3, 10, 1e8)
    lx, ly = math.log(10), math.log(1e8)
    two = 1e6 * 1e8 ** (1 / 3 + 1 / 18) * ly**5 * math.log(ly) * (lx**4 + math.log(lx) ** 4)
    two += 1e8 * 10**3.5 * (lx**3 + math.log(lx) ** 3)
    assert ten == pytest.approx(two, rel=1e-12)
    vals = [error_bound_second(b, x, 1e9) for b in (1, 2, 3) for x in (3, 10, 100)]
    for b in range(3):
        assert vals[3 * b] < vals[3 * b + 1] < vals[3 * b + 2]
    with pytest.raises(DomainError):
        error_bound_second(1, 2, 1e6)


def test_prop1_bound():
    assert error_bound_prop1(1, 1, 10, 1e5) == pytest.approx(100 * math.log(10), rel=1e-12)
    # log exponent floor(1/β) vanishes for β >= 2
    assert error_bound_prop1(2, 2, 10, 1e5) == pytest.approx(1e6 * math.log(10) ** 2 + 1e5 * 100, rel=1e-12)
    with pytest.raises(DomainError):
        error_bound_prop1(2, 1, 1, 10)


def test_report_invariants(tables):
    rep = moment_report("thm2", MomentQuery(1, 1, 50, 300000), tables)
    assert rep.error == rep.exact - rep.main_term
    assert rep.normalized_error == abs(rep.error) / rep.bound_shape
    rep = make_report(5, 5.0, 2.0)
    assert rep.error == 0 and rep.normalized_error == 0
    with pytest.raises(DomainError):
        make_report(1, 1, 0)
    with pytest.raises(DomainError):
        moment_report("thm3", MomentQuery(1, 1, 5, 100), tables)


def test_theorem_ranges():
    assert in_theorem_range("thm2", 1, 50, math.ceil(50**1.5 * math.log(50) ** 5))
    assert not in_theorem_range("thm2", 1, 50, 1000)
    assert in_theorem_range("thm3", 1, 20, 20**2.5)
    assert not in_theorem_range("thm3", 1, 20, 300)
    assert in_theorem_range("thm3", 3, 4, 4**4.6)
    assert in_theorem_range("prop1", 1, 5, 2e5, k=3)
    assert not in_theorem_range("prop1", 1, 5, 2e4, k=3)
    with pytest.raises(DomainError):
        in_theorem_range("thm9", 1, 2, 3)


def test_decomposition_trivial_x(tables):
    for y in (10, 10.25, 77.5):
        c1, c2, c3 = appendix_decomposition(2, 1, y, tables)
        assert c1 == y and c2 == -0.5
        assert c3 == -(y - math.floor(y) - 0.5)


def test_decomposition_example(tables):
    c = appendix_decomposition_exact(1, 4, 10, tables)
    assert c == (10, Fraction(-3), Fraction(0))
    assert sum(c) == moment_exact(MomentQuery(1, 1, 4, 10), tables) == 7


def test_decomposition_exact_against_fraction_sawtooth(tables):
    for beta in (1, 2):
        for x in (5, 12, 30):
            y = Fraction(2471, 4)
            mert = tables.mertens
            c3 = -sum(d**beta * int(mert[x // d]) * frac_sawtooth(y / d**beta) for d in range(1, x + 1))
            assert appendix_decomposition_exact(beta, x, y, tables)[2] == c3


def test_decomposition_c1_is_y(tables):
    for x in (1, 9, 64, 100):
        assert appendix_decomposition_exact(3, x, 12345, tables)[0] == 12345


def test_mobius_weighted_sum_asymptotic(tables):
    xs = list(range(1, 2001)) + [int(v) for v in np.geomspace(2000, 10**5, 25)]
    for beta in (1, 2):
        lead = 1 / ((1 + beta) * zeta(1 + beta).real)
        for x in xs:
            gap = mobius_weighted_sum(beta, x, tables) - lead * x ** (1 + beta)
            assert abs(gap) <= 10 * x**beta * (1 + math.log(x))


def test_mobius_weighted_sum_beta_one_is_totient_sum(tables):
    # Σ_{d|q} d μ(q/d) = φ(q)
    for x in (1, 10, 57, 300):
        assert mobius_weighted_sum(1, x, tables) == sum(euler_phi(q) for q in range(1, x + 1))
