import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zerotransfer.arithmetic import ID, PARITY, SIGMA, binomial
from zerotransfer.families import compute_P, compute_Q
from zerotransfer.poly import Z, Polynomial
from zerotransfer.rootloc import (
    NonConvergence,
    RootReport,
    complex_roots,
    extremal_zeros,
    kostant_sign_check,
    magnitude_bound_check,
    max_complex_magnitude,
    prefix_bounds,
    ratio_row,
    ratio_table,
    root_points,
    strip_trivial,
)

# n, alpha, beta, alpha ratio, beta ratio as printed (4 decimals)
TABLE_ID = [
    (2, -2.0000, -2.0000, 1.0000, 1.0000),
    (3, -3.0000, -1.0000, 0.7887, 0.6340),
    (4, -3.4142, -0.5858, 0.7575, 0.5325),
    (5, -3.6180, -0.3820, 0.7569, 0.4865),
    (6, -3.7321, -0.2679, 0.7642, 0.4606),
    (7, -3.8019, -0.1981, 0.7736, 0.4440),
    (8, -3.8478, -0.1522, 0.7831, 0.4326),
    (9, -3.8794, -0.1206, 0.7922, 0.4243),
    (10, -3.9021, -0.0979, 0.8007, 0.4179),
    (20, -3.9754, -0.0246, 0.8559, 0.3926),
    (100, -3.9990, -0.0010, 0.9422, 0.3757),
]

# sigma rows at 6 decimals
TABLE_SIGMA = [
    (2, -3.000000, -3.000000, 1.000000, 1.000000),
    (3, -5.236068, -0.763932, 0.763932, 0.654508),
    (5, -7.418833, -0.194397, 0.694579, 0.499140),
    (7, -8.352996, -0.087008, 0.697784, 0.444219),
    (11, -9.087471, -0.031512, 0.728503, 0.410896),
    (13, -9.251318, -0.021917, 0.743585, 0.392685),
    (17, -9.434121, -0.012353, 0.769357, 0.383976),
    (19, -9.488052, -0.009767, 0.780202, 0.381648),
    (23, -9.558851, -0.006544, 0.798626, 0.378863),
    (47, -9.681142, -0.001500, 0.860549, 0.363084),
]

TABLE_PARITY_MAGNITUDES = {
    2: 1.000000000, 3: 1.732050808, 4: 2.475342535, 5: 2.910743051, 6: 3.189361602,
    7: 3.374909553, 8: 3.504161170, 9: 3.597512290, 10: 3.667001052, 20: 3.908878746,
}


def test_strip_trivial():
    assert strip_trivial(Z**2 + 3 * Z) == (Z + 3, True)
    assert strip_trivial(Z + 1) == (Z + 1, False)


def test_id_table_rows():
    rows = ratio_table("id", [r[0] for r in TABLE_ID], Fraction(1, 10**12))
    for row, (n, a, b, ar, br) in zip(rows, TABLE_ID):
        # zeros of U_{n-1}(z/2 + 1) are 2cos(k pi/n) - 2
        assert abs(row.alpha - (2 * math.cos((n - 1) * math.pi / n) - 2)) < 1e-10
        assert abs(row.beta - (2 * math.cos(math.pi / n) - 2)) < 1e-10
        assert abs(row.alpha - a) < 5e-5 and abs(row.beta - b) < 5e-5
        assert abs(row.alpha_ratio - ar) < 1e-4 and abs(row.beta_ratio - br) < 1e-4


def test_sigma_table_rows():
    rows = ratio_table(SIGMA, [r[0] for r in TABLE_SIGMA], Fraction(1, 10**12))
    for row, (n, a, b, ar, br) in zip(rows, TABLE_SIGMA):
        got = (row.alpha, row.beta, row.alpha_ratio, row.beta_ratio)
        assert all(abs(u - v) < 1e-5 for u, v in zip(got, (a, b, ar, br))), (n, got)


def test_sigma_beta_ratio_exceeds_one_at_18():
    row = ratio_row(SIGMA, 18, Fraction(1, 10**12))
    assert abs(row.beta_ratio - 1.878282) < 1e-3


def test_extremal_zeros_report_and_json():
    rep = extremal_zeros(compute_Q(SIGMA, 5), 5, Fraction(1, 10**10), magnitude=True, prefix=True)
    assert isinstance(rep, RootReport)
    assert rep.has_real_nontrivial
    assert abs(float(rep.alpha) + 7.418833) < 1e-6
    data = rep.to_json()
    assert data["family"] == "Q:sigma" and data["n"] == 5
    assert Fraction(data["kappa_prefix"]) >= Fraction(7418832, 10**6)
    assert data["max_complex_magnitude"] == pytest.approx(7.418833, abs=1e-6)


def test_member_without_real_nontrivial_zero():
    # z^2 + 2z + 3 for the parity function
    rep = extremal_zeros(compute_Q(PARITY, 3), 3)
    assert rep.alpha is None and not rep.has_real_nontrivial


def test_prefix_bounds_sigma():
    kappa, mu = prefix_bounds(compute_Q(SIGMA, 2), 2, Fraction(1, 10**8))
    assert 3 <= kappa <= 3 + Fraction(1, 10**8)
    assert mu is not None and mu >= -3


@pytest.mark.parametrize("n,want", sorted(TABLE_PARITY_MAGNITUDES.items()))
def test_parity_magnitudes(n, want):
    q = compute_Q(PARITY, n)[n].shift_down()
    assert abs(max_complex_magnitude(q) - want) < 1e-8


def test_small_magnitude_examples():
    assert max_complex_magnitude(Z**2 + 2 * Z + 3) == pytest.approx(math.sqrt(3), abs=1e-12)
    assert max_complex_magnitude(Z + 1) == 1.0


@settings(max_examples=15)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=12))
def test_complex_roots_match_mpmath(coeffs):
    p = Polynomial(coeffs + [1])
    got = np.sort_complex(np.array(complex_roots(p)))
    with mpmath.workdps(60):
        ref = mpmath.polyroots([mpmath.mpf(int(c)) for c in reversed(p.coeffs)], maxsteps=500, extraprec=400)
    want = np.sort_complex(np.array([complex(r) for r in ref]))
    # pair up by greedy nearest neighbour (sorting can split close pairs)
    for z in want:
        i = int(np.argmin(np.abs(got - z)))
        assert abs(got[i] - z) < 1e-8 * max(1.0, abs(z))
        got = np.delete(got, i)


def test_clustered_family_roots_agree_with_high_precision_reference():
    p = compute_Q(SIGMA, 40)[40].shift_down()
    got = complex_roots(p)
    with mpmath.workdps(300):
        co = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        ref = [complex(r) for r in mpmath.polyroots(co, maxsteps=400, extraprec=1500)]
    for z in ref:
        assert min(abs(z - w) for w in got) < 1e-9 * max(1.0, abs(z))


def test_non_convergence_carries_best_estimate():
    p = compute_Q(SIGMA, 70)[70].shift_down()
    with pytest.raises(NonConvergence) as info:
        complex_roots(p, max_iter=1, dps=20)
    assert len(info.value.best) == p.degree


def test_root_points_flags_real_roots():
    pts = root_points(Polynomial.from_roots([-1, 2]) * (Z**2 + 1))
    assert [(round(re, 9), round(im, 9), real) for re, im, real in pts] == [
        (-1.0, 0.0, True), (0.0, -1.0, False), (0.0, 1.0, False), (2.0, 0.0, True)]


def test_magnitude_bounds():
    assert all(magnitude_bound_check(compute_P(SIGMA, 30), 30, 10.8182).values())
    from zerotransfer.families import compute_family

    fam = compute_family(PARITY, ID, 30)
    assert all(magnitude_bound_check(fam, 30, 5.71).values())


def test_kostant_sign_bound():
    assert all(kostant_sign_check(30).values())


def test_binomial_counterexample():
    g = binomial(Fraction(3, 2))
    q = extremal_zeros(compute_Q(g, 3), 3)
    p = extremal_zeros(compute_P(g, 3), 3, Fraction(1, 10**12))
    assert q.real_roots == ()
    assert len(p.real_roots) == 2
    assert abs(p.real_roots[0].lo + Fraction(7, 2)) <= Fraction(1, 10**10)
    assert abs(p.real_roots[1].lo + Fraction(5, 2)) <= Fraction(1, 10**10)
