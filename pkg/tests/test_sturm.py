from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from conftest import polynomials, to_sympy
from zerotransfer.classical import chebyshev_U
from zerotransfer.poly import Z, Polynomial
from zerotransfer.sturm import (
    IsolatingInterval,
    SturmChain,
    compare_roots,
    count_real_roots,
    extremal_root,
    isolate_real_roots,
    root_bound,
    sturm_real_roots,
    to_primitive_ints,
    transform_root,
)

x = sympy.Symbol("x")


def sympy_real_roots(p):
    # distinct real roots, each with multiplicity, ascending
    poly = sympy.Poly(to_sympy(p, x), x)
    roots = sympy.real_roots(poly)
    out = []
    for r in roots:
        if not out or out[-1][0] != r:
            out.append([r, 1])
        else:
            out[-1][1] += 1
    return out


int_roots = st.lists(st.integers(-9, 9), min_size=1, max_size=8)


@given(polynomials(max_degree=8))
def test_count_matches_sympy(p):
    assume(p.degree is not None and p.degree >= 1)
    assert count_real_roots(p) == len(sympy_real_roots(p))


@settings(max_examples=30)
@given(polynomials(max_degree=10))
def test_intervals_isolate_the_sympy_roots(p):
    assume(p.degree is not None and p.degree >= 1)
    ivs = isolate_real_roots(p, Fraction(1, 10**6))
    want = sympy_real_roots(p)
    assert len(ivs) == len(want)
    for iv, (r, mult) in zip(ivs, want):
        assert iv.multiplicity == mult
        assert iv.width <= Fraction(1, 10**6)
        if iv.exact:
            assert sympy.Rational(iv.lo.numerator, iv.lo.denominator) == r
        else:
            assert iv.lo < r <= iv.hi
            assert sympy.Rational(iv.lo.numerator, iv.lo.denominator) < r


@given(int_roots, st.integers(1, 3))
def test_multiplicities_of_products_of_linear_factors(roots, power):
    p = Polynomial.from_roots(roots) ** power
    ivs = isolate_real_roots(p)
    assert len(ivs) == len(set(roots))
    for r in set(roots):
        (iv,) = [iv for iv in ivs if iv.contains(r)]
        assert iv.multiplicity == roots.count(r) * power


@settings(max_examples=30)
@given(polynomials(max_degree=12))
def test_count_agrees_with_a_sign_change_grid(p):
    # independent oracle for simple roots: sign changes on a fine grid can
    # only under-count, and must be found by the Sturm count
    assume(p.degree is not None and p.degree >= 1)
    chain = SturmChain(p)
    grid = [Fraction(k, 16) for k in range(-16 * 16, 16 * 16 + 1)]
    changes = sum(1 for a, b in zip(grid, grid[1:]) if p(a) * p(b) < 0)
    assert chain.count(grid[0], grid[-1]) >= changes


def test_half_open_counting_convention():
    chain = SturmChain(Polynomial.from_roots([0, 1]))
    assert chain.count(0, 1) == 1
    assert chain.count(-1, 0) == 1
    assert chain.count(Fraction(-1, 2), Fraction(1, 2)) == 1


def test_root_bound_is_a_power_of_two_above_all_roots():
    ints = to_primitive_ints(Polynomial.from_roots([-37, 5, 12]))
    b = root_bound(ints)
    assert b >= 37 and (b.numerator & (b.numerator - 1)) == 0 and b.denominator == 1


def test_extremal_roots():
    p = Polynomial.from_roots([Fraction(-7, 3), 0, 2, 5])
    assert extremal_root(p, "min").contains(Fraction(-7, 3))
    assert extremal_root(p, "max").contains(5)
    assert extremal_root(p, "max", hi=Fraction(-1, 2)).contains(Fraction(-7, 3))
    assert extremal_root(Z**2 + 1, "min") is None


def test_rational_root_hit_by_bisection_is_exact():
    iv = sturm_real_roots(Polynomial.from_roots([Fraction(1, 2), 3]), Fraction(1, 10**9))[0]
    assert iv.exact and iv.lo == Fraction(1, 2)


def test_sqrt2_isolation_and_refinement():
    iv = isolate_real_roots(Z**2 - 2)[1]
    fine = iv.refine(Fraction(1, 10**30))
    assert fine.lo**2 < 2 <= fine.hi**2
    assert abs(float(fine) - 2**0.5) < 1e-15


def test_compare_roots():
    sqrt2 = isolate_real_roots(Z**2 - 2)[1]
    inv = isolate_real_roots(2 * Z**2 - 1)[1]
    assert compare_roots(sqrt2, transform_root(inv, 2)) == 0
    assert compare_roots(sqrt2, inv) == 1
    assert compare_roots(inv, sqrt2) == -1
    cube = isolate_real_roots(Z**3 - 2)[0]
    assert compare_roots(cube, sqrt2) == -1
    exact = IsolatingInterval(Fraction(7, 5), Fraction(7, 5), 1, SturmChain(Z - Fraction(7, 5)))
    assert compare_roots(exact, sqrt2) == -1


@given(st.integers(-20, 20), st.integers(1, 9), st.integers(-20, 20), st.integers(1, 9))
def test_compare_against_numeric_square_roots(a, b, c, d):
    # sqrt(a^2 + 1)/b versus sqrt(c^2 + 2)/d, distinct algebraic numbers
    r1 = isolate_real_roots(b * b * Z**2 - (a * a + 1))[1]
    r2 = isolate_real_roots(d * d * Z**2 - (c * c + 2))[1]
    v1 = sympy.sqrt(a * a + 1) / b
    v2 = sympy.sqrt(c * c + 2) / d
    want = int(bool(v1 > v2)) - int(bool(v1 < v2))
    assert compare_roots(r1, r2) == want


@pytest.mark.parametrize("m", range(2, 12))
def test_negative_scale_keeps_the_root_isolated(m):
    # zeros 2cos(k pi/(m+1)) - 2 of U_m(z/2 + 1); -1 times the largest one is
    # 2 - 2cos(pi/(m+1)), also when another zero sits at the interval's end
    q = chebyshev_U(m).compose(Polynomial((1, Fraction(1, 2))))
    beta = extremal_root(q, "max", None)
    flipped = transform_root(beta, -1).refine(Fraction(1, 10**12))
    want = 2 - 2 * sympy.cos(sympy.pi / (m + 1))
    assert abs(float(flipped) - float(want)) < 1e-11


@given(int_roots, st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
       st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_transform_root_maps_each_root(roots, scale, shift):
    p = Polynomial.from_roots(roots)
    ivs = isolate_real_roots(p)
    for r in set(roots):
        (iv,) = [iv for iv in ivs if iv.contains(r)]
        t = transform_root(iv, scale, shift)
        assert t.contains(scale * r + shift)
        assert t.exact or t.chain.count(t.lo, t.hi) == 1


def test_to_json_format():
    iv = isolate_real_roots(Z**2 - 2)[1]
    data = iv.to_json()
    assert set(data) >= {"lo", "hi", "exact", "multiplicity", "approx"}
    assert Fraction(data["lo"]) == iv.lo


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1, max_size=7,
                unique=True),
       st.fractions(min_value=-5, max_value=5, max_denominator=3),
       st.fractions(min_value=-5, max_value=5, max_denominator=3))
def test_half_open_counts_with_roots_on_the_ends(roots, a, b):
    # endpoints drawn from the same lattice as the roots often hit them
    lo, hi = min(a, b), max(a, b)
    chain = SturmChain(Polynomial.from_roots(roots) * (Z**2 + 1))
    assert chain.count(lo, hi) == sum(1 for r in roots if lo < r <= hi)


@settings(max_examples=30)
@given(polynomials(max_degree=9), st.fractions(min_value=-4, max_value=4, max_denominator=5),
       st.fractions(min_value=0, max_value=4, max_denominator=5))
def test_descartes_counts_agree_with_sturm_variations(p, lo, w):
    assume(p.degree is not None and p.degree >= 1)
    chain = SturmChain(p)
    hi = lo + w
    assert chain.count(lo, hi) == chain.variations(lo) - chain.variations(hi)


def test_extremal_root_when_the_upper_end_is_a_root():
    p = Polynomial.from_roots([Fraction(-1, 3), Fraction(1, 2), 1])
    iv = extremal_root(p, "min", None, lo=Fraction(-1, 2), hi=1)
    assert iv.contains(Fraction(-1, 3)) and not iv.contains(Fraction(1, 2))
    top = extremal_root(p, "max", None, lo=0, hi=1)
    assert top.exact and top.lo == 1
    below = extremal_root(p, "max", None, lo=0, hi=Fraction(99, 100))
    assert below.contains(Fraction(1, 2)) and below.chain.count(below.lo, below.hi) == 1


def test_descending_isolation_order():
    p = Polynomial.from_roots([-3, -1, 2, 5]) * (Z**2 - 2)
    chain = SturmChain(p)
    up = list(chain.roots_between(Fraction(-8), Fraction(8)))
    down = list(chain.roots_between(Fraction(-8), Fraction(8), descending=True))
    assert up == down[::-1] and len(up) == 6
    assert all(lo <= hi for lo, hi in up)
    assert all(a[1] <= b[0] for a, b in zip(up, up[1:]))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6, unique=True), st.integers(1, 4))
def test_isolating_intervals_never_end_on_another_root(ints, den):
    # dyadic-friendly roots land on bisection midpoints and interval ends
    roots = [Fraction(k, den) for k in ints]
    chain = SturmChain(Polynomial.from_roots(roots))
    got = isolate_real_roots(chain.source)
    assert len(got) == len(roots)
    for iv in got:
        assert iv.exact or chain.sign(iv.hi) != 0
        assert sum(1 for r in roots if iv.contains(r)) == 1
