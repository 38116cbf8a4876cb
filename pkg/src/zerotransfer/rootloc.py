"""Zero data for the polynomial families.

Real zeros are certified through :mod:`zerotransfer.sturm`; complex zeros are
located numerically (Aberth iteration, companion-matrix fallback, Newton
polish in extended precision) and are flagged as floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .arithmetic import ID, SIGMA, ArithmeticFunction
from .families import PolyFamily, compute_P, compute_Q
from .poly import Polynomial, as_fraction
from .sturm import (
    DEFAULT_WIDTH,
    IsolatingInterval,
    SturmChain,
    extremal_root,
    isolate_real_roots,
    squarefree_mod_prime,
)

RESIDUAL_TOL = 1e-12
MAX_ITER = 200
PRECISION_RETRIES = 3
# the double-precision stage only supplies starting points; it is cheap, and
# getting closer here saves many extended-precision sweeps
SEED_ITER = 500


def strip_trivial(p: Polynomial):
    """Divide out the trivial zero at the origin.

    Returns ``(p / z, True)`` when ``p(0) == 0`` and ``(p, False)`` otherwise;
    constants pass through unchanged.
    """
    if p.degree is not None and p.degree >= 1 and p[0] == 0:
        return p.shift_down(), True
    return p, False


def stripped(p: Polynomial) -> Polynomial:
    return strip_trivial(p)[0]


# -- real zeros -------------------------------------------------------------


@dataclass(frozen=True)
class RootReport:
    family: str
    n: int
    stripped: Polynomial
    real_roots: tuple
    alpha: Optional[IsolatingInterval]
    beta: Optional[IsolatingInterval]
    max_complex_magnitude: Optional[float] = None
    kappa_prefix: Optional[Fraction] = None
    mu_prefix: Optional[Fraction] = None

    @property
    def has_real_nontrivial(self) -> bool:
        return self.alpha is not None

    def to_json(self) -> dict:
        ivs = lambda iv: None if iv is None else iv.to_json()
        frac = lambda x: None if x is None else f"{x.numerator}/{x.denominator}"
        return {
            "family": self.family,
            "n": self.n,
            "stripped": self.stripped.to_strings(),
            "real_roots": [iv.to_json() for iv in self.real_roots],
            "alpha": ivs(self.alpha),
            "beta": ivs(self.beta),
            "has_real_nontrivial": self.has_real_nontrivial,
            "max_complex_magnitude": self.max_complex_magnitude,
            "kappa_prefix": frac(self.kappa_prefix),
            "mu_prefix": frac(self.mu_prefix),
        }


def extremal_zeros(fam: PolyFamily, n: int, width=DEFAULT_WIDTH, *,
                   all_roots: bool = True, magnitude: bool = False,
                   prefix: bool = False) -> RootReport:
    """Certified smallest and largest real zeros of ``fam[n] / z``."""
    if not 1 <= n <= fam.n_max:
        raise IndexError(f"n={n} outside the family prefix 1..{fam.n_max}")
    q = stripped(fam[n])
    width = as_fraction(width)
    if q.degree == 0:
        roots, alpha, beta = (), None, None
    else:
        chain = SturmChain(q)
        if all_roots:
            roots = tuple(isolate_real_roots(q, width, chain=chain))
            alpha = roots[0] if roots else None
            beta = roots[-1] if roots else None
        else:
            roots = ()
            alpha = extremal_root(q, "min", width, chain=chain)
            beta = extremal_root(q, "max", width, chain=chain)
    mag = max_complex_magnitude(q) if magnitude and q.degree else None
    kappa = mu = None
    if prefix:
        kappa, mu = prefix_bounds(fam, n, width)
    return RootReport(fam.tag, n, q, roots, alpha, beta, mag, kappa, mu)


def prefix_bounds(fam: PolyFamily, n: int, width=DEFAULT_WIDTH):
    """``(kappa, mu)`` over members ``1..n``.

    ``kappa`` is the largest ``|smallest real zero|`` (upper end of the
    isolating interval, so the true value is never exceeded from below).
    ``mu`` is the largest negative real zero, taken at the interval end
    nearest the origin; ``None`` when no member has a negative real zero.
    """
    kappa = Fraction(0)
    mu = None
    for m in range(1, n + 1):
        q = stripped(fam[m])
        if not q.degree:
            continue
        chain = SturmChain(q)
        a = extremal_root(q, "min", width, chain=chain)
        if a is None:
            continue
        kappa = max(kappa, -a.lo)
        b = extremal_root(q, "max", width, chain=chain, hi=_below_origin(chain))
        if b is not None:
            mu = b.hi if mu is None else max(mu, b.hi)
    return kappa, mu


def _below_origin(chain: SturmChain) -> Fraction:
    """0, or a negative point with no root in ``(point, 0)`` if 0 is a root."""
    zero = Fraction(0)
    if chain.sign(zero):
        return zero
    eps = Fraction(1, 2)
    while chain.count(-eps, zero) > 1:
        eps /= 2
    return -eps


@dataclass(frozen=True)
class RatioRow:
    n: int
    alpha: float
    beta: float
    alpha_tilde: float
    beta_tilde: float
    alpha_ratio: float
    beta_ratio: float
    intervals: dict = field(default_factory=dict, repr=False, compare=False)


def ratio_row(g: ArithmeticFunction, n: int, width=DEFAULT_WIDTH,
              qfam: PolyFamily = None, pfam: PolyFamily = None) -> RatioRow:
    """Extremal zeros of ``Q_n^g / z`` and ``P_n^g / z`` and the ratios
    ``alpha~ / ((n-1) alpha)`` and ``beta~ / ((n-1) beta)``."""
    if n < 2:
        raise ValueError("ratios need n >= 2")
    qfam = qfam if qfam is not None and qfam.n_max >= n else compute_Q(g, n)
    pfam = pfam if pfam is not None and pfam.n_max >= n else compute_P(g, n)
    q = extremal_zeros(qfam, n, width, all_roots=False)
    p = extremal_zeros(pfam, n, width, all_roots=False)
    if q.beta is None or p.beta is None:
        raise ValueError(f"n={n}: no nontrivial real zero to form a ratio")
    a, b = q.alpha.midpoint, q.beta.midpoint
    at, bt = p.alpha.midpoint, p.beta.midpoint
    if a == 0 or b == 0:
        raise ZeroDivisionError(f"n={n}: extremal zero at the origin")
    return RatioRow(
        n, float(a), float(b), float(at), float(bt),
        float(at / ((n - 1) * a)), float(bt / ((n - 1) * b)),
        {"alpha": q.alpha, "beta": q.beta, "alpha_tilde": p.alpha, "beta_tilde": p.beta},
    )


def ratio_table(g, n_list, width=DEFAULT_WIDTH) -> list:
    if isinstance(g, str):
        from .arithmetic import parse

        g = parse(g)
    n_max = max(n_list)
    qfam, pfam = compute_Q(g, n_max), compute_P(g, n_max)
    return [ratio_row(g, n, width, qfam, pfam) for n in n_list]


# -- complex zeros ----------------------------------------------------------


class NonConvergence(RuntimeError):
    def __init__(self, message, best):
        super().__init__(message)
        self.best = best


def _scale_for(p: Polynomial) -> Fraction:
    from .sturm import root_bound, to_primitive_ints

    return root_bound(to_primitive_ints(p)) / 2


def _aberth(c: np.ndarray, z: np.ndarray, max_iter: int):
    # c: monic coefficients, highest degree first
    dc = np.polyder(c)
    n = len(z)
    for it in range(max_iter):
        pz = np.polyval(c, z)
        dz = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.max(np.abs(w)) < 1e-15 * max(1.0, float(np.max(np.abs(z)))):
            return z, it + 1
    return z, max_iter


def _relative_residuals(coeffs_mp, zs) -> list:
    out = []
    for z in zs:
        val = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        az = abs(z)
        for c in reversed(coeffs_mp):
            val = val * z + c
            scale = scale * az + abs(c)
        out.append(float(abs(val) / scale) if scale else 0.0)
    return out


def squarefree_factors(p: Polynomial) -> list:
    """Yun's decomposition: ``[(factor, multiplicity), ...]`` with monic,
    pairwise coprime squarefree factors whose powers multiply to ``p``."""
    from .poly import gcd

    out = []
    dp = p.derivative()
    a = gcd(p, dp)
    b, c = p // a, dp // a
    d = c - b.derivative()
    i = 1
    while b.degree:
        a = gcd(b, d)
        if a.degree:
            out.append((a.monic(), i))
        b, c = b // a, d // a
        d = c - b.derivative()
        i += 1
    return out


def complex_roots(p: Polynomial, tol: float = RESIDUAL_TOL, max_iter: int = MAX_ITER,
                  dps: int = None) -> list:
    """All complex roots of ``p`` with multiplicity, as Python complex numbers.

    Repeated factors are split off exactly first, so the iteration below
    only ever sees simple roots.
    """
    from .sturm import to_primitive_ints

    if p.degree is None or p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if p.degree == 1 or squarefree_mod_prime(to_primitive_ints(p)):
        return _simple_roots(p, tol, max_iter, dps)
    out = []
    for factor, mult in squarefree_factors(p):
        out += _simple_roots(factor, tol, max_iter, dps) * mult
    return out


def _simple_roots(p: Polynomial, tol: float, max_iter: int, dps) -> list:
    """Roots of a squarefree ``p``.

    Aberth iteration in double precision on the exactly rescaled polynomial
    ``p(R w)`` (roots in the unit disk) supplies starting points, with the
    companion-matrix eigenvalues as fallback.  The iteration is then continued
    in ``dps``-digit arithmetic against the exact coefficients until the
    corrections are negligible.  The families here have tightly clustered
    zeros, so double precision alone is not accurate enough for large degree.

    Raises ``NonConvergence`` (carrying the best estimate) when the iteration
    cap is hit or the normwise relative residual stays above ``tol``.
    """
    d = p.degree
    if d is None or d < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if d == 1:
        return [complex(float(-p[0] / p[1]))]
    R = _scale_for(p)
    scaled = [c * R**k for k, c in enumerate(p.coeffs)]
    lead = scaled[-1]
    monic = [x / lead for x in scaled]
    c = np.array([float(x) for x in reversed(monic)], dtype=complex)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z, _ = _aberth(c, 0.9 * np.exp(1j * angles), SEED_ITER)
    if not np.all(np.isfinite(z)):
        z, _ = _aberth(c, np.roots(c), SEED_ITER)
    dps = dps or max(40, d + 40)
    start = [complex(zi) for zi in z]
    # badly clustered zeros can stall at a given precision; the continuation
    # is retried from where it stopped with twice the digits
    for _ in range(PRECISION_RETRIES + 1):
        with mpmath.workdps(dps):
            cm = [mpmath.mpf(x.numerator) / x.denominator for x in monic]
            roots, ok = _aberth_mp(cm, [mpmath.mpc(zi) for zi in start], max_iter)
            res = _relative_residuals(cm, roots)
            start = [complex(r) for r in roots]
            best = [complex(r * float(R)) for r in roots]
        if ok:
            break
        dps *= 2
    if not ok:
        raise NonConvergence("Aberth iteration hit its cap", best)
    if max(res) >= tol:
        raise NonConvergence(f"max relative residual {max(res):.3g} >= {tol}", best)
    return best


def _aberth_mp(cm, z, max_iter: int):
    # cm: monic coefficients lowest degree first; z: starting points
    n = len(z)
    dcm = [k * x for k, x in enumerate(cm)][1:]
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps // 2 - 5)
    done = [False] * n
    for _ in range(max_iter):
        biggest = mpmath.mpf(0)
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            pv = dv = mpmath.mpc(0)
            for k in range(len(cm) - 1, 0, -1):
                pv = pv * zi + cm[k]
                dv = dv * zi + dcm[k - 1]
            pv = pv * zi + cm[0]
            if pv == 0:
                done[i] = True
                continue
            ratio = pv / dv
            s = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
            w = ratio / (1 - ratio * s)
            z[i] = zi - w
            size = abs(w) / max(1, abs(z[i]))
            if size < eps:
                done[i] = True
            biggest = max(biggest, size)
        if all(done) or biggest < eps:
            return z, True
    return z, False


def max_complex_magnitude(p: Polynomial, tol: float = RESIDUAL_TOL) -> float:
    return max(abs(z) for z in complex_roots(p, tol))


def root_points(p: Polynomial, width=DEFAULT_WIDTH) -> list:
    """``(re, im, is_real)`` for every root of ``p``, sorted by real then
    imaginary part.  Realness is certified by the Sturm count: the real
    roots are the certified ones; everything else is reported as non-real."""
    if p.degree is None or p.degree < 1:
        return []
    real = isolate_real_roots(p, width)
    zs = complex_roots(p)
    n_real = sum(iv.multiplicity for iv in real)
    by_im = sorted(range(len(zs)), key=lambda i: abs(zs[i].imag))
    real_idx = set(by_im[:n_real])
    # the numeric roots must reproduce the certified real ones
    for iv in real:
        r = float(iv.midpoint)
        if min(abs(zs[i] - r) for i in real_idx) > 1e-6 * max(1.0, abs(r)):
            raise NonConvergence(f"no numeric root near the certified root {r}", zs)
    pts = [(float(iv.midpoint), 0.0, True) for iv in real for _ in range(iv.multiplicity)]
    pts += [(zs[i].real, zs[i].imag, False) for i in range(len(zs)) if i not in real_idx]
    # conjugates share a real part up to rounding noise
    return sorted(pts, key=lambda t: (round(t[0], 12), round(t[1], 12)))


def magnitude_bound_check(fam: PolyFamily, n_max: int, kappa: float) -> dict:
    """``{n: max |root of fam[n]/z| <= kappa * (n - 1)}`` for ``2 <= n <= n_max``."""
    fam = fam.extend(n_max)
    out = {}
    for n in range(2, n_max + 1):
        out[n] = max_complex_magnitude(stripped(fam[n])) <= kappa * (n - 1)
    return out


def kostant_sign_check(n_max: int, fam: PolyFamily = None) -> dict:
    """``{n: (-1)^n P_n^sigma(z) > 0 at z = -n^2 + 1 and z = -n^2}``."""
    if n_max < 4:
        raise ValueError("the sign bound starts at n = 4")
    fam = (fam or compute_P(SIGMA, n_max)).extend(n_max)
    out = {}
    for n in range(4, n_max + 1):
        sgn = 1 if n % 2 == 0 else -1
        out[n] = all(sgn * fam[n](Fraction(z)) > 0 for z in (-n * n + 1, -n * n))
    return out
