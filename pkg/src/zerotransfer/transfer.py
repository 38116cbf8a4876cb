"""Instance-level checks of the transfer identity and the zero-transfer
theorems, plus the bounds and the Lehmer sum derived from them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .arithmetic import H0, ID, SIGMA, ArithmeticFunction
from .classical import chebyshev_U, hermite_H, laguerre_L1, tau
from .families import PolyFamily, compute_family, compute_P, compute_Q
from .poly import Z, Polynomial, as_fraction
from .rootloc import prefix_bounds, stripped
from .sturm import (
    DEFAULT_WIDTH,
    compare_roots,
    extremal_root,
    isolate_real_roots,
    transform_root,
)


class HypothesisError(ValueError):
    """Inputs do not satisfy a theorem's hypotheses (distinct from the
    theorem's conclusion failing)."""


class ProbeGenerationError(AssertionError):
    """A generated probe point violates the hypothesis it was drawn for."""


def running_max_h(h: ArithmeticFunction, n: int) -> Fraction:
    """``H(n) = max{0, h(1), ..., h(n)}`` with ``H(0) = 0``."""
    return max([Fraction(0)] + [h(k) for k in range(1, n + 1)])


# -- the transfer identity ---------------------------------------------------


@dataclass(frozen=True)
class TransferInstance:
    g: ArithmeticFunction
    h: ArithmeticFunction
    n: int
    x: Fraction
    y: Fraction
    residual: Fraction
    residual_alt: Fraction
    residual_sign: Fraction
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.residual == 0 and self.residual_alt == 0 and self.residual_sign == 0

    def to_json(self) -> dict:
        s = lambda q: f"{q.numerator}/{q.denominator}"
        return {
            "g": self.g.name,
            "h": self.h.name,
            "n": self.n,
            "x": s(self.x),
            "y": s(self.y),
            "residual": s(self.residual),
            "residual_alt": s(self.residual_alt),
            "residual_sign": s(self.residual_sign),
            "ok": self.ok,
            "seed": self.seed,
        }


def lemma_residual(g: ArithmeticFunction, h: ArithmeticFunction, n: int, x, y,
                   pfam: PolyFamily = None, qfam: PolyFamily = None,
                   seed: int = None) -> TransferInstance:
    """Evaluate the three equivalent forms of the transfer identity at
    ``(x, y)`` and return their residuals (all zero when the identity holds):

    * ``h(n)/y P_n(y) - Q_n(x)/x - sum_{k<n} (1/x - h(k)/y) P_k(y) Q_{n-k}(x)``
    * the same left side minus ``sum_{k<n} g(k) (P_{n-k}(y) - Q_{n-k}(x))``
    * ``x h(n)/y P_n(y) - Q_n(x) - sum_{k<n} (1 - x h(k)/y) P_k(y) Q_{n-k}(x)``
    """
    x, y = as_fraction(x), as_fraction(y)
    if x == 0 or y == 0:
        raise ValueError("x and y must be nonzero")
    if n < 1:
        raise ValueError("n must be >= 1")
    pfam = pfam if pfam is not None and pfam.n_max >= n else compute_family(g, h, n)
    qfam = qfam if qfam is not None and qfam.n_max >= n else compute_Q(g, n)
    P = [pfam[k](y) for k in range(n + 1)]
    Q = [qfam[k](x) for k in range(n + 1)]
    hv = [Fraction(0)] + [h(k) for k in range(1, n + 1)]
    lhs = hv[n] / y * P[n] - Q[n] / x
    rhs = sum(((1 / x - hv[k] / y) * P[k] * Q[n - k] for k in range(1, n)), Fraction(0))
    alt = sum((g(k) * (P[n - k] - Q[n - k]) for k in range(1, n)), Fraction(0))
    lhs_sign = x * hv[n] / y * P[n] - Q[n]
    rhs_sign = sum(((1 - x * hv[k] / y) * P[k] * Q[n - k] for k in range(1, n)), Fraction(0))
    return TransferInstance(g, h, n, x, y, lhs - rhs, lhs - alt, lhs_sign - rhs_sign, seed)


def random_rational(rng: random.Random, num: int = 20, den: int = 9, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if q or not nonzero:
            return q


def random_instances(count: int, seed: int, catalog_g, catalog_h, n_max: int = 30) -> list:
    """Seeded random transfer instances over the given catalogs."""
    rng = random.Random(seed)
    fams = {}
    out = []
    for i in range(count):
        g = rng.choice(catalog_g)
        h = rng.choice(catalog_h)
        n = rng.randint(1, n_max)
        x, y = random_rational(rng), random_rational(rng)
        key = (g, h)
        if key not in fams:
            fams[key] = (compute_family(g, h, n_max), compute_Q(g, n_max))
        pf, qf = fams[key]
        out.append(lemma_residual(g, h, n, x, y, pf, qf, seed=seed))
    return out


# -- sign theorems -------------------------------------------------------------


@dataclass(frozen=True)
class Probe:
    m: int
    x: Optional[Fraction]
    y: Optional[Fraction]
    statement: str
    satisfied: bool


@dataclass(frozen=True)
class SignCheckResult:
    theorem: str
    n: int
    threshold: Fraction
    seed: int
    probes: tuple

    @property
    def passed(self) -> bool:
        return all(p.satisfied for p in self.probes)

    @property
    def failures(self) -> list:
        return [p for p in self.probes if not p.satisfied]


def derive_kappa(g: ArithmeticFunction, n: int, width=DEFAULT_WIDTH,
                 qfam: PolyFamily = None) -> Fraction:
    """Certified threshold below which ``(-1)^m Q_m^g`` is positive for all
    ``m <= n``: the largest ``|smallest real zero|`` of ``Q_1..Q_n``.

    ``Q_m`` has leading coefficient ``g(1)^m = 1``, so below its smallest real
    zero its sign is ``(-1)^m``.  The value is the outer end of the isolating
    interval, hence never below the true zero.  ``Q_1 = z`` only has the
    trivial zero, giving 0 for ``n = 1``.
    """
    qfam = qfam if qfam is not None and qfam.n_max >= n else compute_Q(g, n)
    return prefix_bounds(qfam, n, width)[0]


def derive_mu(g: ArithmeticFunction, n: int, width=DEFAULT_WIDTH,
              qfam: PolyFamily = None) -> Fraction:
    """Negative threshold with ``Q_m^g(x) < 0`` on ``(mu, 0)`` for ``m <= n``.

    ``Q_m(x) = x R_m(x)`` with ``R_m(0) = g(m) > 0``, so ``Q_m`` is negative
    between its largest negative zero and the origin.  Without negative zeros
    any negative number works and -1 is returned.
    """
    for k in range(1, n + 1):
        if g(k) <= 0:
            raise HypothesisError(
                f"g={g.name} vanishes at {k}; the threshold needs g > 0 on 1..n"
            )
    qfam = qfam if qfam is not None and qfam.n_max >= n else compute_Q(g, n)
    mu = prefix_bounds(qfam, n, width)[1]
    return Fraction(-1) if mu is None else mu


def _sgn(m: int) -> int:
    return -1 if m % 2 else 1


def check_links(g: ArithmeticFunction, h: ArithmeticFunction, n: int, probes: int = 8,
                seed: int = 0, width=DEFAULT_WIDTH) -> SignCheckResult:
    """Probe the left-side transfer theorem for ``m = 1..n``.

    With ``kappa`` from :func:`derive_kappa` and ``H = H(n-1)``:

    * for ``x < -kappa`` and ``y <= x H``:
      ``(-1)^m P_m(y) >= (-1)^m y/(x h(m)) Q_m(x) > 0``;
    * for ``y < -kappa H``: ``(-1)^m P_m(y) > 0``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g.check_role("g", n)
    for k in range(1, n + 1):
        if h(k) <= 0:
            raise HypothesisError(f"h={h.name} must be positive, fails at {k}")
    qfam = compute_Q(g, n)
    pfam = compute_family(g, h, n)
    kappa = derive_kappa(g, n, width, qfam)
    H = running_max_h(h, n - 1)
    rng = random.Random(seed)
    results = []

    offsets = [Fraction(1), Fraction(10), Fraction(100)]
    offsets += [Fraction(rng.randint(1, 10**4), rng.randint(1, 100)) for _ in range(probes)]
    for t in offsets:
        x = -kappa - t
        s = Fraction(rng.randint(0, 10**4), rng.randint(1, 100))
        y = x * H - s
        if y == 0:
            y = x * H - 1
        if not (x < -kappa and y <= x * H and y != 0):
            raise ProbeGenerationError(f"probe x={x}, y={y} violates the hypothesis")
        for m in range(1, n + 1):
            sg = _sgn(m)
            qv = sg * qfam[m](x)
            if qv <= 0:
                raise ProbeGenerationError(
                    f"(-1)^{m} Q_{m}({x}) = {qv} is not positive below -kappa"
                )
            pv = sg * pfam[m](y)
            middle = sg * y / (x * h(m)) * qfam[m](x)
            results.append(Probe(m, x, y, "chain", pv >= middle > 0))

        y2 = -kappa * H - t
        if not y2 < -kappa * H:
            raise ProbeGenerationError(f"probe y={y2} violates the hypothesis")
        for m in range(1, n + 1):
            results.append(Probe(m, None, y2, "sign", _sgn(m) * pfam[m](y2) > 0))
    return SignCheckResult("links", n, kappa, seed, tuple(results))


def check_rechts(g: ArithmeticFunction, h: ArithmeticFunction, n: int, probes: int = 8,
                 seed: int = 0, width=DEFAULT_WIDTH) -> SignCheckResult:
    """Probe the right-side transfer theorem: for ``mu < x < 0`` both
    ``Q_m(x) < 0`` and ``P_m(x) < 0`` for ``m = 1..n``.

    Requires ``g > 0`` and ``h >= 1`` on ``1..n``; otherwise
    ``HypothesisError`` is raised.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g.check_role("g", n)
    for k in range(1, n + 1):
        if h(k) < 1:
            raise HypothesisError(f"h={h.name} must be >= 1, fails at {k}")
    qfam = compute_Q(g, n)
    pfam = compute_family(g, h, n)
    mu = derive_mu(g, n, width, qfam)
    rng = random.Random(seed)
    points = [mu / 2, mu / 1000]
    if n >= 2:
        points.append(-g(2) / 2 if -g(2) / 2 > mu else mu / 3)
    points += [mu * Fraction(rng.randint(1, 999), 1000) for _ in range(probes)]
    results = []
    for x in points:
        if not mu < x < 0:
            raise ProbeGenerationError(f"probe x={x} outside ({mu}, 0)")
        for m in range(1, n + 1):
            results.append(Probe(m, x, None, "Q", qfam[m](x) < 0))
            results.append(Probe(m, x, None, "P", pfam[m](x) < 0))
    return SignCheckResult("rechts", n, mu, seed, tuple(results))


# -- zero bounds -----------------------------------------------------------------


@dataclass(frozen=True)
class Containment:
    lower: float
    upper: float
    roots: tuple
    lower_cmp: tuple
    upper_cmp: tuple

    @property
    def ok(self) -> bool:
        return all(c >= 0 for c in self.lower_cmp) and all(c <= 0 for c in self.upper_cmp)

    @property
    def touches(self) -> bool:
        return 0 in self.lower_cmp or 0 in self.upper_cmp


@lru_cache(maxsize=None)
def _chebyshev_extremes(n: int):
    """Certified smallest and largest zeros of ``U_{n-1}(z/2 + 1)``."""
    q = chebyshev_U(n - 1).compose(Polynomial((1, Fraction(1, 2))))
    return extremal_root(q, "min", None), extremal_root(q, "max", None)


def _contained(roots, lower, upper) -> Containment:
    lo_cmp = tuple(compare_roots(r, lower) for r in roots)
    hi_cmp = tuple(compare_roots(r, upper) for r in roots)
    return Containment(
        float(lower.refine()), float(upper.refine()),
        tuple(float(r.refine()) for r in roots), lo_cmp, hi_cmp,
    )


def laguerre_chebyshev_containment(n: int) -> Containment:
    """Zeros of ``L_{n-1}^(1)(-z)`` lie in ``[(n-1) alpha_n, beta_n]`` where
    ``alpha_n, beta_n`` are the extreme zeros of ``U_{n-1}(z/2 + 1)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    alpha, beta = _chebyshev_extremes(n)
    roots = isolate_real_roots(laguerre_L1(n - 1).compose(-Z))
    return _contained(roots, transform_root(alpha, n - 1), beta)


def laguerre_zero_bounds(m: int) -> Containment:
    """Zeros of ``L_m^(1)`` lie in ``[2 - 2cos(pi/(m+1)), (2 - 2cos(m pi/(m+1))) m]``.

    Both ends are certified zeros of Chebyshev polynomials: ``2cos(k pi/(m+1)) - 2``
    are the zeros of ``U_m(z/2 + 1)``.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    alpha, beta = _chebyshev_extremes(m + 1)
    roots = isolate_real_roots(laguerre_L1(m))
    return _contained(roots, transform_root(beta, -1), transform_root(alpha, -m))


def _squares_poly(p: Polynomial) -> Polynomial:
    """Polynomial whose zeros are the squares of the zeros of ``p``."""
    even = p * p.compose(-Z)
    return Polynomial(even.coeffs[::2])


@dataclass(frozen=True)
class HermiteBound:
    n: int
    bound: float
    max_root: float
    comparison: int
    expansion: float

    @property
    def ok(self) -> bool:
        return self.comparison <= 0

    @property
    def equality(self) -> bool:
        return self.comparison == 0


def hermite_bound_check(n: int) -> HermiteBound:
    """Compare the largest zero of ``H_n`` with ``cos(pi/(n+1)) sqrt(2n - 2)``.

    The comparison is exact, done on squares: the largest zero of ``U_n`` is
    ``cos(pi/(n+1))``, so both squared quantities are certified algebraic
    numbers.  Also reports ``sqrt(2n) - (2n)^(-1/2)``, the two-term expansion
    of the bound.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    root_sq = extremal_root(_squares_poly(hermite_H(n)), "max", None)
    cos_sq = extremal_root(_squares_poly(chebyshev_U(n)), "max", None)
    bound_sq = transform_root(cos_sq, 2 * n - 2)
    cmp = compare_roots(root_sq, bound_sq)
    return HermiteBound(
        n,
        math.cos(math.pi / (n + 1)) * math.sqrt(2 * n - 2),
        math.sqrt(float(root_sq.refine(Fraction(1, 10**15)))),
        cmp,
        math.sqrt(2 * n) - (2 * n) ** -0.5,
    )


# -- Lehmer ------------------------------------------------------------------------

LEHMER_TABLE = (-1, -2, 1, 2, 4, -6, -5, 4, 1, 18, -13, -26, 4, 22, 66, -76, -78, 66, 37, 122)


@lru_cache(maxsize=4)
def _q_sigma(n_max: int) -> PolyFamily:
    return compute_Q(SIGMA, n_max)


def _q_sigma_upto(n: int) -> PolyFamily:
    size = 64
    while size < n:
        size *= 2
    return _q_sigma(size)


def lehmer_sum(n: int, z) -> Fraction:
    """``sum_{k=0}^{n-1} (1/z + k/24) tau(k+1) Q_{n-k}^sigma(z)``."""
    z = as_fraction(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    if n < 1:
        raise ValueError("n must be >= 1")
    q = _q_sigma_upto(n)
    return sum(
        ((1 / z + Fraction(k, 24)) * tau(k + 1) * q[n - k](z) for k in range(n)),
        Fraction(0),
    )


@dataclass(frozen=True)
class LehmerScan:
    zeros: tuple
    values: dict
    table_mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.zeros and not self.table_mismatches


def lehmer_scan(n_max: int, z_list=(-1,)) -> LehmerScan:
    zeros = []
    values = {}
    for z in z_list:
        z = as_fraction(z)
        if z == 0:
            raise ValueError("z must be nonzero")
        for n in range(1, n_max + 1):
            v = lehmer_sum(n, z)
            values[(n, z)] = v
            if v == 0:
                zeros.append((n, z))
    q = _q_sigma_upto(len(LEHMER_TABLE))
    mismatches = tuple(
        n for n, want in enumerate(LEHMER_TABLE, start=1) if q[n](Fraction(-1)) != want
    )
    return LehmerScan(tuple(zeros), values, mismatches)
