"""Classical sequences and orthogonal polynomials, and the exact identities
tying them to the P and Q families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arithmetic import HERMITE, ID, SIGMA
from .families import compute_P, compute_Q
from .poly import ONE, Z, Polynomial, as_fraction

# Smallest positive zero of Szego's Airy function A(x); equals 3**(1/3) times
# the first zero of Ai.
AIRY_I1 = 3.3721344
SZEGO_EXPONENT = -1.0 / 3.0

IDENTITIES = ("laguerre_P", "chebyshev_Q", "hermite_P", "chebyshev_Qg", "fibonacci_Q")


@lru_cache(maxsize=None)
def chebyshev_U(m: int) -> Polynomial:
    """Chebyshev polynomial of the second kind, ``U_m(x)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    prev, cur = ONE, Polynomial((0, 2))
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, Polynomial((0, 2)) * cur - prev
    return cur


@lru_cache(maxsize=None)
def laguerre_L1(m: int) -> Polynomial:
    """Associated Laguerre polynomial ``L_m^(1)(x)`` from the three-term
    recurrence ``(k+1) L_{k+1} = (2k + 2 - x) L_k - (k + 1) L_{k-1}``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    prev, cur = ONE, Polynomial((2, -1))
    if m == 0:
        return prev
    for k in range(1, m):
        prev, cur = cur, (Polynomial((2 * k + 2, -1)) * cur - prev * (k + 1)) / (k + 1)
    return cur


def hermite_H(n: int) -> Polynomial:
    """Physicists' Hermite polynomial from the explicit sum
    ``n! sum_k (-1)^k / k! * (2x)^(n-2k) / (n-2k)!``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        j = n - 2 * k
        coeffs[j] = (-1) ** k * math.factorial(n) * 2**j // (math.factorial(k) * math.factorial(j))
    return Polynomial(coeffs)


def fibonacci(k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@lru_cache(maxsize=4)
def _darcais(n_max: int):
    return compute_P(SIGMA, n_max)


def _darcais_upto(n: int):
    size = 64
    while size < n:
        size *= 2
    return _darcais(size)


def eta_power_coeffs(r: int, n_max: int) -> list:
    """Coefficients ``a_0(r), ..., a_{n_max}(r)`` of ``prod (1 - q^n)^r``,
    read off the D'Arcais polynomials as ``a_n(r) = P_n(-r)``."""
    fam = _darcais_upto(n_max)
    return [fam[n](Fraction(-r)) for n in range(n_max + 1)]


def tau(n: int) -> int:
    """Ramanujan's tau function, ``tau(n) = P_{n-1}(-24)``."""
    if n < 1:
        raise ValueError("tau is defined for n >= 1")
    v = _darcais_upto(n - 1)[n - 1](Fraction(-24))
    assert v.denominator == 1
    return int(v)


def tau_values(n_max: int) -> list:
    """``[tau(1), ..., tau(n_max)]`` via one power-series expansion.

    Evaluating D'Arcais polynomials at ``-24`` one by one is quadratic in
    memory for large ``n``; this computes the same numbers from the integer
    recursion ``n a_n = -24 sum_k sigma(k) a_{n-k}`` directly.
    """
    from .arithmetic import divisor_sigma

    a = [1]
    sig = [0] + [divisor_sigma(k) for k in range(1, n_max)]
    for n in range(1, n_max):
        s = sum(sig[k] * a[n - k] for k in range(1, n + 1))
        q, r = divmod(-24 * s, n)
        assert r == 0
        a.append(q)
    return a[:n_max]


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    lhs: object
    rhs: object

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@lru_cache(maxsize=8)
def _family(kind: str, n_max: int):
    if kind == "P_id":
        return compute_P(ID, n_max)
    if kind == "Q_id":
        return compute_Q(ID, n_max)
    if kind == "P_herm":
        return compute_P(HERMITE, n_max)
    if kind == "Q_herm":
        return compute_Q(HERMITE, n_max)
    raise KeyError(kind)


def _member(kind: str, n: int) -> Polynomial:
    size = 64
    while size < n:
        size *= 2
    return _family(kind, size)[n]


def verify_identity(name: str, n: int) -> IdentityCheck:
    """Expand both sides of a named identity and compare them exactly.

    ``laguerre_P``   P_n^id(z) = (z/n) L_{n-1}^(1)(-z)
    ``chebyshev_Q``  Q_n^id(z) = z U_{n-1}(z/2 + 1)
    ``hermite_P``    P_n^g(-2x^2) = (-x)^n H_n(x) / n!      (g = hermite)
    ``chebyshev_Qg`` Q_n^g(-x^2) = (-x)^n U_n(x/2)          (g = hermite)
    ``fibonacci_Q``  Q_n^id(1) = F_{2n}
    """
    if n < 1:
        raise ValueError("identities are stated for n >= 1")
    if name == "laguerre_P":
        lhs = _member("P_id", n)
        rhs = Z * laguerre_L1(n - 1).compose(-Z) / n
    elif name == "chebyshev_Q":
        lhs = _member("Q_id", n)
        rhs = Z * chebyshev_U(n - 1).compose(Polynomial((1, Fraction(1, 2))))
    elif name == "hermite_P":
        lhs = _member("P_herm", n).compose(Polynomial((0, 0, -2)))
        rhs = (-Z) ** n * hermite_H(n) / math.factorial(n)
    elif name == "chebyshev_Qg":
        lhs = _member("Q_herm", n).compose(Polynomial((0, 0, -1)))
        rhs = (-Z) ** n * chebyshev_U(n).compose(Z / 2)
    elif name == "fibonacci_Q":
        lhs = _member("Q_id", n)(Fraction(1))
        rhs = Fraction(fibonacci(2 * n))
    else:
        raise ValueError(f"unknown identity {name!r}; expected one of {IDENTITIES}")
    return IdentityCheck(name, n, lhs, rhs)


def laguerre_fibonacci_residual(n: int, y, reflect: bool = False) -> Fraction:
    """``L_{n-1}(y) - F_{2n} + sum_{k<n} (y/k + 1) L_{k-1}(y) F_{2(n-k)}``.

    Zero for every rational ``y`` when the Laguerre polynomials are evaluated
    at ``y`` itself.  ``reflect=True`` evaluates them at ``-y`` instead, the
    convention of the Laguerre form of ``P_n^id``; that reading does not give
    an identity.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    y = as_fraction(y)
    at = -y if reflect else y
    L = lambda m: laguerre_L1(m)(at)
    rhs = -sum(((y / k + 1) * L(k - 1) * fibonacci(2 * (n - k)) for k in range(1, n)), Fraction(0))
    return L(n - 1) - fibonacci(2 * n) - rhs


def verify_laguerre_fibonacci_identity(n: int, y) -> Fraction:
    return laguerre_fibonacci_residual(n, y)


def szego_gamma(n: int, i1: float = AIRY_I1, exponent: float = SZEGO_EXPONENT) -> float:
    """Airy-type approximation of the smallest zero of ``P_n^id(z)/z``:

        -[sqrt(4n+4) - 6**exponent * (4n+4)**(-1/6) * i1]**2
    """
    if n < 2:
        raise ValueError("the approximation is used for n >= 2")
    t = 4 * n + 4
    return -((math.sqrt(t) - 6.0**exponent * t ** (-1.0 / 6.0) * i1) ** 2)
