"""Certified real-root isolation.

Everything here is exact.  Polynomials are first scaled to primitive integer
coefficient lists (a positive rescaling, so signs are untouched) and all sign
evaluations at rational points are done in homogenized integer arithmetic.
Squarefree inputs are counted with Descartes' rule of signs on Moebius
transformed polynomials (the Vincent-Collins-Akritas bisection).  Inputs with
repeated factors get a Sturm chain, a primitive pseudo-remainder sequence,
which also exposes the multiplicities.

Root counts follow the half-open convention: ``count(a, b)`` is the number of
distinct real roots in ``(a, b]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .poly import Polynomial, as_fraction

DEFAULT_WIDTH = Fraction(1, 10**8)


def to_primitive_ints(p: Polynomial) -> list:
    """Positive rescaling of ``p`` to coprime integer coefficients."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no roots to isolate")
    den = p.denominator_lcm()
    ints = [int(c * den) for c in p.coeffs]
    return _primitive(ints)


def _primitive(ints: list) -> list:
    content = gcd(*ints)
    if content > 1:
        ints = [c // content for c in ints]
    return ints


def sign_at(ints: list, x: Fraction) -> int:
    """Sign of the integer polynomial ``ints`` at rational ``x``."""
    a, b = x.numerator, x.denominator
    acc = 0
    bp = 1
    # homogenized Horner: sum c_i a^i b^(d-i)
    for c in reversed(ints):
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def _strip(ints: list) -> list:
    n = len(ints)
    while n and ints[n - 1] == 0:
        n -= 1
    return ints[:n]


def _prem(a: list, b: list):
    """Pseudo-remainder of ``lc(b)**(deg a - deg b + 1) * a`` by ``b`` and the
    sign of the multiplier."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    steps = len(a) - len(b) + 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [x * lb for x in r[:k]]
        if c:
            off = k - db
            for i in range(db):
                r[off + i] -= c * b[i]
    sign = 1 if (lb > 0 or steps % 2 == 0) else -1
    return _strip(r), sign


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= x."""
    if x <= 1:
        return x
    r = 1 << -(-x.bit_length() // k)
    # Newton from above for the floor root
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k < x:
        r += 1
    while r > 0 and (r - 1) ** k >= x:
        r -= 1
    return r


def root_bound(ints: list) -> Fraction:
    """Fujiwara bound ``2 max_k |c_{d-k}/c_d|^(1/k)``, rounded up to a power of
    two; strictly greater than the modulus of every complex root."""
    d = len(ints) - 1
    lead = abs(ints[-1])
    best = 0
    for k in range(1, d + 1):
        c = abs(ints[d - k])
        if c:
            best = max(best, _iroot_ceil(-(-c // lead), k))
    b = 2 * best + 1
    return Fraction(1 << b.bit_length())


_PRIME = (1 << 61) - 1


def squarefree_mod_prime(ints: list) -> bool:
    """True when ``gcd(p, p') = 1`` modulo a large prime not dividing the
    leading coefficient, which implies ``p`` is squarefree over Q."""
    q = _PRIME
    if ints[-1] % q == 0:
        return False
    a = [c % q for c in ints]
    b = [(k * c) % q for k, c in enumerate(ints)][1:]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], q - 2, q)
        while len(a) >= len(b):
            f = a[-1] * inv % q
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % q
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1




def _taylor_shift(c: list, a: int = 1) -> list:
    """Coefficients of ``p(x + a)``."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            c[k] += a * c[k + 1]
    return c


def _variations(c: list) -> int:
    v = 0
    last = 0
    for x in c:
        if x:
            if last and (x > 0) != (last > 0):
                v += 1
            last = x
    return v


def _descartes(r: list) -> int:
    """Sign variations of ``(x + 1)^d r(1 / (x + 1))``: an upper bound with
    the right parity for the number of roots of ``r`` in ``(0, 1)``."""
    return _variations(_taylor_shift(r[::-1]))


def _on_interval(ints: list, a: Fraction, b: Fraction) -> list:
    """Integer polynomial whose roots in ``(0, 1)`` are ``(t - a) / (b - a)``
    for the roots ``t`` of ``ints`` in ``(a, b)``."""
    w = b - a
    s = a.denominator * w.denominator
    u = a.numerator * w.denominator
    v = w.numerator * a.denominator
    d = len(ints) - 1
    # p((u + v x) / s) s^d
    q = [c * s ** (d - i) for i, c in enumerate(ints)]
    q = _taylor_shift(q, u)
    return _primitive([c * v**i for i, c in enumerate(q)])


def _halves(r: list):
    d = len(r) - 1
    left = [c << (d - i) for i, c in enumerate(r)]
    return _primitive(left), _primitive(_taylor_shift(left))


def _vca(ints: list, a: Fraction, b: Fraction, descending: bool = False):
    """Yield the roots of the squarefree ``ints`` in the open ``(a, b)`` in
    order, each as ``(lo, hi)`` with ``lo < root <= hi`` and ``hi`` not a
    root, or ``(x, x)`` for an exact rational root."""
    stack = [(a, b, _on_interval(ints, a, b))]
    while stack:
        lo, hi, r = stack.pop()
        if r is None:
            yield (lo, lo)
            continue
        v = _descartes(r)
        if v == 0:
            continue
        if v == 1:
            yield _tidy(ints, lo, hi)
            continue
        mid = (lo + hi) / 2
        left, right = _halves(r)
        parts = [(lo, mid, left), (mid, hi, right)]
        if sum(left) == 0:
            parts.insert(1, (mid, mid, None))
        if not descending:
            parts.reverse()
        stack.extend(parts)


def _tidy(ints: list, lo: Fraction, hi: Fraction):
    # hi may itself be a root next to the single root of the open (lo, hi);
    # just left of a simple root at hi the sign is -sign(p'(hi))
    if sign_at(ints, hi):
        return (lo, hi)
    right = -sign_at(_derivative(ints), hi)
    while True:
        mid = (lo + hi) / 2
        s = sign_at(ints, mid)
        if s == 0:
            return (mid, mid)
        if s == right:
            return (lo, mid)
        lo = mid


def _derivative(ints: list) -> list:
    return [k * c for k, c in enumerate(ints)][1:]


def sturm_sequence(ints: list) -> list:
    """Sturm chain ``p, p', -rem, ...`` up to positive factors, as integer
    lists.  The last entry is a gcd of ``p`` and ``p'``."""
    chain = [ints]
    d = _derivative(ints)
    if not _strip(d):
        return chain
    chain.append(_primitive(d))
    while True:
        r, s = _prem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append(_primitive([-s * c for c in r]))


class SturmChain:
    """Root counter for the squarefree part of a polynomial.

    A squarefree input (checked modulo a large prime) is counted with
    Descartes' rule and the actual Sturm chain is only built on request;
    otherwise the chain supplies both the squarefree part and the counts.
    """

    def __init__(self, p: Polynomial):
        self.source = p
        ints = to_primitive_ints(p)
        self.gcd_part = None
        self._chain = None
        self.squarefree = len(ints) <= 2 or squarefree_mod_prime(ints)
        if not self.squarefree:
            chain = sturm_sequence(ints)
            if len(chain[-1]) > 1:
                g = Polynomial(chain[-1])
                ints = to_primitive_ints(p // g)
                chain = sturm_sequence(ints)
                self.gcd_part = g
            self._chain = chain
        self.ints = ints

    @property
    def chain(self) -> list:
        if self._chain is None:
            self._chain = sturm_sequence(self.ints)
        return self._chain

    @property
    def degree(self) -> int:
        return len(self.ints) - 1

    def polynomial(self) -> Polynomial:
        """The squarefree polynomial the chain was built for."""
        return Polynomial(self.ints)

    def sign(self, x: Fraction) -> int:
        return sign_at(self.ints, x)

    def variations(self, x: Fraction) -> int:
        v = 0
        last = 0
        for q in self.chain:
            s = sign_at(q, x)
            if s:
                if last and s != last:
                    v += 1
                last = s
        return v

    def variations_at_infinity(self, positive: bool) -> int:
        v = 0
        last = 0
        for q in self.chain:
            s = 1 if q[-1] > 0 else -1
            if not positive and (len(q) - 1) % 2:
                s = -s
            if last and s != last:
                v += 1
            last = s
        return v

    def count(self, lo, hi) -> int:
        """Number of distinct real roots in ``(lo, hi]``."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if hi <= lo or self.degree < 1:
            return 0
        n = sum(1 for _ in self.roots_between(lo, hi))
        return n + (self.sign(hi) == 0)

    def roots_between(self, lo: Fraction, hi: Fraction, descending: bool = False):
        """Roots in the open ``(lo, hi)``, in order, as ``(lo, hi)`` pairs
        isolating one root each (``lo == hi`` for exact rational roots)."""
        return _vca(self.ints, lo, hi, descending)

    def total(self) -> int:
        B = self.bound()
        return self.count(-B, B) if self.degree >= 1 else 0

    def bound(self) -> Fraction:
        """A power of two strictly exceeding every root's absolute value."""
        return root_bound(self.ints)


@dataclass(frozen=True)
class IsolatingInterval:
    """``(lo, hi]`` holding exactly one root of ``chain``; ``lo == hi`` marks
    an exactly known rational root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    chain: Optional[SturmChain] = field(default=None, repr=False, compare=False)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def sign_lo(self) -> int:
        return self.chain.sign(self.lo)

    @property
    def sign_hi(self) -> int:
        return self.chain.sign(self.hi)

    def __float__(self) -> float:
        return float(self.midpoint)

    def refine(self, width=DEFAULT_WIDTH) -> "IsolatingInterval":
        width = as_fraction(width)
        lo, hi = self.lo, self.hi
        if hi - lo <= width:
            return self
        ch = self.chain
        s_hi = ch.sign(hi)
        if s_hi == 0:
            return self._exact(hi)
        s_lo = ch.sign(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = ch.sign(mid)
            if s == 0:
                return self._exact(mid)
            if s_lo:
                if s == s_lo:
                    lo = mid
                else:
                    hi = mid
            elif ch.count(mid, hi) == 1:
                lo, s_lo = mid, s
            else:
                hi = mid
        return IsolatingInterval(lo, hi, self.multiplicity, ch)

    def _exact(self, x: Fraction) -> "IsolatingInterval":
        return IsolatingInterval(x, x, self.multiplicity, self.chain)

    def contains(self, x) -> bool:
        x = as_fraction(x)
        if self.exact:
            return x == self.lo
        return self.lo < x <= self.hi

    def to_json(self, decimals: int = 12) -> dict:
        return {
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "exact": self.exact,
            "multiplicity": self.multiplicity,
            "approx": round(float(self.midpoint), decimals),
        }


def _multiplicities(chain: SturmChain, intervals: list) -> list:
    if chain.gcd_part is None:
        return intervals
    # g_1 = gcd(p, p'), g_{k+1} = gcd(g_k, g_k'); the multiplicity of a root
    # is one more than the number of g_k vanishing there
    levels = []
    g = chain.gcd_part
    while g.degree:
        sub = SturmChain(g)
        levels.append((g, sub))
        g = Polynomial(sturm_sequence(to_primitive_ints(g))[-1])
    out = []
    for iv in intervals:
        m = 1
        for poly, sub in levels:
            hit = poly(iv.lo) == 0 if iv.exact else sub.count(iv.lo, iv.hi) > 0
            if not hit:
                break
            m += 1
        out.append(IsolatingInterval(iv.lo, iv.hi, m, chain))
    return out


def isolate_real_roots(p: Polynomial, width=None, chain: SturmChain = None) -> list:
    """All real roots of ``p``, ascending, each in its own rational interval
    (refined to ``width`` when given)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no isolated roots")
    chain = chain or SturmChain(p)
    if chain.degree < 1:
        return []
    B = chain.bound()
    out = [IsolatingInterval(lo, hi, 1, chain) for lo, hi in chain.roots_between(-B, B)]
    out = _multiplicities(chain, out)
    if width is not None:
        out = [iv.refine(width) for iv in out]
    return out


def sturm_real_roots(p: Polynomial, width=DEFAULT_WIDTH) -> list:
    return isolate_real_roots(p, width)


def extremal_root(p: Polynomial, which: str = "min", width=DEFAULT_WIDTH,
                  chain: SturmChain = None, lo=None, hi=None) -> Optional[IsolatingInterval]:
    """Smallest (``which="min"``) or largest real root in ``(lo, hi]``
    (default: all of the real line), or ``None`` if there is none."""
    chain = chain or SturmChain(p)
    if chain.degree < 1:
        return None
    B = chain.bound()
    lo = -B if lo is None else as_fraction(lo)
    hi = B if hi is None else as_fraction(hi)
    if hi <= lo:
        return None
    found = None
    if which == "max" and chain.sign(hi) == 0:
        found = (hi, hi)
    else:
        found = next(chain.roots_between(lo, hi, descending=which == "max"), None)
        if found is None and chain.sign(hi) == 0:
            found = (hi, hi)
    if found is None:
        return None
    iv = _multiplicities(chain, [IsolatingInterval(*found, 1, chain)])[0]
    return iv.refine(width) if width is not None else iv


def count_real_roots(p: Polynomial) -> int:
    chain = SturmChain(p)
    return chain.total() if chain.degree >= 1 else 0


def transform_root(iv: IsolatingInterval, scale, shift=0) -> IsolatingInterval:
    """The root ``scale * r + shift`` of ``p((t - shift) / scale)``, given the
    isolating interval of the root ``r`` of ``p``."""
    scale, shift = as_fraction(scale), as_fraction(shift)
    if scale == 0:
        raise ValueError("scale must be nonzero")
    iv = _normalized(iv)
    p = iv.chain.polynomial().compose(Polynomial((-shift / scale, 1 / scale)))
    chain = SturmChain(p)
    a, b = scale * iv.lo + shift, scale * iv.hi + shift
    if a > b:
        a, b = b, a
        # the old lower end may itself be a (different) root, which the flip
        # turns into the included upper end; step away from it
        if not iv.exact and chain.sign(b) == 0:
            while True:
                mid = (a + b) / 2
                if chain.sign(mid) == 0:
                    return IsolatingInterval(mid, mid, iv.multiplicity, chain)
                if chain.count(a, mid):
                    b = mid
                    break
                a = mid
    return IsolatingInterval(a, b, iv.multiplicity, chain)


def _normalized(iv: IsolatingInterval) -> IsolatingInterval:
    # afterwards a non-exact root lies strictly inside (lo, hi)
    if not iv.exact and iv.chain.sign(iv.hi) == 0:
        return IsolatingInterval(iv.hi, iv.hi, iv.multiplicity, iv.chain)
    return iv


def _int_gcd(a: list, b: list) -> list:
    """Primitive gcd of two integer polynomials by a primitive remainder
    sequence; avoids rational arithmetic on large coefficients."""
    a, b = _primitive(_strip(list(a))), _primitive(_strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r, _ = _prem(a, b)
        r = _strip(r)
        a, b = b, (_primitive(r) if r else [])
    if not b:
        return a
    return [1]


def compare_roots(a: IsolatingInterval, b: IsolatingInterval, max_steps: int = 4000) -> int:
    """Exact comparison of two real algebraic numbers: -1, 0 or 1.

    Intervals are refined until they separate.  Equality is decided by the
    gcd of the defining polynomials having a root inside both intervals.
    """
    a, b = _normalized(a), _normalized(b)
    common = None
    for step in range(max_steps):
        if a.exact and b.exact:
            return (a.lo > b.lo) - (a.lo < b.lo)
        if b.exact:
            return -compare_roots(b, a, max_steps)
        if a.exact:
            x = a.lo
            if x <= b.lo:
                return -1
            if x >= b.hi:
                return 1
            if b.chain.sign(x) == 0:
                return 0
            b = _normalized(b.refine(b.width / 2))
            continue
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        # distinct roots usually separate after a few halvings, so the gcd is
        # only worth computing once they have not
        if common is None and step >= 8:
            ints = _int_gcd(a.chain.ints, b.chain.ints)
            common = SturmChain(Polynomial(ints)) if len(ints) > 1 else False
        if common:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if common.count(lo, hi) > 0:
                return 0
        a = _normalized(a.refine(a.width / 2))
        b = _normalized(b.refine(b.width / 2))
    raise RuntimeError("could not separate the two roots")
