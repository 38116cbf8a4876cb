"""Recursively defined polynomial families.

``P_n = (z / h(n)) * sum_{k=1..n} g(k) P_{n-k}`` with ``P_0 = 1``.  The
``Q`` family is the special case ``h = 1``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm
from pathlib import Path

from .arithmetic import H0, ID, PARITY, ArithmeticFunction, binomial
from .poly import ONE, Z, Polynomial, as_fraction

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyFamily:
    """The prefix ``P_0, ..., P_{n_max}`` of one family."""

    g: ArithmeticFunction
    h: ArithmeticFunction
    members: tuple

    def __getitem__(self, n: int) -> Polynomial:
        return self.members[n]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def n_max(self) -> int:
        return len(self.members) - 1

    @property
    def tag(self) -> str:
        if self.h == H0:
            return f"Q:{self.g.name}"
        return f"P:{self.g.name}:{self.h.name}"

    def extend(self, n_max: int) -> "PolyFamily":
        """Return a family holding at least ``n_max + 1`` members."""
        if n_max <= self.n_max:
            return self
        return compute_family(self.g, self.h, n_max, _prefix=self.members)

    def residual(self, n: int) -> Polynomial:
        """``h(n) P_n - z * sum g(k) P_{n-k}``; zero for every valid member."""
        acc = Polynomial()
        for k in range(1, n + 1):
            acc = acc + self.members[n - k] * self.g(k)
        return self.members[n] * self.h(n) - Z * acc

    def to_json(self) -> dict:
        return {
            "g": self.g.to_dict(),
            "h": self.h.to_dict(),
            "n_max": self.n_max,
            "coefficients": [p.to_strings() for p in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyFamily":
        members = tuple(Polynomial.from_strings(c) for c in data["coefficients"])
        if len(members) != data["n_max"] + 1:
            raise ValueError("cached family is truncated")
        return cls(
            ArithmeticFunction.from_dict(data["g"]),
            ArithmeticFunction.from_dict(data["h"]),
            members,
        )


def compute_family(
    g: ArithmeticFunction, h: ArithmeticFunction, n_max: int, _prefix=None
) -> PolyFamily:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    g.check_role("g", n_max)
    h.check_role("h", n_max)
    gvals = [Fraction(0)] + g.values(n_max)
    # members are kept as (integer numerators, common denominator)
    scaled = [_scale(p) for p in _prefix] if _prefix else [([1], 1)]
    for n in range(len(scaled), n_max + 1):
        den = 1
        for k in range(1, n + 1):
            if gvals[k]:
                den = lcm(den, gvals[k].denominator * scaled[n - k][1])
        acc = [0] * n
        for k in range(1, n + 1):
            gk = gvals[k]
            if not gk:
                continue
            nums, d = scaled[n - k]
            factor = gk.numerator * (den // (gk.denominator * d))
            for i, c in enumerate(nums):
                if c:
                    acc[i] += factor * c
        hn = h(n)
        den *= hn.numerator
        acc = [0] + [c * hn.denominator for c in acc]
        common = gcd(den, *acc)
        scaled.append(([c // common for c in acc], den // common))
    members = tuple(
        Polynomial._raw([Fraction(c, d) for c in nums]) for nums, d in scaled
    )
    return PolyFamily(g, h, members)


def _scale(p: Polynomial):
    den = p.denominator_lcm()
    return [int(c * den) for c in p.coeffs], den


def compute_Q(g: ArithmeticFunction, n_max: int) -> PolyFamily:
    return compute_family(g, H0, n_max)


def compute_P(g: ArithmeticFunction, n_max: int) -> PolyFamily:
    """The ``h = id`` family (D'Arcais polynomials for ``g = sigma``)."""
    return compute_family(g, ID, n_max)


class FiveTermMismatch(AssertionError):
    pass


_PARITY_INITIAL = (
    Polynomial((1,)),
    Polynomial((0, 1)),
    Polynomial((0, 1, 1)),
    Polynomial((0, 3, 2, 1)),
    Polynomial((0, 2, 7, 3, 1)),
)


def q_parity_five_term(n_max: int, check: bool = True) -> PolyFamily:
    """Q-family of the parity function from its five-term recursion

        Q_n = z Q_{n-1} + (z + 2) Q_{n-2} + z Q_{n-3} - Q_{n-4},  n >= 5.

    With ``check`` the result is compared against the convolution recursion
    and ``FiveTermMismatch`` is raised on any difference.
    """
    members = list(_PARITY_INITIAL[: n_max + 1])
    shift = Polynomial((2, 1))
    for n in range(5, n_max + 1):
        members.append(
            Z * members[n - 1] + shift * members[n - 2] + Z * members[n - 3] - members[n - 4]
        )
    fam = PolyFamily(PARITY, H0, tuple(members))
    if check:
        oracle = compute_Q(PARITY, n_max)
        for n, (a, b) in enumerate(zip(fam.members, oracle.members)):
            if a != b:
                raise FiveTermMismatch(
                    f"five-term recursion disagrees with the convolution at n={n}"
                )
    return fam


def binomial_closed_form(alpha, n: int) -> Polynomial:
    """``(z / n!) * prod_{k=1}^{n-1} (z + (alpha - 1) n + k)``."""
    alpha = as_fraction(alpha)
    if alpha < 1 or n < 1:
        raise ValueError("need alpha >= 1 and n >= 1")
    shift = (alpha - 1) * n
    p = Z / factorial(n)
    for k in range(1, n):
        p = p * Polynomial((shift + k, 1))
    return p


def binomial_family(alpha, n_max: int) -> PolyFamily:
    return compute_P(binomial(alpha), n_max)


# -- coefficient cache ------------------------------------------------------


def save_family(fam: PolyFamily, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(fam.to_json(), separators=(",", ":")))
    tmp.replace(path)
    return path


def load_family(path) -> PolyFamily:
    with open(path) as fh:
        return PolyFamily.from_json(json.load(fh))


def cache_name(g: ArithmeticFunction, h: ArithmeticFunction) -> str:
    safe = lambda s: s.replace(":", "_").replace("/", "-").replace(",", "_")
    return f"family_{safe(g.name)}__{safe(h.name)}.json"


class FamilyCache:
    """In-memory plus optional on-disk store of computed families."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else None
        self._mem: dict = {}

    def get(self, g: ArithmeticFunction, h: ArithmeticFunction, n_max: int) -> PolyFamily:
        key = (g, h)
        fam = self._mem.get(key)
        if fam is None and self.directory is not None:
            path = self.directory / cache_name(g, h)
            if path.exists():
                try:
                    fam = load_family(path)
                    if fam.g != g or fam.h != h:
                        raise ValueError("cache file describes a different family")
                    for n in range(1, fam.n_max + 1):
                        if fam[n].degree != n:
                            raise ValueError(f"member {n} has the wrong degree")
                except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
                    log.warning("ignoring corrupt cache %s (%s); recomputing", path, exc)
                    fam = None
        if fam is None:
            fam = compute_family(g, h, n_max)
        elif fam.n_max < n_max:
            fam = fam.extend(n_max)
        else:
            self._mem[key] = fam
            return fam
        self._mem[key] = fam
        if self.directory is not None:
            save_family(fam, self.directory / cache_name(g, h))
        return fam
