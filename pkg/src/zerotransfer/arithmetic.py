"""Normalized arithmetic functions used as ``g`` and ``h`` in the recursions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .poly import as_fraction

KINDS = ("sigma", "power", "hermite", "parity", "binomial", "table")


class SpecError(ValueError):
    """An arithmetic function is unusable in the role it was given."""


@lru_cache(maxsize=None)
def divisor_sigma(n: int, d: int = 1) -> int:
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    total = 0
    k = 1
    while k * k <= n:
        if n % k == 0:
            total += k**d
            other = n // k
            if other != k:
                total += other**d
        k += 1
    return total


def generalized_binomial(top: Fraction, k: int) -> Fraction:
    """``C(top, k)`` for rational ``top`` via the falling product."""
    num = Fraction(1)
    for j in range(k):
        num *= top - j
    return num / factorial(k)


@dataclass(frozen=True)
class ArithmeticFunction:
    """A named arithmetic function ``n -> Fraction`` on the positive integers.

    ``param`` carries ``d`` for sigma, ``s`` for power and ``alpha`` for the
    binomial family; ``table`` holds the values ``f(1), f(2), ...`` of an
    explicit function, which vanishes beyond the table.
    """

    kind: str
    param: Fraction = Fraction(0)
    table: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown arithmetic function kind {self.kind!r}")
        object.__setattr__(self, "param", as_fraction(self.param))
        object.__setattr__(self, "table", tuple(as_fraction(v) for v in self.table))
        if self.kind == "sigma" and (self.param.denominator != 1 or self.param < 1):
            raise SpecError("sigma_d needs a positive integer d")
        if self.kind == "power" and (self.param.denominator != 1 or self.param < 0):
            raise SpecError(
                f"n**s is only exact for integer s >= 0, got s={self.param}"
            )
        if self.kind == "binomial" and self.param < 1:
            raise SpecError("the binomial family needs alpha >= 1")

    def __call__(self, n: int) -> Fraction:
        return _evaluate(self, n)

    @property
    def name(self) -> str:
        if self.kind == "sigma":
            return "sigma" if self.param == 1 else f"sigma{self.param}"
        if self.kind == "power":
            return {0: "h0", 1: "id"}.get(int(self.param), f"power{self.param}")
        if self.kind == "binomial":
            return f"binomial:{self.param}"
        if self.kind == "table":
            return "table:" + ",".join(str(v) for v in self.table)
        return self.kind

    def __str__(self) -> str:
        return self.name

    def values(self, n_max: int) -> list:
        return [self(n) for n in range(1, n_max + 1)]

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("sigma", "power", "binomial"):
            out["param"] = str(self.param)
        if self.kind == "table":
            out["table"] = [str(v) for v in self.table]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ArithmeticFunction":
        return cls(
            data["kind"],
            Fraction(data.get("param", "0")),
            tuple(Fraction(v) for v in data.get("table", ())),
        )

    def check_role(self, role: str, n_max: int) -> None:
        """Raise ``SpecError`` unless the function is normalized and has the
        sign required for ``role`` ("g": non-negative, "h": positive) on
        ``1..n_max``."""
        if role not in ("g", "h"):
            raise ValueError(f"role must be 'g' or 'h', not {role!r}")
        if self(1) != 1:
            raise SpecError(f"{self.name} is not normalized: value at 1 is {self(1)}")
        for n in range(2, n_max + 1):
            v = self(n)
            if role == "g" and v < 0:
                raise SpecError(f"g={self.name} is negative at n={n}: {v}")
            if role == "h" and v <= 0:
                raise SpecError(f"h={self.name} is not positive at n={n}: {v}")


def _evaluate(spec: ArithmeticFunction, n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"arithmetic functions are defined for n >= 1, got {n}")
    kind = spec.kind
    if kind == "sigma":
        return Fraction(divisor_sigma(n, int(spec.param)))
    if kind == "power":
        return Fraction(n ** int(spec.param))
    if kind == "hermite":
        return Fraction(1 if n <= 2 else 0)
    if kind == "parity":
        return Fraction(n if n % 2 else n // 2)
    if kind == "binomial":
        return generalized_binomial(spec.param * n - 1, n - 1)
    # explicit table, zero past its end
    return spec.table[n - 1] if n <= len(spec.table) else Fraction(0)


def sigma(d: int = 1) -> ArithmeticFunction:
    return ArithmeticFunction("sigma", d)


def power(s: int) -> ArithmeticFunction:
    return ArithmeticFunction("power", s)


def binomial(alpha) -> ArithmeticFunction:
    return ArithmeticFunction("binomial", as_fraction(alpha))


def explicit(values) -> ArithmeticFunction:
    return ArithmeticFunction("table", table=tuple(values))


SIGMA = sigma(1)
ID = power(1)
H0 = power(0)
HERMITE = ArithmeticFunction("hermite")
PARITY = ArithmeticFunction("parity")


def eval_g(spec: ArithmeticFunction, n: int) -> Fraction:
    return spec(n)


def parse(text: str) -> ArithmeticFunction:
    """Parse names such as ``sigma``, ``sigma2``, ``id``, ``h0``, ``power3``,
    ``parity``, ``hermite``, ``binomial:3/2`` or ``table:1,2,0,5``."""
    text = text.strip()
    low = text.lower()
    if low in ("sigma", "sigma1", "σ"):
        return SIGMA
    if low in ("id", "h1"):
        return ID
    if low in ("h0", "one"):
        return H0
    if low == "hermite":
        return HERMITE
    if low == "parity":
        return PARITY
    if low.startswith("sigma") and low[5:].isdigit():
        return sigma(int(low[5:]))
    if low.startswith("power") and low[5:].isdigit():
        return power(int(low[5:]))
    if low.startswith("binomial:"):
        return binomial(Fraction(text.split(":", 1)[1]))
    if low.startswith("table:"):
        return explicit(Fraction(v) for v in text.split(":", 1)[1].split(","))
    raise SpecError(f"unrecognized arithmetic function {text!r}")
