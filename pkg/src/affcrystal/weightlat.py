"""Affine type A weight lattice in the basis Lambda_0, ..., Lambda_l, delta.

All coefficients are exact ``Fraction`` values.  A weight is a lattice point
when every coefficient is an integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


def frac_to_json(x: Fraction):
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def frac_from_json(v) -> Fraction:
    if isinstance(v, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"cannot read rational from {v!r}")


@dataclass(frozen=True, order=True)
class Weight:
    """Element of Q Lambda_0 + ... + Q Lambda_l + Q delta."""

    lam: tuple
    dlt: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(Fraction(c) for c in self.lam))
        object.__setattr__(self, "dlt", Fraction(self.dlt))
        if len(self.lam) < 2:
            raise ValueError("need at least two fundamental weights (l >= 1)")

    @property
    def ell(self) -> int:
        return len(self.lam) - 1

    @classmethod
    def zero(cls, ell: int) -> "Weight":
        return cls((0,) * (ell + 1), 0)

    @classmethod
    def fundamental(cls, ell: int, i: int) -> "Weight":
        lam = [0] * (ell + 1)
        lam[i % (ell + 1)] = 1
        return cls(tuple(lam), 0)

    @classmethod
    def null_root(cls, ell: int) -> "Weight":
        return cls((0,) * (ell + 1), 1)

    def _check(self, other: "Weight"):
        if not isinstance(other, Weight):
            return NotImplemented
        if len(other.lam) != len(self.lam):
            raise ValueError("weights of different rank")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Weight(tuple(a + b for a, b in zip(self.lam, other.lam)), self.dlt + other.dlt)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Weight(tuple(a - b for a, b in zip(self.lam, other.lam)), self.dlt - other.dlt)

    def __neg__(self):
        return Weight(tuple(-a for a in self.lam), -self.dlt)

    def __mul__(self, c):
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.lam), c * self.dlt)

    __rmul__ = __mul__

    def is_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.lam) and self.dlt.denominator == 1

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.lam)

    def in_z_delta(self) -> bool:
        """True when the weight is an integer multiple of delta."""
        return all(c == 0 for c in self.lam) and self.dlt.denominator == 1

    def classical(self) -> "Weight":
        return Weight(self.lam, 0)

    def l1(self) -> Fraction:
        return sum((abs(c) for c in self.lam), Fraction(0)) + abs(self.dlt)

    def to_json(self) -> dict:
        return {"lam": [frac_to_json(c) for c in self.lam], "dlt": frac_to_json(self.dlt)}

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        return cls(tuple(frac_from_json(c) for c in data["lam"]), frac_from_json(data["dlt"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.lam):
            if c:
                terms.append(f"{_coef(c)}L{i}")
        if self.dlt:
            terms.append(f"{_coef(self.dlt)}d")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


def _coef(c: Fraction) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return str(c)


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(L(\d+)|d)")


def parse_weight(text: str, ell: int) -> Weight:
    """Parse strings such as ``L0+2L1-1d`` (``d`` is delta, ``0`` is zero)."""
    s = text.replace(" ", "")
    if s in ("0", ""):
        return Weight.zero(ell)
    pos = 0
    w = Weight.zero(ell)
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"bad weight term at {s[pos:]!r}")
        sign = -1 if mt.group(1) == "-" else 1
        coef = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        if mt.group(4) is not None:
            i = int(mt.group(4))
            if i > ell:
                raise ValueError(f"L{i} out of range for l={ell}")
            w = w + sign * coef * Weight.fundamental(ell, i)
        else:
            w = w + sign * coef * Weight.null_root(ell)
        pos = mt.end()
    return w


@dataclass(frozen=True)
class CartanData:
    ell: int
    a: tuple

    @classmethod
    def affine_a(cls, ell: int) -> "CartanData":
        if ell < 1:
            raise ValueError("l must be >= 1")
        n = ell + 1
        kd = lambda x, y: 1 if (x - y) % n == 0 else 0
        rows = tuple(
            tuple(2 * kd(i, j) - kd(i, j - 1) - kd(i - 1, j) for j in range(n)) for i in range(n)
        )
        return cls(ell, rows)


def cartan_matrix(ell: int) -> tuple:
    return CartanData.affine_a(ell).a


def pair(i: int, w: Weight) -> Fraction:
    """Value of the coroot alpha_i^vee on ``w``: the Lambda_i coefficient."""
    return w.lam[i % len(w.lam)]


@lru_cache(maxsize=None)
def simple_root(ell: int, i: int) -> Weight:
    """alpha_i = 2 Lambda_i - Lambda_{i-1} - Lambda_{i+1} (+ delta when i = 0)."""
    n = ell + 1
    i %= n
    lam = [Fraction(0)] * n
    lam[i] += 2
    lam[(i - 1) % n] -= 1
    lam[(i + 1) % n] -= 1
    return Weight(tuple(lam), 1 if i == 0 else 0)


def reflect(i: int, w: Weight) -> Weight:
    return w - pair(i, w) * simple_root(w.ell, i)


def tuple_to_weight(k: Sequence[int]) -> Weight:
    """sum_i k_i (Lambda_{i+1} - Lambda_i)."""
    n = len(k)
    lam = [0] * n
    for i, ki in enumerate(k):
        lam[(i + 1) % n] += ki
        lam[i] -= ki
    return Weight(tuple(lam), 0)


def weight_to_tuple(nu: Weight, m: int):
    """Letter multiplicities (k_0, ..., k_l) of weight ``nu`` in B_l(m), or None.

    Solves pair(i, nu) = k_{i-1} - k_i with sum k_i = m.  Raises ValueError if
    ``nu`` has a delta component.
    """
    if nu.dlt != 0:
        raise ValueError("weight has a nonzero delta coefficient")
    ell = nu.ell
    top = Fraction(m) - sum((i * pair(i, nu) for i in range(1, ell + 1)), Fraction(0))
    k_ell = top / (ell + 1)
    ks = []
    for i in range(ell + 1):
        ks.append(k_ell + sum((pair(j, nu) for j in range(i + 1, ell + 1)), Fraction(0)))
    if any(k.denominator != 1 or k < 0 for k in ks):
        return None
    out = tuple(int(k) for k in ks)
    if tuple_to_weight(out) != nu:
        return None
    return out


def weight_sum(ws: Iterable[Weight], ell: int) -> Weight:
    total = Weight.zero(ell)
    for w in ws:
        total = total + w
    return total
