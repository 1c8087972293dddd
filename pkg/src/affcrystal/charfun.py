"""Exact counting of B_l(m) by weight and N-residue.

Three independent routes give the number of words of a given letter tuple
whose N-statistic lies in a residue class: brute enumeration, the
q-multinomial folded modulo q^m - 1, and the Euler/Moebius closed form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from .letters import enumerate_words
from .weightlat import frac_to_json


# -- number theory -------------------------------------------------------------

def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return int(sympy.totient(d))


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return int(sympy.mobius(d))


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def phi_r(d: int, r: int) -> int:
    """phi(d) mu(d/g) / phi(d/g) with g = gcd(d, r)."""
    g = math.gcd(d, r)
    num = euler_phi(d) * moebius(d // g)
    den = euler_phi(d // g)
    q, rem = divmod(num, den)
    assert rem == 0, "phi_r quotient is not integral"
    return q


def multinomial(n, parts: Sequence) -> int:
    """n! / prod(parts!), zero unless every entry is a non-negative integer
    and the parts sum to n."""
    vals = [Fraction(n)] + [Fraction(p) for p in parts]
    if any(v.denominator != 1 or v < 0 for v in vals):
        return 0
    n = int(vals[0])
    ps = [int(v) for v in vals[1:]]
    if sum(ps) != n:
        return 0
    out = math.factorial(n)
    for p in ps:
        out //= math.factorial(p)
    return out


# -- polynomials in q ----------------------------------------------------------

def _trim(cs) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


@dataclass(frozen=True)
class QPoly:
    """Dense polynomial in q, lowest degree first; zero is ``()``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(_norm(c) for c in self.coeffs))

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "QPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for b, y in enumerate(other.coeffs):
                out[a + b] += x * y
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        integral = lead in (1, -1) and all(isinstance(c, int) for c in self.coeffs + other.coeffs)
        # monic integer divisors keep everything in int arithmetic
        rem = list(self.coeffs) if integral else [Fraction(c) for c in self.coeffs]
        lead = lead if integral else Fraction(lead)
        dq = other.degree
        quo = [0] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * lead if integral else rem[k] / lead
            if c == 0:
                continue
            quo[k - dq] = c
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] -= c * y
        return QPoly(tuple(quo)), QPoly(tuple(rem[:dq]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "QPoly":
        q, r = divmod(self, other)
        assert not r.coeffs, "inexact polynomial division"
        return q

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def substitute_power(self, r: int) -> "QPoly":
        """p(q^r)."""
        out = [0] * (r * self.degree + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[k * r] = c
        return QPoly(tuple(out))

    def to_json(self) -> list:
        return [frac_to_json(Fraction(c)) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mon and c == 1:
                terms.append(mon)
            elif mon and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}{mon}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    return QPoly.const(x)


Q = QPoly.monomial(1)


def q_int(n: int, r: int = 1) -> QPoly:
    """[n]_{q^r} = 1 + q^r + ... + q^{(n-1) r}."""
    return QPoly(tuple(1 if k % r == 0 else 0 for k in range(r * (n - 1) + 1))) if n > 0 else QPoly()


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    out = QPoly.const(1)
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


def q_multinomial(m: int, parts: Sequence[int]) -> QPoly:
    """[m]! / prod [k]!, or the zero polynomial when the parts do not sum to m."""
    if any(p < 0 for p in parts):
        raise ValueError("parts must be non-negative")
    if sum(parts) != m:
        return QPoly()
    out = q_factorial(m)
    for p in parts:
        out = out.exact_div(q_factorial(p))
    return out


def reduce_mod_qm1(p: QPoly, m: int) -> QPoly:
    """Remainder modulo q^m - 1: fold degree k onto k mod m."""
    if m < 1:
        raise ValueError("m must be positive")
    out = [0] * m
    for k, c in enumerate(p.coeffs):
        out[k % m] += c
    return QPoly(tuple(out))


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> QPoly:
    """Phi_d by dividing q^d - 1 by Phi_e for the proper divisors e of d."""
    if d < 1:
        raise ValueError("d must be positive")
    p = QPoly.monomial(d) - 1
    for e in divisors(d):
        if e < d:
            p = p.exact_div(cyclotomic(e))
    return p


def project_cyclotomic(p: QPoly, d: int) -> QPoly:
    """Image of ``p`` in Q[q]/(Phi_d), as the remainder of degree < phi(d)."""
    return p % cyclotomic(d)


# -- counting --------------------------------------------------------------------

def _check_tuple(ell: int, m: int, tup: Sequence[int]) -> tuple:
    tup = tuple(int(k) for k in tup)
    if len(tup) != ell + 1:
        raise ValueError("tuple length must be l+1")
    if any(k < 0 for k in tup) or sum(tup) != m:
        raise ValueError("tuple entries must be non-negative and sum to m")
    return tup


def count_by_residue(ell: int, m: int, tup: Sequence[int]) -> list:
    """Entry n is the number of words of the tuple with N = -n (mod m)."""
    tup = _check_tuple(ell, m, tup)
    red = reduce_mod_qm1(q_multinomial(m, tup), m)
    return [red.coeff(n) for n in range(m)]


def c_value(tup: Sequence[int], n: int) -> Fraction:
    """(1/r) sum_{d | r} phi_n(d) multinomial(r/d; tup/d) with r = sum(tup)."""
    r = sum(tup)
    total = Fraction(0)
    for d in divisors(r):
        total += phi_r(d, n) * multinomial(Fraction(r, d), [Fraction(k, d) for k in tup])
    return total / r


def closed_count(ell: int, m: int, tup: Sequence[int], n: int) -> int:
    """Number of words of the tuple with N = n (mod m), in closed form."""
    tup = _check_tuple(ell, m, tup)
    g = math.gcd(*tup)
    total = 0
    for d in divisors(g):
        total += phi_r(d, -n) * multinomial(m // d, [k // d for k in tup])
    q, rem = divmod(total, m)
    assert rem == 0, "closed form is not integral"
    return q


def brute_count(ell: int, m: int, tup: Sequence[int], n: int) -> int:
    """Enumerate words of the tuple with N = n (mod m)."""
    tup = _check_tuple(ell, m, tup)
    return len(enumerate_words(ell, m, tuple_filter=tup, residue=n % m))


def c_tilde(ell: int, m: int, tup: Sequence[int], d: int) -> Fraction:
    """(d/m) sum_{d' : d d' | m} mu(d') multinomial(m/(d d'); tup/(d d'))."""
    tup = _check_tuple(ell, m, tup)
    if m % d:
        raise ValueError("d must divide m")
    total = 0
    for dd in divisors(m // d):
        s = d * dd
        total += moebius(dd) * multinomial(Fraction(m, s), [Fraction(k, s) for k in tup])
    return Fraction(d, m) * total


def count_series_sides(ell: int, m: int, tup: Sequence[int]) -> tuple:
    """(sum_n closed_count(n) q^n, sum_{d|m} c_tilde(d) [m/d]_{q^d})."""
    lhs = QPoly(tuple(closed_count(ell, m, tup, n) for n in range(m)))
    rhs = QPoly()
    for d in divisors(m):
        rhs = rhs + c_tilde(ell, m, tup, d) * q_int(m // d, d)
    return lhs, rhs


def compositions(total: int, parts: int) -> Iterable[tuple]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


# -- component characters ----------------------------------------------------------

METHODS = ("closed", "qpoly", "brute")


class MethodDisagreement(AssertionError):
    pass


@dataclass
class CharacterWindow:
    ell: int
    m: int
    component: int
    zmin: int
    zmax: int
    counts: dict = field(default_factory=dict)

    def entries(self) -> list:
        return [
            {"tuple": list(t), "z": z, "count": c}
            for (t, z), c in sorted(self.counts.items(), key=lambda kv: (kv[0][1], [-k for k in kv[0][0]]))
        ]

    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "l": self.ell,
            "m": self.m,
            "component": self.component,
            "window": [self.zmin, self.zmax],
            "entries": self.entries(),
        }

    def to_table(self) -> str:
        rows = [(",".join(map(str, e["tuple"])), str(e["z"]), str(e["count"])) for e in self.entries()]
        head = ("tuple", "z", "count")
        widths = [max(len(r[c]) for r in rows + [head]) for c in range(3)]
        fmt = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths))
        return "\n".join([fmt(head)] + [fmt(r) for r in rows]) + "\n"


def residue_count(ell: int, m: int, tup: Sequence[int], s: int, method: str = "closed") -> int:
    """Words of the tuple in the N-residue class ``s``, by the chosen method."""
    s %= m
    if method == "closed":
        return closed_count(ell, m, tup, s)
    if method == "qpoly":
        return count_by_residue(ell, m, tup)[(-s) % m]
    if method == "brute":
        return brute_count(ell, m, tup, s)
    raise ValueError(f"unknown method {method!r}")


def component_character(ell: int, m: int, n: int, zmin: int, zmax: int, method: str = "closed") -> CharacterWindow:
    """Counts of component ``n`` at classical weight ``tuple`` and z in the window.

    The chosen method is always cross-checked against the closed form and the
    reduced q-multinomial; a mismatch raises ``MethodDisagreement``.
    """
    if not 0 <= n < m:
        raise ValueError("component must satisfy 0 <= n < m")
    cw = CharacterWindow(ell, m, n, zmin, zmax)
    for tup in compositions(m, ell + 1):
        per_residue = {}
        for z in range(zmin, zmax + 1):
            s = (n - z) % m
            if s not in per_residue:
                vals = {meth: residue_count(ell, m, tup, s, meth) for meth in {"closed", "qpoly", method}}
                if len(set(vals.values())) != 1:
                    raise MethodDisagreement(f"tuple {tup}, residue {s}: {vals}")
                per_residue[s] = vals[method]
            cw.counts[(tup, z)] = per_residue[s]
    return cw
