"""Littelmann's path crystal over the affine weight lattice, in exact arithmetic.

A path is stored by its canonical vertex sequence: zero-length segments are
dropped and consecutive segments pointing along the same ray are merged.  Two
paths are reparametrizations of each other exactly when their vertex
sequences agree.  Breakpoint times are derived from cumulative L1 length in
the Lambda/delta basis, which keeps them rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .affine import AffineElement, AffineCrystal
from .crystal import Crystal
from .letters import letter_wt, rho, word_stats
from .weightlat import Weight, frac_from_json, frac_to_json, pair, reflect, simple_root


class PathError(ValueError):
    pass


def _same_ray(u: Weight, w: Weight) -> bool:
    cu = u.lam + (u.dlt,)
    cw = w.lam + (w.dlt,)
    j = next(k for k, c in enumerate(cu) if c != 0)
    ratio = cw[j] / cu[j]
    if ratio <= 0:
        return False
    return all(b == ratio * a for a, b in zip(cu, cw))


def _reduce_vertices(verts: Sequence[Weight]) -> tuple:
    out = [verts[0]]
    for v in verts[1:]:
        if v == out[-1]:
            continue
        if len(out) >= 2 and _same_ray(out[-1] - out[-2], v - out[-1]):
            out[-1] = v
        else:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class PLPath:
    """Canonical piecewise-linear path from 0; ``verts[0]`` is the zero weight."""

    verts: tuple

    @property
    def ell(self) -> int:
        return self.verts[0].ell

    @property
    def end(self) -> Weight:
        return self.verts[-1]

    def times(self) -> list:
        if len(self.verts) == 1:
            return [Fraction(0), Fraction(1)]
        lengths = [(b - a).l1() for a, b in zip(self.verts, self.verts[1:])]
        total = sum(lengths, Fraction(0))
        out = [Fraction(0)]
        acc = Fraction(0)
        for L in lengths:
            acc += L
            out.append(acc / total)
        return out

    def breaks(self) -> list:
        """(t, v) breakpoints, first (0, 0) and last (1, endpoint)."""
        if len(self.verts) == 1:
            return [(Fraction(0), self.verts[0]), (Fraction(1), self.verts[0])]
        return list(zip(self.times(), self.verts))

    def to_json(self) -> dict:
        return {"breaks": [{"t": frac_to_json(t), "v": v.to_json()} for t, v in self.breaks()]}

    @classmethod
    def from_json(cls, data: dict) -> "PLPath":
        return canonicalize([(frac_from_json(b["t"]), Weight.from_json(b["v"])) for b in data["breaks"]])

    @classmethod
    def from_vertices(cls, verts: Sequence[Weight]) -> "PLPath":
        n = len(verts)
        return canonicalize([(Fraction(k, max(n - 1, 1)), v) for k, v in enumerate(verts)])

    def key(self):
        return (len(self.verts), self.verts)


def canonicalize(raw: Sequence[tuple]) -> PLPath:
    """Canonical form of a path given by raw ``(t, v)`` breakpoints."""
    raw = [(Fraction(t), v) for t, v in raw]
    if not raw:
        raise PathError("empty breakpoint list")
    if raw[0][0] != 0 or raw[-1][0] != 1:
        raise PathError("times must run from 0 to 1")
    for (t0, v0), (t1, v1) in zip(raw, raw[1:]):
        if t1 < t0:
            raise PathError("times must be non-decreasing")
        if t1 == t0 and v1 != v0:
            raise PathError("path jumps at a single time")
    start = raw[0][1]
    if any(c != 0 for c in start.lam) or start.dlt != 0:
        raise PathError("path must start at 0")
    if not raw[-1][1].is_lattice():
        raise PathError("endpoint is not a lattice point")
    return PLPath(_reduce_vertices([v for _, v in raw]))


def straight_path(mu: Weight) -> PLPath:
    if not mu.is_lattice():
        raise PathError("endpoint is not a lattice point")
    return PLPath(_reduce_vertices([Weight.zero(mu.ell), mu]))


def trivial_path(ell: int) -> PLPath:
    return PLPath((Weight.zero(ell),))


def h_values(p: PLPath, i: int) -> list:
    return [-pair(i, v) for v in p.verts]


def h_func(p: PLPath, i: int) -> list:
    """(t, h^i(t)) at the breakpoints; h is linear in between."""
    return [(t, -pair(i, v)) for t, v in p.breaks()]


def path_eps(p: PLPath, i: int) -> int:
    return math.floor(max(h_values(p, i)))


def path_phi(p: PLPath, i: int) -> int:
    return path_eps(p, i) + int(pair(i, p.end))


def integrality_check(p: PLPath) -> bool:
    return all(max(h_values(p, i)).denominator == 1 for i in range(p.ell + 1))


# Positions along the vertex sequence are pairs (k, s): the point
# verts[k] + s (verts[k+1] - verts[k]) with 0 <= s < 1, or (n, 0) for the end.

def _hits(h: list, c) -> list:
    out = set()
    for k in range(len(h) - 1):
        a, b = h[k], h[k + 1]
        if a == c:
            out.add((k, Fraction(0)))
        if b == c:
            out.add((k + 1, Fraction(0)))
        if (a < c < b) or (b < c < a):
            out.add((k, (c - a) / (b - a)))
    if len(h) == 1 and h[0] == c:
        out.add((0, Fraction(0)))
    return sorted(out)


def _point(verts, pos) -> Weight:
    k, s = pos
    if s == 0:
        return verts[k]
    return verts[k] + s * (verts[k + 1] - verts[k])


def _transform(p: PLPath, i: int, a, b, tail_shift: Weight) -> PLPath:
    """Reflect the piece between positions a < b about its start and shift
    the remainder of the path by ``tail_shift``."""
    verts = p.verts
    pa, pb = _point(verts, a), _point(verts, b)
    ka = a[0]
    kb, sb = b
    out = list(verts[: ka + 1]) + [pa]
    mid_idx = [j for j in range(ka + 1, len(verts)) if j < kb or (j == kb and sb > 0)]
    for j in mid_idx:
        out.append(reflect(i, verts[j] - pa) + pa)
    out.append(reflect(i, pb - pa) + pa)
    out.extend(v + tail_shift for v in verts[kb + 1:])
    return PLPath(_reduce_vertices(out))


def path_e(p: PLPath, i: int) -> Optional[PLPath]:
    h = h_values(p, i)
    top = math.floor(max(h))
    e_plus = _hits(h, top)[0]
    if e_plus == (0, 0):
        return None
    e_minus = max(x for x in _hits(h, top - 1) if x <= e_plus)
    return _transform(p, i, e_minus, e_plus, simple_root(p.ell, i))


def path_f(p: PLPath, i: int) -> Optional[PLPath]:
    h = h_values(p, i)
    top = math.floor(max(h))
    f_plus = _hits(h, top)[-1]
    if f_plus == (len(h) - 1, 0):
        return None
    f_minus = min(x for x in _hits(h, top - 1) if x >= f_plus)
    return _transform(p, i, f_plus, f_minus, -simple_root(p.ell, i))


def concat(p1: PLPath, p2: PLPath) -> PLPath:
    shift = p1.end
    return PLPath(_reduce_vertices(list(p1.verts) + [shift + v for v in p2.verts[1:]]))


def is_lambda_dominant(p: PLPath, lam: Weight) -> bool:
    return all(pair(i, lam + v) >= 0 for v in p.verts for i in range(p.ell + 1))


def in_dominant_chamber(p: PLPath) -> bool:
    return is_lambda_dominant(p, Weight.zero(p.ell))


# -- the embedding of the affinization ----------------------------------------

def kappa_seq(x: AffineElement) -> list:
    """kappa_0..kappa_m for ``x``; the last value always equals x.z."""
    w = x.word
    m = len(w)
    n_b = word_stats(w).N
    step = Fraction(n_b + x.z - m, m)
    out = [Fraction(0)]
    for s in range(1, m + 1):
        out.append(out[-1] - (rho(w, s) - 1) + step)
    assert out[-1] == x.z, f"kappa_m = {out[-1]} but z = {x.z}"
    return out


def psi_vertices(x: AffineElement, ell: int) -> list:
    kap = kappa_seq(x)
    delta = Weight.null_root(ell)
    verts = [Weight.zero(ell)]
    acc = Weight.zero(ell)
    for s, c in enumerate(x.word, start=1):
        acc = acc + letter_wt(c, ell)
        verts.append(acc + kap[s] * delta)
    return verts


def psi_embed(x: AffineElement, ell: int) -> PLPath:
    """Path through the points sum of the first s letter weights + kappa_s delta."""
    return PLPath.from_vertices(psi_vertices(x, ell))


class PathCrystal(Crystal):
    """Littelmann's path crystal for affine type A_l^(1)."""

    def __init__(self, ell: int):
        if ell < 1:
            raise ValueError("l must be >= 1")
        self.ell = ell

    def e(self, i, x):
        return path_e(x, i)

    def f(self, i, x):
        return path_f(x, i)

    def eps(self, i, x):
        return path_eps(x, i)

    def phi(self, i, x):
        return path_phi(x, i)

    def wt(self, x):
        return x.end

    def key(self, x):
        return x.key()

    def encode(self, x):
        return x.to_json()


def psi_morphism_check(ell: int, m: int, zmin: int, zmax: int):
    """Strict-morphism report for psi on the window (convenience wrapper)."""
    from .affine import window_elements
    from .crystal import check_morphism

    src = AffineCrystal(ell, m)
    return check_morphism(lambda x: psi_embed(x, ell), window_elements(ell, m, zmin, zmax), src, PathCrystal(ell))
