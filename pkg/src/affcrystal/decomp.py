"""Highest weight path crystals B(lambda) and the decomposition of
B(lambda) (x) B^_l(m) into highest weight components.

Tensor elements are pairs ``(path, AffineElement)``: the first factor is a
path in B(lambda), the second an element of the affinization, whose path
image is ``psi_embed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .affine import AffineCrystal, AffineElement, aff_wt, window_elements
from .crystal import (
    DEFAULT_BUDGET,
    E,
    F,
    CrystalGraph,
    Monomial,
    TensorCrystal,
    all_generators,
    graphs_isomorphic,
    orbit_bfs,
    tensor_eps,
)
from .letters import b_im, dominant_subset, in_dominant_set, raise_to_dominant
from .paths import (
    PathCrystal,
    concat,
    in_dominant_chamber,
    is_lambda_dominant,
    path_e,
    path_eps,
    psi_embed,
    straight_path,
)
from .weightlat import Weight, pair


class TruncationExceeded(RuntimeError):
    pass


def check_lambda(lam: Weight) -> None:
    if not lam.is_lattice():
        raise ValueError("lambda must be a lattice point")
    if not lam.is_dominant():
        raise ValueError("lambda must be dominant")
    if lam.in_z_delta():
        raise ValueError("lambda must not be a multiple of delta")


def highest_path_crystal(lam: Weight, depth: int, budget: int = DEFAULT_BUDGET) -> CrystalGraph:
    """F-orbit of the straight path to lambda, down to the given depth."""
    check_lambda(lam)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    pc = PathCrystal(lam.ell)
    return orbit_bfs(pc, [straight_path(lam)], all_generators(lam.ell, F), depth=depth, budget=budget)


def lambda_dominant_affine(lam: Weight, ell: int, m: int, zmin: int, zmax: int) -> list:
    check_lambda(lam)
    words = dominant_subset(ell, m, lam)
    out = []
    for z in range(zmin, zmax + 1):
        for w in words:
            x = AffineElement(w, z)
            assert is_lambda_dominant(psi_embed(x, ell), lam), f"psi({w}, {z}) is not lambda-dominant"
            out.append(x)
    return out


@dataclass(frozen=True)
class Summand:
    word: tuple
    z: int
    highest: Weight

    def to_json(self) -> dict:
        return {"word": list(self.word), "z": self.z, "highest": self.highest.to_json()}


@dataclass
class DecompositionReport:
    lam: Weight
    ell: int
    m: int
    zmin: int
    zmax: int
    summands: list = field(default_factory=list)
    verified: Optional[bool] = None
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "l": self.ell,
            "m": self.m,
            "window": [self.zmin, self.zmax],
            "summands": [s.to_json() for s in self.summands],
            "verified": bool(self.verified),
        }


def decompose(lam: Weight, ell: int, m: int, zmin: int, zmax: int) -> DecompositionReport:
    """One summand B(lambda + wt) per lambda-dominant element in the window."""
    rep = DecompositionReport(lam, ell, m, zmin, zmax)
    for x in lambda_dominant_affine(lam, ell, m, zmin, zmax):
        rep.summands.append(Summand(x.word, x.z, lam + aff_wt(x, ell)))
    if zmin <= zmax:
        assert rep.summands, "no lambda-dominant element in a non-empty window"
    return rep


def fundamental_decompose(i: int, ell: int, m: int, zmin: int, zmax: int) -> DecompositionReport:
    """Summands B(Lambda_{i+m} + k delta), k in the window."""
    lam = Weight.fundamental(ell, i)
    top = Weight.fundamental(ell, i + m)
    delta = Weight.null_root(ell)
    rep = DecompositionReport(lam, ell, m, zmin, zmax)
    w = b_im(i, m, ell)
    for k in range(zmin, zmax + 1):
        rep.summands.append(Summand(w, k, top + k * delta))
    general = decompose(lam, ell, m, zmin, zmax)
    assert general.summands == rep.summands, "fundamental decomposition disagrees with the general one"
    return rep


def tensor_crystal(ell: int, m: int) -> TensorCrystal:
    return TensorCrystal([PathCrystal(ell), AffineCrystal(ell, m)])


@dataclass(frozen=True)
class HighestPair:
    first: object
    element: AffineElement

    def path(self, ell: int):
        return psi_embed(self.element, ell)


def tensor_highest_elements(lam: Weight, ell: int, m: int, zmin: int, zmax: int, depth: int) -> list:
    """Pairs (b, x) with b in the depth-truncated B(lambda) and x in the
    window such that every tensor eps_i vanishes."""
    g = highest_path_crystal(lam, depth)
    tc = tensor_crystal(ell, m)
    found = []
    for b in g.nodes:
        for x in window_elements(ell, m, zmin, zmax):
            if all(tensor_eps((b, x), i, tc.factors) == 0 for i in range(ell + 1)):
                found.append(HighestPair(b, x))
    return found


def dominance_views(lam: Weight, x: AffineElement, ell: int) -> tuple:
    """The four conditions characterizing highest tensor pairs, each computed
    on its own: tensor eps of b_lambda (x) psi(x) in the path crystal, path
    eps bounded by lambda, breakpoint dominance, and the concatenation lying
    in the dominant chamber."""
    bl = straight_path(lam)
    p = psi_embed(x, ell)
    pc = PathCrystal(ell)
    cond_i = all(tensor_eps((bl, p), i, pc) == 0 for i in range(ell + 1))
    cond_ii = all(path_eps(p, i) <= pair(i, lam) for i in range(ell + 1))
    cond_iii = is_lambda_dominant(p, lam)
    cond_iv = in_dominant_chamber(concat(bl, p))
    return cond_i, cond_ii, cond_iii, cond_iv


def raise_tensor(b, x: AffineElement, lam: Weight, max_steps: int = 10_000):
    """Raise ``b (x) x`` to a highest pair ``b_lambda (x) x'`` by e-operators.

    The B(lambda) factor is raised first: e_j^{k+1} with
    k = max(0, eps_j(x) - phi_j(b)) moves only one step on that factor.  The
    affine factor is then raised by the dominant-raising monomial, each power
    e_j^{m} acting on the second factor alone because eps_j(b_lambda) = 0.
    Returns ``(monomial, (b_lambda, x'))``.
    """
    check_lambda(lam)
    ell = lam.ell
    tc = tensor_crystal(ell, len(x.word))
    pc, ac = tc.factors
    bl = straight_path(lam)
    terms = []
    cur = (b, x)
    steps = 0
    while True:
        js = [j for j in range(ell + 1) if pc.eps(j, cur[0]) > 0]
        if not js:
            break
        j = js[0]
        k = max(0, ac.eps(j, cur[1]) - pc.phi(j, cur[0]))
        target = path_e(cur[0], j)
        for _ in range(k + 1):
            cur = tc.e(j, cur)
        assert cur[0] == target, "first factor did not move by a single e_j"
        terms.append((E, j, k + 1))
        steps += k + 1
        if steps > max_steps:
            raise TruncationExceeded("raising the B(lambda) factor exceeded the step limit")
    assert cur[0] == bl, "raised first factor is not the straight path"
    mono, _ = raise_to_dominant(cur[1].word, lam)
    for kind, j, n in reversed(mono.terms):
        assert tensor_eps(cur, j, tc.factors) == n
        for _ in range(n):
            cur = tc.e(j, cur)
        assert cur[0] == bl, "e_j acted on the B(lambda) factor"
        terms.append((kind, j, n))
    assert in_dominant_set(cur[1].word, lam)
    return Monomial(tuple(reversed(terms))), cur


def summand_orbits(lam: Weight, x: AffineElement, depth: int) -> tuple:
    """Depth-truncated F-orbits of b_lambda (x) x and of b_{lambda + wt x}."""
    ell = lam.ell
    tc = tensor_crystal(ell, len(x.word))
    gens = all_generators(ell, F)
    g1 = orbit_bfs(tc, [(straight_path(lam), x)], gens, depth=depth)
    g2 = orbit_bfs(PathCrystal(ell), [straight_path(lam + aff_wt(x, ell))], gens, depth=depth)
    return g1, g2


def verify_decomposition(rep: DecompositionReport, depth: int, raise_depth: Optional[int] = None) -> DecompositionReport:
    """Truncated checks of the decomposition; sets ``rep.verified``.

    - the highest pairs found by scanning equal the predicted set;
    - each summand's orbit is isomorphic to the orbit of B(highest);
    - elements near each highest pair raise back to it.
    """
    lam, ell, m = rep.lam, rep.ell, rep.m
    if raise_depth is None:
        raise_depth = min(depth, 3)
    failures = []
    found = tensor_highest_elements(lam, ell, m, rep.zmin, rep.zmax, depth)
    bl = straight_path(lam)
    predicted = {(bl, AffineElement(s.word, s.z)) for s in rep.summands}
    got = {(h.first, h.element) for h in found}
    if got != predicted:
        failures.append("highest pairs differ from the predicted set")
    for s in rep.summands:
        x = AffineElement(s.word, s.z)
        g1, g2 = summand_orbits(lam, x, depth)
        if not graphs_isomorphic(g1, g2, g1.seeds[0], g2.seeds[0]):
            failures.append(f"orbit of summand {s.word}@{s.z} is not isomorphic to B({s.highest})")
        near = g1 if raise_depth == depth else summand_orbits(lam, x, raise_depth)[0]
        for b, y in near.nodes:
            _, top = raise_tensor(b, y, lam)
            if top != (bl, x):
                failures.append(f"{y} with first factor at depth <= {raise_depth} raised to {top[1]}, not {x}")
                break
    rep.failures = failures
    rep.verified = not failures
    return rep
