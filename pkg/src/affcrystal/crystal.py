"""Crystal contract, Kashiwara tensor product rule, orbits and checkers.

Operators return ``None`` for the absent element.  Tensor factors are indexed
left to right: factor 1 is the leftmost one.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .weightlat import Weight, simple_root, weight_sum

E = "e"
F = "f"

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class Crystal:
    """Normal crystal over the affine type A index set {0, ..., ell}.

    Subclasses implement ``e``, ``f``, ``eps``, ``wt`` and ``key``; ``phi`` is
    derived from axiom C1 unless overridden.
    """

    ell: int

    def e(self, i: int, x):
        raise NotImplementedError

    def f(self, i: int, x):
        raise NotImplementedError

    def eps(self, i: int, x) -> int:
        raise NotImplementedError

    def phi(self, i: int, x) -> int:
        return self.eps(i, x) + int(self.wt(x).lam[i % (self.ell + 1)])

    def wt(self, x) -> Weight:
        raise NotImplementedError

    def key(self, x):
        """Sort key giving the canonical total order on elements."""
        raise NotImplementedError

    def encode(self, x):
        """JSON-ready encoding of an element."""
        raise NotImplementedError

    @property
    def indices(self) -> range:
        return range(self.ell + 1)

    def apply(self, kind: str, i: int, x):
        return self.e(i, x) if kind == E else self.f(i, x)

    def root(self, i: int) -> Weight:
        """Weight change under e_i."""
        return simple_root(self.ell, i)


def _as_list(crystals, n: int) -> list:
    if isinstance(crystals, Crystal):
        return [crystals] * n
    crystals = list(crystals)
    if len(crystals) != n:
        raise ValueError("one crystal per tensor factor required")
    return crystals


def kashiwara_r(factors: Sequence, i: int, crystals) -> list:
    """The values r^i_k for k = 1..n (returned 0-based)."""
    cs = _as_list(crystals, len(factors))
    out = []
    acc = 0
    for c, b in zip(cs, factors):
        out.append(c.eps(i, b) - acc)
        acc += c.phi(i, b) - c.eps(i, b)
    return out


def tensor_eps(factors: Sequence, i: int, crystals) -> int:
    if not factors:
        raise ValueError("empty tensor product")
    return max(kashiwara_r(factors, i, crystals))


def tensor_phi(factors: Sequence, i: int, crystals) -> int:
    cs = _as_list(crystals, len(factors))
    return tensor_eps(factors, i, cs) + sum(c.phi(i, b) - c.eps(i, b) for c, b in zip(cs, factors))


def tensor_wt(factors: Sequence, crystals) -> Weight:
    cs = _as_list(crystals, len(factors))
    return weight_sum((c.wt(b) for c, b in zip(cs, factors)), cs[0].ell)


def tensor_e(factors: Sequence, i: int, crystals):
    """e_i acts on the leftmost factor where max r^i_k is attained."""
    if not factors:
        raise ValueError("empty tensor product")
    cs = _as_list(crystals, len(factors))
    r = kashiwara_r(factors, i, cs)
    top = max(r)
    k = r.index(top)
    y = cs[k].e(i, factors[k])
    if y is None:
        return None
    return tuple(factors[:k]) + (y,) + tuple(factors[k + 1:])


def tensor_f(factors: Sequence, i: int, crystals):
    """f_i acts on the rightmost factor where max r^i_k is attained."""
    if not factors:
        raise ValueError("empty tensor product")
    cs = _as_list(crystals, len(factors))
    r = kashiwara_r(factors, i, cs)
    top = max(r)
    k = len(r) - 1 - r[::-1].index(top)
    y = cs[k].f(i, factors[k])
    if y is None:
        return None
    return tuple(factors[:k]) + (y,) + tuple(factors[k + 1:])


def two_factor_e(b1, b2, i: int, c1: Crystal, c2: Crystal):
    """e_i on b1 (x) b2 by the two-factor rule."""
    if c1.phi(i, b1) >= c2.eps(i, b2):
        y = c1.e(i, b1)
        return None if y is None else (y, b2)
    y = c2.e(i, b2)
    return None if y is None else (b1, y)


def two_factor_f(b1, b2, i: int, c1: Crystal, c2: Crystal):
    """f_i on b1 (x) b2 by the two-factor rule."""
    if c1.phi(i, b1) > c2.eps(i, b2):
        y = c1.f(i, b1)
        return None if y is None else (y, b2)
    y = c2.f(i, b2)
    return None if y is None else (b1, y)


class TensorCrystal(Crystal):
    """Tensor product of crystals; elements are tuples, one entry per factor."""

    def __init__(self, factors: Sequence[Crystal]):
        factors = list(factors)
        if not factors:
            raise ValueError("empty tensor product")
        ells = {c.ell for c in factors}
        if len(ells) != 1:
            raise ValueError("factors must share the index set")
        self.factors = factors
        self.ell = factors[0].ell

    def e(self, i, x):
        return tensor_e(x, i, self.factors)

    def f(self, i, x):
        return tensor_f(x, i, self.factors)

    def eps(self, i, x):
        return tensor_eps(x, i, self.factors)

    def phi(self, i, x):
        return tensor_phi(x, i, self.factors)

    def wt(self, x):
        return tensor_wt(x, self.factors)

    def key(self, x):
        return tuple(c.key(b) for c, b in zip(self.factors, x))

    def encode(self, x):
        return [c.encode(b) for c, b in zip(self.factors, x)]

    def root(self, i):
        return self.factors[0].root(i)


# -- monomials ---------------------------------------------------------------

@dataclass(frozen=True)
class Monomial:
    """Word in the e_i, f_i written left to right, applied right to left.

    ``terms`` is a tuple of ``(kind, i, exponent)`` with kind ``"e"`` or ``"f"``.
    """

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((k, int(i), int(n)) for k, i, n in self.terms)
        for k, _, n in terms:
            if k not in (E, F):
                raise ValueError(f"unknown generator kind {k!r}")
            if n <= 0:
                raise ValueError("exponents must be positive")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_steps(cls, steps: Iterable[tuple]) -> "Monomial":
        """Build from single-step generators listed in application order."""
        terms: list = []
        for kind, i in steps:
            if terms and terms[-1][0] == kind and terms[-1][1] == i:
                terms[-1] = (kind, i, terms[-1][2] + 1)
            else:
                terms.append((kind, i, 1))
        return cls(tuple(reversed(terms)))

    def steps(self) -> list:
        """Single generators in application order (rightmost first)."""
        out = []
        for kind, i, n in reversed(self.terms):
            out.extend([(kind, i)] * n)
        return out

    def __mul__(self, other: "Monomial") -> "Monomial":
        """Composition: ``(a * b)`` applies ``b`` first."""
        return Monomial.from_steps(other.steps() + self.steps())

    def __pow__(self, r: int) -> "Monomial":
        out = Monomial()
        for _ in range(r):
            out = out * self
        return out

    def kinds(self) -> set:
        return {k for k, _, _ in self.terms}

    def total_exponent(self, i: int) -> int:
        return sum(n for _, j, n in self.terms if j == i)

    def __len__(self):
        return sum(n for _, _, n in self.terms)

    def __str__(self):
        if not self.terms:
            return "1"
        return " ".join(f"{k}{i}^{n}" if n > 1 else f"{k}{i}" for k, i, n in self.terms)


def apply_monomial(crystal: Crystal, x, mono: Monomial):
    for kind, i in mono.steps():
        if x is None:
            return None
        x = crystal.apply(kind, i, x)
    return x


# -- orbits ------------------------------------------------------------------

def all_generators(ell: int, kinds: str = "fe") -> list:
    gens = []
    if F in kinds:
        gens += [(F, i) for i in range(ell + 1)]
    if E in kinds:
        gens += [(E, i) for i in range(ell + 1)]
    return gens


@dataclass
class CrystalGraph:
    crystal: Crystal
    nodes: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    expanded: set = field(default_factory=set)
    generators: list = field(default_factory=list)
    truncation: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        self._node_set = set(self.nodes)

    def __contains__(self, x):
        return x in self._node_set

    def __len__(self):
        return len(self.nodes)

    def to_json(self) -> dict:
        enc = self.crystal.encode
        return {
            "nodes": [enc(x) for x in self.nodes],
            "boundary": [enc(x) for x in self.boundary],
            "edges": [[enc(a), enc(b), i] for a, b, i in self.edges],
            "seeds": [enc(x) for x in self.seeds],
            "truncation": self.truncation,
        }

    def to_dot(self) -> str:
        enc = lambda x: json.dumps(self.crystal.encode(x), separators=(",", ":"))
        ids = {}
        lines = ["digraph crystal {"]
        for x in self.nodes:
            ids[x] = f"n{len(ids)}"
            lines.append(f"  {ids[x]} [label={json.dumps(enc(x))}];")
        for x in self.boundary:
            ids[x] = f"n{len(ids)}"
            lines.append(f"  {ids[x]} [label={json.dumps(enc(x))}, style=dashed];")
        for a, b, i in self.edges:
            style = ", style=dashed" if (a not in self._node_set or b not in self._node_set) else ""
            lines.append(f'  {ids[a]} -> {ids[b]} [label="f{i}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit_bfs(
    crystal: Crystal,
    seeds: Iterable,
    generators: Optional[Sequence[tuple]] = None,
    depth: Optional[int] = None,
    region: Optional[Callable[[Hashable], bool]] = None,
    budget: int = DEFAULT_BUDGET,
    region_desc: Optional[dict] = None,
) -> CrystalGraph:
    """Breadth-first orbit of ``seeds`` under ``generators``.

    Each level is processed in canonical element order and the generators in
    the fixed order f_0..f_l, e_0..e_l.  Elements failing ``region`` become
    boundary markers and are not expanded.
    """
    if depth is None and region is None:
        raise ValueError("orbit_bfs needs a depth bound or a region")
    if generators is None:
        generators = all_generators(crystal.ell)
    order = {g: n for n, g in enumerate(all_generators(crystal.ell))}
    generators = sorted(set(generators), key=lambda g: order[g])
    inside = region or (lambda x: True)

    seeds = sorted(set(seeds), key=crystal.key)
    visited = set()
    boundary = set()
    edges = set()
    expanded = set()
    level = []
    for s in seeds:
        if inside(s):
            visited.add(s)
            level.append(s)
        else:
            boundary.add(s)
    d = 0
    while level and (depth is None or d < depth):
        nxt = []
        for x in sorted(level, key=crystal.key):
            expanded.add(x)
            for kind, i in generators:
                y = crystal.apply(kind, i, x)
                if y is None:
                    continue
                edges.add((x, y, i) if kind == F else (y, x, i))
                if y in visited or y in boundary:
                    continue
                if inside(y):
                    visited.add(y)
                    nxt.append(y)
                    if len(visited) > budget:
                        raise BudgetExceeded(f"orbit exceeded node budget {budget}")
                else:
                    boundary.add(y)
        level = nxt
        d += 1

    key = crystal.key
    nodes = sorted(visited, key=key)
    truncation = {"depth": depth, "generators": [f"{k}{i}" for k, i in generators]}
    if region_desc is not None:
        truncation["region"] = region_desc
    elif region is not None:
        truncation["region"] = "predicate"
    g = CrystalGraph(
        crystal=crystal,
        nodes=nodes,
        boundary=sorted(boundary, key=key),
        edges=sorted(edges, key=lambda t: (key(t[0]), key(t[1]), t[2])),
        seeds=seeds,
        expanded=expanded,
        generators=list(generators),
        truncation=truncation,
        weights={x: crystal.wt(x) for x in nodes},
    )
    return g


# -- checkers ----------------------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    checked: int = 0
    skipped: int = 0
    counterexample: Optional[str] = None

    def __bool__(self):
        return self.passed


def check_normal(g: CrystalGraph) -> CheckReport:
    """Compare eps/phi with string lengths for every complete i-string."""
    c = g.crystal
    gens = set(g.generators)
    f_out = {}
    f_in = {}
    for a, b, i in g.edges:
        f_out[(a, i)] = b
        f_in[(b, i)] = a
    checked = skipped = 0

    def walk(x, i, table, kind):
        n = 0
        while True:
            y = table.get((x, i))
            if y is None:
                # absence is only known for an expanded node that tried this generator
                if x in g.expanded and (kind, i) in gens:
                    return n
                return None
            if y not in g:
                return None
            x = y
            n += 1

    for x in g.nodes:
        for i in c.indices:
            up = walk(x, i, f_in, E)
            down = walk(x, i, f_out, F)
            if up is None or down is None:
                skipped += 1
                continue
            checked += 1
            if c.eps(i, x) != up or c.phi(i, x) != down:
                return CheckReport(
                    False, checked, skipped,
                    f"{c.encode(x)} i={i}: eps={c.eps(i, x)} vs {up}, phi={c.phi(i, x)} vs {down}",
                )
    return CheckReport(True, checked, skipped)


def check_crystal_axioms(crystal: Crystal, sample: Iterable) -> CheckReport:
    """C1-C3 on a sample of elements."""
    checked = 0
    for x in sample:
        w = crystal.wt(x)
        for i in crystal.indices:
            checked += 1
            if crystal.phi(i, x) != crystal.eps(i, x) + w.lam[i]:
                return CheckReport(False, checked, 0, f"C1 fails at {crystal.encode(x)}, i={i}")
            a = crystal.root(i)
            y = crystal.e(i, x)
            if y is not None:
                if crystal.f(i, y) != x or crystal.wt(y) != w + a or crystal.eps(i, y) != crystal.eps(i, x) - 1:
                    return CheckReport(False, checked, 0, f"C2/C3 (e) fails at {crystal.encode(x)}, i={i}")
            y = crystal.f(i, x)
            if y is not None:
                if crystal.e(i, y) != x or crystal.wt(y) != w - a or crystal.eps(i, y) != crystal.eps(i, x) + 1:
                    return CheckReport(False, checked, 0, f"C2/C3 (f) fails at {crystal.encode(x)}, i={i}")
    return CheckReport(True, checked)


def check_morphism(
    mapping: Callable,
    sample: Iterable,
    source: Crystal,
    target: Crystal,
    generators: Optional[Sequence[tuple]] = None,
) -> CheckReport:
    """Strict morphism test: wt and eps preserved, e_i/f_i commute on ``sample``."""
    if generators is None:
        generators = all_generators(source.ell)
    checked = 0
    for x in sample:
        px = mapping(x)
        if px is None:
            continue
        checked += 1
        if target.wt(px) != source.wt(x):
            return CheckReport(False, checked, 0, f"wt differs at {source.encode(x)}")
        for i in source.indices:
            if target.eps(i, px) != source.eps(i, x):
                return CheckReport(False, checked, 0, f"eps_{i} differs at {source.encode(x)}")
        for kind, i in generators:
            y = source.apply(kind, i, x)
            lhs = None if y is None else mapping(y)
            rhs = target.apply(kind, i, px)
            if lhs != rhs:
                return CheckReport(
                    False, checked, 0,
                    f"{kind}{i} does not commute at {source.encode(x)}",
                )
    return CheckReport(True, checked)


def canonical_coding(g: CrystalGraph, root) -> tuple:
    """BFS coding of the connected graph from ``root``: labelled edges and
    weights relative to the root weight, with boundary flags."""
    if root not in g:
        raise ValueError("root is not a node of the graph")
    out_e = {}
    in_e = {}
    for a, b, i in g.edges:
        out_e.setdefault(a, []).append((i, b))
        in_e.setdefault(b, []).append((i, a))
    idx = {root: 0}
    order = [root]
    queue = deque([root])
    coded_edges = []
    while queue:
        x = queue.popleft()
        nbrs = [(F, i, y) for i, y in sorted(out_e.get(x, []), key=lambda t: t[0])]
        nbrs += [(E, i, y) for i, y in sorted(in_e.get(x, []), key=lambda t: t[0])]
        for kind, i, y in nbrs:
            if y not in idx:
                idx[y] = len(order)
                order.append(y)
                queue.append(y)
            if kind == F:
                coded_edges.append((idx[x], idx[y], i))
    w0 = g.crystal.wt(root)
    weights = tuple(g.crystal.wt(x) - w0 for x in order)
    flags = tuple(x in g for x in order)
    return (tuple(sorted(set(coded_edges))), weights, flags)


def graphs_isomorphic(g1: CrystalGraph, g2: CrystalGraph, root1, root2) -> bool:
    if g1.truncation != g2.truncation:
        raise ValueError("graphs were built with different truncations")
    return canonical_coding(g1, root1) == canonical_coding(g2, root2)
