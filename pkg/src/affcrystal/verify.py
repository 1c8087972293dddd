"""Named verification suites: exhaustive or sampled checks of the invariants
of every module at desk scale, each reporting the first counterexample.

A suite is a list of independent cases plus a check function yielding
``(ok, description)`` items.  Cases may run in a process pool; results are
always gathered in case order.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import charfun
from .affine import (
    AffineCrystal,
    aff_e,
    aff_f,
    component_of,
    enumerate_component,
    in_window,
    ladder_down,
    ladder_up,
    source,
    window_elements,
)
from .crystal import apply_monomial, check_morphism, orbit_bfs
from .decomp import decompose, dominance_views, verify_decomposition
from .letters import (
    b_im,
    dominant_subset,
    enumerate_words,
    in_dominant_set,
    letter_counts,
    raise_to_dominant,
    word_e,
    word_eps,
    word_f,
    word_phi,
    word_stats,
    word_wt,
)
from .paths import PathCrystal, kappa_seq, psi_embed, straight_path
from .weightlat import Weight, pair


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        return f"{status} {self.name} ({self.checked} checks){tail}"


def _drain(check: Callable, case) -> tuple:
    n = 0
    for ok, what in check(case):
        n += 1
        if not ok:
            return n, what
    return n, None


def _run_case(args) -> tuple:
    check, case = args
    return _drain(check, case)


# -- maj-n ----------------------------------------------------------------------

def _maj_n(case):
    ell, m = case
    for w in enumerate_words(ell, m):
        st = word_stats(w)
        yield (st.Maj + st.N) % m == 0, f"Maj({w}) = {st.Maj}, N = {st.N}, m = {m}"
        for i in range(ell + 1):
            shift = 1 if i == 0 else 0
            y = word_e(w, i, ell)
            if y is not None:
                yield (word_stats(y).N - st.N + shift) % m == 0, f"N(e_{i} {w}) - N({w}) != -{shift} mod {m}"
            y = word_f(w, i, ell)
            if y is not None:
                yield (word_stats(y).N - st.N - shift) % m == 0, f"N(f_{i} {w}) - N({w}) != +{shift} mod {m}"


# -- counting -------------------------------------------------------------------

def _counting(case):
    ell, m = case
    tally = Counter()
    for w in enumerate_words(ell, m):
        tally[(letter_counts(w, ell), word_stats(w).N % m)] += 1
    for tup in charfun.compositions(m, ell + 1):
        red = charfun.count_by_residue(ell, m, tup)
        for n in range(m):
            brute = tally[(tup, n)]
            closed = charfun.closed_count(ell, m, tup, n)
            coeff = red[(-n) % m]
            yield brute == closed == coeff, f"l={ell} m={m} tuple={tup} N={n}: brute {brute}, closed {closed}, q-coefficient {coeff}"


# -- components -----------------------------------------------------------------

def component_window(m: int) -> tuple:
    """Inner window of width 4m and its 2m padding."""
    return (-2 * m, 2 * m - 1), (-4 * m, 4 * m - 1)


def _components(case):
    ell, m = case
    (lo, hi), (plo, phi_) = component_window(m)
    inner = window_elements(ell, m, lo, hi)
    for x in inner:
        c = component_of(x)
        for i in range(ell + 1):
            for op, name in ((aff_e, "e"), (aff_f, "f")):
                y = op(x, i, ell)
                if y is not None:
                    yield component_of(y) == c, f"{name}_{i} moves {x} from component {c} to {component_of(y)}"
    cr = AffineCrystal(ell, m)
    for n in range(m):
        g = orbit_bfs(cr, [source(m, n)], region=in_window(plo, phi_))
        reached = {x for x in g.nodes if lo <= x.z <= hi}
        expected = set(enumerate_component(ell, m, n, lo, hi))
        yield reached == expected, f"orbit of b_0^m z^{n} in [{plo},{phi_}] misses {sorted(expected - reached)[:3]} or leaks {sorted(reached - expected)[:3]}"
    for k in range(-1, 2):
        for r in (1, 2):
            up = apply_monomial(cr, source(m, k), ladder_up(ell, m) ** r)
            yield up == source(m, k + r * m), f"ladder up^{r} of z^{k} gave {up}"
            down = apply_monomial(cr, source(m, k), ladder_down(ell, m) ** r)
            yield down == source(m, k - r * m), f"ladder down^{r} of z^{k} gave {down}"


def _character(case):
    ell, m = case
    (lo, hi), _ = component_window(m)
    for n in range(m):
        cw = charfun.component_character(ell, m, n, lo, hi)
        counts = Counter((letter_counts(x.word, ell), x.z) for x in enumerate_component(ell, m, n, lo, hi))
        for (tup, z), c in cw.counts.items():
            yield counts[(tup, z)] == c, f"component {n}, tuple {tup}, z={z}: formula {c}, enumeration {counts[(tup, z)]}"
        yield sum(counts.values()) == cw.total(), f"component {n}: totals differ"


# -- psi-morphism ---------------------------------------------------------------

def _psi(case):
    ell, m, zmin, zmax = case
    elems = window_elements(ell, m, zmin, zmax)
    for x in elems:
        kap = kappa_seq(x)
        yield kap[-1] == x.z, f"kappa_m = {kap[-1]} for {x}"
    rep = check_morphism(lambda x: psi_embed(x, ell), elems, AffineCrystal(ell, m), PathCrystal(ell))
    yield rep.passed, f"psi is not a strict morphism: {rep.counterexample}"
    images = {psi_embed(x, ell) for x in elems}
    yield len(images) == len(elems), "psi is not injective on the window"
    delta = Weight.null_root(ell)
    for n in range(zmin, zmax + 1):
        x = source(m, n)
        p = psi_embed(x, ell)
        target = straight_path(word_wt(x.word, ell) + n * delta)
        yield p == target, f"psi(b_0^m z^{n}) = {p.verts} is not straight"


# -- dominance ------------------------------------------------------------------

def small_dominant_weights(ell: int, top: int = 1) -> list:
    """Dominant classical weights with every coefficient at most ``top``, minus 0."""
    out = []
    for coeffs in itertools.product(range(top + 1), repeat=ell + 1):
        if any(coeffs):
            out.append(Weight(tuple(Fraction(c) for c in coeffs), Fraction(0)))
    return out


def _dominance_equiv(case):
    ell, m = case
    for lam in small_dominant_weights(ell):
        for x in window_elements(ell, m, -1, 1):
            views = dominance_views(lam, x, ell)
            yield len(set(views)) == 1, f"lambda={lam}, {x}: conditions disagree {views}"
            yield views[0] == in_dominant_set(x.word, lam), f"lambda={lam}, {x}: word test disagrees"


def _fundamental_dominant(case):
    ell, m = case
    for i in range(ell + 1):
        got = dominant_subset(ell, m, Weight.fundamental(ell, i))
        yield got == [b_im(i, m, ell)], f"dominant subset for Lambda_{i}, l={ell}, m={m}: {got}"


def _append_letter(case):
    ell, m = case
    for w in enumerate_words(ell, m):
        for i in range(ell + 1):
            wi = w + (i,)
            for j in range(ell + 1):
                bump = 1 if (i == j and word_phi(w, i, ell) == 0) else 0
                yield word_eps(wi, j, ell) == word_eps(w, j, ell) + bump, f"eps_{j}({w} (x) b_{i})"


def random_raise_cases(count: int = 200, seed: int = 20240) -> list:
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        ell = rng.randint(1, 3)
        m = rng.randint(1, 6)
        coeffs = [rng.randint(0, 3) for _ in range(ell + 1)]
        if not any(coeffs):
            continue
        lam = Weight(tuple(Fraction(c) for c in coeffs), Fraction(rng.randint(-2, 2)))
        w = tuple(rng.randint(0, ell) for _ in range(m))
        cases.append((w, lam))
    return cases


def _raise_replay(case):
    w, lam = case
    ell = lam.ell
    mono, u = raise_to_dominant(w, lam)
    cur = w
    for _, i, n in reversed(mono.terms):
        expected = word_eps(cur, i, ell) - pair(i, lam)
        yield n > 0 and n == expected, f"raise {w} to lambda={lam}: exponent {n} at e_{i}, formula {expected}"
        for _ in range(n):
            cur = word_e(cur, i, ell)
    yield cur == u and in_dominant_set(u, lam), f"raise {w} to lambda={lam} ended at {u}, replay {cur}"


# -- decomposition --------------------------------------------------------------

def _decomposition(case):
    lam_coeffs, ell, m, depth = case
    lam = Weight(tuple(Fraction(c) for c in lam_coeffs), Fraction(0))
    rep = verify_decomposition(decompose(lam, ell, m, -1, 1), depth)
    yield rep.verified, f"lambda={lam}, l={ell}, m={m}: {'; '.join(rep.failures)}"


def decomposition_lambdas(ell: int) -> list:
    zero = [0] * (ell + 1)
    l0, l1, both = list(zero), list(zero), list(zero)
    l0[0] = 1
    l1[1] = 1
    both[0] = both[1] = 1
    return [tuple(l0), tuple(l1), tuple(both)]


# -- polynomial identities --------------------------------------------------------

def _count_series_identity(case):
    ell, m = case
    for tup in charfun.compositions(m, ell + 1):
        lhs, rhs = charfun.count_series_sides(ell, m, tup)
        yield lhs == rhs, f"polynomial identity fails for tuple {tup}: {lhs} vs {rhs}"


def _c_tilde_projections(case):
    ell, m = case
    for tup in charfun.compositions(m, ell + 1):
        ct = {r: charfun.c_tilde(ell, m, tup, r) for r in charfun.divisors(m)}
        for d in charfun.divisors(m):
            total = charfun.QPoly()
            for r, c in ct.items():
                total = total + c * charfun.project_cyclotomic(charfun.q_int(m // r, r), d)
            want = charfun.multinomial(Fraction(m, d), [Fraction(k, d) for k in tup])
            yield total == charfun.QPoly.const(want), f"tuple {tup}, d={d}: {total} != {want}"


def _multinomial_projection(case):
    d, m = case
    for parts in (2, 3):
        for ks in charfun.compositions(m * d, parts):
            proj = charfun.project_cyclotomic(charfun.q_multinomial(m * d, ks), d)
            if math.gcd(*ks) % d:
                yield proj == charfun.QPoly(), f"projection of [{m * d}; {ks}] mod Phi_{d} is {proj}, not 0"
            else:
                want = charfun.multinomial(m, [k // d for k in ks])
                yield proj == charfun.QPoly.const(want), f"projection of [{m * d}; {ks}] mod Phi_{d} is {proj}, not {want}"


def _cyclotomic_product(m):
    prod = charfun.QPoly.const(1)
    for d in charfun.divisors(m):
        prod = prod * charfun.cyclotomic(d)
    yield prod == charfun.QPoly.monomial(m) - 1, f"product of Phi_d over d | {m} is {prod}"


def _identity_case(case):
    kind, args = case
    return {"series": _count_series_identity, "c-tilde": _c_tilde_projections, "projection": _multinomial_projection, "phi": _cyclotomic_product}[kind](args)


# -- no-highest -----------------------------------------------------------------

def _no_extremal(case):
    ell, m = case
    for w in enumerate_words(ell, m):
        yield any(word_eps(w, i, ell) for i in range(ell + 1)), f"{w} is a highest weight element"
        yield any(word_phi(w, i, ell) for i in range(ell + 1)), f"{w} is a lowest weight element"
        wt = word_wt(w, ell)
        yield sum(pair(i, wt) for i in range(ell + 1)) == 0, f"level of wt {w} is not 0"


# -- registry -------------------------------------------------------------------

def _grid(ell_max, m_max, ell_min=1, m_min=1):
    return [(ell, m) for ell in range(ell_min, ell_max + 1) for m in range(m_min, m_max + 1)]


def _dominance_cases(ell_max, m_max):
    cases = [(_dominance_equiv, c) for c in _grid(min(ell_max, 2), min(m_max, 3))]
    cases += [(_fundamental_dominant, c) for c in _grid(ell_max, m_max)]
    cases += [(_append_letter, c) for c in _grid(ell_max, min(m_max, 4))]
    cases += [(_raise_replay, c) for c in random_raise_cases()]
    return cases


def _identity_cases(ell_max, m_max):
    cases = [(_identity_case, ("series", c)) for c in _grid(ell_max, max(m_max, 8))]
    cases += [(_identity_case, ("c-tilde", c)) for c in _grid(min(ell_max, 2), 12)]
    cases += [(_identity_case, ("projection", (d, m))) for d in range(1, 5) for m in range(1, 13 // d + 1) if m * d <= 12]
    cases += [(_identity_case, ("phi", m)) for m in range(1, 25)]
    return cases


@dataclass(frozen=True)
class Suite:
    name: str
    ell_max: int
    m_max: int
    cases: Callable

    def build(self, ell_max=None, m_max=None) -> list:
        return self.cases(ell_max or self.ell_max, m_max or self.m_max)


SUITES = {
    s.name: s
    for s in [
        Suite("maj-n", 3, 6, lambda L, M: [(_maj_n, c) for c in _grid(L, M)]),
        Suite("counting", 3, 6, lambda L, M: [(_counting, c) for c in _grid(L, M)]),
        Suite("components", 3, 4, lambda L, M: [(_components, c) for c in _grid(L, M)]),
        Suite("character", 3, 4, lambda L, M: [(_character, c) for c in _grid(L, M)]),
        Suite("psi-morphism", 2, 4, lambda L, M: [(_psi, c + (-2, 2)) for c in _grid(L, M)]),
        Suite("dominance", 3, 5, _dominance_cases),
        Suite(
            "decomposition",
            2,
            3,
            lambda L, M: [(_decomposition, (lam, ell, m, 4)) for ell, m in _grid(L, M) for lam in decomposition_lambdas(ell)],
        ),
        Suite("identities", 3, 8, _identity_cases),
        Suite("no-highest", 3, 5, lambda L, M: [(_no_extremal, c) for c in _grid(L, M)]),
    ]
}


def run_suite(name: str, ell_max: Optional[int] = None, m_max: Optional[int] = None, jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    cases = SUITES[name].build(ell_max, m_max)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case, cases))
    else:
        results = [_run_case(c) for c in cases]
    checked = 0
    for n, bad in results:
        checked += n
        if bad is not None:
            return SuiteResult(name, False, checked, bad)
    return SuiteResult(name, True, checked)
