"""The letter crystal B_l, words of B_l(m) and their statistics.

Words are stored in left-to-right tensor order: ``w[0]`` is the leftmost
factor.  The descent statistics index letters from the right (the r-th
letter from the right is ``w[m - r]``); that conversion happens only in
``word_stats`` and ``rho``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .crystal import (
    DEFAULT_BUDGET,
    E,
    F,
    BudgetExceeded,
    Crystal,
    Monomial,
    TensorCrystal,
    apply_monomial,
    tensor_e,
    tensor_eps,
    tensor_f,
    tensor_phi,
)
from .weightlat import Weight, pair, simple_root, tuple_to_weight


# -- the letter crystal --------------------------------------------------------

def letter_e(i: int, j: int, ell: int) -> Optional[int]:
    n = ell + 1
    return (j - 1) % n if (i - j) % n == 0 else None


def letter_f(i: int, j: int, ell: int) -> Optional[int]:
    n = ell + 1
    return i % n if (i - 1 - j) % n == 0 else None


def letter_eps(i: int, j: int, ell: int) -> int:
    return 1 if (i - j) % (ell + 1) == 0 else 0


def letter_phi(i: int, j: int, ell: int) -> int:
    return 1 if (i - 1 - j) % (ell + 1) == 0 else 0


def letter_wt(j: int, ell: int) -> Weight:
    """Lambda_{j+1} - Lambda_j."""
    k = [0] * (ell + 1)
    k[j % (ell + 1)] = 1
    return tuple_to_weight(k)


class LetterCrystal(Crystal):
    def __init__(self, ell: int):
        if ell < 1:
            raise ValueError("l must be >= 1")
        self.ell = ell

    def e(self, i, x):
        return letter_e(i, x, self.ell)

    def f(self, i, x):
        return letter_f(i, x, self.ell)

    def eps(self, i, x):
        return letter_eps(i, x, self.ell)

    def phi(self, i, x):
        return letter_phi(i, x, self.ell)

    def wt(self, x):
        return letter_wt(x, self.ell)

    def key(self, x):
        return x

    def root(self, i):
        # weights of B_l carry no delta part
        return simple_root(self.ell, i).classical()

    def encode(self, x):
        return x


class WordCrystal(TensorCrystal):
    """B_l(m) = B_l tensored m times; elements are tuples of letters."""

    def __init__(self, ell: int, m: int):
        if m < 1:
            raise ValueError("m must be >= 1")
        super().__init__([LetterCrystal(ell)] * m)
        self.m = m

    def wt(self, x):
        return word_wt(x, self.ell)

    def key(self, x):
        return tuple(x)

    def encode(self, x):
        return list(x)


# -- word operators ------------------------------------------------------------

def _letters(ell: int) -> LetterCrystal:
    return LetterCrystal(ell)


def word_e(w: Sequence[int], i: int, ell: int):
    return tensor_e(tuple(w), i, _letters(ell))


def word_f(w: Sequence[int], i: int, ell: int):
    return tensor_f(tuple(w), i, _letters(ell))


def word_eps(w: Sequence[int], i: int, ell: int) -> int:
    return tensor_eps(tuple(w), i, _letters(ell))


def word_phi(w: Sequence[int], i: int, ell: int) -> int:
    return tensor_phi(tuple(w), i, _letters(ell))


def letter_counts(w: Sequence[int], ell: int) -> tuple:
    k = [0] * (ell + 1)
    for c in w:
        k[c] += 1
    return tuple(k)


def word_wt(w: Sequence[int], ell: int) -> Weight:
    return tuple_to_weight(letter_counts(w, ell))


# -- statistics ----------------------------------------------------------------

@dataclass(frozen=True)
class WordStats:
    desc: tuple
    maj_tilde: tuple
    N: int
    Maj: int

    def to_json(self) -> dict:
        return {"desc": list(self.desc), "N": self.N, "Maj": self.Maj}


def word_stats(w: Sequence[int]) -> WordStats:
    m = len(w)
    # i_r = w[m - r] for r = 1..m
    idx = [None] + [w[m - r] for r in range(1, m + 1)]
    desc = tuple(r for r in range(1, m) if idx[r] > idx[r + 1])
    maj_tilde = (0,) + desc + (m,)
    n_stat = sum(r * (maj_tilde[r] - maj_tilde[r - 1]) for r in range(1, len(maj_tilde)))
    return WordStats(desc, maj_tilde, n_stat, sum(desc))


def n_stat(w: Sequence[int]) -> int:
    return word_stats(w).N


def rho(w: Sequence[int], s: int) -> int:
    """The r with n_{r-1} < m - s + 1 <= n_r."""
    m = len(w)
    if not 1 <= s <= m:
        raise ValueError("s out of range")
    nt = word_stats(w).maj_tilde
    target = m - s + 1
    for r in range(1, len(nt)):
        if nt[r - 1] < target <= nt[r]:
            return r
    raise AssertionError("maj_tilde does not cover the position")


# -- enumeration ---------------------------------------------------------------

def enumerate_words(
    ell: int,
    m: int,
    tuple_filter: Optional[Sequence[int]] = None,
    residue: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> list:
    """All words of B_l(m) in lexicographic order, optionally filtered by
    letter multiplicities and by N modulo m."""
    if (ell + 1) ** m > budget:
        raise BudgetExceeded(f"(l+1)^m = {(ell + 1) ** m} exceeds budget {budget}")
    if tuple_filter is not None:
        tuple_filter = tuple(tuple_filter)
        if len(tuple_filter) != ell + 1:
            raise ValueError("tuple length must be l+1")
    out = []
    for w in itertools.product(range(ell + 1), repeat=m):
        if tuple_filter is not None and letter_counts(w, ell) != tuple_filter:
            continue
        if residue is not None and n_stat(w) % m != residue % m:
            continue
        out.append(w)
    return out


def in_dominant_set(w: Sequence[int], lam: Weight) -> bool:
    ell = lam.ell
    if not w:
        return True
    return all(word_eps(w, i, ell) <= pair(i, lam) for i in range(ell + 1))


def dominant_subset(ell: int, m: int, lam: Weight) -> list:
    """Words with eps_i(w) <= pair(i, lam) for all i."""
    if not lam.is_lattice():
        raise ValueError("lambda must be a lattice point")
    return [w for w in enumerate_words(ell, m) if in_dominant_set(w, lam)]


def b_im(i: int, m: int, ell: int) -> tuple:
    """b_i (x) b_{i+1} (x) ... (x) b_{i+m-1}, indices mod l+1."""
    return tuple((i + t) % (ell + 1) for t in range(m))


# -- raising to the dominant set -------------------------------------------------

_MAX_RAISE_STEPS = 100_000


def raise_to_dominant(w: Sequence[int], lam: Weight):
    """Raise ``w`` into the lambda-dominant subset by a monomial in the e_i.

    Repeatedly locate the longest prefix lying in the dominant set, and raise
    by the letter just after it with exponent eps_i(u) - pair(i, lam).  Returns
    ``(monomial, word)``; monomial terms are listed left to right (last step
    first), one term per step.
    """
    ell = lam.ell
    if not lam.is_lattice() or not lam.is_dominant():
        raise ValueError("lambda must be a dominant lattice point")
    if all(pair(i, lam) == 0 for i in range(ell + 1)):
        raise ValueError("lambda must not be a multiple of delta")
    u = tuple(w)
    m = len(u)
    steps = []
    while not in_dominant_set(u, lam):
        s = max(t for t in range(m + 1) if in_dominant_set(u[:t], lam)) if m else 0
        i = u[s]
        exp = word_eps(u, i, ell) - int(pair(i, lam))
        if exp <= 0:
            raise AssertionError(f"non-positive exponent at {u}, index {i}")
        for _ in range(exp):
            u = word_e(u, i, ell)
        steps.append((E, i, exp))
        if len(steps) > _MAX_RAISE_STEPS:
            raise AssertionError("raising did not terminate")
    return Monomial(tuple(reversed(steps))), u


# -- generation from b_0^{(x) m} -------------------------------------------------

@dataclass(frozen=True)
class SourceMonomial:
    monomial: Monomial
    n_f: int


def f_monomial_from_source(w: Sequence[int], ell: int, budget: int = DEFAULT_BUDGET) -> SourceMonomial:
    """Shortest F-monomial sending b_0^{(x) m} to ``w`` (BFS, generator order
    f_0, ..., f_l), with the total exponent of f_0."""
    w = tuple(w)
    m = len(w)
    src = (0,) * m
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == w:
            break
        for i in range(ell + 1):
            y = word_f(x, i, ell)
            if y is not None and y not in prev:
                prev[y] = (x, i)
                queue.append(y)
                if len(prev) > budget:
                    raise BudgetExceeded("F-orbit search exceeded budget")
    if w not in prev:
        raise AssertionError(f"{w} not reachable from b_0^m over F")
    steps = []
    x = w
    while prev[x] is not None:
        x, i = prev[x]
        steps.append((F, i))
    steps.reverse()
    mono = Monomial.from_steps(steps)
    return SourceMonomial(mono, mono.total_exponent(0))


def word_crystal(ell: int, m: int) -> WordCrystal:
    return WordCrystal(ell, m)


__all__ = [
    "LetterCrystal",
    "WordCrystal",
    "WordStats",
    "SourceMonomial",
    "apply_monomial",
    "b_im",
    "dominant_subset",
    "enumerate_words",
    "f_monomial_from_source",
    "in_dominant_set",
    "letter_counts",
    "letter_e",
    "letter_eps",
    "letter_f",
    "letter_phi",
    "letter_wt",
    "n_stat",
    "raise_to_dominant",
    "rho",
    "word_e",
    "word_eps",
    "word_f",
    "word_phi",
    "word_stats",
    "word_wt",
]
