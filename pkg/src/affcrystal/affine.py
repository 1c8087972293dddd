"""The affinization of B_l(m): words paired with a power of z."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .crystal import DEFAULT_BUDGET, BudgetExceeded, Crystal, E, F, Monomial
from .letters import enumerate_words, n_stat, word_e, word_eps, word_f, word_phi, word_wt
from .weightlat import Weight


@dataclass(frozen=True, order=True)
class AffineElement:
    word: tuple
    z: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(c) for c in self.word))
        object.__setattr__(self, "z", int(self.z))

    def to_json(self) -> dict:
        return {"word": list(self.word), "z": self.z}

    @classmethod
    def from_json(cls, data: dict) -> "AffineElement":
        return cls(tuple(data["word"]), data["z"])


def aff_e(x: AffineElement, i: int, ell: int) -> Optional[AffineElement]:
    y = word_e(x.word, i, ell)
    if y is None:
        return None
    return AffineElement(y, x.z + (1 if i % (ell + 1) == 0 else 0))


def aff_f(x: AffineElement, i: int, ell: int) -> Optional[AffineElement]:
    y = word_f(x.word, i, ell)
    if y is None:
        return None
    return AffineElement(y, x.z - (1 if i % (ell + 1) == 0 else 0))


def aff_wt(x: AffineElement, ell: int) -> Weight:
    return word_wt(x.word, ell) + x.z * Weight.null_root(ell)


def component_of(x: AffineElement) -> int:
    """Index n of the indecomposable component containing ``x``."""
    m = len(x.word)
    return (n_stat(x.word) + x.z) % m


class AffineCrystal(Crystal):
    def __init__(self, ell: int, m: int):
        if ell < 1 or m < 1:
            raise ValueError("need l >= 1 and m >= 1")
        self.ell = ell
        self.m = m

    def e(self, i, x):
        return aff_e(x, i, self.ell)

    def f(self, i, x):
        return aff_f(x, i, self.ell)

    def eps(self, i, x):
        return word_eps(x.word, i, self.ell)

    def phi(self, i, x):
        return word_phi(x.word, i, self.ell)

    def wt(self, x):
        return aff_wt(x, self.ell)

    def key(self, x):
        return (x.z, x.word)

    def encode(self, x):
        return x.to_json()


def window_elements(ell: int, m: int, zmin: int, zmax: int, budget: int = DEFAULT_BUDGET) -> list:
    words = enumerate_words(ell, m, budget=budget)
    if len(words) * max(0, zmax - zmin + 1) > budget:
        raise BudgetExceeded("window enumeration exceeds budget")
    return [AffineElement(w, z) for z in range(zmin, zmax + 1) for w in words]


def enumerate_component(ell: int, m: int, n: int, zmin: int, zmax: int, budget: int = DEFAULT_BUDGET) -> list:
    """Elements of component ``n`` with z in [zmin, zmax], ordered by (z, word)."""
    return [x for x in window_elements(ell, m, zmin, zmax, budget) if component_of(x) == n % m]


def in_window(zmin: int, zmax: int):
    return lambda x: zmin <= x.z <= zmax


def ladder_up(ell: int, m: int) -> Monomial:
    """e_1^m ... e_l^m e_0^m: raises b_0^{(x) m} (x) z^k to z^{k+m}."""
    return Monomial(tuple((E, i, m) for i in list(range(1, ell + 1)) + [0]))


def ladder_down(ell: int, m: int) -> Monomial:
    """f_0^m f_l^m ... f_1^m: lowers b_0^{(x) m} (x) z^k to z^{k-m}."""
    return Monomial(tuple((F, i, m) for i in [0] + list(range(ell, 0, -1))))


def source(m: int, z: int = 0) -> AffineElement:
    return AffineElement((0,) * m, z)
