"""Exact crystal combinatorics for affine type A: the tensor powers of the
letter crystal, their affinization, counting formulas, Littelmann paths and
the decomposition of B(lambda) tensored with the affinization."""

from .affine import AffineCrystal, AffineElement, aff_e, aff_f, aff_wt, component_of, enumerate_component
from .charfun import (
    QPoly,
    closed_count,
    component_character,
    count_by_residue,
    cyclotomic,
    euler_phi,
    moebius,
    phi_r,
    q_multinomial,
    reduce_mod_qm1,
)
from .crystal import Crystal, CrystalGraph, Monomial, TensorCrystal, orbit_bfs
from .decomp import decompose, fundamental_decompose, raise_tensor, tensor_highest_elements
from .letters import dominant_subset, enumerate_words, raise_to_dominant, word_stats
from .paths import PathCrystal, PLPath, path_e, path_f, psi_embed, straight_path
from .weightlat import Weight, pair, parse_weight, simple_root

__version__ = "0.1.0"

__all__ = [
    "aff_e",
    "aff_f",
    "aff_wt",
    "AffineCrystal",
    "AffineElement",
    "closed_count",
    "component_character",
    "component_of",
    "count_by_residue",
    "Crystal",
    "CrystalGraph",
    "cyclotomic",
    "decompose",
    "dominant_subset",
    "enumerate_component",
    "enumerate_words",
    "euler_phi",
    "fundamental_decompose",
    "moebius",
    "Monomial",
    "orbit_bfs",
    "pair",
    "parse_weight",
    "path_e",
    "path_f",
    "PathCrystal",
    "phi_r",
    "PLPath",
    "psi_embed",
    "q_multinomial",
    "QPoly",
    "raise_tensor",
    "raise_to_dominant",
    "reduce_mod_qm1",
    "simple_root",
    "straight_path",
    "tensor_highest_elements",
    "TensorCrystal",
    "Weight",
    "word_stats",
]
