import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affcrystal.affine import AffineCrystal, AffineElement, enumerate_component, in_window, source
from affcrystal.crystal import (
    E,
    F,
    BudgetExceeded,
    Monomial,
    TensorCrystal,
    all_generators,
    apply_monomial,
    check_crystal_axioms,
    check_morphism,
    check_normal,
    graphs_isomorphic,
    orbit_bfs,
    tensor_e,
    tensor_eps,
    tensor_f,
    tensor_phi,
    two_factor_e,
    two_factor_f,
)
from affcrystal.letters import LetterCrystal, WordCrystal, enumerate_words
from affcrystal.paths import PathCrystal, PLPath, psi_embed, straight_path
from affcrystal.weightlat import Weight

B1, B2, B3 = LetterCrystal(1), LetterCrystal(2), LetterCrystal(3)


def test_tensor_eps_examples():
    assert tensor_eps((0, 1), 0, B1) == 1
    assert tensor_eps((0, 1), 1, B2) == 0
    for ell, crys in ((1, B1), (2, B2), (3, B3)):
        for i in range(ell + 1):
            for j in range(ell + 1):
                assert tensor_eps((j,), i, crys) == (1 if i == j else 0)


def test_tensor_operator_examples():
    assert tensor_e((1, 0), 1, B2) == (0, 0)
    for crys in (B1, B2, B3):
        assert tensor_f((0, 0), 1, crys) == (1, 0)
    assert tensor_f(tensor_f((0, 0), 1, B1), 1, B1) == (1, 1)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_two_factor_rules_agree_with_general_rule(ell):
    c = LetterCrystal(ell)
    for a, b in itertools.product(range(ell + 1), repeat=2):
        for i in range(ell + 1):
            assert two_factor_e(a, b, i, c, c) == tensor_e((a, b), i, c)
            assert two_factor_f(a, b, i, c, c) == tensor_f((a, b), i, c)


@pytest.mark.parametrize("ell", [1, 2])
def test_tensor_product_is_associative(ell):
    c = LetterCrystal(ell)
    right = TensorCrystal([c, TensorCrystal([c, c])])
    left = TensorCrystal([TensorCrystal([c, c]), c])
    flat = TensorCrystal([c, c, c])
    for x, y, z in itertools.product(range(ell + 1), repeat=3):
        for i in range(ell + 1):
            for op in ("e", "f"):
                want = getattr(flat, op)(i, (x, y, z))
                r = getattr(right, op)(i, (x, (y, z)))
                l_ = getattr(left, op)(i, ((x, y), z))
                flat_r = None if r is None else (r[0],) + r[1]
                flat_l = None if l_ is None else l_[0] + (l_[1],)
                assert flat_r == want == flat_l
            assert right.eps(i, (x, (y, z))) == flat.eps(i, (x, y, z)) == left.eps(i, ((x, y), z))


@pytest.mark.parametrize("ell,m", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_word_crystal_axioms(ell, m):
    wc = WordCrystal(ell, m)
    assert check_crystal_axioms(wc, enumerate_words(ell, m)).passed


def test_monomial_conventions():
    mono = Monomial(((E, 1, 2), (E, 0, 2)))
    assert mono.steps() == [(E, 0), (E, 0), (E, 1), (E, 1)]
    assert str(mono) == "e1^2 e0^2"
    assert Monomial.from_steps(mono.steps()) == mono
    assert (Monomial(((F, 0, 1),)) * Monomial(((F, 1, 1),))).steps() == [(F, 1), (F, 0)]
    with pytest.raises(ValueError):
        Monomial(((E, 0, 0),))


def test_apply_monomial_identity_and_ladder():
    cr = AffineCrystal(1, 2)
    x = source(2, 3)
    assert apply_monomial(cr, x, Monomial()) == x
    ladder = Monomial(((E, 1, 2), (E, 0, 2)))
    for r in (1, 2, 3):
        assert apply_monomial(cr, source(2, -1), ladder ** r) == source(2, -1 + 2 * r)


@given(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(0, 2))
def test_f_then_e_is_identity(w, i):
    wc = WordCrystal(2, 3)
    y = wc.f(i, w)
    if y is not None:
        assert apply_monomial(wc, w, Monomial(((E, i, 1), (F, i, 1)))) == w


def test_orbit_f_only_covers_b12():
    g = orbit_bfs(WordCrystal(1, 2), [(0, 0)], all_generators(1, F), depth=12)
    assert sorted(g.nodes) == enumerate_words(1, 2)


def test_orbit_depth_zero_is_one_node():
    g = orbit_bfs(PathCrystal(1), [straight_path(Weight.fundamental(1, 0))], depth=0)
    assert len(g) == 1 and g.edges == []


def test_orbit_of_component_zero_in_window():
    # Filter oracle: component 0 of the affinization with z in [-2, 2].
    # The three words with even N sit at even z, [0,1] (N = 3) at odd z.
    cr = AffineCrystal(1, 2)
    g = orbit_bfs(cr, [source(2, 0)], region=in_window(-4, 4))
    inner = sorted(x for x in g.nodes if -2 <= x.z <= 2)
    oracle = enumerate_component(1, 2, 0, -2, 2)
    assert inner == sorted(oracle)
    assert len(oracle) == 11


def test_orbit_edges_satisfy_c3():
    cr = AffineCrystal(2, 3)
    g = orbit_bfs(cr, [source(3, 0)], depth=6)
    for a, b, i in g.edges:
        assert cr.f(i, a) == b and cr.e(i, b) == a


def test_orbit_budget():
    with pytest.raises(BudgetExceeded):
        orbit_bfs(AffineCrystal(2, 3), [source(3, 0)], depth=30, budget=50)


def test_orbit_needs_a_limit():
    with pytest.raises(ValueError):
        orbit_bfs(AffineCrystal(1, 2), [source(2, 0)])


def test_orbit_dot_is_deterministic():
    def dot():
        return orbit_bfs(AffineCrystal(1, 2), [source(2, 0)], region=in_window(-1, 1)).to_dot()

    assert dot() == dot()
    assert 'label="f0"' in dot()


def test_boundary_nodes_rendered_dashed():
    g = orbit_bfs(AffineCrystal(1, 2), [source(2, 0)], region=in_window(0, 0))
    assert g.boundary
    assert "style=dashed" in g.to_dot()


def test_check_normal_full_b12():
    g = orbit_bfs(WordCrystal(1, 2), [(0, 0)], depth=10)
    rep = check_normal(g)
    assert rep.passed and rep.checked == 8 and rep.skipped == 0


def test_check_normal_single_letter():
    g = orbit_bfs(LetterCrystal(1), [0], depth=4)
    rep = check_normal(g)
    assert rep.passed
    # e_0 b_0 = b_1 for l = 1, so the 0-string above b_0 has length one
    assert B1.eps(0, 0) == 1 and B1.phi(1, 0) == 1
    assert B1.eps(1, 0) == 0 and B1.phi(0, 0) == 0


def test_check_normal_skips_truncated_strings():
    g = orbit_bfs(WordCrystal(1, 3), [(0, 0, 0)], all_generators(1, F), depth=1)
    rep = check_normal(g)
    assert rep.passed and rep.skipped >= 1


def test_check_morphism_identity_and_psi():
    cr = AffineCrystal(1, 2)
    sample = [AffineElement(w, z) for z in range(-2, 3) for w in enumerate_words(1, 2)]
    assert check_morphism(lambda x: x, sample, cr, cr).passed
    assert check_morphism(lambda x: psi_embed(x, 1), sample, cr, PathCrystal(1)).passed


def test_check_morphism_negative_control():
    # Forget the z-shift: e_0 then no longer commutes.
    cr = AffineCrystal(1, 2)
    sample = [AffineElement(w, 0) for w in enumerate_words(1, 2)]
    rep = check_morphism(lambda x: psi_embed(AffineElement(x.word, 0), 1), sample, cr, PathCrystal(1))
    assert not rep.passed and rep.counterexample


def _two_segment(ell, *verts):
    return PLPath.from_vertices([Weight.zero(ell)] + list(verts))


def test_isomorphic_orbits_of_dominant_paths():
    lam = Weight.fundamental(1, 0)
    gens = all_generators(1, F)
    g1 = orbit_bfs(PathCrystal(1), [straight_path(lam)], gens, depth=3)
    for mid in (Weight((Fraction(1, 2), Fraction(1, 2)), 0), Weight((1, 0), Fraction(1, 2))):
        p = _two_segment(1, mid, lam)
        g2 = orbit_bfs(PathCrystal(1), [p], gens, depth=3)
        assert graphs_isomorphic(g1, g2, g1.seeds[0], p)
        assert graphs_isomorphic(g1, g1, g1.seeds[0], g1.seeds[0])


def test_non_isomorphic_orbits():
    gens = all_generators(2, F)
    g0 = orbit_bfs(PathCrystal(2), [straight_path(Weight.fundamental(2, 0))], gens, depth=3)
    g1 = orbit_bfs(PathCrystal(2), [straight_path(Weight.fundamental(2, 1))], gens, depth=3)
    assert not graphs_isomorphic(g0, g1, g0.seeds[0], g1.seeds[0])


def test_isomorphism_requires_equal_truncations():
    g0 = orbit_bfs(PathCrystal(1), [straight_path(Weight.fundamental(1, 0))], depth=2)
    g1 = orbit_bfs(PathCrystal(1), [straight_path(Weight.fundamental(1, 0))], depth=3)
    with pytest.raises(ValueError):
        graphs_isomorphic(g0, g1, g0.seeds[0], g1.seeds[0])


@pytest.mark.parametrize("ell,m", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
@pytest.mark.parametrize("kind", [F, E])
def test_generated_by_source(ell, m, kind):
    g = orbit_bfs(WordCrystal(ell, m), [(0,) * m], all_generators(ell, kind), depth=3 * m * (ell + 1))
    assert len(g) == (ell + 1) ** m


def test_tensor_phi_matches_c1():
    for w in enumerate_words(2, 3):
        for i in range(3):
            wt = sum(1 if c == i - 1 or (i == 0 and c == 2) else 0 for c in w) - w.count(i)
            assert tensor_phi(w, i, B2) == tensor_eps(w, i, B2) + wt
