import json
from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affcrystal.affine import AffineElement, aff_wt, window_elements
from affcrystal.crystal import E, Monomial, check_normal, graphs_isomorphic, tensor_eps
from affcrystal.decomp import (
    check_lambda,
    decompose,
    dominance_views,
    fundamental_decompose,
    highest_path_crystal,
    lambda_dominant_affine,
    raise_tensor,
    summand_orbits,
    tensor_crystal,
    tensor_highest_elements,
    verify_decomposition,
)
from affcrystal.letters import b_im, in_dominant_set, word_wt
from affcrystal.paths import path_f, psi_embed, straight_path
from affcrystal.weightlat import Weight

L = Weight.fundamental
D = Weight.null_root


def test_highest_path_crystal_sizes():
    assert len(highest_path_crystal(L(1, 0), 0)) == 1
    g = highest_path_crystal(L(1, 0), 1)
    assert len(g) == 2
    assert check_normal(highest_path_crystal(L(2, 0) + L(2, 1), 4)).passed


def test_highest_path_crystal_rejects_bad_lambda():
    for bad in (2 * D(1), L(1, 0) - L(1, 1), Fraction(1, 2) * L(1, 0)):
        with pytest.raises(ValueError):
            highest_path_crystal(bad, 1)


def test_lambda_dominant_examples():
    assert lambda_dominant_affine(L(1, 0), 1, 2, 0, 0) == [AffineElement((0, 1), 0)]
    # eps of [0,0], [0,1], [1,0], [1,1] is (2,0), (1,0), (0,1), (0,2)
    got = lambda_dominant_affine(L(1, 0) + L(1, 1), 1, 2, 0, 0)
    assert {x.word for x in got} == {(0, 1), (1, 0)}
    assert lambda_dominant_affine(L(1, 0), 1, 2, 1, 0) == []


def test_decompose_examples():
    rep = decompose(L(1, 0), 1, 2, -1, 1)
    assert [s.highest for s in rep.summands] == [L(1, 0) + k * D(1) for k in (-1, 0, 1)]
    rep = decompose(L(2, 1), 2, 1, 0, 0)
    assert [(s.word, s.highest) for s in rep.summands] == [((1,), L(2, 2))]
    assert len(decompose(L(1, 0) + L(1, 1), 1, 2, 0, 0).summands) == 2


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_summand_weights(ell, m, data):
    i = data.draw(st.integers(0, ell))
    j = data.draw(st.integers(0, ell))
    lam = L(ell, i) + L(ell, j)
    rep = decompose(lam, ell, m, -1, 1)
    assert rep.summands
    for s in rep.summands:
        assert s.highest == lam + word_wt(s.word, ell) + s.z * D(ell)


def test_fundamental_examples():
    rep = fundamental_decompose(0, 1, 2, -1, 1)
    assert [s.highest for s in rep.summands] == [L(1, 0) - D(1), L(1, 0), L(1, 0) + D(1)]
    rep = fundamental_decompose(1, 2, 1, 0, 0)
    assert [s.highest for s in rep.summands] == [L(2, 2)]
    for ell in (1, 2, 3):
        for i in range(ell + 1):
            for m in range(1, 5):
                assert word_wt(b_im(i, m, ell), ell) == L(ell, i + m) - L(ell, i)


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_fundamental_matches_general(ell, m):
    for i in range(ell + 1):
        assert fundamental_decompose(i, ell, m, -1, 1).summands == decompose(L(ell, i), ell, m, -1, 1).summands


def test_report_json():
    rep = verify_decomposition(decompose(L(1, 0), 1, 2, 0, 0), 2)
    data = json.loads(json.dumps(rep.to_json()))
    assert set(data) == {"lambda", "l", "m", "window", "summands", "verified"}
    assert data["summands"] == [{"word": [0, 1], "z": 0, "highest": {"lam": [1, 0], "dlt": 0}}]
    assert data["verified"] is True
    assert Weight.from_json(data["lambda"]) == L(1, 0)


def test_tensor_highest_example():
    found = tensor_highest_elements(L(1, 0), 1, 2, 0, 0, 4)
    assert [(h.first, h.element) for h in found] == [(straight_path(L(1, 0)), AffineElement((0, 1), 0))]
    assert found[0].path(1) == psi_embed(AffineElement((0, 1), 0), 1)


def test_tensor_highest_negative_control():
    tc = tensor_crystal(1, 2)
    pair_ = (straight_path(L(1, 0)), AffineElement((0, 0), 0))
    # eps_0([0,0]) = 2 exceeds pair(0, Lambda_0) = 1 by one
    assert tensor_eps(pair_, 0, tc.factors) == 1
    assert tensor_eps(pair_, 1, tc.factors) == 0
    found = tensor_highest_elements(L(1, 0), 1, 2, 0, 0, 2)
    assert all(h.element.word != (0, 0) for h in found)


@pytest.mark.parametrize("ell", [1, 2])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_dominance_four_ways(ell, m):
    lams = [L(ell, 0), L(ell, 1), L(ell, 0) + L(ell, 1), 2 * L(ell, ell)]
    for lam in lams:
        for x in window_elements(ell, m, -1, 1):
            views = dominance_views(lam, x, ell)
            assert len(set(views)) == 1, (lam, x, views)
            assert views[0] == in_dominant_set(x.word, lam)


def _raise_oracle(start, lam, max_len=10):
    """Highest pairs reachable from ``start`` by at most ``max_len`` e-steps."""
    ell = lam.ell
    tc = tensor_crystal(ell, len(start[1].word))
    seen = {start}
    queue = deque([(start, 0)])
    tops = set()
    while queue:
        x, d = queue.popleft()
        if all(tc.eps(i, x) == 0 for i in range(ell + 1)):
            tops.add(x)
        if d == max_len:
            continue
        for i in range(ell + 1):
            y = tc.e(i, x)
            if y is not None and y not in seen:
                seen.add(y)
                queue.append((y, d + 1))
    return tops


def test_raise_tensor_examples():
    lam = L(1, 0)
    bl = straight_path(lam)
    x = AffineElement((0, 1), 3)
    assert raise_tensor(bl, x, lam) == (Monomial(), (bl, x))

    start = (path_f(bl, 0), AffineElement((1, 0), 0))
    mono, top = raise_tensor(*start, lam)
    assert mono.kinds() <= {E}
    assert top[0] == bl and top[1].word == (0, 1)
    assert top in _raise_oracle(start, lam)
    assert all(t[0] == bl and t[1].word == (0, 1) for t in _raise_oracle(start, lam))
    tc = tensor_crystal(1, 2)
    assert tc.wt(top) == lam + aff_wt(top[1], 1)
    assert tc.wt(top) == tc.wt(start) + sum((n * tc.root(i) for _, i, n in mono.terms), Weight.zero(1))


@pytest.mark.parametrize("lam_text", ["L0", "L1", "L0+L1"])
@pytest.mark.parametrize("ell,m", [(1, 2), (2, 2), (2, 3)])
def test_truncated_decomposition(lam_text, ell, m):
    from affcrystal.weightlat import parse_weight

    lam = parse_weight(lam_text, ell)
    rep = verify_decomposition(decompose(lam, ell, m, -1, 1), 3)
    assert rep.verified, rep.failures


def test_summand_orbit_isomorphism_detects_mismatch():
    lam = L(1, 0)
    g1, _ = summand_orbits(lam, AffineElement((0, 1), 0), 3)
    g_wrong = highest_path_crystal(L(1, 1), 3)
    assert not graphs_isomorphic(g1, g_wrong, g1.seeds[0], g_wrong.seeds[0])


def test_check_lambda():
    check_lambda(L(2, 1))
    with pytest.raises(ValueError):
        check_lambda(-2 * D(2))
