import pytest

import affcrystal.verify as vf
from affcrystal.verify import SUITES, random_raise_cases, run_suite


@pytest.mark.parametrize("name", ["maj-n", "counting", "no-highest", "character"])
def test_small_suites_pass(name):
    res = run_suite(name, 2, 3)
    assert res.passed and res.checked > 0 and res.counterexample is None


def test_parallel_run_matches_serial():
    assert run_suite("counting", 2, 4, jobs=2) == run_suite("counting", 2, 4, jobs=1)


def test_mutated_statistic_is_caught(monkeypatch):
    from affcrystal.letters import word_stats

    monkeypatch.setattr(vf, "word_stats", lambda w: word_stats(tuple(reversed(w))))
    res = run_suite("maj-n", 1, 3)
    assert not res.passed
    assert "Maj" in res.counterexample or "N(" in res.counterexample


def test_mutated_embedding_is_caught(monkeypatch):
    from affcrystal.affine import AffineElement
    from affcrystal.paths import psi_embed

    monkeypatch.setattr(vf, "psi_embed", lambda x, ell: psi_embed(AffineElement(x.word, 0), ell))
    res = run_suite("psi-morphism", 1, 2)
    assert not res.passed and res.counterexample


def test_mutated_count_is_caught(monkeypatch):
    real = vf.charfun.closed_count
    monkeypatch.setattr(vf.charfun, "closed_count", lambda ell, m, tup, n: real(ell, m, tup, n + 1))
    res = run_suite("counting", 1, 3)
    assert not res.passed and "closed" in res.counterexample


def test_raise_cases_are_reproducible():
    a = random_raise_cases()
    assert a == random_raise_cases() and len(a) == 200
    assert all(max(lam.lam) <= 3 and lam.is_dominant() for _, lam in a)


def test_result_json():
    res = run_suite("no-highest", 1, 2)
    assert res.to_json() == {"suite": "no-highest", "passed": True, "checked": res.checked, "counterexample": None}


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_registry_names():
    assert set(SUITES) == {
        "maj-n", "counting", "components", "character", "psi-morphism",
        "dominance", "decomposition", "identities", "no-highest",
    }
