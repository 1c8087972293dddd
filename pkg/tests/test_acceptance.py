"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import pytest

from affcrystal.verify import run_suite


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget_s: float
    suites: tuple  # (suite name, l bound, m bound)


CRITERIA = [
    Criterion(1, "counting identity: brute force = reduced q-multinomial = closed form (l<=3, m<=6)", 30, (("counting", 3, 6),)),
    Criterion(2, "Maj = -N (mod m) and N shifts under e_i/f_i (l<=3, m<=5)", 10, (("maj-n", 3, 5),)),
    Criterion(3, "components: operator-stable residues, padded-window reachability, ladders (l<=3, m<=4)", 60, (("components", 3, 4),)),
    Criterion(4, "psi is a strict injective morphism, kappa_m = z, sources map to straight paths (l<=2, m<=4)", 60, (("psi-morphism", 2, 4),)),
    Criterion(5, "component characters match enumerated counts on the criterion-3 windows", 60, (("character", 3, 4),)),
    Criterion(6, "dominance: four-way equivalence, fundamental dominant sets, raising exponents", 30, (("dominance", 3, 5),)),
    Criterion(7, "decomposition at truncation: highest pairs, orbit isomorphism, raising (depth 4)", 120, (("decomposition", 2, 3),)),
    Criterion(8, "polynomial identities and cyclotomic factorization", 10, (("identities", 3, 8),)),
    Criterion(9, "no highest and no lowest weight word in B_l(m) (l<=3, m<=5)", 30, (("no-highest", 3, 5),)),
]


def evaluate(c: Criterion) -> tuple:
    start = time.perf_counter()
    results = [run_suite(name, ell, m) for name, ell, m in c.suites]
    elapsed = time.perf_counter() - start
    passed = all(r.passed for r in results) and elapsed < c.budget_s
    checks = sum(r.checked for r in results)
    failure = next((r.counterexample for r in results if not r.passed), None)
    if failure is None and elapsed >= c.budget_s:
        failure = f"time {elapsed:.1f}s exceeds {c.budget_s:.0f}s"
    status = "PASS" if passed else "FAIL"
    line = f"{status} criterion {c.number}: {c.title} [{checks} checks, {elapsed:.1f}s < {c.budget_s:.0f}s]"
    if failure:
        line += f" -- {failure}"
    return passed, line


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    passed, line = evaluate(criterion)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    ok = True
    for c in CRITERIA:
        passed, line = evaluate(c)
        ok &= passed
        print(line, flush=True)
    raise SystemExit(0 if ok else 1)
