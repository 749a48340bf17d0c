"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to watch the lines
as they are produced; they also appear in the regular ``-v`` output.
"""

import os
import time

import pytest

from muposet import balloon as bl
from muposet import verify as vf
from muposet.mobius import growth_bound, max_abs, mu_principal, sweep
from muposet.perm import parse
from muposet.store import MuCache


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def test_01_golden_table(verdict):
    start = time.perf_counter()
    got = tuple(mu_principal(bl.pi_sequence(n), MuCache()).mu for n in range(1, 9))
    rep = vf.check_sequence_table(max_len=8, cache=MuCache())
    ok = got == (1, -1, 1, -3, 4, -1, 1, -6) and rep.passed
    verdict(1, ok, f"mu(pi^(1..8)) = {got}  ({time.perf_counter() - start:.1f}s)")


def test_02_doubling_law(verdict):
    cache = MuCache()
    start = time.perf_counter()
    bad = []
    for n in range(9, 17):
        a = mu_principal(bl.pi_sequence(n), cache, accelerate=False).mu
        b = mu_principal(bl.pi_sequence(n - 4), cache, accelerate=False).mu
        if a != 2 * b:
            bad.append((n, a, b))
    values = [mu_principal(bl.pi_sequence(n), cache).mu for n in range(9, 17)]
    verdict(2, not bad, f"mu(pi^(9..16)) = {values}, failures {bad}  ({time.perf_counter() - start:.1f}s)")


def test_03_small_beta_table(verdict):
    cache = MuCache()
    bad = []
    for text, mu_beta, mu_pi in vf.SMALL_BETA_TABLE:
        beta = parse(text)
        got = (mu_principal(beta, cache).mu, mu_principal(bl.balloon_2413(beta), cache).mu)
        if got != (mu_beta, mu_pi):
            bad.append((text, got))
    verdict(3, not bad and len(vf.SMALL_BETA_TABLE) == 11, f"11 class rows, mismatches {bad}")


def test_04_balloon_formula_five_to_seven(verdict):
    rep = vf.check_balloon_formula(max_len=7, cache=MuCache())
    verdict(4, rep.passed, f"{rep.checked} beta checked ({'; '.join(rep.details)})  {rep.runtime:.1f}s  "
                           f"{rep.counterexamples[:3]}")


def test_05_lemma_suite(verdict):
    rep = vf.check_lemmas(max_len=7, cache=MuCache())
    verdict(5, rep.passed, f"{rep.checked} permutations, {rep.details[0]}  {rep.runtime:.1f}s  "
                           f"{rep.counterexamples[:3]}")


def test_06_chain_oracle(verdict):
    rep = vf.check_hall_oracle(max_len=7, samples=100, seed=0, cache=MuCache())
    random_done = 100 - len(rep.skipped)
    ok = rep.passed and random_done >= 100
    verdict(6, ok, f"{rep.scope}; {rep.details[0]}  {rep.runtime:.1f}s  {rep.counterexamples[:3]}")


def test_07_involutions(verdict):
    rep = vf.check_involutions(max_len=13, samples=10_000, seed=0, cache=MuCache())
    sampled = [d for d in rep.details if d.startswith("sampled")]
    ok = rep.passed and len(sampled) == 2 and not rep.skipped
    verdict(7, ok, f"{rep.checked} chains checked, {len(sampled)} sampled runs of 10^4  "
                   f"{rep.runtime:.1f}s  {rep.counterexamples[:3]}")


def test_08_simple_patterns(verdict):
    rep = vf.check_simples(max_len=13)
    verdict(8, rep.passed, f"pi^(1..13) simple patterns within {{1,12,21,2413,25314}}  {rep.counterexamples}")


def test_09_growth_bound(verdict):
    jobs = max(2, min(8, os.cpu_count() or 2))
    start = time.perf_counter()
    rows = sweep(8, MuCache(), jobs=jobs)
    elapsed = time.perf_counter() - start
    maxima = {n: max_abs(part)[0] for n, part in rows.items()}
    ok = all(maxima[n] >= growth_bound(n) for n in maxima) and elapsed < 600
    verdict(9, ok, f"M(1..8) = {[maxima[n] for n in sorted(maxima)]}, jobs={jobs}, {elapsed:.1f}s")


def test_10_conjecture_harness(verdict):
    runs = []
    for _ in range(2):
        cache = MuCache()
        runs.append([vf.check_ij_balloons(max_len=5, cache=cache),
                     vf.check_one_zero_balloons(max_len=5, cache=cache)])
    first, second = runs
    same = all((a.passed, a.counterexamples, a.details, a.checked) ==
               (b.passed, b.counterexamples, b.details, b.checked) for a, b in zip(first, second))
    complete = all(r.checked > 0 and r.kind == vf.CONJECTURE for r in first)
    serialized = all(r.passed or r.counterexamples for r in first)
    summary = "; ".join(f"{r.name}: {r.status}, {' '.join(r.details)}" for r in first)
    verdict(10, same and complete and serialized, summary)
