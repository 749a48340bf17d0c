from muposet import balloon as bl
from muposet import verify as vf
from muposet.perm import all_perms, rotations


def test_report_wording():
    r = vf.VerificationReport("x", "scope")
    assert r.status == "verified (theorem)"
    r.fail("boom")
    assert r.status == "FAILED (theorem)" and r.counterexamples == ["boom"]
    c = vf.VerificationReport("y", "scope", kind=vf.CONJECTURE)
    assert c.status == "consistent (conjecture)"
    c.fail("z")
    assert c.status == "counterexample found (conjecture)"
    assert "counterexample: z" in str(c)


def test_counterexamples_capped():
    r = vf.VerificationReport("x", "s")
    for i in range(100):
        r.fail(str(i))
    assert len(r.counterexamples) == vf.MAX_COUNTEREXAMPLES and not r.passed


def test_rotation_reps_partition():
    for n in range(1, 7):
        reps = vf.rotation_reps(n)
        assert sum(len(set(rotations(p))) for p in reps) == len(list(all_perms(n)))


def test_rotations_commute_with_ballooning():
    for p in all_perms(5):
        for q in rotations(p):
            assert bl.balloon_2413(q) in rotations(bl.balloon_2413(p))


def test_small_checks_pass():
    for name, kw in [("lemmas", {"max_len": 5}), ("thm5.1", {"max_len": 8}),
                     ("thm6.2", {"max_len": 5}), ("reduction-tables", {"max_len": 5}),
                     ("simples", {"max_len": 9}), ("thm4.1", {"max_len": 10}),
                     ("hall-oracle", {"max_len": 5})]:
        rep = vf.CHECKS[name](**kw)
        assert rep.passed, str(rep)
        assert rep.checked > 0


def test_conjecture_examples():
    mu = vf._mu(vf.DEFAULT_CACHE)
    assert vf.one_zero_balloon_prediction((1,), mu) == 6
    assert vf.one_zero_balloon_prediction((3, 1, 2), mu) == 0
    rep = vf.check_one_zero_balloons(max_len=3)
    assert rep.kind == vf.CONJECTURE and rep.checked == 9
    rep71 = vf.check_ij_balloons(max_len=3)
    assert len(rep71.details) == 4


def test_conjectures_reproducible():
    a = vf.check_ij_balloons(max_len=4)
    b = vf.check_ij_balloons(max_len=4)
    assert (a.passed, a.counterexamples, a.details) == (b.passed, b.counterexamples, b.details)


def test_involution_report_is_seeded():
    a = vf.check_involutions(max_len=13, samples=200, seed=3, full_len=0)
    b = vf.check_involutions(max_len=13, samples=200, seed=3, full_len=0)
    assert a.passed and a.details == b.details
