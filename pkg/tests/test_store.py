import random

import pytest
from hypothesis import given

from muposet.mobius import mu_principal
from muposet.perm import canonical, parse
from muposet.store import CacheConflict, CacheError, MuCache, load, open_cache, save

from strategies import perms


def test_get_canonicalizes():
    c = MuCache()
    c.put(parse("2413"), -3)
    assert c.get(parse("3142")) == -3
    assert parse("3142") in c and len(c) == 1


def test_empty():
    assert MuCache().get((1,)) is None


def test_conflict():
    c = MuCache()
    c.put((1, 2), -1)
    c.put((2, 1), -1)
    with pytest.raises(CacheConflict):
        c.put((2, 1), 1)


def test_merge_rejects_conflicts():
    a, b = MuCache(), MuCache()
    a.put((1, 2), -1)
    b.put((2, 1), 5)
    with pytest.raises(CacheConflict):
        a.merge(b)
    with pytest.raises(CacheError):
        a.merge(MuCache(canonical=False))


def test_round_trip_ten_thousand(tmp_path):
    rng = random.Random(4)
    c = MuCache()
    while len(c) < 10_000:
        n = rng.randint(1, 14)
        p = canonical(tuple(rng.sample(range(1, n + 1), n)))
        if p not in c:
            c.put(p, rng.randint(-10**6, 10**6))
    path = tmp_path / "mu.txt"
    save(c, path)
    back = load(path)
    assert dict(back.items()) == dict(c.items())
    assert back.canonical


def test_file_layout(tmp_path):
    c = MuCache()
    for p in ("2413", "12", "1", "132"):
        c.put(parse(p), mu_principal(parse(p)).mu)
    c.put(tuple(range(1, 11)), 0)
    c.put(tuple([2, 1] + list(range(3, 11))), 0)
    path = tmp_path / "mu.txt"
    c.save(path)
    assert path.read_text().splitlines() == [
        "muposet v1 canonical=1", "1\t1", "12\t-1", "132\t1", "2413\t-3",
        "1,2,3,4,5,6,7,8,9,10\t0", "1,2,3,4,5,6,7,8,10,9\t0",
    ]


@pytest.mark.parametrize("text", [
    "muposet v2 canonical=1\n",
    "mucache v1 canonical=1\n",
    "muposet v1\n",
    "muposet v1 canonical=2\n",
    "muposet v1 canonical=1\n12 -1\n",
    "muposet v1 canonical=1\n12\tx\n",
    "muposet v1 canonical=1\n21\t-1\n",
    "muposet v1 canonical=1\n11\t-1\n",
    "muposet v1 canonical=1\n12\t-1\n12\t1\n",
])
def test_bad_files(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(CacheError):
        load(path)


def test_non_canonical_cache(tmp_path):
    c = MuCache(canonical=False)
    c.put((2, 1), -1)
    path = tmp_path / "raw.txt"
    save(c, path)
    assert path.read_text().startswith("muposet v1 canonical=0\n")
    assert load(path).get((2, 1)) == -1
    assert load(path).get((1, 2)) is None


def test_open_cache_env(tmp_path, monkeypatch):
    path = tmp_path / "env.txt"
    monkeypatch.setenv("MUPOSET_CACHE", str(path))
    c, where = open_cache()
    assert where == path and len(c) == 0
    c.put((1,), 1)
    save(c, path)
    c2, _ = open_cache()
    assert c2.get((1,)) == 1
    monkeypatch.delenv("MUPOSET_CACHE")
    assert open_cache()[1] is None


@given(perms(1, 9))
def test_orbit_shares_entry(p):
    c = MuCache()
    c.put(p, 7)
    assert c.get(canonical(p)) == 7
