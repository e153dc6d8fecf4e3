import json
import threading

import pytest

from quantumhorn import __version__
from quantumhorn.cache import CACHE_FORMAT, CoefficientCache, active_cache, set_active_cache
from quantumhorn.gw import generalized_gw, transform_shift
from quantumhorn.schubert import GwProblem

LINE = GwProblem.make(4, 1, 0, [(1, 4), (2, 3), (1, 2)])


@pytest.fixture
def installed(tmp_path):
    cache = CoefficientCache(tmp_path / "c.json")
    previous = set_active_cache(cache)
    yield cache
    set_active_cache(previous)


def test_round_trip(tmp_path, installed):
    assert generalized_gw(LINE) == 1
    assert installed.get(LINE.canonical()) == 1 and installed.dirty
    installed.save()
    assert not installed.dirty
    again = CoefficientCache(tmp_path / "c.json")
    assert again.get(LINE.canonical()) == 1
    payload = json.loads((tmp_path / "c.json").read_text())
    assert payload["format"] == CACHE_FORMAT and payload["version"] == __version__


def test_hit_is_used(installed):
    # a planted value is returned, so hits really bypass the engines
    installed.put(LINE.canonical(), 7)
    assert generalized_gw(LINE) == 7


def test_cache_does_not_change_values(installed):
    probs = [LINE, transform_shift(LINE), transform_shift(LINE, -1)]
    cached = [generalized_gw(P) for P in probs]
    set_active_cache(None)
    fresh = [generalized_gw(P) for P in probs]
    set_active_cache(installed)
    assert cached == fresh == [generalized_gw(P) for P in probs]


def test_corrupt_file_is_quarantined(tmp_path, caplog):
    path = tmp_path / "c.json"
    path.write_text("{not json")
    cache = CoefficientCache(path)
    assert len(cache) == 0
    assert cache.quarantined is not None and cache.quarantined.exists()
    assert not path.exists()
    assert "unreadable" in caplog.text
    path.write_text(json.dumps({"format": CACHE_FORMAT, "version": __version__, "entries": {"k": "x"}}))
    assert len(CoefficientCache(path)) == 0


def test_version_mismatch_is_ignored(tmp_path, caplog):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"format": CACHE_FORMAT, "version": "0.0.0", "entries": {"k": 3}}))
    cache = CoefficientCache(path)
    assert len(cache) == 0 and cache.quarantined is None
    assert "ignoring" in caplog.text
    assert path.exists()


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("HQ_CACHE", str(tmp_path / "env.json"))
    assert CoefficientCache.from_env().path == tmp_path / "env.json"


def test_clear_and_memory_only(tmp_path):
    cache = CoefficientCache()
    cache.put("a", 1)
    cache.save()  # no path: nothing to write
    cache.clear()
    assert len(cache) == 0


def test_concurrent_writers(tmp_path):
    cache = CoefficientCache(tmp_path / "c.json")

    def work(offset):
        for i in range(200):
            cache.put(f"k{offset}-{i}", i)

    threads = [threading.Thread(target=work, args=(t,)) for t in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    cache.save()
    assert len(CoefficientCache(tmp_path / "c.json")) == 800


def test_set_active_returns_previous():
    a, b = CoefficientCache(), CoefficientCache()
    old = set_active_cache(a)
    assert set_active_cache(b) is a
    assert active_cache() is b
    set_active_cache(old)
