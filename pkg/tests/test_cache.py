import json
import os

import pytest

from iwahori_kit import cache as cache_module
from iwahori_kit.cache import CACHE_SCHEMA, ProductCache, open_cache
from iwahori_kit.hecke import HeckeAlgebra


@pytest.fixture
def algebra(W_gl2):
    return HeckeAlgebra(W_gl2, cache_size=1000)


def _fill(algebra):
    W = algebra.W
    return algebra.t_basis(W.translation((1, 0))) * algebra.t_basis(W.translation((0, 1)))


def test_open_cache_disabled(algebra):
    assert open_cache(None, algebra) is None
    assert open_cache("", algebra) is None


def test_save_and_load(tmp_path, algebra, W_gl2):
    product = _fill(algebra)
    store = ProductCache(str(tmp_path), algebra)
    assert store.save()
    assert os.path.basename(store.path) == "products_GL_2.json"

    with open(store.path, encoding="utf-8") as f:
        payload = json.load(f)
    assert payload["schema"] == CACHE_SCHEMA
    assert payload["group"] == "GL"
    assert len(payload["entries"]) == len(algebra.product_cache)

    fresh = HeckeAlgebra(W_gl2, cache_size=1000)
    loaded = open_cache(str(tmp_path), fresh)
    assert loaded is not None
    assert len(fresh.product_cache) == len(payload["entries"])
    assert _fill(fresh) == product


def test_missing_file_loads_nothing(tmp_path, algebra):
    assert ProductCache(str(tmp_path), algebra).load() == 0


@pytest.mark.parametrize("content", [
    "{not json",
    "[1, 2, 3]",
    json.dumps({"schema": "other", "entries": []}),
    json.dumps({"schema": CACHE_SCHEMA, "group": "GSp", "d": 2, "entries": []}),
    json.dumps({"schema": CACHE_SCHEMA, "group": "GL", "d": 2, "entries": [{"x": [[9], 0]}]}),
])
def test_corrupt_cache_is_ignored(tmp_path, algebra, content):
    store = ProductCache(str(tmp_path), algebra)
    with open(store.path, "w", encoding="utf-8") as f:
        f.write(content)
    assert store.load() == 0


def test_failed_save_restores_backup(tmp_path, algebra, monkeypatch):
    _fill(algebra)
    store = ProductCache(str(tmp_path), algebra)
    assert store.save()
    with open(store.path, encoding="utf-8") as f:
        original = f.read()

    def broken_dump(*args, **kwargs):
        raise OSError("disk full")

    monkeypatch.setattr(cache_module.json, "dump", broken_dump)
    assert not store.save()
    with open(store.path, encoding="utf-8") as f:
        assert f.read() == original
    assert os.path.exists(store.backup_path)


def test_wrong_stored_product_rejects_the_file(tmp_path, algebra, W_gl2):
    product = _fill(algebra)
    store = ProductCache(str(tmp_path), algebra)
    assert store.save()
    with open(store.path, encoding="utf-8") as f:
        payload = json.load(f)
    for entry in payload["entries"]:
        entry["value"] = [{"word": [], "omega": 0, "coeffs": [[0, 7]]}]
    with open(store.path, "w", encoding="utf-8") as f:
        json.dump(payload, f)

    fresh = HeckeAlgebra(W_gl2, cache_size=1000)
    assert ProductCache(str(tmp_path), fresh).load() == 0
    assert len(fresh.product_cache) == 0
    assert _fill(fresh) == product


def test_large_files_are_sampled(tmp_path, algebra, monkeypatch):
    _fill(algebra)
    store = ProductCache(str(tmp_path), algebra)
    assert store.save()
    monkeypatch.setattr(cache_module, "VERIFY_SAMPLE", 1)
    fresh = HeckeAlgebra(algebra.W, cache_size=1000)
    assert ProductCache(str(tmp_path), fresh).load() == len(algebra.product_cache)
