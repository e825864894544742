"""Bundled reference matrices: checksum, invariants, tamper detection."""

import hashlib
import json

import numpy as np
import pytest

import cubicmonodromy.fixtures as fixtures_mod
from cubicmonodromy.errors import FixtureError
from cubicmonodromy.fixtures import load_fixtures
from cubicmonodromy.weyl import is_lattice_map


def test_load_and_invariants():
    fx = load_fixtures()
    for name in ("deck", "h1", "h2", "g1", "g2"):
        m = getattr(fx, name)
        assert m.shape == (7, 7)
        assert m.dtype == np.int64
        assert is_lattice_map(m)
        assert not m.flags.writeable


def test_generators_order():
    fx = load_fixtures()
    gens = fx.generators()
    assert len(gens) == 4
    assert np.array_equal(gens[0], fx.h1)
    assert np.array_equal(gens[3], fx.g2)


def test_load_is_cached():
    assert load_fixtures() is load_fixtures()


def _patched_load(monkeypatch, mutate):
    """Run load_fixtures against a tampered copy of the bundled data."""
    raw = json.loads(fixtures_mod._data_bytes("fixtures.json"))
    mutate(raw)
    blob = json.dumps(raw).encode()
    digest = hashlib.sha256(blob).hexdigest()

    def fake(name):
        if name == "fixtures.json":
            return blob
        return (digest + "\n").encode()

    monkeypatch.setattr(fixtures_mod, "_data_bytes", fake)
    load_fixtures.cache_clear()
    try:
        return load_fixtures()
    finally:
        load_fixtures.cache_clear()


def test_checksum_mismatch_rejected(monkeypatch):
    real = fixtures_mod._data_bytes

    def fake(name):
        if name == "fixtures.json":
            return real("fixtures.json") + b" "
        return real(name)

    monkeypatch.setattr(fixtures_mod, "_data_bytes", fake)
    load_fixtures.cache_clear()
    try:
        with pytest.raises(FixtureError):
            load_fixtures()
    finally:
        load_fixtures.cache_clear()


def test_version_mismatch_rejected(monkeypatch):
    with pytest.raises(FixtureError):
        _patched_load(monkeypatch, lambda raw: raw.update(version=2))


def test_shape_violation_rejected(monkeypatch):
    def chop(raw):
        raw["matrices"]["h1"] = raw["matrices"]["h1"][:6]

    with pytest.raises(FixtureError):
        _patched_load(monkeypatch, chop)


def test_invariant_violation_rejected(monkeypatch):
    def shear(raw):
        raw["matrices"]["deck"][0][1] += 1

    with pytest.raises(FixtureError):
        _patched_load(monkeypatch, shear)
