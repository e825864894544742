"""Checksummed reference matrices for the generated 648-element group.

The five 7x7 integer matrices (deck rotation, two torsion generators, two
loop generators) ship as a data file with a detached sha256 so that a
transcription slip surfaces as a load failure rather than a downstream
logic failure.  Every matrix is checked against the lattice invariants on
load.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import FixtureError
from .weyl import is_lattice_map

_KEYS = ("deck", "h1", "h2", "g1", "g2")


@dataclass(frozen=True, eq=False)
class FixtureSet:
    deck: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    g1: np.ndarray
    g2: np.ndarray

    def generators(self) -> list[np.ndarray]:
        """The four group generators, deck excluded (it is their commutator)."""
        return [self.h1, self.h2, self.g1, self.g2]


def _data_bytes(name: str) -> bytes:
    ref = resources.files("cubicmonodromy") / "data" / name
    return ref.read_bytes()


@lru_cache(maxsize=1)
def load_fixtures() -> FixtureSet:
    raw = _data_bytes("fixtures.json")
    want = _data_bytes("fixtures.json.sha256").decode().strip()
    got = hashlib.sha256(raw).hexdigest()
    if got != want:
        raise FixtureError(f"fixtures.json checksum mismatch: {got} != {want}")
    payload = json.loads(raw)
    if payload.get("version") != 1:
        raise FixtureError(f"unsupported fixtures version {payload.get('version')!r}")
    mats = {}
    for key in _KEYS:
        try:
            m = np.array(payload["matrices"][key], dtype=np.int64)
        except (KeyError, ValueError) as exc:
            raise FixtureError(f"fixture {key!r} missing or malformed") from exc
        if m.shape != (7, 7):
            raise FixtureError(f"fixture {key!r} has shape {m.shape}, want (7, 7)")
        if not is_lattice_map(m):
            raise FixtureError(f"fixture {key!r} violates the lattice invariants")
        m.setflags(write=False)
        mats[key] = m
    return FixtureSet(**mats)
