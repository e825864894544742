"""Loop tracking: roots, inflections, lifted line permutations, matrices."""

import numpy as np
import pytest

from cubicmonodromy.errors import AmbiguousMatching, SingularParameter
from cubicmonodromy.lines import base_surface, perm_compose, preserves_incidence
from cubicmonodromy.tracking import (TrackingConfig, constant_loop,
                                     custom_loop, flex_track, gamma_minus,
                                     gamma_plus, lift_to_lines,
                                     monodromy_matrix, root_track,
                                     track_flexes, track_roots)
from cubicmonodromy.verify import (transcribed_flex_permutation,
                                   transcribed_root_permutation)
from cubicmonodromy.weyl import weyl_group


def test_loop_endpoints_close():
    for loop in (gamma_minus(), gamma_plus(), constant_loop(0.0)):
        assert abs(loop.sample(0.0) - loop.sample(1.0)) < 1e-12


def test_loop_kinds():
    assert gamma_minus().kind == "gammaMinus"
    assert gamma_plus().kind == "gammaPlus"
    assert constant_loop(0.0).kind == "constant"
    assert custom_loop(lambda t: 0.5j * t * (1 - t)).kind == "custom"


def test_loop_rejects_singular_samples():
    loop = custom_loop(lambda t: 1.0 if t == 0.5 else 0.0)
    with pytest.raises(SingularParameter):
        loop.sample(0.5)


def test_config_validates_steps():
    with pytest.raises(ValueError):
        TrackingConfig(steps=4)


def test_root_tracks_match_transcription():
    assert track_roots(gamma_minus()).tolist() == \
        transcribed_root_permutation("gammaMinus").tolist()
    assert track_roots(gamma_plus()).tolist() == \
        transcribed_root_permutation("gammaPlus").tolist()


def test_flex_tracks_match_transcription():
    assert track_flexes(gamma_minus()).tolist() == \
        transcribed_flex_permutation("gammaMinus").tolist()
    assert track_flexes(gamma_plus()).tolist() == \
        transcribed_flex_permutation("gammaPlus").tolist()


def test_loop_permutations_have_order_three():
    for loop in (gamma_minus(), gamma_plus()):
        p = track_flexes(loop)
        p3 = perm_compose(p, perm_compose(p, p))
        assert p3.tolist() == list(range(9))
        r = track_roots(loop)
        r3 = perm_compose(r, perm_compose(r, r))
        assert r3.tolist() == list(range(4))


def test_constant_loop_is_identity():
    cfg = TrackingConfig(steps=16)
    assert track_roots(constant_loop(0.0), cfg).tolist() == list(range(4))
    assert track_flexes(constant_loop(0.0), cfg).tolist() == list(range(9))
    m = monodromy_matrix(constant_loop(0.0), cfg)
    assert np.array_equal(m, np.eye(7, dtype=np.int64))


def test_step_invariance():
    for loop in (gamma_minus(), gamma_plus()):
        perms = set()
        for steps in (50, 100, 200):
            cfg = TrackingConfig(steps=steps)
            perms.add(tuple(track_flexes(loop, cfg).tolist()))
        assert len(perms) == 1


def test_track_shapes():
    cfg = TrackingConfig(steps=32)
    rt = root_track(gamma_minus(), cfg)
    assert len(rt.ts) == 33 and len(rt.positions) == 33
    assert all(len(row) == 4 for row in rt.positions)
    ft = flex_track(gamma_minus(), cfg)
    assert len(ft.ts) == len(ft.xs) == len(ft.ys) == 33
    assert all(len(row) == 8 for row in ft.ys)
    # two inflections ride on each branch root
    counts = {i: ft.root_of_flex.count(i) for i in set(ft.root_of_flex)}
    assert sorted(counts.values()) == [2, 2, 2, 2]


def test_lift_to_lines_blocks():
    flex_images = np.array(
        transcribed_flex_permutation("gammaMinus"), dtype=np.int64)
    p = lift_to_lines(flex_images)
    for flex in range(9):
        for n in range(3):
            assert p[3 * flex + n] == 3 * flex_images[flex] + n


def test_lifted_permutation_preserves_incidence():
    s = base_surface()
    for loop in (gamma_minus(), gamma_plus()):
        p = lift_to_lines(track_flexes(loop))
        assert preserves_incidence(p, s.adjacency)


def test_monodromy_matrices_land_in_group():
    s = base_surface()
    deck = s.deck_matrix
    for loop in (gamma_minus(), gamma_plus()):
        m = monodromy_matrix(loop)
        assert m in weyl_group()
        assert weyl_group().element_order(m) == 3
        assert np.array_equal(m @ deck, deck @ m)


def test_extended_precision_tracking_agrees():
    cfg = TrackingConfig(steps=50, precision="extended")
    assert track_roots(gamma_minus(), cfg).tolist() == \
        transcribed_root_permutation("gammaMinus").tolist()


def test_pathological_loop_raises():
    # a loop stepping onto the discriminant point +1 cannot be tracked; it
    # must fail loudly rather than return a permutation
    loop = custom_loop(lambda t: 1.0 - 1e-9 if t == 0.5 else 0.0)
    cfg = TrackingConfig(steps=8, max_refine=0)
    with pytest.raises((AmbiguousMatching, SingularParameter)):
        track_roots(loop, cfg)


def test_ambiguity_exhaustion_raises():
    # an endpoint-match tolerance no float can satisfy exhausts refinement
    cfg = TrackingConfig(steps=8, eps_match=1e-300, max_refine=0)
    with pytest.raises(AmbiguousMatching):
        track_flexes(gamma_minus(), cfg)
