"""Smoke tests for the _symplab extension module."""

import math

import numpy as np
import pytest

import _symplab as sl


def test_free_reduce_and_relator():
    assert sl.free_reduce([1, -1]) == []
    assert sl.free_reduce([1, 2, -2, 1]) == [1, 1]
    r = sl.relator()
    assert len(r) == 8
    assert sl.free_reduce(r) == r


def test_twists_and_curves():
    assert sl.apply_twist("a1", [2]) == [2, 1]          # b1 -> b1 a1
    assert sl.apply_twist("a1", [2], -3) == [2, -1, -1, -1]
    cs = sl.curve_system()
    assert len(cs) == 9
    labels = [label for label, _ in cs]
    assert labels[0] == "alpha1" and labels[8] == "T(beta3)"


def test_octagon_geometry():
    gens = sl.octagon_generators()
    assert len(gens) == 4
    traces = [abs(np.trace(g)) for g in gens]
    for t in traces:
        assert t == pytest.approx(2.0 + math.sqrt(2.0), abs=1e-9)
    lengths = [sl.translation_length_h([k]) for k in (1, 2, 3, 4)]
    assert max(lengths) - min(lengths) < 1e-9
    # relator evaluates to +-identity
    prod = np.eye(2)
    for k in sl.relator():
        g = gens[abs(k) - 1]
        prod = prod @ (g if k > 0 else np.linalg.inv(g))
    assert min(np.abs(prod - np.eye(2)).max(), np.abs(prod + np.eye(2)).max()) < 1e-8


def test_toledo_values():
    assert sl.toledo("diagonal", 1) == 2
    assert sl.toledo("diagonal", 2) == 4
    assert sl.toledo("irreducible", 2) == 4
    assert sl.milnor_wood_bound(2) == 4
    assert sl.is_maximal("diagonal", 2)
    assert sl.is_maximal("irreducible", 2)


def test_translation_lengths():
    lh = sl.translation_length_h([1, 2])
    diag, diag_lb = sl.translation_length_sp("diagonal", 2, [1, 2])
    assert diag == pytest.approx(lh, abs=1e-6)
    assert diag >= diag_lb - 1e-6
    irr, irr_lb = sl.translation_length_sp("irreducible", 2, [1, 2])
    assert 2 * lh - 1e-6 <= irr <= 3 * lh + 1e-6
    assert irr_lb == pytest.approx(2 * lh, abs=1e-6)


def test_cone_and_causal():
    z1 = np.eye(2)
    z2 = np.diag([math.e**4, math.e**2])
    assert sl.in_cone(z1, z2)
    assert not sl.in_cone(z2, z1)
    assert sl.d_y(z1, z2) == pytest.approx(4.0, abs=1e-9)
    assert sl.d_proof(z1, z2) == pytest.approx(6.0, abs=1e-9)
    report = sl.causal_bound_check([z1, np.diag([2.0, 3.0]), z2 + np.eye(2)])
    assert report["pass"]
    assert report["length_literal"] <= 2 * report["bound_literal"]


def test_orbit_divergence():
    sums = sl.orbit_sums("diagonal", 2, "a1", 6)
    assert len(sums) == 7
    assert sums[-1] >= 2.0 * sums[0]
    flat = sl.orbit_sums("diagonal", 2, "id", 3)
    assert max(flat) - min(flat) < 1e-9
