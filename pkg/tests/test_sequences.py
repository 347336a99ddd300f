"""Tests for separated sequences along boundary rays."""

import numpy as np
import pytest

from berglab.geometry import in_metric_ball, sample_metric_ball
from berglab.sequences import (SequenceUnderflowError, build_sequence,
                               pairwise_rho, ray_rho)


def test_single_element():
    seq = build_sequence([1.0], 0.5, 1)
    np.testing.assert_allclose(seq.radii, [0.5])


def test_radii_increase_with_floor():
    seq = build_sequence([1.0], 0.5, 10)
    assert np.all(np.diff(seq.radii) > 0)
    m = np.arange(1, 11)
    assert np.all(seq.radii > 1.0 - 1.0 / m)
    assert np.all(seq.radii < 1.0)


def test_pairwise_separation_strict():
    seq = build_sequence([1.0], 0.5, 10)
    rho = pairwise_rho(seq)
    off = rho[np.triu_indices(10, 1)]
    assert np.min(off) > 0.8  # threshold 2r/(1+r^2) at r = 0.5


def test_three_term_example():
    seq = build_sequence([1.0], 0.5, 3)
    rho = pairwise_rho(seq)
    for k in range(3):
        for l in range(k + 1, 3):
            assert rho[k, l] >= 0.8


def test_disjoint_balls_by_sampling():
    rng = np.random.default_rng(31)
    seq = build_sequence(np.array([0.6 + 0.8j]), 0.5, 6)
    pts = seq.points()
    for k in range(6):
        samples = sample_metric_ball(pts[k], 0.5, 1000, rng)
        for l in range(6):
            if l != k:
                assert not np.any(in_metric_ball(pts[l], 0.5, samples))


def test_prefix_determinism():
    long = build_sequence([1.0], 0.5, 10)
    short = build_sequence([1.0], 0.5, 4)
    np.testing.assert_array_equal(short.radii, long.radii[:4])


def test_gaps_are_exact_dyadics():
    seq = build_sequence([1.0], 0.5, 8)
    np.testing.assert_array_equal(seq.gaps, 1.0 - seq.radii)
    ratios = seq.gaps[:-1] / seq.gaps[1:]
    assert np.all(ratios == np.round(ratios))  # powers of two


def test_underflow_reports_prefix():
    with pytest.raises(SequenceUnderflowError) as info:
        build_sequence([1.0], 0.5, 30)
    assert len(info.value.achieved) >= 10
    assert info.value.requested == 30


def test_works_in_higher_dimension():
    zeta = np.array([0.0, 1.0], dtype=complex)
    seq = build_sequence(zeta, 0.3, 5)
    rho = pairwise_rho(seq)
    thr = 0.6 / 1.09
    assert np.min(rho[np.triu_indices(5, 1)]) > thr


def test_input_validation():
    with pytest.raises(ValueError, match="unit"):
        build_sequence([0.9], 0.5, 3)
    with pytest.raises(ValueError):
        build_sequence([1.0], 1.5, 3)
    with pytest.raises(ValueError):
        build_sequence([1.0], 0.5, 0)


def test_ray_rho_stable_near_one():
    from fractions import Fraction
    gt, gs = Fraction(1, 2 ** 30), Fraction(1, 2 ** 34)
    exact = abs(gs - gt) / (gt + (1 - gt) * gs)
    stable = ray_rho(1.0 - 2.0 ** -30, 1.0 - 2.0 ** -34,
                     gap_t=2.0 ** -30, gap_s=2.0 ** -34)
    assert abs(stable - float(exact)) < 1e-15
    assert 0.0 < stable < 1.0
