from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexaspinor import norden
from hexaspinor.tensors import random_bivector, random_complex, residual

R2 = 1 / np.sqrt(2)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
FRAMES = {"complex": norden.build_norden_special(), "real": norden.special_table()}


def test_reference_entries_of_the_real_table():
    n = norden.special_table()
    assert n.eta_up[1, 0, 1] == pytest.approx(R2)
    assert n.eta_up[2, 2, 3] == pytest.approx(-R2)
    assert n.eta_up[0, 0, 3] == pytest.approx(1j * R2)
    assert n.eta_up[0, 1, 2] == pytest.approx(-1j * R2)
    assert residual(n.g, np.diag([1, 1, -1, -1, -1, -1])) < 1e-15


def test_complex_frame_has_identity_metric():
    assert residual(norden.build_norden_special().g, np.eye(6)) < 1e-15


@pytest.mark.parametrize("frame", FRAMES)
def test_identity_suite_within_tolerance(frame):
    rep = norden.identity_suite(FRAMES[frame])
    info = {"bivector_square_full_pf"}
    loose = {"six_vector_antisymmetry", "six_vector_triple_A", "simple_isotropic"}
    for key, value in rep.items():
        if key in info:
            continue
        assert value < (1e-10 if key in loose else 1e-12), key


def test_square_law_carries_half_pf_not_full_pf():
    rep = norden.identity_suite(norden.build_norden_special())
    assert rep["bivector_square_half_pf"] < 1e-12
    assert rep["bivector_square_full_pf"] > 1e-3


def test_vector_component_of_the_v_bivector():
    R = np.zeros((4, 4), dtype=complex)
    R[0, 1], R[2, 3] = R2, R2
    R -= R.T
    for n in FRAMES.values():
        assert residual(norden.bivector_to_vector(n, R), np.eye(6)[1]) < 1e-15
    assert residual(norden.bivector_to_vector(FRAMES["real"], np.zeros((4, 4))), np.zeros(6)) == 0


@pytest.mark.parametrize("frame", FRAMES)
def test_bivector_vector_maps_are_inverse(frame):
    n = FRAMES[frame]
    rng = np.random.default_rng(0)
    for _ in range(100):
        R = random_bivector(rng)
        r = random_complex(rng, 6)
        assert residual(norden.vector_to_bivector(n, norden.bivector_to_vector(n, R)), R) < 1e-12
        assert residual(norden.bivector_to_vector(n, norden.vector_to_bivector(n, r)), r) < 1e-12


def test_lowering_single_component():
    R = np.zeros((4, 4), dtype=complex)
    R[0, 1], R[1, 0] = 1, -1
    low = norden.lower_bivector(FRAMES["complex"], R)
    want = np.zeros((4, 4))
    want[2, 3], want[3, 2] = 1, -1
    assert residual(low, want) == 0


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_raise_undoes_lower(seed):
    n = FRAMES["complex"]
    R = random_bivector(np.random.default_rng(seed))
    assert residual(norden.raise_bivector(n, norden.lower_bivector(n, R)), R) < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_simple_bivectors_are_isotropic(seed):
    rng = np.random.default_rng(seed)
    X, Y = random_complex(rng, 4), random_complex(rng, 4)
    R = norden.wedge(X, Y)
    for n in FRAMES.values():
        r = norden.bivector_to_vector(n, R)
        assert abs(norden.dot6(n, r, r)) < 1e-10 * (1 + np.linalg.norm(r) ** 2)
        assert abs(0.5 * np.einsum("ab,ab->", R, norden.lower_bivector(n, R))) < 1e-10 * (1 + np.abs(R).max() ** 2)


def test_A_operators_antisymmetric_and_traceless():
    A = norden.build_A_operators(FRAMES["complex"])
    assert residual(A, -A.transpose(1, 0, 2, 3)) < 1e-15
    assert np.abs(np.einsum("xycc->xy", A)).max() < 1e-15


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_traceless_spinor_round_trip_through_pairs(seed):
    n = FRAMES["complex"]
    A = norden.build_A_operators(n)
    T = random_complex(np.random.default_rng(seed), (4, 4))
    T -= np.trace(T) / 4 * np.eye(4)
    assert residual(norden.pair_to_spinor(n, A, norden.spinor_to_pair(A, T)), T) < 1e-12


@pytest.mark.parametrize("frame", FRAMES)
def test_gamma_anticommutation_table(frame):
    n = FRAMES[frame]
    gs = norden.build_gammas(n)
    for a, b in itertools.combinations_with_replacement(range(6), 2):
        ac = gs.gammas[a] @ gs.gammas[b] + gs.gammas[b] @ gs.gammas[a]
        assert residual(ac, 2 * n.g[a, b] * np.eye(8)) < 1e-12
    g7 = gs.gamma7
    for g in gs.gammas:
        assert residual(g7 @ g, -g @ g7) < 1e-12


@pytest.mark.parametrize("frame", FRAMES)
def test_gamma7_squares_to_minus_identity(frame):
    g7 = norden.build_gammas(FRAMES[frame]).gamma7
    assert residual(g7 @ g7, -np.eye(8)) < 1e-12


def test_six_vector_is_totally_antisymmetric():
    A = norden.build_A_operators(FRAMES["complex"])
    e6 = norden.six_vector(A)
    assert norden.total_antisymmetry_residual(e6) < 1e-10
    assert residual(e6, norden.six_vector_triple_A(A)) < 1e-10
    assert np.abs(e6).max() > 0.1
