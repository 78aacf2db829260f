from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from hexaspinor import bivgeo, cover, norden, realforms
from hexaspinor.tensors import random_bivector, random_complex, random_sl, residual

N = norden.build_norden_special()
A = norden.build_A_operators(N)
RF24 = realforms.build_real_form((2, 4))
RF60 = realforms.build_real_form((6, 0))
seeds = st.integers(min_value=0, max_value=2**32 - 1)
R2 = 1 / np.sqrt(2)


def _incident_pair(rng):
    X = random_complex(rng, 4)
    Y = random_complex(rng, 4)
    Y -= (X @ Y) / (X @ X.conj()) * X.conj()
    return X, Y


def _image_to_six(p4):
    """6x6 bivector whose traceless image is p4 (g is the identity here)."""
    return norden.spinor_to_pair(A, p4)


def _real_bivector(rng):
    h = random_complex(rng, (4, 4))
    R = h - h.conj().T
    return R - np.trace(R) / 4 * np.eye(4)


def _special_unitary(seed):
    U = unitary_group.rvs(4, random_state=seed)
    return U / np.linalg.det(U) ** 0.25


# ---------------------------------------------------------------- pfaffians

def test_pfaffian_examples():
    R = np.zeros((4, 4), dtype=complex)
    R[0, 1], R[2, 3] = R2, R2
    R -= R.T
    assert abs(bivgeo.pfaffian(R) - 1) < 1e-15
    assert abs(bivgeo.pfaffian(np.sqrt(2) * R) - 2) < 1e-14
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.pfaffian(np.zeros((6, 6)))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_pfaffian_routes_agree(seed):
    rng = np.random.default_rng(seed)
    X, Y = random_complex(rng, (2, 4))
    assert abs(bivgeo.pfaffian(norden.wedge(X, Y))) < 1e-11
    R = random_bivector(rng)
    assert abs(bivgeo.pfaffian(R) - bivgeo.pfaffian_by_contraction(N, R)) < 1e-11
    assert abs(bivgeo.pfaffian(R) - realforms.pf_from_real(RF24, N, R)) < 1e-11


# --------------------------------------------------------------- simplicity

def test_is_simple_examples():
    X, Y = random_complex(np.random.default_rng(0), (2, 4))
    assert bivgeo.is_simple(norden.wedge(X, Y))
    R = np.zeros((4, 4))
    R[0, 1], R[2, 3] = 1, 1
    assert not bivgeo.is_simple(R - R.T)
    assert bivgeo.is_simple(np.zeros((4, 4)))
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.is_simple(random_complex(np.random.default_rng(1), (4, 4)))


def test_simplicity_routes_agree_on_a_thousand_inputs():
    rng = np.random.default_rng(11)
    counts = {True: 0, False: 0}
    for k in range(1000):
        if k % 2:
            R = random_bivector(rng) if k % 4 == 1 else norden.wedge(*random_complex(rng, (2, 4)))
        else:
            u, v = random_complex(rng, (2, 6))
            R = np.outer(u, v) - np.outer(v, u)
            if k % 4 == 2:
                R = R + norden.wedge(*random_complex(rng, (2, 6)))
        a, b = bivgeo.simplicity_tests(R, N)
        assert a == b
        counts[bool(a)] += 1
    assert counts[True] == counts[False] == 500


# ---------------------------------------------------------------- null pair

def test_null_pair_of_basis_spinors():
    e = np.eye(4)
    pair = bivgeo.extract_null_pair(N, np.outer(e[0], e[1]))
    assert residual(pair.X, e[0]) == 0 and residual(pair.Y, e[1]) == 0


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_null_pair_reconstruction_and_gauge(seed):
    rng = np.random.default_rng(seed)
    X, Y = _incident_pair(rng)
    p = np.outer(X, Y)
    pair = bivgeo.extract_null_pair(N, p)
    assert residual(pair.outer(), p) < 1e-10 * np.abs(p).max()
    assert abs(pair.incidence) < 1e-10 * np.abs(p).max()
    c = np.exp(complex(*rng.standard_normal(2)))
    again = bivgeo.extract_null_pair(N, np.outer(c * X, Y / c))
    assert residual(again.X, pair.X) < 1e-12 * np.abs(pair.X).max()
    assert residual(again.Y, pair.Y) < 1e-12 * np.abs(pair.Y).max()
    six = bivgeo.extract_null_pair(N, _image_to_six(p))
    assert residual(six.outer(), p) < 1e-10 * np.abs(p).max()
    assert bivgeo.is_simple(_image_to_six(p), N)


def test_null_pair_rejects_rank_two_and_bad_inputs():
    rng = np.random.default_rng(2)
    (X1, Y1), (X2, Y2) = _incident_pair(rng), _incident_pair(rng)
    p = np.outer(X1, Y1) + np.outer(X2, Y2)
    p -= np.trace(p) / 4 * np.eye(4)
    for bad in (p, np.zeros((4, 4)), np.outer(*random_complex(rng, (2, 4))), np.zeros((3, 3))):
        with pytest.raises(bivgeo.BivectorError):
            bivgeo.extract_null_pair(N, bad)


# ------------------------------------------------------------ canonical form

def test_canonical_form_of_a_diagonal_bivector():
    c = 1.7
    R = c * np.diag([1j, -1j, 1j, -1j])
    cf = bivgeo.canonical_form(RF60, R, N)
    assert residual(cf.eigenvalues, [1j * c, 1j * c, -1j * c, -1j * c]) < 1e-14
    assert residual(cf.U @ R @ cf.U.conj().T, np.diag(cf.eigenvalues)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_canonical_form_properties(seed):
    rng = np.random.default_rng(seed)
    R = _real_bivector(rng)
    cf = bivgeo.canonical_form(RF60, R, N)
    assert abs(cf.eigenvalues.sum()) < 1e-12 * max(1.0, np.abs(R).max())
    assert np.all(np.diff(cf.eigenvalues.imag) <= 0)
    assert residual(cf.U @ R @ cf.U.conj().T, np.diag(cf.eigenvalues)) < 1e-10 * np.abs(R).max()
    assert residual(cf.U @ cf.U.conj().T, np.eye(4)) < 1e-12
    assert abs(np.linalg.det(cf.U) - 1) < 1e-12
    U = _special_unitary(seed % 2**31)
    cf2 = bivgeo.canonical_form(RF60, U @ R @ U.conj().T, N)
    assert residual(cf2.eigenvalues, cf.eigenvalues) < 1e-9
    for key in ("R16", "R23", "R45"):
        assert abs(cf2.invariants[key] - cf.invariants[key]) < 1e-9


def test_canonical_form_rejections():
    R = _real_bivector(np.random.default_rng(0))
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.canonical_form(RF24, R, N)
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.canonical_form(RF60, R + np.eye(4) * 1j, N)
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.canonical_form(RF60, R + random_complex(np.random.default_rng(1), (4, 4)), N)


# --------------------------------------------------------------------- flag

def _flag_invariants(flag):
    return np.concatenate([flag.K, flag.N, flag.L, flag.M])


def test_standard_basis_flag():
    basis = bivgeo.standard_twistor_basis()
    conds = bivgeo.basis_conditions(RF24, basis, N)
    assert max(conds.values()) < 1e-14
    flag = bivgeo.build_flag(RF24, basis, N)
    assert max(bivgeo.flag_relations(N, flag).values()) < 1e-10
    assert bivgeo.flag_reality(RF24, flag)
    assert flag.extension_type == "second"
    assert abs(flag.extension + np.sqrt(2)) < 1e-14
    assert residual(flag.P, -flag.P.transpose(1, 0, 2)) < 1e-15


@pytest.mark.parametrize("theta", [np.pi / 8, np.pi / 4, 0.3])
def test_rotation_law(theta):
    basis = bivgeo.standard_twistor_basis()
    flag = bivgeo.build_flag(RF24, basis, N)
    rot = bivgeo.build_flag(RF24, bivgeo.rotate_basis(basis, theta), N)
    assert abs(rot.L @ N.g @ flag.M + 2 * np.sin(2 * theta)) < 1e-9
    assert residual(rot.L, flag.L * np.cos(2 * theta) + flag.M * np.sin(2 * theta)) < 1e-12
    assert residual(rot.K, flag.K) < 1e-12


def test_rotation_with_mu_and_chi_keeps_the_basis_valid():
    basis = bivgeo.rotate_basis(bivgeo.standard_twistor_basis(), 0.4, mu=0.3 - 0.2j, chi=0.1 + 0.5j)
    flag = bivgeo.build_flag(RF24, basis, N)
    assert max(bivgeo.flag_relations(N, flag).values()) < 1e-10
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.rotate_basis(bivgeo.standard_twistor_basis(), 0.4, mu=0.3, chi=0.1, delta=5.0)


def test_half_turn_flips_the_twistor_and_keeps_the_flag():
    basis = bivgeo.standard_twistor_basis()
    turned = bivgeo.rotate_basis(basis, np.pi)
    assert residual(turned.T, -basis.T) < 1e-15
    f0 = bivgeo.build_flag(RF24, basis, N)
    f1 = bivgeo.build_flag(RF24, turned, N)
    assert residual(_flag_invariants(f1), _flag_invariants(f0)) < 1e-12


@pytest.mark.parametrize("r", [0.5, 2.0, -3.0])
def test_scaling_moves_only_the_extension(r):
    basis = bivgeo.standard_twistor_basis()
    f0 = bivgeo.build_flag(RF24, basis, N)
    f1 = bivgeo.build_flag(RF24, bivgeo.scale_basis(basis, r), N)
    assert abs(f1.extension - r * f0.extension) < 1e-12
    assert residual(f1.L, f0.L) < 1e-10 and residual(f1.M, f0.M) < 1e-10
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.scale_basis(basis, 0)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_real_rotations_carry_valid_bases_to_valid_bases(seed):
    rng = np.random.default_rng(seed)
    S = cover.lift(N, realforms.real_rotation(RF24, 0.5 * rng.standard_normal((6, 6))))
    basis = bivgeo.TwistorBasis(*(S @ v for v in bivgeo.standard_twistor_basis().as_tuple()))
    flag = bivgeo.build_flag(RF24, basis, N)
    assert max(bivgeo.flag_relations(N, flag).values()) < 1e-9
    assert bivgeo.flag_reality(RF24, flag, tol=1e-9)


def test_flag_rejects_invalid_input():
    S = random_sl(np.random.default_rng(0))
    bad = bivgeo.TwistorBasis(*(S @ v for v in bivgeo.standard_twistor_basis().as_tuple()))
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.build_flag(RF24, bad, N)
    with pytest.raises(bivgeo.BivectorError):
        bivgeo.build_flag(RF60, bivgeo.standard_twistor_basis(), N)
