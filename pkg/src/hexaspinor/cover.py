"""SL(4,C) -> SO(6,C): the push-forward, its inverse up to sign, and the
matching map on traceless generators."""
from __future__ import annotations

import numpy as np

from .norden import NordenSet, build_A_operators, spinor_to_pair
from .tensors import DEFAULT_TOL, residual


class CoverError(ValueError):
    pass


def push(n: NordenSet, S, tol: float = DEFAULT_TOL) -> np.ndarray:
    """K_alpha^beta = 1/4 eta_alpha^{ab} eta^beta_{cd} 2 S_[a^c S_b]^d."""
    S = np.asarray(S, dtype=complex)
    det = np.linalg.det(S)
    if abs(det - 1) > max(tol, 1e-8):
        raise CoverError(f"det S = {det} is not 1")
    SS = np.einsum("ac,bd->abcd", S, S)
    SS = SS - SS.transpose(1, 0, 2, 3)
    return 0.25 * np.einsum("xab,ycd,abcd->xy", n.eta_up, n.eta_down, SS)


def orthogonality_residual(n: NordenSet, K) -> float:
    return residual(K @ n.g @ K.T, n.g)


def is_special(n: NordenSet, K, tol: float = 1e-8) -> bool:
    K = np.asarray(K, dtype=complex)
    if orthogonality_residual(n, K) > tol:
        raise CoverError("K is not orthogonal")
    return abs(np.linalg.det(K) - 1) <= tol


def sign_convention(S) -> np.ndarray:
    """Pick between S and -S: the first largest-magnitude entry must have
    argument in (-pi/2, pi/2]."""
    flat = np.asarray(S).ravel()
    mags = np.abs(flat)
    # ties within rounding go to the smallest flat index
    k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    arg = np.angle(flat[k])
    keep = -np.pi / 2 < arg <= np.pi / 2
    return np.asarray(S) if keep else -np.asarray(S)


def lift(n: NordenSet, K, tol: float = 1e-8) -> np.ndarray:
    """One of the two spin transforms covering a special orthogonal K."""
    K = np.asarray(K, dtype=complex)
    if K.shape != (6, 6):
        raise CoverError(f"K must be 6x6, got {K.shape}")
    if orthogonality_residual(n, K) > tol:
        raise CoverError(f"K is not orthogonal (residual {orthogonality_residual(n, K):.3e})")
    if abs(np.linalg.det(K) - 1) > tol:
        raise CoverError("K is not special (det K != 1)")
    # K_alpha^beta eta_beta = P eta_alpha P^T with P = S^T
    M = np.einsum("xy,yab->xab", K, n.eta_up)
    eta = n.eta_up
    eye = np.eye(4)
    rows = []
    for a in range(6):
        for b in range(6):
            if a == b:
                continue
            Lm = M[a] @ np.linalg.inv(M[b])
            Rm = eta[a] @ np.linalg.inv(eta[b])
            # Lm P - P Rm = 0, P flattened row-major
            rows.append(np.kron(Lm, eye) - np.kron(eye, Rm.T))
    sys_ = np.vstack(rows)
    _, sv, vh = np.linalg.svd(sys_)
    null_dim = int(np.sum(sv < 1e-9 * sv[0]))
    if null_dim != 1:
        raise CoverError(f"intertwiner null space has dimension {null_dim}")
    P = vh[-1].conj().reshape(4, 4)
    # fix the scale from M_0 = c^2 P eta_0 P^T
    base = P @ eta[0] @ P.T
    k = np.unravel_index(np.argmax(np.abs(base)), base.shape)
    c = np.sqrt(M[0][k] / base[k])
    S = (c * P).T
    if residual(push(n, S, tol=1e-6), K) > tol * max(1.0, np.abs(K).max()):
        raise CoverError("lift residual above tolerance")
    return sign_convention(S)


def push_infinitesimal(n: NordenSet, T, tol: float = DEFAULT_TOL, A=None) -> np.ndarray:
    """T_{alpha beta} = A_{alpha beta b}^a T_a^b for traceless T."""
    T = np.asarray(T, dtype=complex)
    if abs(np.trace(T)) > tol:
        raise CoverError("T is not traceless")
    A = build_A_operators(n) if A is None else A
    return spinor_to_pair(A, T)


def eps_invariance_residual(n: NordenSet, S) -> float:
    S = np.asarray(S, dtype=complex)
    lhs = np.einsum("ab,cd,ef,gh,bdfh->aceg", S, S, S, S, n.eps, optimize=True)
    return residual(lhs, np.linalg.det(S) * n.eps)
