"""Real slices R^6_(p,q) inside the complex 6-space and the spinor
structures s that go with them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, null_space

from .norden import NordenSet, build_A_operators, bivector_to_vector
from .tensors import residual

# s blocks in the special spinor basis, one per supported signature.
_S_BLOCKS = {
    (6, 0): np.eye(4),
    (1, 5): np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
    (2, 4): np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    (3, 3): np.eye(4),
}

# 0-based directions that get the factor i in the diagonal inclusion H.
# For (2,4) this is the reference inclusion; for the other rows it is the
# unique diagonal 1/i pattern for which the conjugated operators equal the
# s-transported ones with a + sign.
_NEGATIVE_DIRS = {
    (6, 0): (),
    (1, 5): (0, 2, 3, 4, 5),
    (2, 4): (2, 3, 4, 5),
    (3, 3): (0, 2, 4),
}

SIGNATURES = tuple(_S_BLOCKS)


class RealFormError(ValueError):
    pass


@dataclass(frozen=True)
class RealFormData:
    signature: tuple
    H: np.ndarray        # H[i, alpha] = H_i^alpha
    H_inv: np.ndarray    # H_inv[alpha, i] = H^i_alpha, so H_inv = H^-1
    involution: np.ndarray  # S[alpha, beta'] with conj(v) = S^T v for real v
    s_kind: str          # "polarity" (even q) or "involution" (odd q)
    s: np.ndarray
    induced_metric: np.ndarray

    @property
    def q(self) -> int:
        return self.signature[1]

    @property
    def s_up(self) -> np.ndarray:
        """s^{kl'} with s^{kl'} s_{km'} = delta (polarity branch)."""
        return np.linalg.inv(self.s).T

    @property
    def branch_sign(self) -> int:
        """The sign n in s sbar = n delta (involution) or sbar^T = n s (polarity)."""
        s = self.s
        if self.s_kind == "involution":
            return int(np.round((s @ s.conj())[0, 0].real))
        return 1 if residual(s.conj().T, s) < 1e-12 else -1


def parse_signature(sig) -> tuple:
    if isinstance(sig, str):
        sig = tuple(int(x) for x in sig.split(","))
    sig = tuple(int(x) for x in sig)
    if sig not in _S_BLOCKS:
        raise RealFormError(f"unsupported signature {sig}; choose from {SIGNATURES}")
    return sig


def build_real_form(signature) -> RealFormData:
    sig = parse_signature(signature)
    h = np.ones(6, dtype=complex)
    h[list(_NEGATIVE_DIRS[sig])] = 1j
    H = np.diag(h)
    H_inv = np.diag(1 / h)
    # v = H^T u for real u gives conj(v) = conj(H)^T H^-T v
    inv = (H.conj().T @ np.linalg.inv(H.T)).T
    g = np.eye(6, dtype=complex)
    gij = (H @ g @ H.T).real
    kind = "polarity" if sig[1] % 2 == 0 else "involution"
    return RealFormData(sig, H, H_inv, inv, kind, _S_BLOCKS[sig].astype(complex), gij)


def signature_of(metric) -> tuple:
    ev = np.linalg.eigvalsh(np.asarray(metric).real)
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def real_frame(n: NordenSet, rf: RealFormData) -> tuple:
    """(eta_i^{ab}, eta^i_{ab}) in the real frame of rf."""
    up = np.einsum("ix,xab->iab", rf.H, n.eta_up)
    down = np.einsum("xi,xab->iab", rf.H_inv, n.eta_down)
    return up, down


def involution_from_s(n: NordenSet, rf: RealFormData) -> np.ndarray:
    s = rf.s
    conj_down = n.eta_down.conj()
    if rf.s_kind == "involution":
        return 0.25 * np.einsum("xab,ycd,ac,bd->xy", n.eta_up, conj_down, 2 * s, s)
    su = rf.s_up
    return 0.25 * np.einsum("xab,ycd,kc,nd,knab->xy", n.eta_up, conj_down, su, su, n.eps)


def conjugation_covariance_residual(n: NordenSet, rf: RealFormData) -> float:
    """conj(eta_i) against the s-transported real-frame operators."""
    up, _ = real_frame(n, rf)
    if rf.s_kind == "involution":
        rhs = np.einsum("icd,ca,db->iab", up, rf.s, rf.s)
    else:
        low = 0.5 * np.einsum("abcd,icd->iab", n.eps, up)
        rhs = np.einsum("icd,ca,db->iab", low, rf.s_up, rf.s_up)
    return residual(up.conj(), rhs)


def conjugate_A_residual(n: NordenSet, rf: RealFormData) -> float:
    """The same covariance for the A operators in the real frame."""
    A = build_A_operators(n)
    Ai = np.einsum("ix,jy,xydc->ijdc", rf.H, rf.H, A)
    s = rf.s
    if rf.s_kind == "involution":
        # conj(A_{ij a'}^{b'}) = A_{ij d}^c s_c^{b'} conj(s)_{a'}^d, where
        # conj(s) is the inverse of s only up to the branch sign
        rhs = rf.branch_sign * np.einsum("ijdc,cb,ad->ijab", Ai, s, s.conj())
    else:
        # conj(A_{ij a'}^{b'}) = -A_{ij b}^a s_{aa'} s^{bb'}
        rhs = -np.einsum("ijba,ax,by->ijxy", Ai, s, rf.s_up)
    return residual(Ai.conj(), rhs)


def metric_checks(rf: RealFormData) -> dict:
    I6 = np.eye(6)
    return {
        "inclusion_inverse": max(residual(rf.H_inv @ rf.H, I6), residual(rf.H @ rf.H_inv, I6)),
        "involution_square": residual(rf.involution @ rf.involution.conj(), I6),
        "metric_imag": float(np.max(np.abs((rf.H @ rf.H.T).imag))),
        "signature_ok": signature_of(rf.induced_metric) == rf.signature,
    }


def branch_law_residual(rf: RealFormData) -> float:
    s = rf.s
    if rf.s_kind == "involution":
        return residual(s @ s.conj(), rf.branch_sign * np.eye(4))
    return residual(s, rf.branch_sign * s.conj().T)


def is_real_vector(rf: RealFormData, v, tol: float = 1e-10) -> bool:
    v = np.asarray(v, dtype=complex)
    return residual(rf.involution.T @ v, v.conj()) <= tol


def _annihilator(P) -> np.ndarray:
    """Rows span the covectors killing the columns of P."""
    return null_space(np.asarray(P).T).T


def reality_pairings(rf: RealFormData, X, Y) -> list:
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    if rf.s_kind == "polarity":
        # Hermitian form h(u, v) = s_{ab'} u^a conj(v)^{b'} on the spinor plane
        def h(u, v):
            return complex(u @ rf.s @ v.conj())
        return [h(X, X), h(X, Y), h(Y, Y)]
    # odd q: the s-image of the plane must be killed by the conjugated
    # annihilator of the plane
    P = np.column_stack([X, Y])
    U = _annihilator(P).conj()
    SX = rf.s.T @ X
    SY = rf.s.T @ Y
    return [complex(u @ w) for u in U for w in (SX, SY)]


def bivector_reality_check(rf: RealFormData, X, Y, tol: float = 1e-10) -> bool:
    scale = max(1.0, np.linalg.norm(X) * np.linalg.norm(Y))
    return all(abs(p) <= tol * scale for p in reality_pairings(rf, X, Y))


def real_up_to_phase(rf: RealFormData, v, tol: float = 1e-9) -> bool:
    """Independent test: some complex multiple of v is a real vector."""
    v = np.asarray(v, dtype=complex)
    w = rf.involution.T @ v
    # need conj(c v) = S^T (c v), i.e. w and conj(v) parallel with unit ratio
    M = np.column_stack([w, v.conj()])
    sv = np.linalg.svd(M, compute_uv=False)
    return sv[-1] <= tol * max(1.0, sv[0])


def stabilizer_residual(rf: RealFormData, S) -> tuple:
    """Returns (n, residual of N - n I) for a spin transform S.

    Polarity kind: N_c^l = s^{lk'} conj(S)_{k'}^{m'} s_{am'} S_c^a.
    Involution kind: N = s^-1 S s conj(S)^-1, i.e. S commutes with the
    antilinear map built from s.
    """
    S = np.asarray(S, dtype=complex)
    if rf.s_kind == "involution":
        N = np.linalg.inv(rf.s) @ S @ rf.s @ np.linalg.inv(S.conj())
    else:
        N = np.einsum("ca,am,km,lk->cl", S, rf.s, S.conj(), rf.s_up)
    nval = N[0, 0]
    return nval, residual(N, nval * np.eye(4))


def real_frame_vector(rf: RealFormData, u) -> np.ndarray:
    """Complex-frame components H_i^alpha u^i of real-frame coordinates u."""
    return rf.H.T @ np.asarray(u, dtype=complex)


def to_real_coords(rf: RealFormData, v) -> np.ndarray:
    return rf.H_inv.T @ np.asarray(v, dtype=complex)


def real_rotation(rf: RealFormData, generator) -> np.ndarray:
    """Complex-frame K from exp of a real so(p,q) element built from any real 6x6."""
    B = np.asarray(generator, dtype=float)
    B = B - B.T
    Kr = expm(B @ np.linalg.inv(rf.induced_metric))
    # K_i^j = H_i^alpha H^j_beta K_alpha^beta
    return rf.H_inv @ Kr @ rf.H


def pf_from_real(rf: RealFormData, n: NordenSet, R) -> complex:
    r = bivector_to_vector(n, R)
    u = to_real_coords(rf, r)
    return complex(u @ rf.induced_metric @ u)
