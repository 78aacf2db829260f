"""Algebraic curvature on the 6-space and its 4-index spinor image.

Rank-4 tensors are stored all-lower, R[a, b, c, d] = R_{abcd}. Spin-tensors
are stored as Rs[c, d, s, r] = R_c^d_s^r.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .norden import NordenSet, build_A_operators, raise_A
from .tensors import antisymmetrize, max_abs, random_complex, residual


class CurvatureError(ValueError):
    pass


def kulkarni_nomizu(h, k) -> np.ndarray:
    return (np.einsum("ac,bd->abcd", h, k) + np.einsum("bd,ac->abcd", h, k)
            - np.einsum("ad,bc->abcd", h, k) - np.einsum("bc,ad->abcd", h, k))


def random_alg_curvature(seed: int = 0, terms: int = 3, dim: int = 6) -> np.ndarray:
    if terms < 1:
        raise CurvatureError("terms must be >= 1")
    rng = np.random.default_rng(seed)
    R = np.zeros((dim,) * 4, dtype=complex)
    for _ in range(terms):
        h = random_complex(rng, (dim, dim))
        k = random_complex(rng, (dim, dim))
        R += kulkarni_nomizu(h + h.T, k + k.T)
    return R


def symmetry_residuals(R) -> dict:
    return {
        "antisym_first": residual(R, -R.transpose(1, 0, 2, 3)),
        "antisym_second": residual(R, -R.transpose(0, 1, 3, 2)),
        "pair_symmetry": residual(R, R.transpose(2, 3, 0, 1)),
        "first_bianchi": bianchi_tensor_residual(R),
    }


def bianchi_tensor_residual(R) -> float:
    # R_abcd + R_adbc + R_acdb
    return max_abs(R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2))


def _check_tensor(R, tol):
    bad = {k: v for k, v in symmetry_residuals(R).items() if v > tol * max(1.0, max_abs(R))}
    if bad:
        raise CurvatureError(f"not an algebraic curvature tensor: {bad}")


def spin_invariant_residuals(Rs) -> dict:
    return {
        "pair_symmetry": residual(Rs, Rs.transpose(2, 3, 0, 1)),
        "trace_first": max_abs(np.einsum("kksr->sr", Rs)),
        "trace_second": max_abs(np.einsum("cdkk->cd", Rs)),
    }


def _check_spin(Rs, tol):
    bad = {k: v for k, v in spin_invariant_residuals(Rs).items() if v > tol * max(1.0, max_abs(Rs))}
    if bad:
        raise CurvatureError(f"spin-tensor invariants violated: {bad}")


def tensor_to_spintensor(n: NordenSet, R, tol: float = 1e-9, check: bool = True) -> np.ndarray:
    """R_c^d_s^r = 1/4 R_{ck}^{dk}_{st}^{rt} with the rank-4 tensor pulled back
    to spinor pairs and the 2nd and 4th pairs raised by eps."""
    R = np.asarray(R, dtype=complex)
    if check:
        _check_tensor(R, tol)
    ed = n.eta_down
    low = np.einsum("xab,ycd,zef,wgh,xyzw->abcdefgh", ed, ed, ed, ed, R, optimize=True)
    mixed = 0.25 * np.einsum("cdij,klmn,abijefmn->abcdefkl", n.eps_up, n.eps_up, low, optimize=True)
    return 0.25 * np.einsum("ckdkstrt->cdsr", mixed)


def spintensor_to_tensor(n: NordenSet, Rs, A=None, tol: float = 1e-9, check: bool = True) -> np.ndarray:
    """R_{abcd} = A_{ab d'}^{c'} A_{cd r}^s R_{c'}^{d'}_s^r."""
    Rs = np.asarray(Rs, dtype=complex)
    if check:
        _check_spin(Rs, tol)
    A = build_A_operators(n) if A is None else A
    return np.einsum("xydc,zwrs,cdsr->xyzw", A, A, Rs, optimize=True)


def spintensor_via_A(n: NordenSet, R, A=None) -> np.ndarray:
    """Second route to the spin-tensor: 1/4 A^{ab}_c^d A^{cd}_s^r R_{abcd}."""
    A = build_A_operators(n) if A is None else A
    Au = raise_A(n, A)
    return 0.25 * np.einsum("xycd,zwsr,xyzw->cdsr", Au, Au, R, optimize=True)


def scalar_curvature(Rs) -> complex:
    """R = -2 R_k^r_r^k."""
    return complex(-2 * np.einsum("krrk->", Rs))


def ricci_tensor(n: NordenSet, R) -> np.ndarray:
    return np.einsum("xz,xyzw->yw", n.g_inv, R)


def scalar_from_tensor(n: NordenSet, R) -> complex:
    return complex(np.einsum("yw,yw->", n.g_inv, ricci_tensor(n, R)))


@dataclass(frozen=True)
class Decomposition:
    weyl: np.ndarray    # C[c, d, s, r] = C_c^d_s^r
    ricci_part: np.ndarray  # P[c, s, r, d] = P_cs^rd
    scalar: complex


def _scalar_block(Rsc) -> np.ndarray:
    d = np.eye(4)
    return (Rsc / 40) * (3 * np.einsum("sd,cr->cdsr", d, d) - 2 * np.einsum("sr,cd->cdsr", d, d))


def ricci_part(Rs) -> np.ndarray:
    """P_cs^rd = -4 (R_[c^[r_s]^d] + R_[c^k_|k|^[r delta_s]^d])."""
    d = np.eye(4)
    t = np.einsum("crsd->csrd", Rs) + np.einsum("ckkr,sd->csrd", Rs, d)
    return -4 * antisymmetrize(antisymmetrize(t, [0, 1]), [2, 3])


def decompose(n: NordenSet, Rs, tol: float = 1e-9) -> Decomposition:
    Rs = np.asarray(Rs, dtype=complex)
    _check_spin(Rs, tol)
    Rsc = scalar_curvature(Rs)
    P = ricci_part(Rs)
    # the traceless-Ricci piece enters with weight 1/4 against P normalized
    # by its trace law P_kc^kd = R/2
    C = Rs + 0.25 * np.einsum("csdr->cdsr", P) + _scalar_block(Rsc)
    return Decomposition(C, P, Rsc)


def recompose(dec: Decomposition) -> np.ndarray:
    return dec.weyl - 0.25 * np.einsum("csdr->cdsr", dec.ricci_part) - _scalar_block(dec.scalar)


def weyl_symmetrized(Rs) -> np.ndarray:
    """C_c^d_s^r = R_(c^(d_s)^r) + R/40 delta_(s^d delta_c)^r."""
    d = np.eye(4)
    sym = 0.25 * (Rs + Rs.transpose(2, 1, 0, 3) + Rs.transpose(0, 3, 2, 1) + Rs.transpose(2, 3, 0, 1))
    dd = 0.5 * (np.einsum("sd,cr->cdsr", d, d) + np.einsum("cd,sr->cdsr", d, d))
    return sym + scalar_curvature(Rs) / 40 * dd


def ricci_from_P(n: NordenSet, P) -> np.ndarray:
    """R_{bd} = 1/4 eta_b^{cs} eta_{d rd'} P_cs^{rd'}."""
    return 0.25 * np.einsum("ycs,wrd,csrd->yw", n.eta_up, n.eta_low, P)


def weyl_tensor(n: NordenSet, R) -> np.ndarray:
    """Tensor-side Weyl part C_ab^cd of an all-lower rank-4 tensor (6 dims)."""
    gi = n.g_inv
    Rud = np.einsum("zp,wq,xypq->xyzw", gi, gi, R)
    ric = ricci_tensor(n, R) @ gi
    Rsc = np.trace(ric)
    I6 = np.eye(6)

    def wedge(a, b):
        t = np.einsum("ac,bd->abcd", a, b)
        return antisymmetrize(antisymmetrize(t, [0, 1]), [2, 3])

    return Rud - wedge(ric, I6) + Rsc / 10 * wedge(I6, I6)


def push_weyl(n: NordenSet, C, A=None) -> np.ndarray:
    """C_ab^cd = A_{ab d'}^{c'} A^{cd}_r^s C_{c'}^{d'}_s^r."""
    A = build_A_operators(n) if A is None else A
    return np.einsum("xydc,zwrs,cdsr->xyzw", A, raise_A(n, A), C, optimize=True)


def bianchi_residual(Rs) -> float:
    """max |R_l^d_s^l + R/8 delta_s^d|."""
    Rs = np.asarray(Rs, dtype=complex)
    return max_abs(np.einsum("ldsl->ds", Rs) + scalar_curvature(Rs) / 8 * np.eye(4))


def weyl_trace_residual(C) -> float:
    return max(max_abs(np.einsum("kksr->sr", C)), max_abs(np.einsum("cdkk->cd", C)),
               max_abs(np.einsum("kdsk->ds", C)), max_abs(np.einsum("ckkr->cr", C)))


def real_branch_residual(rf, Rs) -> float:
    """Reality of a spin-tensor under the s structure of a real form.

    Polarity kind: with R_{ab'cd'} = R_a^b_c^d s_{bb'} s_{dd'}, require
    R_{ab'cd'} = conj(R_{b'ad'c}).
    Involution kind: each spinor pair obeys conj(T) = s^T T s^-T.
    """
    s = rf.s
    Rs = np.asarray(Rs, dtype=complex)
    if rf.s_kind == "polarity":
        Rl = np.einsum("abcd,bx,dy->axcy", Rs, s, s)
        return residual(Rl, Rl.transpose(1, 0, 3, 2).conj())
    st = s.T
    sti = np.linalg.inv(st)
    rhs = np.einsum("ca,abkl,bd,sk,lr->cdsr", st, Rs, sti, st, sti)
    return residual(Rs.conj(), rhs)
