"""Connecting operators between C^4 bivectors and complex 6-vectors.

A NordenSet holds six antisymmetric 4x4 blocks eta_up[alpha, a, b] (upper
spinor pair) and their duals eta_down[alpha, a, b] (lower spinor pair), the
6x6 metric they induce and the rank-4 alternating symbol.

Two frames are provided:

* ``special_table()`` is the reference operator table in the real frame
  (t, v, w, x, y, z) of signature (2, 4). Its induced metric is
  diag(1, 1, -1, -1, -1, -1).
* ``build_norden_special()`` is the same table carried to the complex
  orthonormal frame by the inclusion diag(1, 1, i, i, i, i); its metric is
  the identity. Everything else in the package works in this frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensors import (
    antisymmetrize,
    delta_pair,
    levi_civita,
    max_abs,
    random_bivector,
    random_complex,
    residual,
    symmetrize,
)

R2 = 1 / np.sqrt(2)

# (alpha, a, b, value) for the upper blocks, 1-based; the lower blocks are
# their complex conjugates in this table.
_TABLE_UP = [
    (1, 1, 4, 1j * R2), (1, 2, 3, -1j * R2),
    (2, 1, 2, R2), (2, 3, 4, R2),
    (3, 1, 2, R2), (3, 3, 4, -R2),
    (4, 1, 3, -1j * R2), (4, 2, 4, 1j * R2),
    (5, 1, 3, R2), (5, 2, 4, R2),
    (6, 1, 4, 1j * R2), (6, 2, 3, 1j * R2),
]

FRAME_LABELS = ("T", "V", "W", "X", "Y", "Z")

# inclusion of the real (2,4) frame into the orthonormal complex frame
INCLUSION_24 = np.diag([1, 1, 1j, 1j, 1j, 1j])


@dataclass(frozen=True)
class NordenSet:
    eta_up: np.ndarray
    eta_down: np.ndarray
    g: np.ndarray
    eps: np.ndarray = field(default_factory=lambda: levi_civita(4))

    @property
    def g_inv(self) -> np.ndarray:
        return np.linalg.inv(self.g)

    @property
    def eps_up(self) -> np.ndarray:
        # eps^{abcd} with eps^{abcd} eps_{abcd} = 24
        e = self.eps[0, 1, 2, 3]
        return self.eps / (e * e)

    @property
    def eta_low(self) -> np.ndarray:
        """eta_{alpha ab} = 1/2 eps_{abcd} eta_alpha^{cd} (pair lowered by eps)."""
        return 0.5 * np.einsum("abcd,xcd->xab", self.eps, self.eta_up)

    @property
    def eta_raised(self) -> np.ndarray:
        """eta^{alpha ab}: the upper block with its 6-index raised by g."""
        return np.einsum("xy,yab->xab", self.g_inv, self.eta_up)


def _blocks(entries, conj=False):
    out = np.zeros((6, 4, 4), dtype=complex)
    for alpha, a, b, v in entries:
        v = np.conj(v) if conj else v
        out[alpha - 1, a - 1, b - 1] = v
        out[alpha - 1, b - 1, a - 1] = -v
    return out


def metric_from_blocks(eta_up, eps) -> np.ndarray:
    return 0.25 * np.einsum("xab,ycd,abcd->xy", eta_up, eta_up, eps)


def from_blocks(eta_up, eta_down, eps=None) -> NordenSet:
    eps = levi_civita(4) if eps is None else eps
    eta_up = np.asarray(eta_up, dtype=complex)
    eta_down = np.asarray(eta_down, dtype=complex)
    return NordenSet(eta_up, eta_down, metric_from_blocks(eta_up, eps), eps)


def special_table() -> NordenSet:
    """The operator table in the real (2,4) frame, eps_1234 = 1."""
    return from_blocks(_blocks(_TABLE_UP), _blocks(_TABLE_UP, conj=True))


def change_frame(n: NordenSet, h) -> NordenSet:
    """New blocks eta'_alpha = h[i, alpha] eta_i and dual blocks by inverse."""
    h = np.asarray(h, dtype=complex)
    hinv = np.linalg.inv(h)
    up = np.einsum("ix,iab->xab", h, n.eta_up)
    down = np.einsum("xi,iab->xab", hinv, n.eta_down)
    return from_blocks(up, down, n.eps)


def build_norden_special() -> NordenSet:
    """Special-frame operators with metric the 6x6 identity."""
    n = change_frame(special_table(), np.linalg.inv(INCLUSION_24))
    # the metric comes out as the identity up to rounding; store it exactly
    return NordenSet(n.eta_up, n.eta_down, np.eye(6, dtype=complex), n.eps)


def bivector_to_vector(n: NordenSet, R) -> np.ndarray:
    return 0.5 * np.einsum("xab,ab->x", n.eta_down, R)


def vector_to_bivector(n: NordenSet, r) -> np.ndarray:
    return np.einsum("xab,x->ab", n.eta_up, r)


def lower_bivector(n: NordenSet, R) -> np.ndarray:
    return 0.5 * np.einsum("abcd,cd->ab", n.eps, R)


def raise_bivector(n: NordenSet, R_low) -> np.ndarray:
    return 0.5 * np.einsum("abcd,cd->ab", n.eps_up, R_low)


def wedge(X, Y) -> np.ndarray:
    return np.outer(X, Y) - np.outer(Y, X)


def dot6(n: NordenSet, u, v) -> complex:
    return complex(u @ n.g @ v)


# ---------------------------------------------------------------- A operators

def build_A_operators(n: NordenSet) -> np.ndarray:
    """A[alpha, beta, d, c] = A_{alpha beta d}^c = eta_[alpha^{ca} eta_beta]da."""
    t = np.einsum("xca,yda->xydc", n.eta_up, n.eta_low)
    return antisymmetrize(t, [0, 1])


def raise_A(n: NordenSet, A) -> np.ndarray:
    gi = n.g_inv
    return np.einsum("xp,yq,pqdc->xydc", gi, gi, A)


def spinor_to_pair(A, T) -> np.ndarray:
    """T_{alpha beta} = A_{alpha beta b}^a T_a^b, with T[a, b] = T_a^b."""
    return np.einsum("xyba,ab->xy", A, T)


def pair_to_spinor(n: NordenSet, A, Tpair) -> np.ndarray:
    """T_m^n = 1/2 A^{alpha beta}_m^n T_{beta alpha}."""
    Au = raise_A(n, A)
    return 0.5 * np.einsum("xymn,yx->mn", Au, Tpair)


# --------------------------------------------------------------------- gammas

@dataclass(frozen=True)
class GammaSet:
    gammas: np.ndarray  # (6, 8, 8)
    sigma: np.ndarray   # (6, 4, 4)

    @property
    def gamma7(self) -> np.ndarray:
        out = np.eye(8, dtype=complex)
        for gm in self.gammas:
            out = out @ gm
        return out


def build_gammas(n: NordenSet) -> GammaSet:
    # The lower block is the eps-lowered operator with a sign flip,
    # sigma_alpha[a, b] = -eta_{alpha ab}; with g = I this is eta^alpha_{ba}.
    sigma = -n.eta_low
    z = np.zeros((4, 4), dtype=complex)
    gam = np.array([np.sqrt(2) * np.block([[z, sigma[k]], [n.eta_up[k], z]]) for k in range(6)])
    return GammaSet(gam, sigma)


def clifford_residual(n: NordenSet, gs: GammaSet) -> float:
    worst = 0.0
    eye = np.eye(8)
    for a in range(6):
        for b in range(a, 6):
            ac = gs.gammas[a] @ gs.gammas[b] + gs.gammas[b] @ gs.gammas[a]
            worst = max(worst, residual(ac, 2 * n.g[a, b] * eye))
    return worst


# ---------------------------------------------------------------- six-vector

def spinor_volume_tensor(e_tilde=1j / 8) -> np.ndarray:
    """e_a^b_c^d_k^l of the six-vector expansion, axes (a, b, c, d, k, l)."""
    d = np.eye(4)

    def q(x, y, u, v):
        # 4 d_x^y d_u^v - d_x^v d_u^y, for axis labels given as letters
        return 4 * np.einsum(f"{x}{y},{u}{v}->{x}{y}{u}{v}", d, d) - np.einsum(f"{x}{v},{u}{y}->{x}{y}{u}{v}", d, d)

    def full(expr_axes, arr):
        return np.einsum(f"{expr_axes}->abcdkl", arr)

    t1 = full("kbclad", np.einsum("kbcl,ad->kbclad", q("k", "b", "c", "l"), d))
    t2 = full("kdalcb", np.einsum("kdal,cb->kdalcb", q("k", "d", "a", "l"), d))
    t3 = full("kbalcd", np.einsum("kbal,cd->kbalcd", q("k", "b", "a", "l"), d))
    t4 = full("kdclab", np.einsum("kdcl,ab->kdclab", q("k", "d", "c", "l"), d))
    return e_tilde * (2 * (t1 + t2) - t3 - t4)


def six_vector(A, e_tilde=1j / 8) -> np.ndarray:
    e = spinor_volume_tensor(e_tilde)
    return np.einsum("pqba,rsdc,tulk,abcdkl->pqrstu", A, A, A, e, optimize=True)


def six_vector_triple_A(A) -> np.ndarray:
    t1 = np.einsum("pqba,rsac,tucb->pqrstu", A, A, A, optimize=True)
    t2 = np.einsum("pqba,rscb,tuac->pqrstu", A, A, A, optimize=True)
    return 1j * (t1 + t2)


def total_antisymmetry_residual(t) -> float:
    worst = 0.0
    for i in range(t.ndim - 1):
        order = list(range(t.ndim))
        order[i], order[i + 1] = order[i + 1], order[i]
        worst = max(worst, residual(t, -np.transpose(t, order)))
    return worst


# ------------------------------------------------------------ identity suite

def pf_expansion(R) -> complex:
    return 2 * (R[0, 1] * R[2, 3] - R[0, 2] * R[1, 3] + R[0, 3] * R[1, 2])


def identity_suite(n: NordenSet, seed: int = 0, samples: int = 20) -> dict:
    """Max residual for each operator identity, keyed by a short name."""
    rng = np.random.default_rng(seed)
    eps, eps_up = n.eps, n.eps_up
    d4 = np.eye(4)
    out = {}

    out["antisymmetry"] = max(max_abs(n.eta_up + n.eta_up.transpose(0, 2, 1)),
                              max_abs(n.eta_down + n.eta_down.transpose(0, 2, 1)))
    out["completeness_6"] = residual(0.5 * np.einsum("xab,yab->xy", n.eta_down, n.eta_up), np.eye(6))
    out["completeness_pair"] = residual(np.einsum("xab,xcd->abcd", n.eta_down, n.eta_up), delta_pair())
    ginv = 0.25 * np.einsum("xab,ycd,abcd->xy", n.eta_down, n.eta_down, eps_up)
    out["metric_upper"] = residual(ginv, n.g_inv)
    out["metric_lower"] = residual(metric_from_blocks(n.eta_up, eps), n.g)
    out["eps_from_metric"] = residual(np.einsum("xab,ycd,xy->abcd", n.eta_down, n.eta_down, n.g), eps)

    # alternating symbol contractions
    out["eps_contract_0"] = residual(np.einsum("abcd,klmn->abcdklmn", eps_up, eps),
                                     24 * antisymmetrize(np.einsum("ka,lb,mc,nd->abcdklmn", d4, d4, d4, d4), [4, 5, 6, 7]))
    out["eps_contract_1"] = residual(np.einsum("abcd,klmd->abcklm", eps_up, eps),
                                     6 * antisymmetrize(np.einsum("ka,lb,mc->abcklm", d4, d4, d4), [3, 4, 5]))
    out["eps_contract_2"] = residual(np.einsum("abcd,klcd->abkl", eps_up, eps),
                                     4 * antisymmetrize(np.einsum("ka,lb->abkl", d4, d4), [2, 3]))
    out["eps_contract_3"] = residual(np.einsum("abcd,kbcd->ak", eps_up, eps), 6 * d4)
    out["eps_contract_4"] = abs(np.einsum("abcd,abcd->", eps_up, eps) - 24)

    # pair lowering agrees with the dual blocks moved by g
    out["pair_lowering"] = residual(n.eta_low, np.einsum("xy,yab->xab", n.g, n.eta_down))

    # symmetrized product of blocks: eta_(alpha^{ab} eta_beta)nb = 1/2 g delta_n^a
    sp = symmetrize(np.einsum("xab,ynb->xyan", n.eta_up, n.eta_low), [0, 1])
    out["block_anticommutator"] = residual(sp, 0.5 * np.einsum("xy,an->xyan", n.g, d4))

    # bivector square law and isotropy of simple bivectors
    w_sq = 0.0
    w_full = 0.0
    w_iso = 0.0
    for _ in range(samples):
        R = random_bivector(rng)
        Rl = lower_bivector(n, R)
        pf = pf_expansion(R)
        # r^{ab} r_{bc} = c pf delta; both c = -1/2 and c = -1 are reported
        w_sq = max(w_sq, residual(R @ Rl, -0.5 * pf * d4))
        w_full = max(w_full, residual(R @ Rl, -pf * d4))
        X, Y = random_complex(rng, 4), random_complex(rng, 4)
        r = bivector_to_vector(n, wedge(X, Y))
        w_iso = max(w_iso, abs(dot6(n, r, r)) / (1 + np.linalg.norm(r) ** 2))
    out["bivector_square_half_pf"] = w_sq
    out["bivector_square_full_pf"] = w_full
    out["simple_isotropic"] = w_iso

    A = build_A_operators(n)
    Au = raise_A(n, A)
    out["A_antisymmetry"] = residual(A, -A.transpose(1, 0, 2, 3))
    out["A_trace"] = max_abs(np.einsum("xycc->xy", A))
    lhs = np.einsum("xydc,xyrs->dcrs", A, Au)
    rhs = 0.5 * np.einsum("rs,dc->dcrs", d4, d4) - 2 * np.einsum("rc,ds->dcrs", d4, d4)
    out["A_spinor_completeness"] = residual(lhs, rhs)
    lhs = np.einsum("xydc,lmcd->xylm", A, Au)
    d6 = np.eye(6)
    rhs = 2 * antisymmetrize(np.einsum("xm,yl->xylm", d6, d6), [0, 1])
    out["A_vector_completeness"] = residual(lhs, rhs)
    w = 0.0
    for _ in range(samples):
        T = random_complex(rng, (4, 4))
        T -= np.trace(T) / 4 * d4
        w = max(w, residual(pair_to_spinor(n, A, spinor_to_pair(A, T)), T))
    out["A_round_trip"] = w

    e6 = six_vector(A)
    out["six_vector_antisymmetry"] = total_antisymmetry_residual(e6)
    out["six_vector_triple_A"] = residual(e6, six_vector_triple_A(A))

    gs = build_gammas(n)
    out["clifford"] = clifford_residual(n, gs)
    return out
