"""Flat-space bitwistor families, the two quadrics in CP_7, the eight
dimensional connecting operators and the octonion structure constants
they induce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .bivgeo import pfaffian
from .norden import NordenSet, bivector_to_vector, build_norden_special, lower_bivector, wedge
from .tensors import levi_civita, max_abs, perm_sign, residual

RANK_RTOL = 1e-10
_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_BIV_BASIS = np.array([wedge(np.eye(4)[a], np.eye(4)[b]) for a, b in _PAIRS], dtype=complex)


class OctoError(ValueError):
    pass


def numerical_rank(M, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(np.asarray(M), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def bivector_from_coords(c) -> np.ndarray:
    """r^{ab} from its six components r^12, r^13, r^14, r^23, r^24, r^34."""
    return np.einsum("k,kab->ab", np.asarray(c, dtype=complex), _BIV_BASIS)


def bivector_coords(r) -> np.ndarray:
    r = np.asarray(r)
    return np.array([r[a, b] for a, b in _PAIRS], dtype=complex)


# -------------------------------------------------------- bitwistor families

@dataclass(frozen=True)
class BitwistorSolution:
    X0: np.ndarray  # X-dot^a
    Y0: np.ndarray  # Y-dot_b

    def at(self, r) -> tuple:
        return evaluate_solution(self, r)


def evaluate_solution(sol: BitwistorSolution, r) -> tuple:
    """X^a = Xdot^a - i r^{ab} Ydot_b, Y_b = Ydot_b."""
    r = np.asarray(r, dtype=complex)
    if residual(r, -r.T) > 1e-12 * max(1.0, max_abs(r)):
        raise OctoError("r is not antisymmetric")
    Y0 = np.asarray(sol.Y0, dtype=complex)
    return np.asarray(sol.X0, dtype=complex) - 1j * r @ Y0, Y0.copy()


def eps8() -> np.ndarray:
    """The block form pairing spinor and cospinor halves."""
    e = np.zeros((8, 8))
    e[:4, 4:] = np.eye(4)
    e[4:, :4] = np.eye(4)
    return e


@dataclass(frozen=True)
class Twistor2Vector:
    X: np.ndarray
    Y: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.X, dtype=complex), np.asarray(self.Y, dtype=complex)])

    def square(self) -> complex:
        v = self.vector
        return complex(v @ eps8() @ v)


def radius_identities(n: NordenSet, r) -> dict:
    """Residuals of both normalizations of the bivector square law."""
    r = np.asarray(r, dtype=complex)
    low = lower_bivector(n, r)
    pf = pfaffian(r)
    prod = r @ low
    return {
        "half_contraction": abs(0.5 * np.einsum("ab,ab->", r, low) - pf),
        "square_half_pf": residual(prod, -0.5 * pf * np.eye(4)),
        "square_full_pf": residual(prod, -pf * np.eye(4)),
    }


def _incidence_matrix(Y) -> np.ndarray:
    """M with M @ coords(r) = i r Y."""
    return 1j * np.einsum("kab,b->ak", _BIV_BASIS, np.asarray(Y, dtype=complex))


@dataclass(frozen=True)
class PointToGenerator:
    particular: np.ndarray
    homogeneous: tuple
    rank: int
    residual: float


def solve_point_to_generator(X0, Y0, tol: float = 1e-10) -> PointToGenerator:
    """All r with i r^{ab} Y0_b = X0^a: a particular solution plus three
    simple bivectors spanning the homogeneous solutions."""
    X0 = np.asarray(X0, dtype=complex)
    Y0 = np.asarray(Y0, dtype=complex)
    scale = max(1.0, np.linalg.norm(X0) * np.linalg.norm(Y0))
    if np.linalg.norm(Y0) == 0:
        raise OctoError("Ydot is zero")
    if abs(X0 @ Y0) > tol * scale:
        raise OctoError(f"incidence violated: X.Y = {X0 @ Y0}")
    M = _incidence_matrix(Y0)
    c, *_ = np.linalg.lstsq(M, X0, rcond=None)
    r = bivector_from_coords(c)
    W = null_space(Y0[None, :])
    u, s, z = W[:, 0], W[:, 1], W[:, 2]
    hom = (0.5 * wedge(s, u), 0.5 * wedge(u, z), 0.5 * wedge(s, z))
    return PointToGenerator(r, hom, numerical_rank(M), residual(1j * r @ Y0, X0))


@dataclass(frozen=True)
class GeneratorSolution:
    r: np.ndarray
    rank: int
    null_basis: tuple
    residual: float
    conditions: dict = field(default_factory=dict)


def generator_conditions(pairs) -> dict:
    """X_i.Y_i = 0 and X_i.Y_j + X_j.Y_i = 0 over the given pairs."""
    out = {}
    for i, (Xi, Yi) in enumerate(pairs):
        out[f"{i}{i}"] = abs(np.asarray(Xi) @ np.asarray(Yi))
    for (i, (Xi, Yi)), (j, (Xj, Yj)) in itertools.combinations(enumerate(pairs), 2):
        out[f"{i}{j}"] = abs(np.asarray(Xi) @ np.asarray(Yj) + np.asarray(Xj) @ np.asarray(Yi))
    return out


def generator_system(pairs) -> GeneratorSolution:
    """Least-squares solve of i r Y_i = X_i over one to four pairs."""
    pairs = [(np.asarray(X, dtype=complex), np.asarray(Y, dtype=complex)) for X, Y in pairs]
    if not 1 <= len(pairs) <= 4:
        raise OctoError("need between one and four pairs")
    M = np.vstack([_incidence_matrix(Y) for _, Y in pairs])
    b = np.concatenate([X for X, _ in pairs])
    c, *_ = np.linalg.lstsq(M, b, rcond=RANK_RTOL)
    rank = numerical_rank(M)
    _, _, vh = np.linalg.svd(M)
    kernel = tuple(bivector_from_coords(v.conj()) for v in vh[rank:])
    r = bivector_from_coords(c)
    res = max(residual(1j * r @ Y, X) for X, Y in pairs)
    return GeneratorSolution(r, rank, kernel, res, generator_conditions(pairs))


def solve_generator_to_point(pairs, tol: float = 1e-9) -> np.ndarray:
    if len(pairs) != 4:
        raise OctoError("a planar generator is given by four pairs")
    sol = generator_system(pairs)
    scale = max(1.0, max(np.linalg.norm(X) * np.linalg.norm(Y) for X, Y in pairs))
    bad = {k: v for k, v in sol.conditions.items() if v > tol * scale}
    if bad:
        raise OctoError(f"compatibility conditions violated: {bad}")
    if sol.rank < 6:
        raise OctoError(f"degenerate generator data: system rank {sol.rank} < 6")
    if sol.residual > tol * scale:
        raise OctoError(f"inconsistent system, residual {sol.residual:.3e}")
    return sol.r


def generator_from_point(r, Ys) -> list:
    """Pairs (i r Y, Y) on the generator of r."""
    r = np.asarray(r, dtype=complex)
    return [(1j * r @ np.asarray(Y, dtype=complex), np.asarray(Y, dtype=complex)) for Y in Ys]


# ------------------------------------------------ the reverse correspondence

def _pair(n, u, v) -> complex:
    return complex(np.einsum("ab,ab->", u, lower_bivector(n, v)))


def quadric_point_conditions(n: NordenSet, rs) -> dict:
    r1, r2, r3, r4 = rs
    out = {
        "d12.d12": abs(_pair(n, r1 - r2, r1 - r2)),
        "d13.d13": abs(_pair(n, r1 - r3, r1 - r3)),
        "d34.d34": abs(_pair(n, r3 - r4, r3 - r4)),
    }
    for (i, a), (j, b) in itertools.combinations(enumerate(rs, 1), 2):
        out[f"r{i}.r{j}"] = abs(_pair(n, a, b))
    return out


@dataclass(frozen=True)
class QuadricPoint:
    X: np.ndarray
    Y: np.ndarray
    rank: int
    residual: float
    conditions: dict


def quadric_point_system(rs) -> np.ndarray:
    """The 16 x 8 matrix of the system in the unknowns (X^a, Y_b)."""
    r1, r2, r3, r4 = (np.asarray(r, dtype=complex) for r in rs)
    z = np.zeros((4, 4))
    return np.block([
        [z, 1j * (r1 - r2)],
        [z, 1j * (r1 - r3)],
        [z, 1j * (r3 - r4)],
        [-np.eye(4), 1j * r1],
    ])


def solve_quadric_to_point(rs, n: NordenSet | None = None) -> QuadricPoint:
    n = build_norden_special() if n is None else n
    M = quadric_point_system(rs)
    rank = numerical_rank(M)
    if rank != 7:
        raise OctoError(f"expected a one-dimensional solution, system rank is {rank}")
    _, _, vh = np.linalg.svd(M)
    v = vh[-1].conj()
    Y = v[4:]
    k = int(np.argmax(np.abs(Y)))
    v = v / Y[k]
    return QuadricPoint(v[:4], v[4:], rank, max_abs(M @ v), quadric_point_conditions(n, rs))


def quadric_generator_data(seed: int = 0, n: NordenSet | None = None) -> tuple:
    """Four bivectors on one generator with every pairing condition met.

    Returns (rs, X0, Y0): each r_i solves i r Y0 = X0.
    """
    n = build_norden_special() if n is None else n
    rng = np.random.default_rng(seed)
    cplx = lambda *s: rng.standard_normal(s) + 1j * rng.standard_normal(s)  # noqa: E731
    Y0 = cplx(4)
    W = null_space(Y0[None, :])
    X0 = W @ cplx(3)
    rp = solve_point_to_generator(X0, Y0).particular
    hom = [0.5 * wedge(W[:, i], W[:, j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    # r_i.r_j = Q + L(h_i) + L(h_j); put every h_i on the plane L = -Q/2
    Q = _pair(n, rp, rp)
    L = np.array([_pair(n, rp, h) for h in hom])
    k = int(np.argmax(np.abs(L)))
    rs = []
    for _ in range(4):
        lam = cplx(3)
        lam[k] = (-Q / 2 - (L @ lam - L[k] * lam[k])) / L[k]
        rs.append(rp + np.einsum("i,iab->ab", lam, np.array(hom)))
    return rs, X0, Y0


# ------------------------------------------------------ homogeneous coords

# (A, B) slots sharing the value of r^{ab}; the second entry is the mirror
_HOMOG_MIRROR = {
    (0, 1): (6, 7), (0, 2): (7, 5), (0, 3): (5, 6),
    (1, 2): (4, 7), (1, 3): (6, 4), (2, 3): (4, 5),
}


@dataclass(frozen=True)
class HomogeneousCoords:
    R_vec: np.ndarray   # R^A
    R_pair: np.ndarray  # R^{AB}
    nf: complex
    norm_residual: float
    square_residual: float


def pair_tensor(lam: dict) -> np.ndarray:
    """R^{AB} from the eight lambda coordinates keyed like (0, 1) or '15', '51'."""
    R = np.zeros((8, 8), dtype=complex)
    for (a, b), (c, d) in _HOMOG_MIRROR.items():
        v = lam[(a, b)]
        R[a, b], R[b, a] = v, -v
        R[c, d], R[d, c] = v, -v
    for a in range(4):
        R[a, a + 4] = lam["15"]
        R[a + 4, a] = lam["51"]
    return R


def homogeneous_coords(r, n: NordenSet | None = None, e8: "EtaSet8 | None" = None) -> HomogeneousCoords:
    n = build_norden_special() if n is None else n
    e8 = build_eta8() if e8 is None else e8
    r = np.asarray(r, dtype=complex)
    rv = bivector_to_vector(n, r)
    rr = complex(rv @ n.g @ rv)
    lam = {p: r[p] for p in _PAIRS}
    lam["15"] = -0.5j * rr
    lam["51"] = -1j
    R = pair_tensor(lam)
    e = e8.eps
    R_low = e @ R @ e.T
    R_vec = 0.25 * np.einsum("akl,kl->a", e8.eta, R)
    nf = complex(R_vec @ e8.G @ R_vec)
    contraction = complex(np.einsum("ab,ab->", R, R_low))
    return HomogeneousCoords(
        R_vec, R, nf,
        abs(contraction - 4 * nf),
        residual(np.einsum("ab,cb->ac", R, R_low), 0.5 * nf * np.eye(8)),
    )


def paraboloid_pf(hc: HomogeneousCoords) -> complex:
    """-(U - iS)/(U + iS) read off the pair slots R^15 = (iU + S)/2, R^51 = S - iU."""
    r15, r51 = hc.R_pair[0, 4], hc.R_pair[4, 0]
    S = (2 * r15 + r51) / 2
    U = (2 * r15 - r51) / 2j
    return complex(-(U - 1j * S) / (U + 1j * S))


# -------------------------------------------------------------- eta8 table

_R2 = 1 / np.sqrt(2)

# (A, K, L, value), 1-based; completed antisymmetrically in K, L
_ETA8_ANTI = [
    (2, 1, 2, _R2), (2, 3, 4, _R2), (5, 1, 2, -1j * _R2), (5, 3, 4, 1j * _R2),
    (2, 7, 8, _R2), (2, 5, 6, _R2), (5, 7, 8, -1j * _R2), (5, 5, 6, 1j * _R2),
    (1, 1, 4, -1j * _R2), (1, 2, 3, 1j * _R2), (8, 1, 4, -_R2), (8, 2, 3, -_R2),
    (1, 6, 7, -1j * _R2), (1, 5, 8, 1j * _R2), (8, 6, 7, -_R2), (8, 5, 8, -_R2),
    (7, 1, 3, -1j * _R2), (7, 2, 4, -1j * _R2), (6, 1, 3, _R2), (6, 2, 4, -_R2),
    (7, 6, 8, 1j * _R2), (7, 5, 7, 1j * _R2), (6, 6, 8, -_R2), (6, 5, 7, _R2),
]
# entries mixing the two halves, each listed in both orders
_ETA8_CROSS = [
    entry
    for a in range(1, 5)
    for entry in ((4, a, a + 4, _R2), (4, a + 4, a, _R2),
                  (3, a, a + 4, -1j * _R2), (3, a + 4, a, 1j * _R2))
]

S_TILDE = _R2 * np.array([
    [1j, 0, 0, 0, -1j, 0, 0, 0],
    [0, 1j, 0, 0, 0, -1j, 0, 0],
    [0, 0, 1j, 0, 0, 0, -1j, 0],
    [0, 0, 0, 1j, 0, 0, 0, -1j],
    [1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1],
], dtype=complex)


@dataclass(frozen=True)
class EtaSet8:
    eta: np.ndarray    # eta[A, K, L] = eta^A_{KL}
    G: np.ndarray
    eps: np.ndarray    # eps_{KL}
    S: np.ndarray      # S_A^M
    S_tilde: np.ndarray

    @property
    def eps_inv(self) -> np.ndarray:
        return np.linalg.inv(self.eps)

    @property
    def eta_up(self) -> np.ndarray:
        """eta_A^{PQ}."""
        ei = self.eps_inv
        return np.einsum("kp,apq,qn->akn", ei, self.eta, ei)

    @property
    def eps4(self) -> np.ndarray:
        """eps_{PQRT} = eta^A_{PQ} eta^B_{RT} G_{AB}."""
        return np.einsum("apq,brt,ab->pqrt", self.eta, self.eta, self.G)


def involution_from_eta(eta, eps, G=None) -> np.ndarray:
    """S_A^M = eta_A^{MR} eta_L^L_R + eta_A^L_R eta_L^{MR}."""
    ei = np.linalg.inv(eps)
    up = np.einsum("kp,apq,qn->akn", ei, eta, ei)
    mixed = np.einsum("lk,akr->alr", ei, eta)
    return np.einsum("amr,llr->am", up, mixed) + np.einsum("alr,lmr->am", mixed, up)


def build_eta8() -> EtaSet8:
    eta = np.zeros((8, 8, 8), dtype=complex)
    for A, K, L, v in _ETA8_ANTI:
        eta[A - 1, K - 1, L - 1] = v
        eta[A - 1, L - 1, K - 1] = -v
    for A, K, L, v in _ETA8_CROSS:
        eta[A - 1, K - 1, L - 1] = v
    e = eps8()
    G = np.eye(8)
    return EtaSet8(eta, G, e, involution_from_eta(eta, e, G), S_TILDE.copy())


def eta8_checks(e8: EtaSet8) -> dict:
    eta, e, G = e8.eta, e8.eps, e8.G
    ei = e8.eps_inv
    I8 = np.eye(8)
    cliff = 0.0
    for a in range(8):
        for b in range(a, 8):
            # eta_{AK}^R eta_B^L_R + (A <-> B), matrices in (K, L)
            t = eta[a] @ ei @ eta[b].T @ ei + eta[b] @ ei @ eta[a].T @ ei
            cliff = max(cliff, residual(t, G[a, b] * I8))
    up = e8.eta_up
    e4 = e8.eps4
    e4_mixed = np.einsum("stab,ka,rb->stkr", e4, ei, ei)
    sym = 0.5 * (up + up.transpose(0, 2, 1))
    return {
        "reduced_clifford": cliff,
        "metric_from_eta": residual(0.25 * np.einsum("apq,bpq->ab", up, eta), G),
        "pair_metric_symmetry": residual(e4, e4.transpose(2, 3, 0, 1)),
        "pair_metric_square": residual(e4, 0.25 * np.einsum("stkr,pqkr->stpq", e4_mixed, e4)),
        "pair_metric_trace": residual(e, 0.25 * np.einsum("pqrt,rt->pq", e4, ei)),
        "symmetric_part": residual(sym, np.einsum("akl,kl,mn->amn", up, e, ei) / 8),
        "involution_metric": residual(e8.S @ e.T, G),
        "involution_square": residual(e8.S @ e8.S, I8),
        "s_tilde_det": abs(np.linalg.det(e8.S_tilde) - 1),
        "s_tilde_metric": residual(e8.S_tilde @ e @ e8.S_tilde.T, G),
    }


# --------------------------------------------------------------- families

def four_form(Xs) -> np.ndarray:
    """X^{ABCD} = eps^{ijkl} X_i^A X_j^B X_k^C X_l^D."""
    Xs = np.asarray(Xs, dtype=complex)
    return np.einsum("ijkl,ia,jb,kc,ld->abcd", levi_civita(4), Xs, Xs, Xs, Xs, optimize=True)


_SUBSETS = list(itertools.combinations(range(8), 4))


def _dual_and_lowered(F, eps) -> tuple:
    """Sorted-subset components of 1/24 e F and of the eps-lowered F.

    e is the alternating 8-symbol with e_{12345678} = 1.
    """
    low = np.einsum("kr,lt,mu,nv,rtuv->klmn", eps, eps, eps, eps, F, optimize=True)
    dual = np.empty(len(_SUBSETS), dtype=complex)
    lowered = np.empty(len(_SUBSETS), dtype=complex)
    for k, T in enumerate(_SUBSETS):
        S = tuple(i for i in range(8) if i not in T)
        dual[k] = perm_sign(S + T) * F[S]
        lowered[k] = low[T]
    return dual, lowered


def family_test(e8: EtaSet8, generator, tol: float = 1e-9) -> int:
    """rho in {+1, -1} relating the dual of the generator 4-form to its lowering."""
    Xs = np.array([np.asarray(getattr(x, "vector", x), dtype=complex) for x in generator])
    if Xs.shape != (4, 8):
        raise OctoError("a planar generator needs four 8-vectors")
    gram = Xs @ e8.eps @ Xs.T
    if max_abs(gram) > tol * max(1.0, np.max(np.linalg.norm(Xs, axis=1)) ** 2):
        raise OctoError("generator vectors are not mutually isotropic")
    if numerical_rank(Xs) < 4:
        raise OctoError("generator vectors are linearly dependent")
    dual, lowered = _dual_and_lowered(four_form(Xs), e8.eps)
    rho = complex(np.vdot(lowered, dual) / np.vdot(lowered, lowered))
    if abs(rho ** 2 - 1) > 1e-6 or max_abs(dual - rho * lowered) > 1e-6 * max_abs(lowered):
        raise OctoError(f"no sign relates the two sides (rho = {rho})")
    return 1 if rho.real > 0 else -1


def canonical_generator(r, Ys) -> list:
    return [Twistor2Vector(X, Y) for X, Y in generator_from_point(r, Ys)]


# -------------------------------------------------------------- octonions

@dataclass(frozen=True)
class OctonionTable:
    table: np.ndarray   # table[i, j, k] = eta_{ij}^k
    unit: np.ndarray
    G: np.ndarray
    reading: tuple

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.table, x, y)

    def norm(self, x) -> complex:
        return complex(np.asarray(x) @ self.G @ np.asarray(x))


def default_octonion_seed() -> np.ndarray:
    X = np.zeros(8, dtype=complex)
    X[0] = X[4] = 1
    return X


def octonion_unit(e8: EtaSet8) -> np.ndarray:
    """e^i = eta^{iAB} eps_AB / (4 sqrt 2)."""
    return np.einsum("akl,kl->a", e8.eta_up, e8.eps) / (4 * np.sqrt(2))


def _table_for(e8: EtaSet8, X, reading) -> np.ndarray:
    ta, tb, tc = reading
    eta = e8.eta
    a = eta.transpose(0, 2, 1) if ta else eta
    b = eta.transpose(0, 2, 1) if tb else eta
    c = eta.transpose(0, 2, 1) if tc else eta
    ei = e8.eps_inv
    # sqrt2 eta_i(p, q) eta_j(y, r) eta^k(z, s) with p~r and q~s contracted
    return np.sqrt(2) * np.einsum("ipq,jyr,kzs,pr,qs,y,z->ijk", a, b, c, ei, ei, X, X, optimize=True)


def octonion_checks(t: OctonionTable, seed: int = 0, samples: int = 200) -> dict:
    rng = np.random.default_rng(seed)
    I8 = np.eye(8)
    unit_err = max(max(residual(t.mul(t.unit, v), v), residual(t.mul(v, t.unit), v)) for v in I8)
    comp = alt = 0.0
    for _ in range(samples):
        x = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        nx, ny = t.norm(x), t.norm(y)
        comp = max(comp, abs(t.norm(t.mul(x, y)) - nx * ny) / max(abs(nx * ny), 1e-300))
        scale = np.linalg.norm(x) ** 2 * np.linalg.norm(y)
        alt = max(alt,
                  residual(t.mul(t.mul(x, x), y), t.mul(x, t.mul(x, y))) / scale,
                  residual(t.mul(t.mul(y, x), x), t.mul(y, t.mul(x, x))) / scale)
    return {"unit": unit_err, "composition": comp, "alternative": alt,
            "associator_max": associator_max(t)}


def associator_max(t: OctonionTable) -> float:
    I8 = np.eye(8)
    best = 0.0
    for a, b, c in itertools.product(range(8), repeat=3):
        x, y, z = I8[a], I8[b], I8[c]
        best = max(best, float(np.linalg.norm(t.mul(t.mul(x, y), z) - t.mul(x, t.mul(y, z)))))
    return best


def build_octonion_table(e8: EtaSet8 | None = None, X=None, tol: float = 1e-9) -> OctonionTable:
    """Structure constants from the first slot-order reading that passes
    the unit, composition and alternativity laws."""
    e8 = build_eta8() if e8 is None else e8
    X = default_octonion_seed() if X is None else np.asarray(X, dtype=complex)
    if abs(X @ e8.eps @ X - 2) > tol:
        raise OctoError(f"seed vector must have X.X = 2, got {X @ e8.eps @ X}")
    unit = octonion_unit(e8)
    diagnostics = {}
    for reading in itertools.product((0, 1), repeat=3):
        t = OctonionTable(_table_for(e8, X, reading), unit, e8.G, reading)
        c = octonion_checks(t, samples=20)
        diagnostics[reading] = c
        if c["unit"] < tol and c["composition"] < tol and c["alternative"] < tol:
            return t
    raise OctoError(f"no index reading gives a composition algebra: {diagnostics}")


# ------------------------------------------------------------ Klein slice

_EPS2 = np.array([[0, 1], [-1, 0]], dtype=complex)


@dataclass(frozen=True)
class KleinReport:
    r: np.ndarray
    omega: np.ndarray
    first_block: float
    second_block: float
    degenerate: bool
    pf: complex


def klein_bivector(rho, scale: complex = 1.0) -> np.ndarray:
    """4x4 bivector built from a 2x2 array rho = r^A_{B'}.

    The top-left block carries r_c r^c = 2 det rho, which makes it simple.
    """
    rho = np.asarray(rho, dtype=complex)
    rr = 2 * np.linalg.det(rho)
    return scale * np.block([[-0.5 * rr * _EPS2, 1j * rho], [-1j * rho.T, _EPS2]])


def klein_slice(rho, pi, scale: complex = 1.0, generator=None, tol: float = 1e-10) -> KleinReport:
    """Solve the second block of r Y = 0 for omega and test the first block."""
    if generator is not None:
        g = np.asarray(generator, dtype=complex)
        if g.shape != (8,) or max_abs(g[:4]) > tol:
            raise OctoError("generator must have the form (0, Y)")
        pi = g[4:6]
        om = g[6:8]
    else:
        om = None
    pi = np.asarray(pi, dtype=complex)
    r = klein_bivector(rho, scale)
    # -i rho^T pi + eps omega = 0
    omega = np.linalg.solve(_EPS2, 1j * np.asarray(rho).T @ pi)
    if om is not None and residual(om, omega) > tol * max(1.0, max_abs(om)):
        raise OctoError("generator cospinor does not satisfy the incidence")
    Y = np.concatenate([pi, omega])
    full = r @ Y
    return KleinReport(r, omega, max_abs(full[:2]), max_abs(full[2:]),
                       bool(max_abs(pi) <= tol), pfaffian(r))


def klein_pair_solve(pi, omega, eta, xi):
    """rho from two incidences eps omega = i rho^T pi, eps xi = i rho^T eta.

    Returns None when the pi, eta columns are dependent.
    """
    P = np.column_stack([pi, eta]).astype(complex)
    if numerical_rank(P) < 2:
        return None
    W = _EPS2 @ np.column_stack([omega, xi])
    return (-1j * W @ np.linalg.inv(P)).T
