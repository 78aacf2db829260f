"""Bivector geometry: simplicity, Pfaffians, null pairs, the canonical form
of a real bivector for definite signature and the flag picture of an
isotropic twistor in R^6_(2,4)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .norden import (
    NordenSet,
    build_A_operators,
    build_norden_special,
    lower_bivector,
    pair_to_spinor,
    pf_expansion,
    wedge,
)
from .realforms import RealFormData, build_real_form, is_real_vector, to_real_coords
from .tensors import DEFAULT_TOL, antisymmetrize, max_abs, residual


class BivectorError(ValueError):
    pass


def _require_antisymmetric(R, tol):
    R = np.asarray(R, dtype=complex)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise BivectorError(f"expected a square array, got shape {R.shape}")
    if residual(R, -R.T) > tol * max(1.0, max_abs(R)):
        raise BivectorError("bivector is not antisymmetric")
    return R


def pfaffian(R) -> complex:
    """pf(R) = 2(R^12 R^34 - R^13 R^24 + R^14 R^23) for a 4x4 bivector."""
    R = np.asarray(R, dtype=complex)
    if R.shape != (4, 4):
        raise BivectorError(f"pfaffian needs a 4x4 bivector, got {R.shape}")
    return pf_expansion(R)


def pfaffian_by_contraction(n: NordenSet, R) -> complex:
    """1/2 R^{ab} R_{ab} with the pair lowered by eps."""
    R = np.asarray(R, dtype=complex)
    return complex(0.5 * np.einsum("ab,ab->", R, lower_bivector(n, R)))


def traceless_image(n: NordenSet, p, A=None) -> np.ndarray:
    """p_a^b of a 6-bivector p^{alpha beta}."""
    A = build_A_operators(n) if A is None else A
    p_low = n.g @ np.asarray(p, dtype=complex) @ n.g
    return pair_to_spinor(n, A, p_low)


def plucker_residual(p) -> float:
    """max |p^[ab p^cd]|."""
    p = np.asarray(p, dtype=complex)
    return max_abs(antisymmetrize(np.einsum("ab,cd->abcd", p, p), [0, 1, 2, 3]))


def quadratic_image_residual(t) -> float:
    """max |p_l^d p_s^l - 1/4 (p_l^k p_k^l) delta_s^d|."""
    q = np.asarray(t) @ np.asarray(t)
    return max_abs(q - np.trace(q) / 4 * np.eye(q.shape[0]))


def simplicity_tests(R, n: NordenSet | None = None, tol: float = DEFAULT_TOL) -> tuple:
    """The two simplicity verdicts for a 4x4 or 6x6 bivector.

    4x4: pf(R) = 0 against rank(R) <= 2. 6x6: the quadratic Plucker
    relations against the quadratic law on the traceless 4x4 image.
    """
    R = _require_antisymmetric(R, tol)
    scale = max(1.0, max_abs(R)) ** 2
    if R.shape == (4, 4):
        by_pf = abs(pfaffian(R)) <= tol * scale
        sv = np.linalg.svd(R, compute_uv=False)
        by_rank = sv[2] <= np.sqrt(tol) * max(1.0, sv[0])
        return by_pf, by_rank
    if R.shape == (6, 6):
        n = build_norden_special() if n is None else n
        by_plucker = plucker_residual(R) <= tol * scale
        by_image = quadratic_image_residual(traceless_image(n, R)) <= tol * scale
        return by_plucker, by_image
    raise BivectorError(f"unsupported bivector shape {R.shape}")


def is_simple(R, n: NordenSet | None = None, tol: float = DEFAULT_TOL) -> bool:
    a, b = simplicity_tests(R, n, tol)
    if a != b:
        raise BivectorError("simplicity tests disagree; input is too close to the tolerance boundary")
    return bool(a)


# ----------------------------------------------------------------- null pair

@dataclass(frozen=True)
class NullPair:
    X: np.ndarray  # spinor X^a
    Y: np.ndarray  # cospinor Y_b

    @property
    def incidence(self) -> complex:
        return complex(self.X @ self.Y)

    def outer(self) -> np.ndarray:
        return np.outer(self.X, self.Y)


def extract_null_pair(n: NordenSet | None, p, tol: float = 1e-10, rank_tol: float = 1e-8) -> NullPair:
    """Factor the traceless image p_a^b = X^a Y_b of a simple isotropic bivector.

    Accepts either the 4x4 image itself or a 6x6 bivector p^{alpha beta}.
    The largest-magnitude component of X is fixed to 1.
    """
    p = np.asarray(p, dtype=complex)
    if p.shape == (6, 6):
        n = build_norden_special() if n is None else n
        p = traceless_image(n, p)
    if p.shape != (4, 4):
        raise BivectorError(f"expected a 4x4 image or a 6x6 bivector, got {p.shape}")
    scale = max_abs(p)
    if scale == 0:
        raise BivectorError("p is zero")
    if abs(np.trace(p)) > tol * scale:
        raise BivectorError("p is not traceless")
    if abs(np.trace(p @ p)) > tol * scale ** 2:
        raise BivectorError("p is not isotropic (p_b^a p_a^b != 0)")
    u, sv, vh = np.linalg.svd(p)
    if sv[1] > rank_tol * sv[0]:
        raise BivectorError(f"p is not rank 1 (singular values {sv[0]:.3e}, {sv[1]:.3e})")
    X = u[:, 0] * sv[0]
    Y = vh[0]
    k = int(np.argmax(np.abs(X) >= np.abs(X).max() * (1 - 1e-12)))
    c = X[k]
    return NullPair(X / c, Y * c)


# ------------------------------------------------------------ canonical form

@dataclass(frozen=True)
class CanonicalForm:
    eigenvalues: np.ndarray
    invariants: dict  # "R16", "R23", "R45"
    U: np.ndarray     # U R U^* = diag(eigenvalues)


def reality_residual(rf: RealFormData, R) -> float:
    """R_b^a + conj(R^a_b), the index move done with s."""
    s = rf.s
    R = np.asarray(R, dtype=complex)
    return residual(R, -np.linalg.inv(s) @ R.conj().T @ s)


def canonical_form(rf: RealFormData, R, n: NordenSet | None = None, tol: float = 1e-9) -> CanonicalForm:
    if rf.q not in (0, 6):
        raise BivectorError(f"canonical form needs q in {{0, 6}}, got signature {rf.signature}")
    R = np.asarray(R, dtype=complex)
    if R.shape != (4, 4):
        raise BivectorError("R must be a 4x4 traceless array R_b^a")
    scale = max(1.0, max_abs(R))
    if abs(np.trace(R)) > tol * scale:
        raise BivectorError("R is not traceless")
    if reality_residual(rf, R) > tol * scale:
        raise BivectorError("R violates the reality condition")
    n = build_norden_special() if n is None else n
    H = 1j * R
    H = 0.5 * (H + H.conj().T)
    mu, V = np.linalg.eigh(H)
    lam = -1j * mu
    # descending imaginary part of lambda is ascending mu; stable for ties
    order = np.argsort(-lam.imag, kind="stable")
    lam = lam[order]
    V = V[:, order]
    V = V / np.linalg.det(V) ** 0.25
    U = V.conj().T
    A = build_A_operators(n)
    Lam = np.diag(lam)
    inv = {name: complex(np.einsum("ab,ba->", A[i, j], Lam))
           for name, (i, j) in (("R16", (0, 5)), ("R23", (1, 2)), ("R45", (3, 4)))}
    return CanonicalForm(lam, inv, U)


# ---------------------------------------------------------------------- flag

@dataclass(frozen=True)
class TwistorBasis:
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    T: np.ndarray

    def as_tuple(self):
        return self.X, self.Y, self.Z, self.T


def standard_twistor_basis() -> TwistorBasis:
    e = np.eye(4, dtype=complex)
    return TwistorBasis(e[0], e[1], e[2], e[3])


def cospinor(rf: RealFormData, V) -> np.ndarray:
    """V_a = s_{aa'} conj(V)^{a'}."""
    return rf.s @ np.asarray(V, dtype=complex).conj()


def basis_conditions(rf: RealFormData, basis: TwistorBasis, n: NordenSet | None = None) -> dict:
    """Every pairing the basis must satisfy, keyed by name, as residuals."""
    n = build_norden_special() if n is None else n
    vecs = dict(zip("XYZT", basis.as_tuple()))
    low = {k: cospinor(rf, v) for k, v in vecs.items()}
    out = {}
    # the zero pairings together with their Hermitian partners
    for a, b in ("YY", "YX", "YZ", "XX", "XT", "ZZ", "ZT", "TT", "XY", "ZY", "TX", "TZ"):
        out[f"{a}.{b}"] = abs(vecs[a] @ low[b])
    out["XZ*YT"] = abs((vecs["X"] @ low["Z"]) * (vecs["Y"] @ low["T"]) - 1)
    vol = np.einsum("abcd,a,b,c,d->", n.eps_up, low["X"], low["Y"], low["Z"], low["T"])
    out["volume"] = abs(vol - 1)
    return out


def rotate_basis(basis: TwistorBasis, theta: float, mu: complex = 0, chi: complex = 0,
                 delta: complex | None = None) -> TwistorBasis:
    """The stabilizer move with tau = exp(i theta).

    delta defaults to the value on the constraint circle closest to zero.
    """
    tau = np.exp(1j * theta)
    c = (np.conj(chi) * mu + np.conj(mu) * chi).real
    if delta is None:
        delta = -tau * c / 2
    if abs(c + 2 * (tau * np.conj(delta)).real) > 1e-12 * max(1.0, abs(c)):
        raise BivectorError("delta violates the stabilizer constraint")
    X, Y, Z, T = basis.as_tuple()
    return TwistorBasis(X / tau + mu * T,
                        -np.conj(chi) * X + tau * Y - np.conj(mu) * Z + delta * T,
                        Z / tau + chi * T,
                        tau * T)


def scale_basis(basis: TwistorBasis, r: float) -> TwistorBasis:
    if r == 0:
        raise BivectorError("scale must be nonzero")
    X, Y, Z, T = basis.as_tuple()
    return TwistorBasis(X, Y / r, Z, r * T)


@dataclass(frozen=True)
class Flag:
    K: np.ndarray
    N: np.ndarray
    L: np.ndarray
    M: np.ndarray
    P: np.ndarray
    extension: float
    extension_type: str
    basis_residuals: dict = field(default_factory=dict)


def _half_wedge(a, b):
    return 0.5 * wedge(a, b)


def threevector(K, N, L) -> np.ndarray:
    """P^{abc} = 6 K^[a N^b L^c]."""
    return 6 * antisymmetrize(np.einsum("a,b,c->abc", K, N, L), [0, 1, 2])


def flag_vectors(n: NordenSet, basis: TwistorBasis) -> tuple:
    X, Y, Z, T = basis.as_tuple()
    ed = n.eta_down
    K = np.einsum("xab,ab->x", ed, 1j * _half_wedge(T, X))
    N = np.einsum("xab,ab->x", ed, _half_wedge(T, Z))
    L = np.einsum("xab,ab->x", ed, -_half_wedge(T, Y) + _half_wedge(X, Z))
    M = np.einsum("xab,ab->x", ed, -1j * (_half_wedge(T, Y) + _half_wedge(X, Z)))
    return K, N, L, M


def extension_of(rf: RealFormData, K, tol: float = 1e-12) -> tuple:
    """(value, type): V+W of K when nonzero, else T+Z."""
    u = to_real_coords(rf, K).real
    first = u[1] + u[2]
    if abs(first) > tol * max(1.0, np.abs(u).max()):
        return float(first), "first"
    second = u[0] + u[5]
    if abs(second) > tol * max(1.0, np.abs(u).max()):
        return float(second), "second"
    raise BivectorError("both extension denominators vanish")


def build_flag(rf: RealFormData | None, basis: TwistorBasis, n: NordenSet | None = None,
               tol: float = 1e-9) -> Flag:
    rf = build_real_form((2, 4)) if rf is None else rf
    if rf.signature != (2, 4):
        raise BivectorError("the flag construction lives in signature (2, 4)")
    n = build_norden_special() if n is None else n
    conds = basis_conditions(rf, basis, n)
    bad = {k: v for k, v in conds.items() if v > tol}
    if bad:
        raise BivectorError(f"basis conditions violated: {bad}")
    K, N, L, M = flag_vectors(n, basis)
    ext, kind = extension_of(rf, K)
    return Flag(K, N, L, M, threevector(K, N, L), ext, kind, conds)


def flag_relations(n: NordenSet, flag: Flag) -> dict:
    d = lambda u, v: complex(u @ n.g @ v)  # noqa: E731
    out = {f"{a}.{b}": abs(d(getattr(flag, a), getattr(flag, b)))
           for a, b in ("KK", "NN", "KN", "LK", "LM", "MK", "LN", "MN")}
    out["L.L+2"] = abs(d(flag.L, flag.L) + 2)
    out["M.M+2"] = abs(d(flag.M, flag.M) + 2)
    return out


def flag_reality(rf: RealFormData, flag: Flag, tol: float = 1e-10) -> bool:
    return all(is_real_vector(rf, v, tol) for v in (flag.K, flag.N, flag.L, flag.M))
