"""Dense complex tensor helpers.

Tensors are plain complex128 numpy arrays. Index position (upper/lower) is
tracked by the caller; the kernel only knows axes.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10


def default_tol() -> float:
    env = os.environ.get("HEXASPINOR_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL


@dataclass(frozen=True)
class Tolerance:
    atol: float = DEFAULT_TOL
    rtol: float = DEFAULT_TOL

    def __post_init__(self):
        if not (self.atol > 0 and self.rtol > 0):
            raise ValueError("tolerance thresholds must be positive")


def as_tensor(data, shape=None) -> np.ndarray:
    t = np.asarray(data, dtype=complex)
    if shape is not None and t.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {t.shape}")
    if not np.all(np.isfinite(t)):
        raise ValueError("tensor has non-finite entries")
    return t


def perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def levi_civita(n: int = 4, scale: complex = 1.0) -> np.ndarray:
    """Alternating symbol with eps[0,1,...,n-1] = scale."""
    e = np.zeros((n,) * n, dtype=complex)
    for p in itertools.permutations(range(n)):
        e[p] = perm_sign(p) * scale
    return e


def contract(t1, t2, axis_pairs) -> np.ndarray:
    """Contract axis i of t1 with axis j of t2 for each (i, j).

    Free axes of t1 come first, then those of t2.
    """
    t1 = np.asarray(t1)
    t2 = np.asarray(t2)
    a1 = [p[0] for p in axis_pairs]
    a2 = [p[1] for p in axis_pairs]
    for i, j in zip(a1, a2):
        if t1.shape[i] != t2.shape[j]:
            raise ValueError(f"dimension mismatch on pair ({i}, {j}): {t1.shape[i]} vs {t2.shape[j]}")
    return np.tensordot(t1, t2, axes=(a1, a2))


def _check_axes(t, axes):
    for ax in axes:
        if not -t.ndim <= ax < t.ndim:
            raise IndexError(f"axis {ax} out of range for rank {t.ndim}")
    dims = {t.shape[ax] for ax in axes}
    if len(dims) > 1:
        raise ValueError("axes to (anti)symmetrize must share a dimension")


def _symmetrize(t, axes, signed):
    t = np.asarray(t)
    axes = [ax % t.ndim for ax in axes]
    _check_axes(t, axes)
    out = np.zeros_like(t, dtype=complex)
    perms = list(itertools.permutations(range(len(axes))))
    for p in perms:
        order = list(range(t.ndim))
        for k, ax in enumerate(axes):
            order[ax] = axes[p[k]]
        w = perm_sign(p) if signed else 1
        out = out + w * np.transpose(t, order)
    return out / len(perms)


def antisymmetrize(t, axes) -> np.ndarray:
    return _symmetrize(t, axes, signed=True)


def symmetrize(t, axes) -> np.ndarray:
    return _symmetrize(t, axes, signed=False)


def max_abs(t) -> float:
    t = np.asarray(t)
    return float(np.max(np.abs(t))) if t.size else 0.0


def residual(a, b) -> float:
    return max_abs(np.asarray(a) - np.asarray(b))


def approx_equal(t1, t2, tol: Tolerance | None = None) -> bool:
    tol = tol or Tolerance()
    t1 = np.asarray(t1)
    t2 = np.asarray(t2)
    if t1.shape != t2.shape:
        raise ValueError(f"shape mismatch {t1.shape} vs {t2.shape}")
    scale = max(max_abs(t1), max_abs(t2))
    return residual(t1, t2) <= tol.atol + tol.rtol * scale


def kron_delta(n: int = 4) -> np.ndarray:
    return np.eye(n, dtype=complex)


def delta_pair(n: int = 4) -> np.ndarray:
    """delta_{ab}^{cd} = 2 delta_[a^[c delta_b]^d], stored with axes (a, b, c, d)."""
    d = np.eye(n)
    return (np.einsum("ac,bd->abcd", d, d) - np.einsum("ad,bc->abcd", d, d)).astype(complex)


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_bivector(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    m = random_complex(rng, (n, n))
    return m - m.T


def random_sl(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    m = random_complex(rng, (n, n))
    det = np.linalg.det(m)
    return m / det ** (1.0 / n)
