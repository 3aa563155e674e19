"""Floating-point continuous-time quantum walks.

Used to check the exact null spaces independently: a vector that really is
in null(W_{Gi,Gj}) must give a residual at round-off level for any sampled
(t, t'), and a vector outside it must give a clearly nonzero residual for
some sample.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qwdist.graphs import LabeledGraph, laplacian

ACCEPT_TOL = 1e-9
REJECT_TOL = 1e-6
NORM_TOL = 1e-9


@dataclass(frozen=True)
class UnitaryCache:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def unitary(self, t: float) -> np.ndarray:
        q = self.eigenvectors
        return (q * np.exp(-1j * t * self.eigenvalues)) @ q.T


@dataclass(frozen=True)
class WalkState:
    amplitudes: np.ndarray
    time: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _lap_key(lap) -> tuple[tuple[int, ...], ...]:
    if isinstance(lap, LabeledGraph):
        lap = laplacian(lap)
    return tuple(tuple(int(x) for x in row) for row in lap)


@lru_cache(maxsize=4096)
def _cache_for(key) -> UnitaryCache:
    vals, vecs = np.linalg.eigh(np.array(key, dtype=float))
    return UnitaryCache(vals, vecs)


def unitary_cache(lap) -> UnitaryCache:
    """Eigendecomposition of a symmetric Laplacian (memoized)."""
    return _cache_for(_lap_key(lap))


def expm_unitary(lap, t: float) -> np.ndarray:
    """exp(-i t L) through the spectral decomposition of L."""
    return unitary_cache(lap).unitary(t)


def _check_norm(psi: np.ndarray) -> None:
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {nrm:.6g})")


def evolve(g, psi0, t: float) -> WalkState:
    amps = np.asarray(getattr(psi0, "amplitudes", psi0), dtype=complex)
    _check_norm(amps)
    t0 = getattr(psi0, "time", 0.0)
    return WalkState(expm_unitary(g, t) @ amps, t0 + t)


def _order(g) -> int:
    return g.order if isinstance(g, LabeledGraph) else len(g)


def bipartite_unitary(g_i, g_j, t: float, tp: float) -> np.ndarray:
    if _order(g_i) != _order(g_j):
        raise ValueError("graphs must have equal order")
    return np.kron(expm_unitary(g_i, t), expm_unitary(g_j, tp))


def bipartite_evolve(g_i, g_j, psi0, t: float, tp: float) -> WalkState:
    amps = np.asarray(getattr(psi0, "amplitudes", psi0), dtype=complex)
    n = _order(g_i)
    if amps.shape != (n * n,):
        raise ValueError(f"bipartite state must have length {n * n}")
    _check_norm(amps)
    return WalkState(bipartite_unitary(g_i, g_j, t, tp) @ amps, t)


def w_operator(g_i, g_j, t: float, tp: float) -> np.ndarray:
    """U_i(t) (x) U_j(t') - U_j(t') (x) U_i(t)."""
    if _order(g_i) != _order(g_j):
        raise ValueError("graphs must have equal order")
    ui = expm_unitary(g_i, t)
    uj = expm_unitary(g_j, tp)
    return np.kron(ui, uj) - np.kron(uj, ui)


def w_residual(g_i, g_j, psi, t: float, tp: float) -> float:
    psi = np.asarray(psi, dtype=complex)
    return float(np.linalg.norm(w_operator(g_i, g_j, t, tp) @ psi))


def probabilities(psi) -> np.ndarray:
    amps = np.asarray(getattr(psi, "amplitudes", psi))
    return np.abs(amps) ** 2


def sample_times(rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` pairs (t, t') drawn uniformly from (0, 2*pi]."""
    return 2 * np.pi * (1.0 - rng.random((count, 2)))


def max_residuals(g_i, g_j, vectors, times) -> np.ndarray:
    """Largest residual over ``times`` for each row of ``vectors`` (rows normalized first)."""
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[None, :]
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    worst = np.zeros(len(v))
    for t, tp in times:
        r = np.linalg.norm(w_operator(g_i, g_j, t, tp) @ v.T, axis=0)
        worst = np.maximum(worst, r)
    return worst


def _orth(rows: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as rows) of the row space."""
    if rows.size == 0:
        return rows.reshape(0, rows.shape[-1] if rows.ndim == 2 else 0)
    u, s, vt = np.linalg.svd(rows, full_matrices=False)
    rank = int((s > s.max() * 1e-10).sum()) if s.size else 0
    return vt[:rank]


def complement_samples(outer, inner, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit vectors in span(outer) orthogonal to span(inner).

    ``outer`` and ``inner`` are lists of basis vectors with span(inner)
    inside span(outer).  Returns an empty array if the two spans coincide.
    """
    outer = _orth(np.asarray(outer, dtype=float))
    d = outer.shape[1]
    inner = np.asarray(inner, dtype=float).reshape(-1, d)
    inner = _orth(inner) if len(inner) else inner
    proj = outer - (outer @ inner.T) @ inner if len(inner) else outer
    comp = _orth(proj)
    if len(comp) == 0:
        return np.zeros((0, d))
    coeffs = rng.standard_normal((count, len(comp)))
    out = coeffs @ comp
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def simulator_checks(lap, rng: np.random.Generator, count: int = 10) -> dict[str, float]:
    """Worst unitarity, group-law, reconstruction and norm errors for one Laplacian."""
    cache = unitary_cache(lap)
    L = np.array(_lap_key(lap), dtype=float)
    q, lam = cache.eigenvectors, cache.eigenvalues
    n = len(L)
    out = {
        "reconstruction": float(np.abs(q @ np.diag(lam) @ q.T - L).max()),
        "orthogonality": float(np.abs(q.T @ q - np.eye(n)).max()),
        "unitarity": 0.0,
        "group": 0.0,
        "norm": 0.0,
    }
    for t1, t2 in sample_times(rng, count):
        u1, u2 = cache.unitary(t1), cache.unitary(t2)
        out["unitarity"] = max(out["unitarity"], float(np.abs(u1 @ u1.conj().T - np.eye(n)).max()))
        out["group"] = max(out["group"], float(np.abs(u1 @ u2 - cache.unitary(t1 + t2)).max()))
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi /= np.linalg.norm(psi)
        out["norm"] = max(out["norm"], abs(np.linalg.norm(u1 @ psi) - 1.0))
    return out
