"""Exact null spaces of the distinguishability operator W_{Gi,Gj}.

Expanding U_i(t) (x) U_j(t') - U_j(t') (x) U_i(t) as a double power series in
t and t', a state is annihilated for every pair of times exactly when

    (L_i^m (x) L_j^k - L_j^k (x) L_i^m) psi = 0    for all m, k >= 0.

Powers of an n x n matrix beyond n - 1 are combinations of lower ones, so
0 <= m, k <= n - 1 is enough.  The (1, 0) and (0, 1) constraints are the two
Laplacian commutators, whose kernels are the diagonal null spaces; the
remaining constraints are applied to their intersection one at a time.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from qwdist.exact import (
    Subspace,
    contains,
    identity_int,
    intersect,
    kernel,
    kron_int,
    matmul_int,
)
from qwdist import kernels


class NotSymmetric(ValueError):
    """Laplacian input is not a symmetric square matrix."""


@dataclass(frozen=True)
class PairNullResult:
    graph_i: int | None
    graph_j: int | None
    space: Subspace
    constraint_ranks: tuple[tuple[int, int, int], ...] = field(default=(), compare=False)

    def to_json(self, subspace_id=None) -> dict:
        out = {"i": self.graph_i, "j": self.graph_j, "dim": self.space.dim}
        if subspace_id is not None:
            out["subspace_id"] = subspace_id
        else:
            out["subspace"] = self.space.to_json()
        return out


def _check_laplacian(lap) -> list[list[int]]:
    rows = [list(map(int, r)) for r in lap]
    n = len(rows)
    if any(len(r) != n for r in rows) or any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
        raise NotSymmetric("Laplacian must be a symmetric square matrix")
    return rows


@lru_cache(maxsize=4096)
def _powers(lap: tuple[tuple[int, ...], ...]) -> list[list[list[int]]]:
    n = len(lap)
    out = [identity_int(n)]
    for _ in range(1, n):
        out.append(matmul_int(out[-1], lap))
    return out


def power_pair_constraint(a, b) -> list[list[int]]:
    """Integer matrix a (x) b - b (x) a."""
    ab = kron_int(a, b)
    ba = kron_int(b, a)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]


def diag_null(lap) -> Subspace:
    """Kernel of L (x) I - I (x) L, i.e. the vectorized commutant of L."""
    rows = _check_laplacian(lap)
    return _diag_null_cached(tuple(map(tuple, rows)))


@lru_cache(maxsize=4096)
def _diag_null_cached(lap: tuple[tuple[int, ...], ...]) -> Subspace:
    n = len(lap)
    return kernel(power_pair_constraint(lap, identity_int(n)), n * n)


def pair_null(lap_i, lap_j, graph_i=None, graph_j=None, seeded=True) -> PairNullResult:
    """All bipartite states annihilated by W_{Gi,Gj} for every t, t'.

    With ``seeded=False`` every power-pair constraint, including the two
    commutators, is applied starting from the whole space; the result is the
    same and the flag exists so that equivalence can be tested.
    """
    li = _check_laplacian(lap_i)
    lj = _check_laplacian(lap_j)
    n = len(li)
    if len(lj) != n:
        raise ValueError(f"graphs have different orders ({n} and {len(lj)})")
    pi = _powers(tuple(map(tuple, li)))
    pj = _powers(tuple(map(tuple, lj)))
    ranks = []
    if seeded:
        space = intersect(diag_null(li), diag_null(lj)) if li != lj else diag_null(li)
        skip = {(0, 0), (1, 0), (0, 1)}
    else:
        space = Subspace.full(n * n)
        skip = {(0, 0)}
    order = sorted(((m, k) for m in range(n) for k in range(n) if (m, k) not in skip), key=lambda p: (p[0] + p[1], p))
    for m, k in order:
        if space.dim <= 1:
            # the uniform vector is always a solution
            break
        before = space.dim
        space = Subspace.span(kernels.restrict_pair(space.basis, pi[m], pj[k], n), n * n)
        ranks.append((m, k, before - space.dim))
    return PairNullResult(graph_i, graph_j, space, tuple(ranks))


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("QWDIST_THREADS", "1"))
    return max(1, threads)


def all_pair_nulls(laplacians: Sequence, threads: int | None = None) -> list[PairNullResult]:
    """pair_null for every unordered pair i <= j, in (i, j) order."""
    pairs = [(i, j) for i in range(len(laplacians)) for j in range(i, len(laplacians))]

    def work(p):
        i, j = p
        return pair_null(laplacians[i], laplacians[j], i, j)

    nthreads = _threads(threads)
    if nthreads == 1:
        return [work(p) for p in pairs]
    with ThreadPoolExecutor(nthreads) as pool:
        return list(pool.map(work, pairs))


def verify_subset_relations(
    results: Sequence[PairNullResult],
    diag: Mapping[int, Subspace],
    complete: Subspace,
    complete_index: int | None = None,
) -> list[dict]:
    """Check the inclusion relations every pair null space must satisfy.

    Returns one dict per violated relation; an empty list means all hold.
    """
    if complete_index is None:
        complete_index = next((k for k, s in diag.items() if s == complete), None)
    violations = []
    for r in results:
        i, j = r.graph_i, r.graph_j
        if not contains(intersect(diag[i], diag[j]), r.space):
            violations.append({"relation": "pair_within_diagonal_intersection", "i": i, "j": j})
        if not contains(complete, r.space):
            violations.append({"relation": "pair_within_complete_diagonal", "i": i, "j": j})
        if complete_index is not None and complete_index in (i, j):
            other = j if i == complete_index else i
            if r.space != diag[other]:
                violations.append({"relation": "complete_pair_equals_diagonal", "i": i, "j": j})
        if i == j and r.space != diag[i]:
            violations.append({"relation": "diagonal_pair_equals_commutant", "i": i, "j": j})
    return violations
