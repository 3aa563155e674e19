"""End-to-end checks of a classification: inclusion relations plus oracle sweep."""
from __future__ import annotations

import numpy as np

from qwdist import oracle
from qwdist.distinguish import PairNullResult, all_pair_nulls, diag_null, verify_subset_relations
from qwdist.exact import Subspace, intersect
from qwdist.graphs import LabeledGraph, complete_graph, enumerate_labeled_connected, laplacian


def sig15(x: float) -> float:
    return float(f"{x:.15g}")


def load_pair_results(report: dict) -> tuple[list[LabeledGraph], list[PairNullResult]]:
    """Pair null spaces as recorded in an exported classification JSON."""
    graphs = [LabeledGraph.from_json(g) for g in report["graphs"]]
    spaces = {sid: Subspace.from_json(body) for sid, body in report["subspaces"].items()}
    results = [PairNullResult(int(p["i"]), int(p["j"]), spaces[p["subspace_id"]]) for p in report["pairs"]]
    return graphs, results


def oracle_sweep(graphs, results, diag, times, rng, samples):
    """Residual checks for every pair's null basis and for vectors just outside each zone."""
    laps = [laplacian(g) for g in graphs]
    violations = []
    worst_accept = 0.0
    weakest_reject = np.inf
    seen = set()
    for r in results:
        i, j = r.graph_i, r.graph_j
        if r.space.dim:
            res = oracle.max_residuals(laps[i], laps[j], r.space.basis, times)
            worst_accept = max(worst_accept, float(res.max()))
            for k in np.flatnonzero(res >= oracle.ACCEPT_TOL):
                violations.append({"check": "null_vector_residual", "i": i, "j": j, "vector": int(k), "residual": sig15(res[k])})
        if r.space in seen:
            continue
        seen.add(r.space)
        enclosing = intersect(diag[i], diag[j])
        outer = enclosing if enclosing != r.space else Subspace.full(r.space.ambient_dim)
        probes = oracle.complement_samples(outer.basis, r.space.basis, samples, rng)
        if not len(probes):
            continue
        res = oracle.max_residuals(laps[i], laps[j], probes, times)
        weakest_reject = min(weakest_reject, float(res.min()))
        for k in np.flatnonzero(res <= oracle.REJECT_TOL):
            violations.append({"check": "outside_vector_residual", "i": i, "j": j, "vector": int(k), "residual": sig15(res[k])})
    return violations, worst_accept, (None if weakest_reject == np.inf else weakest_reject)


def verify_order(order: int, seed: int = 7, samples: int = 20, check: dict | None = None, threads=None) -> dict:
    if samples < 1:
        raise ValueError("sample count must be at least 1")
    graphs = enumerate_labeled_connected(order)
    laps = [laplacian(g) for g in graphs]
    computed = all_pair_nulls(laps, threads=threads)
    mismatches = []
    results = computed
    if check is not None:
        file_graphs, results = load_pair_results(check)
        if [g.mask for g in file_graphs] != [g.mask for g in graphs] or len(results) != len(computed):
            mismatches.append({"check": "graph_or_pair_list_differs"})
            results = computed
        else:
            for got, want in zip(results, computed):
                if (got.graph_i, got.graph_j) != (want.graph_i, want.graph_j) or got.space != want.space:
                    mismatches.append({"check": "pair_null_differs", "i": got.graph_i, "j": got.graph_j})
    diag = {k: diag_null(lap) for k, lap in enumerate(laps)}
    complete = diag_null(laplacian(complete_graph(order)))
    relations = verify_subset_relations(results, diag, complete)

    rng = np.random.default_rng(seed)
    times = oracle.sample_times(rng, samples)
    oracle_violations, worst_accept, weakest_reject = oracle_sweep(graphs, results, diag, times, rng, samples)
    total = len(mismatches) + len(relations) + len(oracle_violations)
    return {
        "order": order,
        "seed": seed,
        "samples": samples,
        "graphs": len(graphs),
        "pairs": len(results),
        "zones": len({r.space for r in results}),
        "max_null_residual": sig15(worst_accept),
        "min_outside_residual": None if weakest_reject is None else sig15(weakest_reject),
        "mismatches": mismatches,
        "relation_violations": relations,
        "oracle_violations": oracle_violations,
        "violations": total,
    }
