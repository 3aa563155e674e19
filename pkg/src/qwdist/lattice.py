"""Deduplication of pair null spaces into zones and their inclusion lattice."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

from qwdist.distinguish import all_pair_nulls, diag_null
from qwdist.exact import Subspace, contains, intersect
from qwdist.jsonio import dumps
from qwdist.graphs import LabeledGraph, OrderOutOfRange, enumerate_labeled_connected, laplacian

DEFAULT_MAX_CLASSIFY_ORDER = 5

FORMATS = ("json", "csv", "dot")


def max_classify_order() -> int:
    return int(os.environ.get("QWDIST_MAX_CLASSIFY_ORDER", DEFAULT_MAX_CLASSIFY_ORDER))


@dataclass(frozen=True)
class ZoneRecord:
    zone_id: int
    subspace_id: str
    cardinality: int
    degeneracy: int


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    subspace_id: str


@dataclass
class LatticeReport:
    order: int
    graphs: list[LabeledGraph]
    zones: list[ZoneRecord]
    subspaces: dict[str, Subspace]
    pairs: list[PairRecord]
    hasse_edges: list[tuple[int, int]]
    intersection_closure: list[dict]
    diagonal_groups: list[dict] = field(default_factory=list)

    def zone_space(self, zone_id: int) -> Subspace:
        return self.subspaces[self.zones[zone_id - 1].subspace_id]

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    def summary(self) -> str:
        return f"graphs={len(self.graphs)} pairs={self.pair_count} zones={len(self.zones)}"


def _sid(zone_id: int) -> str:
    return f"s{zone_id}"


def containment(spaces: list[Subspace]) -> list[int]:
    """Bitsets: bit ``a`` of entry ``b`` is set when space a lies strictly inside space b."""
    inside = [0] * len(spaces)
    for b, sb in enumerate(spaces):
        for a, sa in enumerate(spaces):
            if sa.dim < sb.dim and contains(sb, sa):
                inside[b] |= 1 << a
    return inside


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def hasse_edges(spaces: list[Subspace], inside: list[int] | None = None) -> list[tuple[int, int]]:
    """Covering relations (a, b) meaning zone a is strictly inside zone b.

    Zone ids are 1-based positions in ``spaces``.
    """
    inside = containment(spaces) if inside is None else inside
    edges = []
    for b in range(len(spaces)):
        below = inside[b]
        # a is covered by b unless it sits inside some c that is itself inside b
        shadowed = 0
        for c in _bits(below):
            shadowed |= inside[c]
        edges.extend((a + 1, b + 1) for a in _bits(below & ~shadowed))
    return sorted(edges)


def _closure(spaces: list[Subspace], inside: list[int]) -> list[dict]:
    index = {s: k + 1 for k, s in enumerate(spaces)}
    out = []
    for a in range(len(spaces)):
        for b in range(a + 1, len(spaces)):
            if inside[a] >> b & 1 or inside[b] >> a & 1:
                continue
            meet = intersect(spaces[a], spaces[b])
            zid = index.get(meet)
            entry = {"zones": [a + 1, b + 1], "result": _sid(zid) if zid is not None else "new", "dim": meet.dim}
            if zid is None:
                # zones filling the new intersection; anything else in it is an empty region
                common = inside[a] & inside[b]
                shadowed = 0
                for c in _bits(common):
                    shadowed |= inside[c]
                entry["maximal_zones_within"] = [k + 1 for k in _bits(common & ~shadowed)]
            out.append(entry)
    return out


def classify(order: int, threads: int | None = None, limit: int | None = None) -> LatticeReport:
    limit = max_classify_order() if limit is None else limit
    if not 1 <= order <= limit:
        raise OrderOutOfRange(f"classify order must be between 1 and {limit}, got {order}")
    graphs = enumerate_labeled_connected(order)
    laps = [laplacian(g) for g in graphs]
    results = all_pair_nulls(laps, threads=threads)

    members: dict[Subspace, list[tuple[int, int]]] = {}
    for r in results:
        members.setdefault(r.space, []).append((r.graph_i, r.graph_j))
    ordered = sorted(members, key=lambda s: (-s.dim, -len(members[s]), s.basis))
    zones = [ZoneRecord(k + 1, _sid(k + 1), s.dim, len(members[s])) for k, s in enumerate(ordered)]
    sid_of = {s: _sid(k + 1) for k, s in enumerate(ordered)}
    inside = containment(ordered)

    diag_groups: dict[str, list[int]] = {}
    for r in results:
        if r.graph_i == r.graph_j:
            diag_groups.setdefault(sid_of[r.space], []).append(r.graph_i)

    return LatticeReport(
        order=order,
        graphs=graphs,
        zones=zones,
        subspaces={sid_of[s]: s for s in ordered},
        pairs=[PairRecord(r.graph_i, r.graph_j, sid_of[r.space]) for r in results],
        hasse_edges=hasse_edges(ordered, inside),
        intersection_closure=_closure(ordered, inside),
        diagonal_groups=[
            {"subspace_id": sid, "graphs": idx}
            for sid, idx in sorted(diag_groups.items(), key=lambda kv: int(kv[0][1:]))
        ],
    )


def degeneracy_table(report: LatticeReport) -> list[tuple[int, int, int]]:
    """Rows of (zone, degeneracy, cardinality) in zone order."""
    return [(z.zone_id, z.degeneracy, z.cardinality) for z in report.zones]


def diagonal_degeneracy(order: int, limit: int | None = None) -> dict[Subspace, list[int]]:
    """Group graph indices by identical diagonal null space.

    Groups appear in order of their first member.
    """
    groups: dict[Subspace, list[int]] = {}
    for k, g in enumerate(enumerate_labeled_connected(order, limit)):
        groups.setdefault(diag_null(laplacian(g)), []).append(k)
    return groups


def report_to_json(report: LatticeReport) -> dict:
    return {
        "order": report.order,
        "summary": {"graphs": len(report.graphs), "pairs": report.pair_count, "zones": len(report.zones)},
        "graphs": [dict(index=k, mask=g.mask, **g.to_json()) for k, g in enumerate(report.graphs)],
        "zones": [
            {"zone_id": z.zone_id, "subspace_id": z.subspace_id, "cardinality": z.cardinality, "degeneracy": z.degeneracy}
            for z in report.zones
        ],
        "hasse_edges": [list(e) for e in report.hasse_edges],
        "intersection_closure": report.intersection_closure,
        "diagonal_groups": report.diagonal_groups,
        "pairs": [
            {"i": p.i, "j": p.j, "dim": report.subspaces[p.subspace_id].dim, "subspace_id": p.subspace_id}
            for p in report.pairs
        ],
        "subspaces": {sid: s.to_json() for sid, s in report.subspaces.items()},
    }


def to_dot(report: LatticeReport) -> str:
    lines = [f"digraph zones_order_{report.order} {{", "  rankdir=BT;"]
    for z in report.zones:
        lines.append(f'  z{z.zone_id} [label="{z.zone_id} ({z.cardinality})"];')
    for a, b in report.hasse_edges:
        lines.append(f"  z{a} -> z{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(report: LatticeReport, fmt: str) -> bytes:
    if fmt == "json":
        return dumps(report_to_json(report)).encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["zone", "degeneracy", "cardinality"])
        w.writerows(degeneracy_table(report))
        return buf.getvalue().encode()
    if fmt == "dot":
        return to_dot(report).encode()
    raise ValueError(f"unknown export format {fmt!r}; expected one of {', '.join(FORMATS)}")
