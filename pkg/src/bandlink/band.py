"""Band diagrams: thicken a 4-valent projection into a chain of circles.

Subdivide every edge of a base projection with 2-valent vertices, then blow
the graph up into a link diagram: each 2-valent vertex becomes a *clasp*
(two crossings joining the circles of the two adjacent band arcs), each
4-valent vertex becomes a *hash* (four crossings where two bands cross), and
each segment may carry *twist* crossings (self-crossings of one band).  The
result is one circle per 2-valent vertex, chained along the strands of the
base, living on the same surface as the base map.

Gadget bookkeeping: every crossing owns four darts in a fixed rotation, and
each base dart exposes two strand ports, L on its counterclockwise flank and
R on the clockwise one.  Corridors glue L to R because walking an edge flips
the flank.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .cmap import (
    CombinatorialMap,
    Face,
    faces,
    load_cmap,
    strands,
    validate,
)
from .errors import (
    BadValence,
    BandSpecError,
    GenusMismatch,
    ProvenanceError,
    ZeroSubdivision,
)

KIND_CLASP = "clasp"
KIND_HASH = "hash"
KIND_TWIST = "twist"


@dataclass(frozen=True)
class Crossing:
    """Where a diagram vertex came from.

    clasp: owner = the 2-valent vertex, slot 1..2 along the first band arc.
    hash: owner = the 4-valent vertex, slot 1..4 by rotation corner.
    twist: owner = the segment's edge id, slot = position along the segment.
    """

    kind: str
    owner: int
    slot: int


@dataclass(frozen=True)
class BandSpec:
    """Recipe for a band diagram.

    ``subdivisions[e]`` counts the 2-valent vertices inserted into canonical
    edge e+1 of the base; ``twists[e]`` gives one twist count per resulting
    segment (so it has subdivisions[e] + 1 entries).
    """

    base: CombinatorialMap
    subdivisions: tuple[int, ...]
    twists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "subdivisions", tuple(self.subdivisions))
        object.__setattr__(self, "twists", tuple(tuple(t) for t in self.twists))


@dataclass(frozen=True)
class BandDiagram:
    """A built band diagram plus the provenance of its parts."""

    diagram: CombinatorialMap
    crossing_kind: tuple[Crossing, ...]
    circle_of_strand: tuple[int, ...]
    face_provenance: tuple[int | None, ...]
    n: int
    degenerate: bool = False

    @cached_property
    def _strand_of_dart(self) -> tuple[int, ...]:
        out = [0] * self.diagram.dart_count
        for s in strands(self.diagram):
            for d in s.darts:
                out[d - 1] = s.id
        return tuple(out)

    @cached_property
    def circles_of_vertex(self) -> tuple[tuple[int, int], ...]:
        """The two circles meeting at each crossing (equal for self-crossings)."""
        out = []
        for cyc in self.diagram.vertex_cycles:
            a = self.circle_of_strand[self._strand_of_dart[cyc[0] - 1] - 1]
            b = self.circle_of_strand[self._strand_of_dart[cyc[1] - 1] - 1]
            out.append((a, b) if a <= b else (b, a))
        return tuple(out)

    def base_face_ids(self) -> tuple[int, ...]:
        return tuple(
            fid
            for fid, origin in enumerate(self.face_provenance, start=1)
            if origin is not None
        )


def _check_valences(m: CombinatorialMap) -> tuple[list[int], list[int]]:
    two, four = [], []
    for vid, cyc in enumerate(m.vertex_cycles, start=1):
        if len(cyc) == 2:
            two.append(vid)
        elif len(cyc) == 4:
            four.append(vid)
        else:
            raise BadValence(
                f"vertex {vid} has valence {len(cyc)}; band bases need 2 or 4"
            )
    return two, four


def check_spec(spec: BandSpec) -> None:
    """Validate a band spec against its base map."""
    base = spec.base
    validate(base)
    _check_valences(base)
    e_count = base.edge_count
    if len(spec.subdivisions) != e_count:
        raise BandSpecError(
            f"{len(spec.subdivisions)} subdivision counts for {e_count} edges"
        )
    if len(spec.twists) != e_count:
        raise BandSpecError(f"{len(spec.twists)} twist lists for {e_count} edges")
    for eid, (d, dp) in enumerate(base.edge_pairs, start=1):
        k = spec.subdivisions[eid - 1]
        if k < 0:
            raise BandSpecError(f"edge {eid}: negative subdivision count {k}")
        ends_4valent = (
            len(base.vertex_cycles[base.vertex_of[d - 1] - 1]) == 4
            and len(base.vertex_cycles[base.vertex_of[dp - 1] - 1]) == 4
        )
        if ends_4valent and k == 0:
            raise ZeroSubdivision(
                f"edge {eid} joins two 4-valent vertices and needs at least "
                "one subdivision point"
            )
        ts = spec.twists[eid - 1]
        if len(ts) != k + 1:
            raise BandSpecError(
                f"edge {eid}: {len(ts)} twist counts for {k + 1} segments"
            )
        for t in ts:
            if t < 0:
                raise BandSpecError(f"edge {eid}: negative twist count {t}")


def _subdivide(
    m: CombinatorialMap, subdivisions: Sequence[int]
) -> tuple[CombinatorialMap, tuple[tuple[tuple[int, int], ...], ...]]:
    """Insert 2-valent vertices; also return each edge's segment dart pairs."""
    total = m.dart_count + 2 * sum(subdivisions)
    alpha = [0] * (total + 1)
    sigma = [0] * (total + 1)
    for d in range(1, m.dart_count + 1):
        sigma[d] = m.sigma[d - 1]
    nxt = m.dart_count + 1
    segments: list[tuple[tuple[int, int], ...]] = []
    for eid, (d, dp) in enumerate(m.edge_pairs, start=1):
        k = subdivisions[eid - 1]
        pairs = []
        prev = d
        for _ in range(k):
            a, b = nxt, nxt + 1
            nxt += 2
            sigma[a], sigma[b] = b, a
            alpha[prev], alpha[a] = a, prev
            pairs.append((min(prev, a), max(prev, a)))
            prev = b
        alpha[prev], alpha[dp] = dp, prev
        pairs.append((min(prev, dp), max(prev, dp)))
        segments.append(tuple(pairs))
    return (
        CombinatorialMap(total, alpha[1:], sigma[1:], m.declared_genus),
        tuple(segments),
    )


def subdivide(m: CombinatorialMap, subdivisions: Sequence[int]) -> CombinatorialMap:
    """Public subdivision: every edge between 4-valent vertices needs k >= 1."""
    spec = BandSpec(
        m,
        tuple(subdivisions),
        tuple((0,) * (k + 1) for k in subdivisions),
    )
    check_spec(spec)
    return _subdivide(m, tuple(subdivisions))[0]


# Gadget dart offsets within a crossing's rotation (darts 4c+1 .. 4c+4).
# Clasp pair: p = [NE, NW, MA, MB], q = [MB, MA, SW, SE]; the two middle
# segments MA/MB join p to q so the two U-turn arcs cross twice.
# Hash: four crossings slot 1..4, each rotated [E, N, W, S] in its own frame.
# Twist: [NE, NW, SW, SE]; straight strands swap upper and lower.


class _Builder:
    def __init__(self):
        self.crossings: list[Crossing] = []
        self.pairs: list[tuple[int, int]] = []
        self.ports: dict[tuple[int, str], int] = {}

    def new_crossing(self, kind: str, owner: int, slot: int) -> int:
        """Allocate four darts; returns the id of the first (offset base)."""
        self.crossings.append(Crossing(kind, owner, slot))
        return (len(self.crossings) - 1) * 4

    def pair(self, x: int, y: int) -> None:
        self.pairs.append((x, y))

    def clasp(self, w: int, a: int, b: int) -> None:
        p = self.new_crossing(KIND_CLASP, w, 1)
        q = self.new_crossing(KIND_CLASP, w, 2)
        self.pair(p + 3, q + 2)
        self.pair(p + 4, q + 1)
        self.ports[(a, "L")] = p + 1
        self.ports[(a, "R")] = q + 4
        self.ports[(b, "L")] = q + 3
        self.ports[(b, "R")] = p + 2

    def hash_vertex(self, v: int, rotation: Sequence[int]) -> None:
        d1, d2, d3, d4 = rotation
        s1 = self.new_crossing(KIND_HASH, v, 1)
        s2 = self.new_crossing(KIND_HASH, v, 2)
        s3 = self.new_crossing(KIND_HASH, v, 3)
        s4 = self.new_crossing(KIND_HASH, v, 4)
        self.pair(s1 + 3, s2 + 1)
        self.pair(s1 + 4, s4 + 2)
        self.pair(s2 + 4, s3 + 2)
        self.pair(s3 + 1, s4 + 3)
        self.ports[(d1, "L")] = s1 + 1
        self.ports[(d1, "R")] = s4 + 1
        self.ports[(d2, "L")] = s2 + 2
        self.ports[(d2, "R")] = s1 + 2
        self.ports[(d3, "L")] = s3 + 3
        self.ports[(d3, "R")] = s2 + 3
        self.ports[(d4, "L")] = s4 + 4
        self.ports[(d4, "R")] = s3 + 4

    def corridor(self, seg_id: int, d: int, dp: int, t: int) -> None:
        if t == 0:
            self.pair(self.ports[(d, "L")], self.ports[(dp, "R")])
            self.pair(self.ports[(d, "R")], self.ports[(dp, "L")])
            return
        xs = [self.new_crossing(KIND_TWIST, seg_id, i + 1) for i in range(t)]
        self.pair(self.ports[(d, "L")], xs[0] + 2)
        self.pair(self.ports[(d, "R")], xs[0] + 3)
        for k in range(t - 1):
            self.pair(xs[k] + 1, xs[k + 1] + 2)
            self.pair(xs[k] + 4, xs[k + 1] + 3)
        self.pair(xs[-1] + 1, self.ports[(dp, "R")])
        self.pair(xs[-1] + 4, self.ports[(dp, "L")])

    def finish(self, genus: int) -> CombinatorialMap:
        total = 4 * len(self.crossings)
        sigma = [0] * (total + 1)
        for c in range(len(self.crossings)):
            base = 4 * c
            sigma[base + 1] = base + 2
            sigma[base + 2] = base + 3
            sigma[base + 3] = base + 4
            sigma[base + 4] = base + 1
        alpha = [0] * (total + 1)
        for x, y in self.pairs:
            if alpha[x] or alpha[y]:
                raise RuntimeError(f"dart glued twice: {x} or {y}")
            alpha[x], alpha[y] = y, x
        if any(a == 0 for a in alpha[1:]):
            raise RuntimeError("unglued dart left over")
        return CombinatorialMap(total, alpha[1:], sigma[1:], genus)


def build_band(spec: BandSpec) -> BandDiagram:
    """Build the band diagram a spec describes, on the same surface.

    The builder checks its own output: Euler/genus per component, the vertex
    census 2C + 4H + sum(t), one circle per 2-valent vertex, and a bijection
    between base faces and the diagram faces inherited from them.
    """
    check_spec(spec)
    base_report = validate(spec.base)
    m, segments = _subdivide(spec.base, spec.subdivisions)
    two, four = _check_valences(m)
    n_expected = len(two)

    seg_twist: dict[tuple[int, int], int] = {}
    for eid in range(1, spec.base.edge_count + 1):
        for pair, t in zip(segments[eid - 1], spec.twists[eid - 1]):
            seg_twist[pair] = t

    b = _Builder()
    for w in two:
        a, bb = m.vertex_cycles[w - 1]
        b.clasp(w, a, bb)
    for v in four:
        b.hash_vertex(v, m.vertex_cycles[v - 1])
    twist_total = 0
    for eid, (d, dp) in enumerate(m.edge_pairs, start=1):
        t = seg_twist.get((d, dp), 0)
        twist_total += t
        b.corridor(eid, d, dp, t)
    dl = b.finish(spec.base.declared_genus)

    if dl.vertex_count != 2 * n_expected + 4 * len(four) + twist_total:
        raise RuntimeError("crossing census does not add up")

    # Genus preservation, component by component.
    m_genus = {
        comp[0]: g
        for comp, g in zip(m.components, validate(m, base_report.component_genera
                                                  if base_report.component_count > 1
                                                  else None).component_genera)
    }
    owner_dart = {}
    for cid, cr in enumerate(b.crossings):
        if cr.kind == KIND_TWIST:
            owner_dart[cid] = m.edge_pairs[cr.owner - 1][0]
        else:
            owner_dart[cid] = m.vertex_cycles[cr.owner - 1][0]

    def m_component_of(m_dart: int) -> int:
        for comp in m.components:
            if m_dart in comp:
                return comp[0]
        raise RuntimeError("dart outside every component")

    expected_genera = tuple(
        m_genus[m_component_of(owner_dart[(comp[0] - 1) // 4])]
        for comp in dl.components
    )
    if len(dl.components) != len(m.components):
        raise GenusMismatch(
            f"band diagram has {len(dl.components)} components but the base "
            f"has {len(m.components)}"
        )
    validate(dl, expected_genera if len(dl.components) > 1 else None)
    if len(dl.components) == 1 and expected_genera[0] != dl.declared_genus:
        raise GenusMismatch(
            f"band diagram landed on genus {expected_genera[0]} instead of "
            f"{dl.declared_genus}"
        )

    dl_strands = strands(dl)
    if len(dl_strands) != n_expected:
        raise RuntimeError(
            f"{len(dl_strands)} circles for {n_expected} 2-valent vertices"
        )
    circle_of_strand = tuple(range(1, len(dl_strands) + 1))

    strand_of_dart = [0] * dl.dart_count
    for s in dl_strands:
        for d in s.darts:
            strand_of_dart[d - 1] = s.id

    degenerate = False
    for cid, cr in enumerate(b.crossings):
        c0 = strand_of_dart[4 * cid]
        c1 = strand_of_dart[4 * cid + 1]
        if cr.kind == KIND_TWIST and c0 != c1:
            raise RuntimeError(f"twist crossing {cid + 1} is not a self-crossing")
        if cr.kind == KIND_CLASP and c0 == c1:
            degenerate = True

    dl_faces = faces(dl)
    face_of_dart = {}
    for f in dl_faces:
        for d in f.boundary:
            face_of_dart[d] = f.id
    provenance: list[int | None] = [None] * len(dl_faces)
    for mf in faces(m):
        dl_dart = b.ports[(mf.boundary[0], "R")]
        fid = face_of_dart[dl_dart]
        if provenance[fid - 1] is not None:
            raise RuntimeError(
                f"faces {provenance[fid - 1]} and {mf.id} of the base map to "
                f"the same diagram face"
            )
        provenance[fid - 1] = mf.id

    return BandDiagram(
        diagram=dl,
        crossing_kind=tuple(b.crossings),
        circle_of_strand=circle_of_strand,
        face_provenance=tuple(provenance),
        n=len(dl_strands),
        degenerate=degenerate,
    )


# ---------------------------------------------------------------------------
# Census: who crosses whom, and how.


@dataclass(frozen=True)
class CensusEntry:
    other: int
    points: int
    kind: str


@dataclass(frozen=True)
class CensusReport:
    entries: tuple[tuple[CensusEntry, ...], ...]
    self_crossings: tuple[int, ...]
    warnings: tuple[str, ...]


def census(bd: BandDiagram) -> CensusReport:
    """Tally inter-circle crossing points per circle.

    Clasps contribute 2 points to each of their two circles, hashes 4; twist
    crossings are self-crossings and are tallied separately.  Deviations from
    the generic picture (a circle meeting fewer than two distinct clasp
    partners, or a clasp joining a circle to itself) are flagged as warnings,
    not errors, because small diagrams genuinely produce them.
    """
    per_circle: list[list[CensusEntry]] = [[] for _ in range(bd.n)]
    self_cross = [0] * bd.n
    warnings: list[str] = []
    groups: dict[tuple[str, int], list[int]] = {}
    for vid, cr in enumerate(bd.crossing_kind, start=1):
        groups.setdefault((cr.kind, cr.owner), []).append(vid)
    for (kind, owner), vids in sorted(groups.items()):
        circ = {bd.circles_of_vertex[v - 1] for v in vids}
        if len(circ) != 1:
            raise ProvenanceError(
                f"{kind} {owner} mixes circle pairs {sorted(circ)}"
            )
        a, c = circ.pop()
        if kind == KIND_TWIST:
            self_cross[a - 1] += len(vids)
            continue
        points = 2 if kind == KIND_CLASP else 4
        if a == c:
            warnings.append(f"{kind} {owner} joins circle {a} to itself")
            per_circle[a - 1].append(CensusEntry(a, points, kind))
            continue
        per_circle[a - 1].append(CensusEntry(c, points, kind))
        per_circle[c - 1].append(CensusEntry(a, points, kind))
    for cid in range(1, bd.n + 1):
        clasp_partners = [
            e.other for e in per_circle[cid - 1] if e.kind == KIND_CLASP
        ]
        if len(clasp_partners) != 2:
            warnings.append(
                f"circle {cid} has {len(clasp_partners)} clasp ends instead of 2"
            )
        elif clasp_partners[0] == clasp_partners[1]:
            warnings.append(
                f"circle {cid} meets circle {clasp_partners[0]} at both clasp ends"
            )
    return CensusReport(
        tuple(tuple(sorted(lst, key=lambda e: (e.kind, e.other))) for lst in per_circle),
        tuple(self_cross),
        tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Band spec files and provenance sidecars.

PROVENANCE_FORMAT = "bandlink-provenance v1"


def load_band_spec(path) -> BandSpec:
    """Read a band spec JSON document; the base map path is relative to it."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BandSpecError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict) or "map" not in doc:
        raise BandSpecError(f"{path}: missing 'map' entry")
    map_path = doc["map"]
    if not os.path.isabs(map_path):
        map_path = os.path.join(os.path.dirname(os.path.abspath(path)), map_path)
    base = load_cmap(map_path)
    e_count = base.edge_count
    subdivisions = [0] * e_count
    twists: list[tuple[int, ...]] = [(0,)] * e_count
    seen = set()
    for entry in doc.get("edges", []):
        try:
            eid = int(entry["edge"])
            k = int(entry.get("subdivisions", 0))
            ts = tuple(int(t) for t in entry.get("twists", (0,) * (k + 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise BandSpecError(f"bad edge entry {entry!r}") from exc
        if not 1 <= eid <= e_count:
            raise BandSpecError(f"edge id {eid} outside 1..{e_count}")
        if eid in seen:
            raise BandSpecError(f"edge {eid} listed twice")
        seen.add(eid)
        subdivisions[eid - 1] = k
        twists[eid - 1] = ts
    spec = BandSpec(base, tuple(subdivisions), tuple(twists))
    check_spec(spec)
    return spec


def provenance_to_json(bd: BandDiagram) -> str:
    doc = {
        "format": PROVENANCE_FORMAT,
        "n": bd.n,
        "degenerate": bd.degenerate,
        "crossing_kind": [
            {"vertex": vid, "kind": cr.kind, "owner": cr.owner, "slot": cr.slot}
            for vid, cr in enumerate(bd.crossing_kind, start=1)
        ],
        "circle_of_strand": list(bd.circle_of_strand),
        "face_provenance": [
            {"face": fid, "kind": "internal"}
            if origin is None
            else {"face": fid, "kind": "base", "base_face": origin}
            for fid, origin in enumerate(bd.face_provenance, start=1)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def band_diagram_from_provenance(m: CombinatorialMap, text: str) -> BandDiagram:
    """Rebuild a BandDiagram from a map plus its provenance sidecar."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProvenanceError(f"bad provenance JSON: {exc}") from exc
    if doc.get("format") != PROVENANCE_FORMAT:
        raise ProvenanceError(f"unknown provenance format {doc.get('format')!r}")
    try:
        kinds = [None] * m.vertex_count
        for entry in doc["crossing_kind"]:
            kinds[int(entry["vertex"]) - 1] = Crossing(
                str(entry["kind"]), int(entry["owner"]), int(entry["slot"])
            )
        circle_of_strand = tuple(int(c) for c in doc["circle_of_strand"])
        provenance: list[int | None] = [None] * len(doc["face_provenance"])
        for entry in doc["face_provenance"]:
            if entry["kind"] == "base":
                provenance[int(entry["face"]) - 1] = int(entry["base_face"])
        n = int(doc["n"])
        degenerate = bool(doc.get("degenerate", False))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ProvenanceError(f"incomplete provenance document: {exc}") from exc
    if any(k is None for k in kinds):
        raise ProvenanceError("provenance does not cover every vertex")
    if len(strands(m)) != len(circle_of_strand):
        raise ProvenanceError("circle list does not match the map's strands")
    if len(provenance) != len(faces(m)):
        raise ProvenanceError("face list does not match the map's faces")
    if n != len(circle_of_strand):
        raise ProvenanceError("component count does not match the circle list")
    return BandDiagram(
        diagram=m,
        crossing_kind=tuple(kinds),
        circle_of_strand=circle_of_strand,
        face_provenance=tuple(provenance),
        n=n,
        degenerate=degenerate,
    )
