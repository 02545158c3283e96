"""Face percolation: spreading a coloring of the vertices across faces.

The rule: a vertex is colored automatically at step s+1 when some face
contains it and every *other* distinct vertex of that face is already
colored.  A face with a single distinct vertex therefore colors that vertex
unconditionally.  Rounds are simultaneous; the closed set is independent of
scheduling, which the test suite checks against a one-vertex-per-step
reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cmap import CombinatorialMap, Face
from .errors import CmapFormatError, UnknownVertex


@dataclass(frozen=True)
class Coloring:
    """Result of a percolation run.

    ``auto`` maps each automatically colored vertex to the step it was
    colored at (manual vertices are step 0).  ``face_steps`` maps each fully
    colored face to the step its last vertex received.  Values are frozen
    after construction and safe to share.
    """

    manual: frozenset[int]
    auto: Mapping[int, int]
    face_steps: Mapping[int, int]
    vertex_count: int

    @property
    def colored(self) -> frozenset[int]:
        return self.manual | frozenset(self.auto)

    @property
    def complete(self) -> bool:
        return len(self.colored) == self.vertex_count

    def step_of(self, v: int) -> int | None:
        if v in self.manual:
            return 0
        return self.auto.get(v)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    vertex: int
    face: int


@dataclass(frozen=True)
class PercolationTrace:
    manual: tuple[int, ...]
    entries: tuple[TraceEntry, ...] = field(default_factory=tuple)


def _check_manual(manual: Iterable[int], vertex_count: int) -> frozenset[int]:
    out = frozenset(manual)
    for v in out:
        if not 1 <= v <= vertex_count:
            raise UnknownVertex(f"vertex {v} outside 1..{vertex_count}")
    return out


def close(
    m: CombinatorialMap,
    faces_list: Sequence[Face],
    manual: Iterable[int],
) -> tuple[Coloring, PercolationTrace]:
    """Run simultaneous rounds to the fixpoint, recording a trace.

    Within a round every face is inspected against the coloring from the
    previous round; a vertex colored this round records the smallest face id
    that witnessed it.
    """
    manual_set = _check_manual(manual, m.vertex_count)
    colored = set(manual_set)
    auto: dict[int, int] = {}
    entries: list[TraceEntry] = []
    step = 0
    while True:
        step += 1
        newly: dict[int, int] = {}
        for face in faces_list:
            uncolored = [v for v in face.distinct_vertices if v not in colored]
            if len(uncolored) == 1 and uncolored[0] not in newly:
                newly[uncolored[0]] = face.id
        if not newly:
            break
        for v in sorted(newly):
            auto[v] = step
            entries.append(TraceEntry(step, v, newly[v]))
        colored.update(newly)
    face_steps: dict[int, int] = {}
    for face in faces_list:
        if all(v in colored for v in face.distinct_vertices):
            face_steps[face.id] = max(
                (auto.get(v, 0) for v in face.distinct_vertices), default=0
            )
    coloring = Coloring(manual_set, auto, face_steps, m.vertex_count)
    return coloring, PercolationTrace(tuple(sorted(manual_set)), tuple(entries))


def percolates(
    m: CombinatorialMap,
    faces_list: Sequence[Face],
    manual: Iterable[int],
) -> bool:
    """True when the closure of ``manual`` colors every vertex."""
    masks = face_masks(faces_list)
    start = 0
    for v in _check_manual(manual, m.vertex_count):
        start |= 1 << (v - 1)
    closed = close_mask(masks, start)
    return closed == (1 << m.vertex_count) - 1 if m.vertex_count else True


# Bitmask core shared with the exhaustive hull search: vertex v occupies
# bit v-1, one mask per face.


def face_masks(faces_list: Sequence[Face]) -> tuple[int, ...]:
    out = []
    for face in faces_list:
        mask = 0
        for v in face.distinct_vertices:
            mask |= 1 << (v - 1)
        out.append(mask)
    return tuple(out)


def close_mask(masks: Sequence[int], start: int) -> int:
    """Fixpoint of the percolation rule on bitmasks."""
    colored = start
    changed = True
    while changed:
        changed = False
        for mask in masks:
            left = mask & ~colored
            if left and not (left & (left - 1)):
                colored |= left
                changed = True
    return colored


# Trace serialisation: a `manual:` line followed by one line per colored
# vertex, plus a JSON twin with the same content.


def format_trace(trace: PercolationTrace) -> str:
    lines = ["manual: " + " ".join(str(v) for v in trace.manual)]
    for e in trace.entries:
        lines.append(f"step {e.step} vertex {e.vertex} face {e.face}")
    return "\n".join(lines) + "\n"


def trace_to_json(trace: PercolationTrace) -> str:
    doc = {
        "manual": list(trace.manual),
        "steps": [
            {"step": e.step, "vertex": e.vertex, "face": e.face}
            for e in trace.entries
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def coloring_from_trace(trace: PercolationTrace, vertex_count: int) -> Coloring:
    """Rebuild the coloring a trace describes (face_steps stays empty)."""
    manual = _check_manual(trace.manual, vertex_count)
    auto = {e.vertex: e.step for e in trace.entries}
    return Coloring(manual, auto, {}, vertex_count)


def parse_trace(text: str) -> PercolationTrace:
    """Read either trace flavour (text or JSON)."""
    body = text.strip()
    if body.startswith("{"):
        doc = json.loads(body)
        return PercolationTrace(
            tuple(int(v) for v in doc.get("manual", [])),
            tuple(
                TraceEntry(int(s["step"]), int(s["vertex"]), int(s["face"]))
                for s in doc.get("steps", [])
            ),
        )
    manual: tuple[int, ...] = ()
    entries = []
    for lineno, raw in enumerate(body.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("manual:"):
            manual = tuple(int(tok) for tok in line.split(":", 1)[1].split())
            continue
        parts = line.split()
        if len(parts) != 6 or parts[0] != "step" or parts[2] != "vertex" or parts[4] != "face":
            raise CmapFormatError(f"line {lineno}: bad trace line {line!r}")
        entries.append(TraceEntry(int(parts[1]), int(parts[3]), int(parts[5])))
    return PercolationTrace(manual, tuple(entries))
