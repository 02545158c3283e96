"""Percolation hulls: smallest vertex sets whose closure colors everything.

Two strategies.  ``hull_exact`` tries subsets in ascending size, lexicographic
within a size, so the first hit is the canonical minimum witness.  It meters
its own work against a budget because the search space is binomial.
``hull_constructive_band`` walks a band diagram face by face and assembles a
witness of size n - 1 directly, where n is the number of circles; it never
searches, so it scales, but it only applies to band diagrams.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from .band import BandDiagram
from .cmap import CombinatorialMap, faces
from .errors import BudgetExceeded, ConstructionStuck
from .percolation import close_mask, face_masks

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "BANDLINK_BUDGET"


@dataclass(frozen=True)
class HullResult:
    """A witness set together with how it was found.

    ``verified`` records that the producer checked the witness percolates;
    ``examined`` counts face scans spent by the exhaustive search (0 for the
    constructive route).  ``log`` narrates constructive decisions.
    """

    size: int
    witness: tuple[int, ...]
    method: str
    verified: bool
    examined: int = 0
    log: tuple[str, ...] = ()


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def verify_witness(m: CombinatorialMap, witness) -> bool:
    """Check that a vertex set percolates; the empty map needs nothing."""
    if m.vertex_count == 0:
        return True
    masks = face_masks(faces(m))
    start = 0
    for v in witness:
        start |= 1 << (v - 1)
    return close_mask(masks, start) == (1 << m.vertex_count) - 1


def hull_exact(
    m: CombinatorialMap,
    budget: int | None = None,
    start_size: int = 0,
) -> HullResult:
    """Find a minimum percolating set by exhaustive ascending search.

    The budget is measured in face scans (one closure round costs one scan
    per face).  ``start_size`` skips smaller subsets: it is an assertion that
    they all fail, so only pass it when that is already known.
    """
    nv = m.vertex_count
    if nv == 0:
        return HullResult(0, (), "exact", True)
    masks = face_masks(faces(m))
    full = (1 << nv) - 1
    limit = _budget(budget)
    spent = 0
    nf = len(masks)
    completed_size = start_size - 1 if start_size > 0 else None
    for size in range(start_size, nv + 1):
        for subset in combinations(range(1, nv + 1), size):
            colored = 0
            for v in subset:
                colored |= 1 << (v - 1)
            while True:
                spent += nf
                nxt = colored
                for mask in masks:
                    left = mask & ~colored
                    if left and not (left & (left - 1)):
                        nxt |= left
                if nxt == colored:
                    break
                colored = nxt
            if spent > limit:
                raise BudgetExceeded(
                    f"hull search spent {spent} face scans (budget {limit})",
                    examined=spent,
                    best_known=completed_size,
                )
            if colored == full:
                return HullResult(size, subset, "exact", True, spent)
        completed_size = size
    raise RuntimeError("the full vertex set failed to percolate")


def _one_cyclic_run(flags: list[bool]) -> tuple[int, int] | None:
    """If the True positions form one nonempty cyclic run, return (start, length)."""
    n = len(flags)
    total = sum(flags)
    if total == 0 or total == n:
        return None
    start = next(
        i for i in range(n) if flags[i] and not flags[(i - 1) % n]
    )
    if all(flags[(start + j) % n] for j in range(total)):
        return start, total
    return None


def hull_constructive_band(bd: BandDiagram) -> HullResult:
    """Build an (n - 1)-vertex witness by walking base-derived faces.

    Starts from the smallest-id base-derived face and colors its corners one
    per untouched circle, skipping the largest-id corner (on a face whose m
    corners sit on m distinct circles this is exactly "all but one").  Then
    repeatedly extends along a base-derived face whose colored corners form
    one contiguous cyclic arc, again claiming one corner per untouched
    circle, and recloses.  Twist crossings are never picked; they fill in
    automatically once their circle is touched.  Raises ConstructionStuck
    with the decision log when no face extends the region or the witness
    does not come out at n - 1.
    """
    m = bd.diagram
    if not m.is_connected():
        raise ConstructionStuck(
            "the chain walk needs a connected diagram", ("diagram is disconnected",)
        )
    if m.vertex_count == 0:
        return HullResult(0, (), "constructive", True)

    faces_list = faces(m)
    masks = face_masks(faces_list)
    full = (1 << m.vertex_count) - 1
    base_faces = [f for f in faces_list if bd.face_provenance[f.id - 1] is not None]
    if not base_faces:
        raise ConstructionStuck("no base-derived faces to walk", ())

    circle_bits = [0] * bd.n
    for v in range(1, m.vertex_count + 1):
        for c in bd.circles_of_vertex[v - 1]:
            circle_bits[c - 1] |= 1 << (v - 1)

    def picks_along(face, positions, state: int, excluded: int | None) -> list[int]:
        picks = []
        for pos in positions:
            v = face.vertex_list[pos]
            if v == excluded or state >> (v - 1) & 1:
                continue
            if any(
                circle_bits[c - 1] & state == 0
                for c in bd.circles_of_vertex[v - 1]
            ):
                picks.append(v)
                state |= 1 << (v - 1)
        return picks

    def mask_of(vs) -> int:
        out = 0
        for v in vs:
            out |= 1 << (v - 1)
        return out

    def attempt(f0, log: list[str]) -> set[int] | None:
        """One pass of the walk from f0; None signals a dead end."""
        picks = picks_along(
            f0, range(len(f0.vertex_list)), 0, max(f0.distinct_vertices)
        )
        manual = set(picks)
        log.append(
            f"start face {f0.id}: color " + " ".join(str(v) for v in picks)
        )
        colored = close_mask(masks, mask_of(manual))
        while colored != full:
            progressed = False
            for f in base_faces:
                flags = [bool(colored >> (v - 1) & 1) for v in f.vertex_list]
                if all(flags):
                    continue
                run = _one_cyclic_run(flags)
                if run is None:
                    continue
                start, length = run
                nf = len(f.vertex_list)
                positions = [
                    (start + length + j) % nf for j in range(nf - length)
                ]
                picks = picks_along(f, positions, colored, None)
                if not picks:
                    continue
                manual.update(picks)
                log.append(
                    f"face {f.id}: color " + " ".join(str(v) for v in picks)
                )
                colored = close_mask(masks, mask_of(manual))
                progressed = True
                break
            if not progressed:
                log.append(f"dead end from face {f0.id}")
                return None
        if len(manual) != bd.n - 1:
            log.append(
                f"witness from face {f0.id} has {len(manual)} vertices, "
                f"expected {bd.n - 1}"
            )
            return None
        return manual

    # A start face whose corners all lie on distinct circles matches the
    # generic picture ("m vertices, m circle components"); try those first,
    # then every remaining start before conceding.
    def generic(f) -> bool:
        circles = {
            c for v in f.distinct_vertices for c in bd.circles_of_vertex[v - 1]
        }
        return (
            len(f.vertex_list) == len(f.distinct_vertices) == len(circles)
        )

    ordered = [f for f in base_faces if generic(f)] + [
        f for f in base_faces if not generic(f)
    ]
    log: list[str] = []
    for f0 in ordered:
        manual = attempt(f0, log)
        if manual is not None:
            return HullResult(
                len(manual),
                tuple(sorted(manual)),
                "constructive",
                True,
                0,
                tuple(log),
            )
    raise ConstructionStuck(
        "every start face led to a dead end", tuple(log)
    )
