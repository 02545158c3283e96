"""Combinatorial maps: darts, rotations, faces and strands.

A map on an oriented surface is stored as a pair of permutations of the darts
1..2E: ``alpha`` (a fixed-point-free involution swapping the two darts of each
edge) and ``sigma`` (the counterclockwise rotation of darts around each
vertex).  Faces are the orbits of phi = sigma o alpha; with this convention
the face traced from a dart lies on the right-hand side when walking the dart
away from its vertex.  Euler's formula V - E + F = 2 - 2g ties the orbit
counts to the genus of the supporting surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CmapFormatError, GenusMismatch, MalformedPermutation, OddEuler


def cycles_of_images(images: Sequence[int]) -> list[tuple[int, ...]]:
    """Decompose a permutation given as a 1-based image array into cycles.

    Each cycle is rotated to start at its smallest element and cycles are
    sorted by that element, so the output is canonical.
    """
    n = len(images)
    seen = [False] * (n + 1)
    cycles: list[tuple[int, ...]] = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        d = images[start - 1]
        while d != start:
            if not 1 <= d <= n or seen[d] or len(cyc) > n:
                raise MalformedPermutation("image array is not a permutation")
            cyc.append(d)
            seen[d] = True
            d = images[d - 1]
        cycles.append(tuple(cyc))
    return cycles


def images_from_cycles(cycles: Iterable[Sequence[int]], n: int) -> tuple[int, ...]:
    """Build a 1-based image array from cycles; unmentioned darts are fixed."""
    images = list(range(1, n + 1))
    used = set()
    for cyc in cycles:
        for i, d in enumerate(cyc):
            if not 1 <= d <= n:
                raise MalformedPermutation(f"dart {d} outside 1..{n}")
            if d in used:
                raise MalformedPermutation(f"dart {d} appears in two cycles")
            used.add(d)
            images[d - 1] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse cycle notation like ``"(1 2)(3 4)"`` into an image array."""
    body = text.strip()
    if body in ("", "()"):
        return tuple(range(1, n + 1))
    if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\))+", body):
        raise MalformedPermutation(f"bad cycle notation: {text!r}")
    cycles = [
        tuple(int(tok) for tok in grp.split())
        for grp in re.findall(r"\(([^()]*)\)", body)
    ]
    return images_from_cycles(cycles, n)


def format_cycles(images: Sequence[int], keep_fixed: bool = False) -> str:
    parts = []
    for cyc in cycles_of_images(images):
        if len(cyc) == 1 and not keep_fixed:
            continue
        parts.append("(" + " ".join(str(d) for d in cyc) + ")")
    return "".join(parts) if parts else "()"


@dataclass(frozen=True)
class CombinatorialMap:
    """An embedded graph given by its rotation system.

    ``alpha`` and ``sigma`` are image arrays: entry d-1 holds the image of
    dart d.  ``declared_genus`` is the genus the map claims to live on; it is
    checked against Euler's formula by :func:`validate`.
    """

    dart_count: int
    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    declared_genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        n = self.dart_count
        if n < 0 or n % 2:
            raise MalformedPermutation(f"dart count must be even and >= 0, got {n}")
        for name, images in (("alpha", self.alpha), ("sigma", self.sigma)):
            if len(images) != n:
                raise MalformedPermutation(
                    f"{name} lists {len(images)} images for {n} darts"
                )
            hit = [False] * n
            for d in images:
                if not isinstance(d, int) or not 1 <= d <= n:
                    raise MalformedPermutation(f"{name} image {d!r} outside 1..{n}")
                if hit[d - 1]:
                    raise MalformedPermutation(f"{name} maps two darts to {d}")
                hit[d - 1] = True
        for d in range(1, n + 1):
            img = self.alpha[d - 1]
            if img == d or self.alpha[img - 1] != d:
                raise MalformedPermutation(
                    f"alpha must pair dart {d} with a distinct partner"
                )
        if self.declared_genus < 0:
            raise GenusMismatch(f"declared genus {self.declared_genus} is negative")

    @classmethod
    def from_cycles(
        cls,
        dart_count: int,
        sigma: str,
        alpha: str,
        genus: int = 0,
    ) -> "CombinatorialMap":
        """Convenience constructor from cycle-notation strings."""
        return cls(
            dart_count,
            parse_cycles(alpha, dart_count),
            parse_cycles(sigma, dart_count),
            genus,
        )

    def alpha_of(self, d: int) -> int:
        return self.alpha[d - 1]

    def sigma_of(self, d: int) -> int:
        return self.sigma[d - 1]

    def phi_of(self, d: int) -> int:
        return self.sigma[self.alpha[d - 1] - 1]

    @cached_property
    def vertex_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Sigma orbits, canonically ordered; vertex ids are 1-based indexes."""
        return tuple(cycles_of_images(self.sigma))

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """vertex_of[d-1] = id of the vertex dart d is attached to."""
        out = [0] * self.dart_count
        for vid, cyc in enumerate(self.vertex_cycles, start=1):
            for d in cyc:
                out[d - 1] = vid
        return tuple(out)

    @cached_property
    def edge_pairs(self) -> tuple[tuple[int, int], ...]:
        """Alpha orbits as (low dart, high dart), sorted by low dart."""
        return tuple(
            (cyc[0], cyc[1] if len(cyc) > 1 else cyc[0])
            for cyc in cycles_of_images(self.alpha)
        )

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.dart_count
        for eid, (a, b) in enumerate(self.edge_pairs, start=1):
            out[a - 1] = eid
            out[b - 1] = eid
        return tuple(out)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_cycles)

    @property
    def edge_count(self) -> int:
        return self.dart_count // 2

    def valence(self, vertex_id: int) -> int:
        return len(self.vertex_cycles[vertex_id - 1])

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted dart tuples, ordered by least dart."""
        n = self.dart_count
        seen = [False] * (n + 1)
        comps = []
        for start in range(1, n + 1):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                d = stack.pop()
                comp.append(d)
                for nxt in (self.alpha[d - 1], self.sigma[d - 1]):
                    if not seen[nxt]:
                        seen[nxt] = True
                        stack.append(nxt)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1


@dataclass(frozen=True)
class Face:
    """One face of a map: a phi orbit with its vertex walk."""

    id: int
    boundary: tuple[int, ...]
    vertex_list: tuple[int, ...]

    @cached_property
    def distinct_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.vertex_list)))

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class Strand:
    """A closed straight-ahead walk: the projection of one curve component.

    ``darts`` alternates an outgoing dart with the matching arrival dart, so
    the tuple covers both darts of every edge the strand runs along.
    """

    id: int
    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class ValidationReport:
    dart_count: int
    vertex_count: int
    edge_count: int
    face_count: int
    genus: int
    component_count: int
    component_genera: tuple[int, ...]
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)


def _component_euler(m: CombinatorialMap, faces_list: tuple[Face, ...]):
    """Per-component (V, E, F, genus) keyed by the component's least dart."""
    out = []
    for comp in m.components:
        comp_set = set(comp)
        v = len({m.vertex_of[d - 1] for d in comp})
        e = len(comp) // 2
        f = sum(1 for face in faces_list if face.boundary[0] in comp_set)
        chi = v - e + f
        if (2 - chi) % 2:
            raise OddEuler(f"component at dart {comp[0]} has odd Euler defect")
        out.append((comp[0], v, e, f, (2 - chi) // 2))
    return out


def validate(
    m: CombinatorialMap,
    component_genera: Sequence[int] | None = None,
    strict: bool = True,
) -> ValidationReport:
    """Check the structural invariants of a map and its declared genus.

    A connected map must satisfy V - E + F = 2 - 2g for the declared genus.
    A disconnected map is read as one sphere per component unless explicit
    per-component genera are supplied (ordered by each component's least
    dart).  With ``strict`` the first failure raises; otherwise the report
    carries the failures.
    """
    checks: list[tuple[str, bool, str]] = []

    def note(name: str, passed: bool, detail: str, exc_type=None):
        checks.append((name, passed, detail))
        if strict and not passed:
            raise (exc_type or MalformedPermutation)(detail)

    n = m.dart_count
    sigma_bij = sorted(m.sigma) == list(range(1, n + 1))
    note("sigma-bijective", sigma_bij, "sigma is not a bijection on the darts")
    alpha_bij = sorted(m.alpha) == list(range(1, n + 1))
    note("alpha-bijective", alpha_bij, "alpha is not a bijection on the darts")
    if not (sigma_bij and alpha_bij):
        return ValidationReport(n, 0, 0, 0, 0, 0, (), tuple(checks))
    inv_ok = all(m.alpha[m.alpha[d - 1] - 1] == d for d in range(1, n + 1))
    fpf_ok = all(m.alpha[d - 1] != d for d in range(1, n + 1))
    note("alpha-involution", inv_ok, "alpha is not an involution")
    note("alpha-fixed-point-free", fpf_ok, "alpha fixes a dart")
    if not (inv_ok and fpf_ok):
        return ValidationReport(n, 0, 0, 0, 0, 0, (), tuple(checks))

    faces_list = faces(m, _checked=True)
    v, e, f = m.vertex_count, m.edge_count, len(faces_list)
    per_comp = _component_euler(m, faces_list)
    genera = tuple(g for _, _, _, _, g in per_comp)
    if len(per_comp) <= 1:
        derived = genera[0] if genera else 0
        note(
            "euler-genus",
            derived == m.declared_genus,
            f"declared genus {m.declared_genus} but V-E+F = {v - e + f} "
            f"gives genus {derived}",
            GenusMismatch,
        )
        total_genus = derived
    else:
        expected = tuple(component_genera) if component_genera is not None else (0,) * len(per_comp)
        if len(expected) != len(per_comp):
            note(
                "euler-genus",
                False,
                f"{len(per_comp)} components but {len(expected)} genera supplied",
                GenusMismatch,
            )
        else:
            note(
                "euler-genus",
                genera == expected,
                f"per-component genera {genera} do not match expected {expected}",
                GenusMismatch,
            )
        total_genus = sum(genera)
    return ValidationReport(
        n, v, e, f, total_genus, len(per_comp), genera, tuple(checks)
    )


def faces(m: CombinatorialMap, _checked: bool = False) -> tuple[Face, ...]:
    """Faces as orbits of phi = sigma o alpha, ids ordered by least dart."""
    if not _checked:
        validate(m)
    phi = tuple(m.sigma[a - 1] for a in m.alpha)
    out = []
    for fid, cyc in enumerate(cycles_of_images(phi), start=1):
        out.append(Face(fid, cyc, tuple(m.vertex_of[d - 1] for d in cyc)))
    return tuple(out)


def derived_genus(m: CombinatorialMap) -> int:
    """Genus from Euler's formula; the map must be connected."""
    f = len(faces(m, _checked=True))
    chi = m.vertex_count - m.edge_count + f
    if (2 - chi) % 2:
        raise OddEuler("odd Euler defect")
    return (2 - chi) // 2


def _opposite(m: CombinatorialMap, d: int) -> int:
    """The dart opposite d in its vertex rotation; valence must be 2 or 4."""
    val = len(m.vertex_cycles[m.vertex_of[d - 1] - 1])
    if val == 2:
        return m.sigma[d - 1]
    if val == 4:
        return m.sigma[m.sigma[d - 1] - 1]
    from .errors import BadValence

    raise BadValence(
        f"vertex {m.vertex_of[d - 1]} has valence {val}; strands need 2 or 4"
    )


def strands(m: CombinatorialMap) -> tuple[Strand, ...]:
    """Straight-ahead walks through 4-valent vertices (2-valent pass through).

    The walks partition the darts; each strand is the projection of one
    closed curve.  Ids are ordered by the least dart on the strand.
    """
    validate(m)
    n = m.dart_count
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        walk: list[int] = []
        d = start
        while True:
            arrive = m.alpha[d - 1]
            walk.append(d)
            walk.append(arrive)
            seen[d] = True
            seen[arrive] = True
            d = _opposite(m, arrive)
            if d == start:
                break
        if len(set(walk)) != len(walk):
            raise MalformedPermutation(
                f"strand from dart {start} repeats a dart; rotation system is twisted"
            )
        out.append(Strand(len(out) + 1, tuple(walk)))
    return tuple(out)


@dataclass(frozen=True)
class Incidence:
    """Vertex/face incidence: which distinct vertices lie on which face."""

    vertices_of_face: tuple[tuple[int, ...], ...]
    faces_of_vertex: tuple[tuple[int, ...], ...]


def vertex_face_incidence(m: CombinatorialMap) -> Incidence:
    fs = faces(m)
    per_face = tuple(f.distinct_vertices for f in fs)
    per_vertex: list[list[int]] = [[] for _ in range(m.vertex_count)]
    for f in fs:
        for v in f.distinct_vertices:
            per_vertex[v - 1].append(f.id)
    return Incidence(per_face, tuple(tuple(lst) for lst in per_vertex))


# ---------------------------------------------------------------------------
# Text format.  Line oriented:
#
#   cmap v1
#   genus 0
#   darts 6
#   alpha 2 1 4 3 6 5
#   sigma 2 1 4 3 6 5
#
# '#' starts a comment; directives may not repeat.

FORMAT_HEADER = "cmap v1"


def parse_cmap(text: str) -> CombinatorialMap:
    """Parse the .cmap text format, reporting errors with line numbers."""
    header_seen = False
    fields: dict[str, tuple[int, list[str]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != FORMAT_HEADER:
                raise CmapFormatError(
                    f"line {lineno}: expected '{FORMAT_HEADER}' header, got {line!r}"
                )
            header_seen = True
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        if key not in ("genus", "darts", "alpha", "sigma"):
            raise CmapFormatError(f"line {lineno}: unknown directive {key!r}")
        if key in fields:
            raise CmapFormatError(f"line {lineno}: duplicate directive {key!r}")
        fields[key] = (lineno, args)
    if not header_seen:
        raise CmapFormatError("line 1: missing 'cmap v1' header")
    for key in ("darts", "alpha", "sigma"):
        if key not in fields:
            raise CmapFormatError(f"line {len(text.splitlines()) or 1}: missing directive {key!r}")

    def as_int(key: str, token: str) -> int:
        lineno = fields[key][0]
        try:
            return int(token)
        except ValueError:
            raise CmapFormatError(f"line {lineno}: {key} value {token!r} is not an integer")

    lineno, args = fields["darts"]
    if len(args) != 1:
        raise CmapFormatError(f"line {lineno}: darts takes one value")
    n = as_int("darts", args[0])
    if n < 0 or n % 2:
        raise CmapFormatError(f"line {lineno}: dart count {n} must be even and >= 0")

    genus = 0
    if "genus" in fields:
        lineno, args = fields["genus"]
        if len(args) != 1:
            raise CmapFormatError(f"line {lineno}: genus takes one value")
        genus = as_int("genus", args[0])
        if genus < 0:
            raise CmapFormatError(f"line {lineno}: genus {genus} is negative")

    perms = {}
    for key in ("alpha", "sigma"):
        lineno, args = fields[key]
        if len(args) != n:
            raise CmapFormatError(
                f"line {lineno}: {key} lists {len(args)} images for {n} darts"
            )
        images = [as_int(key, tok) for tok in args]
        for img in images:
            if not 1 <= img <= n:
                raise CmapFormatError(
                    f"line {lineno}: {key} image {img} outside 1..{n}"
                )
        perms[key] = tuple(images)
    return CombinatorialMap(n, perms["alpha"], perms["sigma"], genus)


def format_cmap(m: CombinatorialMap) -> str:
    lines = [
        FORMAT_HEADER,
        f"genus {m.declared_genus}",
        f"darts {m.dart_count}",
        "alpha " + " ".join(str(d) for d in m.alpha),
        "sigma " + " ".join(str(d) for d in m.sigma),
    ]
    return "\n".join(lines) + "\n"


def load_cmap(path) -> CombinatorialMap:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cmap(fh.read())


def save_cmap(m: CombinatorialMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_cmap(m))
