"""Turn a hull into two-sided bounds and, when they meet, conclusions.

For a band diagram with n circles the percolation hull can never beat n - 1,
a fact about the underlying surface geometry that this package uses but does
not re-derive.  A verified witness of exactly n - 1 therefore pins three
invariants of the link at once: tunnel number n - 1, splitting genus n, and
group rank n.  A larger witness only gives an interval.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .band import BandDiagram
from .cmap import CombinatorialMap, strands
from .errors import UnverifiedWitness
from .hull import HullResult, verify_witness


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower: int
    upper: int
    witness: tuple[int, ...]
    method: str
    tunnel_number: int | None
    splitting_genus: int | None
    group_rank: int | None
    notes: tuple[str, ...]

    @property
    def conclusive(self) -> bool:
        return self.tunnel_number is not None


def report(subject: BandDiagram | CombinatorialMap, hull: HullResult) -> BoundsReport:
    """Combine a diagram and a hull result into a bounds report.

    The witness is re-verified here regardless of what the producer claims;
    an unverifiable witness raises rather than silently weakening the upper
    bound.
    """
    if isinstance(subject, BandDiagram):
        m = subject.diagram
        n = subject.n
    else:
        m = subject
        n = len(strands(m))
    if not hull.verified:
        raise UnverifiedWitness(
            f"hull result from method {hull.method!r} was never verified"
        )
    if not verify_witness(m, hull.witness):
        raise UnverifiedWitness(
            "witness " + " ".join(str(v) for v in hull.witness) + " does not percolate"
        )
    lower = max(n - 1, 0)
    upper = hull.size
    notes = [
        f"lower bound {lower} is the circle count minus one, a property of "
        "the band surface taken on trust here",
        f"upper bound {upper} is a verified percolating set",
    ]
    if upper < lower:
        notes.append(
            "upper bound undercuts the trusted lower bound; the diagram is "
            "not a band diagram of the expected kind"
        )
    if upper == lower:
        t, g, r = lower, n, n
        notes.append("bounds meet; invariants are pinned")
    else:
        t = g = r = None
        notes.append(f"gap of {upper - lower}; no conclusion")
    return BoundsReport(
        n=n,
        lower=lower,
        upper=upper,
        witness=tuple(hull.witness),
        method=hull.method,
        tunnel_number=t,
        splitting_genus=g,
        group_rank=r,
        notes=tuple(notes),
    )


def format_report(r: BoundsReport) -> str:
    witness = " ".join(str(v) for v in r.witness) if r.witness else "-"
    lines = [
        f"n={r.n}",
        f"lower={r.lower} upper={r.upper} witness={witness} method={r.method}",
    ]
    if r.conclusive:
        lines.append(
            f"tunnel={r.tunnel_number} genus={r.splitting_genus} rank={r.group_rank}"
        )
    else:
        lines.append(f"gap={r.upper - r.lower} no conclusion")
    return "\n".join(lines) + "\n"


def report_to_json(r: BoundsReport) -> str:
    doc = {
        "n": r.n,
        "hull": {
            "size": r.upper,
            "method": r.method,
            "witness": list(r.witness),
        },
        "tunnel": {"lower": r.lower, "upper": r.upper},
        "conclusion": (
            {
                "t": r.tunnel_number,
                "genus": r.splitting_genus,
                "rank": r.group_rank,
            }
            if r.conclusive
            else None
        ),
        "notes": list(r.notes),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
