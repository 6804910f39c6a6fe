"""Point-list files and report serialization.

File grammar, one point per line::

    # comment
    x y z      three base-10 integers, homogeneous
    x y        shorthand for x y 1

Blank lines and lines whose first non-space character is ``#`` are skipped.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .configuration import Configuration
from .errors import InvalidHomogeneous, ParseError
from .incidence import IncidenceReport
from .kernel import ProjPoint
from .structure import ConcurrentStructure
from .witness import WitnessResult

__all__ = [
    "parse_config",
    "read_config",
    "write_config",
    "format_point",
    "report_dict",
    "report_text",
    "structure_dict",
    "witness_dict",
    "witness_text",
    "dumps_json",
]

_INT = re.compile(r"-?[0-9]+\Z")


def parse_config(text: str) -> Configuration:
    points: list[ProjPoint] = []
    first_seen: dict[ProjPoint, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 2 or 3 integers, got {len(tokens)} fields", lineno)
        bad = [t for t in tokens if not _INT.match(t)]
        if bad:
            raise ParseError(f"not a base-10 integer: {bad[0]!r}", lineno)
        coords = [int(t) for t in tokens]
        if len(coords) == 2:
            coords.append(1)
        try:
            P = ProjPoint(*coords)
        except InvalidHomogeneous:
            raise ParseError("the triple 0 0 0 is not a point", lineno) from None
        if P in first_seen:
            raise ParseError(f"duplicate point {format_point(P)} (first given on line {first_seen[P]})", lineno)
        first_seen[P] = lineno
        points.append(P)
    if len(points) < 3:
        raise ParseError(f"need at least 3 points, found {len(points)}")
    return Configuration(tuple(points))


def read_config(path) -> Configuration:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_config(text)


def format_point(P: Iterable[int]) -> str:
    return " ".join(str(c) for c in P)


def write_config(X: Configuration, header: Optional[Mapping[str, object]] = None) -> str:
    out = ["# trilines point configuration"]
    for key, value in (header or {}).items():
        out.append(f"# {key}: {value}")
    out.append(f"# n: {X.n}")
    out.extend(format_point(P) for P in X.points)
    return "\n".join(out) + "\n"


def _coords(v) -> list[str]:
    return [str(c) for c in v]


def structure_dict(S: ConcurrentStructure) -> dict:
    return {
        "apex": _coords(S.apex),
        "apex_in_X": S.a_in_x,
        "lines": {"p": _coords(S.p), "q": _coords(S.q), "r": _coords(S.r)},
        "padded": S.padded,
        "half_lines": [
            {
                "label": h.label,
                "line": _coords(h.line),
                "size": len(h.points),
                "anchor": _coords(h.anchor) if h.anchor is not None else None,
            }
            for h in S.half_lines
        ],
    }


def witness_dict(w: WitnessResult) -> dict:
    return {
        "point": _coords(w.point),
        "count": w.count,
        "bound": w.bound,
        "n": w.n,
        "threshold": w.threshold,
        "trace": w.trace_dicts(),
    }


def report_dict(rep: IncidenceReport) -> dict:
    return {
        "n": rep.n,
        "spanned_line_count": len(rep.spanned),
        "t": rep.t,
        "threshold": rep.threshold,
        "dirac": rep.dirac_holds,
        "points": [{"point": _coords(P), "count": c} for P, c in zip(rep.points, rep.counts)],
        "ordinary_points": [_coords(P) for P in rep.ordinary_points],
        "ordinary_line_count": len(rep.ordinary_lines),
        "ordinary_lines": [_coords(l) for l in rep.ordinary_lines],
        "lines": [{"line": _coords(l), "points": rep.points_per_line[l]} for l in rep.spanned],
    }


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def report_text(rep: IncidenceReport) -> str:
    """Tab-delimited report: a key/value block, then a per-point table."""
    rows = [
        f"n\t{rep.n}",
        f"spanned_lines\t{len(rep.spanned)}",
        f"t\t{rep.t}",
        f"threshold\t{rep.threshold}",
        f"dirac\t{'yes' if rep.dirac_holds else 'no'}",
        f"ordinary_points\t{len(rep.ordinary_points)}",
        f"ordinary_lines\t{len(rep.ordinary_lines)}",
        "",
        "x\ty\tz\tcount\tordinary",
    ]
    for P, c in zip(rep.points, rep.counts):
        rows.append(f"{P[0]}\t{P[1]}\t{P[2]}\t{c}\t{'yes' if c >= rep.threshold else 'no'}")
    if rep.ordinary_lines:
        rows += ["", "a\tb\tc\t(ordinary line)"]
        rows += [f"{l[0]}\t{l[1]}\t{l[2]}" for l in rep.ordinary_lines]
    return "\n".join(rows) + "\n"


def witness_text(S: ConcurrentStructure, w: WitnessResult) -> str:
    rows = [
        f"apex\t{format_point(S.apex)}",
        f"apex_in_X\t{'yes' if S.a_in_x else 'no'}",
        f"lines\t{format_point(S.p)} | {format_point(S.q)} | {format_point(S.r)}",
        "half_lines\t" + " ".join(f"{h.label}={len(h.points)}" for h in S.half_lines),
        f"witness\t{format_point(w.point)}",
        f"count\t{w.count}",
        f"bound\t{w.bound}",
        f"threshold\t{w.threshold}",
        "",
        "trace:",
    ]
    for step in w.case_trace:
        d = step.as_dict()
        d.pop("tag")
        d.pop("recursion", None)
        extra = " ".join(f"{k}={_compact(v)}" for k, v in d.items())
        rows.append(f"  {step.tag}" + (f"\t{extra}" if extra else ""))
        for sub in step.details.get("recursion", ()):
            sd = sub.as_dict()
            sd.pop("tag")
            extra = " ".join(f"{k}={_compact(v)}" for k, v in sd.items())
            rows.append(f"    {sub.tag}" + (f"\t{extra}" if extra else ""))
    return "\n".join(rows) + "\n"


def _compact(v) -> str:
    if isinstance(v, list) and v and all(isinstance(c, str) for c in v):
        return "(" + ":".join(v) + ")"
    return json.dumps(v, separators=(",", ":"))

