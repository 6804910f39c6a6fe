"""Constructive search for a point on at least ceil(n/2) spanned lines.

Applies to configurations covered by three lines through a common apex. The
search never enumerates all points: it follows a fixed case analysis on the
six half-lines around the apex, and every claim it relies on is re-checked on
the data as it goes (see `Step` tags starting with ``Fact``). The returned
count is recomputed independently at the end.

Internally all geometry happens in the structure's chart, where the apex and
every point are finite, so "nearest to the apex", open segments and parallel
lines have their usual Euclidean meaning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .configuration import Configuration
from .errors import CertificateMismatch, CollinearInput, WrongCase
from .incidence import dirac_threshold, incidence_count, line_members
from .kernel import ProjLine, ProjPoint, apply, apply_dual, direction, incident, join, meet
from .structure import LABELS, ConcurrentStructure, cyclic_rays, ray_parameter, validate_structure

__all__ = [
    "Step",
    "WitnessResult",
    "find_ordinary_point",
    "case_non_successive",
    "case_successive",
    "case_a",
    "case_b",
    "case_c",
]


def _ceil_half(m: int) -> int:
    return -((-m) // 2)


@dataclass
class Step:
    tag: str
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"tag": self.tag}
        for k, v in self.details.items():
            out[k] = _plain(v)
        return out


def _plain(v):
    if isinstance(v, Step):
        return v.as_dict()
    if isinstance(v, (ProjPoint, ProjLine)):
        return [str(c) for c in v]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


@dataclass(frozen=True)
class WitnessResult:
    point: ProjPoint
    count: int
    bound: int
    n: int
    threshold: int
    case_trace: tuple[Step, ...]

    def trace_dicts(self) -> list[dict]:
        return [s.as_dict() for s in self.case_trace]


class _Frame:
    """Six rays around a finite apex in chart coordinates, with a relabeling.

    ``perm[k]`` is the index (into the structure's p1..r2 order) of the ray
    currently playing the role ``LABELS[k]``.
    """

    def __init__(self, apex, rays, perm, back, inverse, cache):
        self.apex = apex
        self._rays = rays  # (chart line, direction vector) in structure order
        self.perm = perm
        self._back = back  # chart point -> original point
        self._inverse = inverse
        self._cache = cache  # chart point -> (structure ray index, parameter)

    @classmethod
    def from_structure(cls, S: ConcurrentStructure, X: Configuration):
        T = S.chart
        A = apply(T, S.apex)
        lines = [apply_dual(T, l) for l in S.lines]
        rays = []
        for i, side in cyclic_rays(A, lines):
            dx, dy = direction(lines[i])
            rays.append((lines[i], (side * dx, side * dy)))
        back = {apply(T, P): P for P in X.points}
        back.setdefault(A, S.apex)
        frame = cls(A, rays, list(range(6)), back, T.inverse(), {})
        return frame, [apply(T, P) for P in X.points]

    def relabel(self, perm: Sequence[int]) -> "_Frame":
        return _Frame(self.apex, self._rays, [self.perm[i] for i in perm], self._back, self._inverse, self._cache)

    def rotate(self, shift: int) -> "_Frame":
        return self.relabel([(k + shift) % 6 for k in range(6)])

    def reflect(self) -> "_Frame":
        return self.relabel([(1 - k) % 6 for k in range(6)])

    @property
    def names(self) -> list[str]:
        return [LABELS[i] for i in self.perm]

    def roles(self) -> dict[str, str]:
        return dict(zip(LABELS, self.names))

    def original(self, P: ProjPoint) -> ProjPoint:
        if P in self._back:
            return self._back[P]
        return apply(self._inverse, P)

    def line(self, k: int) -> ProjLine:
        return self._rays[self.perm[k]][0]

    def locate(self, P: ProjPoint) -> Optional[tuple[int, Fraction]]:
        """(slot, distance parameter) of P under the current labels; None for the apex."""
        if P == self.apex:
            return None
        hit = self._cache.get(P)
        if hit is None:
            for i, (l, vec) in enumerate(self._rays):
                if incident(P, l):
                    t = ray_parameter(self.apex, vec, P)
                    if t > 0:
                        hit = (i, t)
                        break
            else:
                raise WrongCase(f"{P!r} is not on any carrier half-line")
            self._cache[P] = hit
        return self.perm.index(hit[0]), hit[1]

    def on_ray(self, pts, k: int) -> list[ProjPoint]:
        out = []
        for P in pts:
            loc = self.locate(P)
            if loc is not None and loc[0] == k:
                out.append((loc[1], P))
        return [P for _, P in sorted(out)]

    def anchor(self, pts, k: int) -> Optional[ProjPoint]:
        ray = self.on_ray(pts, k)
        return ray[0] if ray else None


def _on_line(pts, l: ProjLine) -> list[ProjPoint]:
    return [P for P in pts if incident(P, l)]


def _assert_ordinary(pts, lines, fact: str, trace) -> None:
    for l in lines:
        k = len(_on_line(pts, l))
        if k != 2:
            raise CertificateMismatch(f"fact ({fact}) violated: a line expected to be ordinary holds {k} points")
    trace.append(Step(f"Fact({fact})", {"lines_checked": len(lines)}))


def _result(frame, pts, point, bound, tag, trace, **details):
    n = len(pts)
    thr = dirac_threshold(n)
    if bound < thr:
        raise CertificateMismatch(f"{tag}: proof bound {bound} is below ceil({n}/2) = {thr}")
    trace.append(Step(tag, {"witness": frame.original(point), "bound": bound, **details}))
    return point, bound


# Every engine routine takes (frame, pts) with pts in chart coordinates and
# returns (witness in chart coordinates, certified lower bound).


def _non_successive(frame: _Frame, pts, trace):
    thr = dirac_threshold(len(pts))
    populated = {k for k in range(6) if frame.on_ray(pts, k)}
    if populated <= {0, 2, 4}:
        base = 0
    elif populated <= {1, 3, 5}:
        base = 1
    else:
        return None
    for shift in (base, base + 2, base + 4):
        if {shift % 6, (shift + 2) % 6} <= populated:
            break
    else:
        raise CollinearInput(frame.line(base), "at most one half-line is populated")
    f = frame.rotate(shift)
    a_in = f.apex in pts
    p1, r1, q2 = f.on_ray(pts, 0), f.on_ray(pts, 2), f.on_ray(pts, 4)
    trace.append(Step("NonSuccessive", {"roles": {"p1": f.names[0], "r1": f.names[2], "q2": f.names[4]},
                                        "sizes": [len(p1), len(r1), len(q2)], "apex_in_X": a_in}))
    if len(p1) >= thr:
        W = r1[0]
        bound = len(p1) + len(q2) + (1 if a_in or len(r1) >= 2 else 0)
        branch = "p1-heavy"
    else:
        W = p1[0]
        bound = len(r1) + len(q2) + (1 if a_in or len(p1) >= 2 else 0)
        branch = "p1-light"
    own = join(f.apex, W)
    _assert_ordinary(pts, [l for l in {join(W, Q) for Q in pts if Q != W} if l != own], "alternating", trace)
    return _result(f, pts, W, bound, "NonSuccessiveWitness", trace, branch=branch)


def _successive(frame: _Frame, pts, trace):
    """Proof path once rays 0 and 1 (p1, q1) are both populated."""
    A = frame.apex
    a_in = A in pts
    P1, Q1 = frame.anchor(pts, 0), frame.anchor(pts, 1)
    if P1 is None or Q1 is None:
        raise WrongCase("p1 and q1 must both be populated")
    p, q, r = frame.line(0), frame.line(1), frame.line(2)
    on_p, on_q, on_r = _on_line(pts, p), _on_line(pts, q), _on_line(pts, r)
    p_sp, q_sp = len(on_p) >= 2, len(on_q) >= 2
    trace.append(Step("Successive", {"roles": frame.roles(), "P1": frame.original(P1), "Q1": frame.original(Q1),
                                     "p_spanned": p_sp, "q_spanned": q_sp}))
    if not p_sp and not q_sp:
        B = meet(join(P1, Q1), r)
        bound = len(on_r) + (0 if B in pts else 1)
        return _result(frame, pts, P1, bound, "ShortcutUnspanned", trace)
    if q_sp and not p_sp:
        a, b = len(on_q), len(on_r)
        if a == b:
            return _result(frame, pts, Q1, b + 1, "ShortcutQSpanned", trace, sizes=[a, b])
        return _result(frame, pts, P1, max(a, b), "ShortcutQSpanned", trace, sizes=[a, b])
    if p_sp and not q_sp:
        a, b = len(on_p), len(on_r)
        if a == b:
            return _result(frame, pts, P1, b + 1, "ShortcutPSpanned", trace, sizes=[a, b])
        return _result(frame, pts, Q1, max(a, b), "ShortcutPSpanned", trace, sizes=[a, b])
    trace.append(Step("BothSpanned"))
    B = meet(join(P1, Q1), r)
    if B[2] == 0:
        return _case_c(frame, pts, trace)
    loc = frame.locate(B)
    if loc[0] == 2:
        return _case_a(frame, pts, B, trace)
    if loc[0] == 5:
        return _case_b(frame, pts, trace)
    raise AssertionError(f"P1Q1 meets r at {B!r}, on neither half-line of r")


def _case_a(frame: _Frame, pts, B, trace, tag="CaseA"):
    A = frame.apex
    P1, Q1 = frame.anchor(pts, 0), frame.anchor(pts, 1)
    loc = frame.locate(B) if B[2] != 0 else None
    if loc is None or loc[0] != 2:
        raise WrongCase(f"{tag} needs line P1Q1 to cross r1")
    p, q, r = frame.line(0), frame.line(1), frame.line(2)
    tB = loc[1]
    inside = [T for T in frame.on_ray(pts, 2) if frame.locate(T)[1] < tB]
    n = len(pts)
    if not inside:
        rest = [S for S in pts if S not in (A, B, P1, Q1)]
        m_q = sum(1 for S in rest if incident(S, q))
        m_pr = len(rest) - m_q
        fact_ii = [join(Q1, S) for S in pts if S not in (A, P1, B) and (incident(S, p) or incident(S, r))]
        _assert_ordinary(pts, fact_ii, "ii", trace)
        need = _ceil_half(n - 4)
        if m_q >= need:
            return _result(frame, pts, P1, m_q + 2, tag, trace, B=frame.original(B), k=0, branch="q-heavy")
        if m_pr >= need:
            return _result(frame, pts, Q1, m_pr + 2, tag, trace, B=frame.original(B), k=0, branch="pr-heavy")
        raise CertificateMismatch(f"{tag}: neither counting branch fires ({m_q}, {m_pr}, need {need})")

    k = len(inside)
    deleted = set(inside)
    images = []
    for T in inside:
        F = meet(join(Q1, T), p)
        if F[2] == 0:
            images.append(None)  # Q1T parallel to p: T has no image
            continue
        images.append(F)
        if F in pts:
            deleted.add(F)
    reduced = [S for S in pts if S not in deleted]
    if len(reduced) >= n or len(reduced) < n - 2 * k:
        raise CertificateMismatch(f"{tag}: reduced set has {len(reduced)} points from {n} with k = {k}")
    for T in inside:
        for W in (P1, Q1):
            if len(_on_line(reduced, join(W, T))) != 1:
                raise CertificateMismatch(f"{tag}: lifted line through {frame.original(T)!r} is spanned by X'")
    sub: list[Step] = []
    W, sub_bound = _successive(frame, reduced, sub)
    if W not in (P1, Q1):
        raise CertificateMismatch(f"{tag}: recursion returned a point other than P1 or Q1")
    trace.append(Step("Lift", {"k": k, "lines_checked": 2 * k}))
    return _result(
        frame, pts, W, sub_bound + k, tag, trace,
        B=frame.original(B), k=k, reduced_size=len(reduced),
        inside=[frame.original(T) for T in inside],
        images=[frame.original(F) if F is not None else None for F in images],
        removed=sorted(frame.original(S) for S in deleted),
        recursion=sub,
    )


def _case_b(frame: _Frame, pts, trace):
    # Mirror image: swapping p1 <-> q1 and r1 <-> r2 turns case (b) into case (a).
    mirrored = frame.reflect()
    P1, Q1 = mirrored.anchor(pts, 0), mirrored.anchor(pts, 1)
    B = meet(join(P1, Q1), mirrored.line(2))
    trace.append(Step("Mirror", {"roles": mirrored.roles()}))
    return _case_a(mirrored, pts, B, trace, tag="CaseB")


def _case_c(frame: _Frame, pts, trace):
    A = frame.apex
    P1, Q1 = frame.anchor(pts, 0), frame.anchor(pts, 1)
    p, q, r = frame.line(0), frame.line(1), frame.line(2)
    if meet(join(P1, Q1), r)[2] != 0:
        raise WrongCase("CaseC needs line P1Q1 parallel to r")
    r1, r2 = frame.on_ray(pts, 2), frame.on_ray(pts, 5)
    _assert_ordinary(pts, [join(P1, S) for S in r1], "iii", trace)
    _assert_ordinary(pts, [join(Q1, S) for S in r2], "iv", trace)
    m1 = sum(1 for S in pts if S != A and incident(S, q)) + len(r1)
    m2 = sum(1 for S in pts if S != A and incident(S, p)) + len(r2)
    need = _ceil_half(len(pts) - 1)
    if m1 >= need:
        return _result(frame, pts, P1, m1 + 1, "CaseC", trace, branch="q-r1", sizes=[m1, m2])
    if m2 >= need:
        return _result(frame, pts, Q1, m2 + 1, "CaseC", trace, branch="p-r2", sizes=[m1, m2])
    raise CertificateMismatch(f"CaseC: neither branch fires ({m1}, {m2}, need {need})")


def _solve(frame: _Frame, pts, trace):
    hit = _non_successive(frame, pts, trace)
    if hit is not None:
        return hit
    populated = [bool(frame.on_ray(pts, k)) for k in range(6)]
    for k in range(6):
        if populated[k] and populated[(k + 1) % 6]:
            return _successive(frame.rotate(k), pts, trace)
    raise AssertionError("no populated successive pair even though the alternating cover failed")


def _prepare(X: Configuration, S: ConcurrentStructure):
    members = line_members(X.points)
    if len(members) == 1:
        raise CollinearInput(next(iter(members)))
    validate_structure(X, S)
    return _Frame.from_structure(S, X)


def _finish(X: Configuration, frame: _Frame, hit, trace) -> WitnessResult:
    point_chart, bound = hit
    point = frame.original(point_chart)
    count = incidence_count(X.points, point)
    n = X.n
    thr = dirac_threshold(n)
    if count < bound or count < thr:
        raise CertificateMismatch(
            f"witness {point!r} is on {count} spanned lines; proof bound {bound}, threshold {thr}"
        )
    return WitnessResult(point=point, count=count, bound=bound, n=n, threshold=thr, case_trace=tuple(trace))


def find_ordinary_point(X: Configuration, S: ConcurrentStructure) -> WitnessResult:
    """Return a point of X on at least ceil(n/2) lines spanned by X.

    Raises StructureMismatch if S does not describe X, CollinearInput for a
    collinear X and CertificateMismatch if any intermediate claim or the final
    recount fails (which would indicate a bug, never a legitimate outcome).
    """
    frame, pts = _prepare(X, S)
    trace: list[Step] = []
    if not S.chart.is_identity:
        trace.append(Step("Chart", {"matrix": [[str(v) for v in row] for row in S.chart.matrix]}))
    return _finish(X, frame, _solve(frame, pts, trace), trace)


def case_non_successive(X: Configuration, S: ConcurrentStructure) -> Optional[WitnessResult]:
    """Alternating-half-line case; None when no alternating triple covers X."""
    frame, pts = _prepare(X, S)
    trace: list[Step] = []
    hit = _non_successive(frame, pts, trace)
    return None if hit is None else _finish(X, frame, hit, trace)


def case_successive(X: Configuration, S: ConcurrentStructure) -> WitnessResult:
    """Successive-half-line case, using the first populated pair in cyclic order."""
    frame, pts = _prepare(X, S)
    if _non_successive(frame, pts, []) is not None:
        raise WrongCase("X is covered by alternating half-lines")
    trace: list[Step] = []
    populated = [bool(frame.on_ray(pts, k)) for k in range(6)]
    k = next(k for k in range(6) if populated[k] and populated[(k + 1) % 6])
    return _finish(X, frame, _successive(frame.rotate(k), pts, trace), trace)


def _named_case(X, S, which):
    frame, pts = _prepare(X, S)
    if frame.anchor(pts, 0) is None or frame.anchor(pts, 1) is None:
        raise WrongCase("p1 and q1 must both be populated")
    trace: list[Step] = []
    if which == "a":
        P1, Q1 = frame.anchor(pts, 0), frame.anchor(pts, 1)
        hit = _case_a(frame, pts, meet(join(P1, Q1), frame.line(2)), trace)
    elif which == "b":
        P1, Q1 = frame.anchor(pts, 0), frame.anchor(pts, 1)
        B = meet(join(P1, Q1), frame.line(2))
        if B[2] == 0 or frame.locate(B)[0] != 5:
            raise WrongCase("CaseB needs line P1Q1 to cross r2")
        hit = _case_b(frame, pts, trace)
    else:
        hit = _case_c(frame, pts, trace)
    return _finish(X, frame, hit, trace)


def case_a(X: Configuration, S: ConcurrentStructure, B: Optional[ProjPoint] = None) -> WitnessResult:
    """Case (a) on the structure's own labels: line P1Q1 crosses r1 at B."""
    if B is not None:
        P1, Q1 = S.half_line("p1").anchor, S.half_line("q1").anchor
        if P1 is None or Q1 is None or meet(join(P1, Q1), S.half_line("r1").line) != B:
            raise WrongCase(f"{B!r} is not where line P1Q1 meets r")
    return _named_case(X, S, "a")


def case_b(X: Configuration, S: ConcurrentStructure) -> WitnessResult:
    return _named_case(X, S, "b")


def case_c(X: Configuration, S: ConcurrentStructure) -> WitnessResult:
    return _named_case(X, S, "c")
