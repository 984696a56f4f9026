"""Angle bookkeeping at tiling vertices, splitting candidates and side-length relations.

Angles are exact rational multiples of pi and are stored as the rational
coefficient (``Fraction(2, 13)`` means 2 pi / 13).  Targets are 1 for a
vertex on a straight boundary (half vertex) and 2 for a full vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import Point, QuadScalar, sign_of
from .geometry import side_lengths2

HALF, FULL = 1, 2


def parse_target(target) -> int:
    if target in (1, "half", "pi"):
        return HALF
    if target in (2, "full", "2pi"):
        return FULL
    raise ValueError(f"target must be half (pi) or full (2 pi), got {target!r}")


@dataclass(frozen=True)
class AngleSpec:
    """Three angles of a triangle.

    ``rational_pi``: explicit rational multiples of pi.
    ``family``: alpha, k alpha, pi - (k+1) alpha with alpha generic.
    ``two_pi_over_m``: the family member with alpha = 2 pi / m.
    """

    mode: str
    angles: tuple[Fraction, Fraction, Fraction] | None = None
    k: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.mode == "rational_pi":
            angs = tuple(Fraction(a) for a in self.angles)
            if len(angs) != 3 or any(a <= 0 for a in angs) or sum(angs) != 1:
                raise ValueError(f"angles must be positive and sum to pi: {angs}")
            object.__setattr__(self, "angles", angs)
        elif self.mode == "family":
            if self.k is None or self.k < 2:
                raise ValueError("family mode needs an integer k >= 2")
        elif self.mode == "two_pi_over_m":
            if self.k is None or self.m is None or self.k < 1:
                raise ValueError("two_pi_over_m mode needs k and m")
            a = Fraction(2, self.m)
            object.__setattr__(self, "angles", (a, self.k * a, 1 - (self.k + 1) * a))
            if any(x <= 0 for x in self.angles):
                raise ValueError(f"m = {self.m}, k = {self.k} gives a non-positive angle")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def of(cls, *angles) -> AngleSpec:
        return cls("rational_pi", tuple(Fraction(a) for a in angles))


class VertexSignature(NamedTuple):
    d_alpha: int
    d_beta: int
    d_gamma: int
    target: int


def vertex_signatures(spec: AngleSpec, target) -> list[VertexSignature]:
    """All nonnegative (d_alpha, d_beta, d_gamma) with d . angles = target."""
    target = parse_target(target)
    out = []
    if spec.mode == "family":
        # alpha part: d_a + k d_b - (k+1) d_g = 0 ; pi part: d_g = target
        k = spec.k
        dg = target
        for db in range((k + 1) * dg // k + 1):
            da = (k + 1) * dg - k * db
            if da >= 0:
                out.append(VertexSignature(da, db, dg, target))
        return sorted(out)
    a, b, c = spec.angles
    for da in range(int(target / a) + 1):
        rest_a = target - da * a
        for db in range(int(rest_a / b) + 1):
            rest = rest_a - db * b
            if rest % c == 0:
                out.append(VertexSignature(da, db, int(rest / c), target))
    return sorted(out)


@dataclass
class CandidateTrace:
    k: int
    isosceles: str = ""
    rejected: list[tuple[int, str]] = field(default_factory=list)


def splitting_candidates(k: int, trace: CandidateTrace | None = None) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Acute angle triples (sorted, multiples of pi) that survive the counting
    argument for a k-splitting gentiling.

    Scalene branch: alpha = 2/m for odd m, delta = k alpha, phi = 1 - alpha - delta,
    acute, 0 < |phi - delta| < alpha, and five copies of the middle angle fit in
    a full vertex.  Isosceles branch: beta = gamma = k alpha forces 5k <= 2(2k+1).
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if trace is not None:
        ok = 5 * k <= 2 * (2 * k + 1)
        trace.isosceles = f"5k/(2k+1) <= 2 {'holds' if ok else 'fails'} for k={k}"
    out = []
    # phi > 0 needs m > 2k + 2; acuteness needs delta < 1/2, i.e. m > 4k
    for m in range(4 * k + 1, 8 * k + 8, 2):
        alpha = Fraction(2, m)
        delta = k * alpha
        phi = 1 - alpha - delta
        angles = sorted((alpha, delta, phi))
        reason = None
        if phi <= 0:
            reason = "phi <= 0"
        elif angles[2] >= Fraction(1, 2):
            reason = "not acute"
        elif len(set(angles)) < 3:
            reason = "not scalene"
        elif not (0 < abs(phi - delta) < alpha):
            reason = "|phi - delta| outside (0, alpha)"
        elif 5 * angles[1] > 2:
            reason = "5 beta > 2 pi"
        if reason is None:
            out.append(tuple(angles))
        elif trace is not None:
            trace.rejected.append((m, reason))
    return out


# --- side-length relations -------------------------------------------------


class Relation(NamedTuple):
    lhs: int
    lam: int
    mu: int
    nu: int


def _relation_holds(lam, mu, nu, s1, s2, s3, squared: bool) -> bool:
    if not squared:
        return lam * s1 == mu * s2 + nu * s3
    # lam sqrt(s1) = mu sqrt(s2) + nu sqrt(s3)  <=>  x = 2 mu nu sqrt(s2 s3), x >= 0
    x = lam * lam * s1 - mu * mu * s2 - nu * nu * s3
    if sign_of(x) < 0:
        return False
    return x * x == 4 * mu * mu * nu * nu * s2 * s3


def side_relation_search(t, bound: int, squared: bool | None = None) -> list[Relation]:
    """All (lhs, lam, mu, nu) with 1 <= lam, mu, nu <= bound and
    lam * side[lhs] = mu * side[i] + nu * side[j] for the other two sides i < j.

    ``t`` is a tiling, a master (three points) or three side values.  Points
    and tilings use squared side lengths; plain values are side lengths unless
    ``squared`` is set.
    """
    if hasattr(t, "master"):
        t = t.master
    vals = list(t)
    if isinstance(vals[0], Point):
        vals, squared = list(side_lengths2(vals)), True
    vals = [QuadScalar.coerce(v) if not isinstance(v, QuadScalar) else v for v in vals]
    squared = bool(squared)
    out = []
    for lhs in range(3):
        i, j = [x for x in range(3) if x != lhs]
        s1, s2, s3 = vals[lhs], vals[i], vals[j]
        for lam in range(1, bound + 1):
            for mu in range(1, bound + 1):
                for nu in range(1, bound + 1):
                    if _relation_holds(lam, mu, nu, s1, s2, s3, squared):
                        out.append(Relation(lhs, lam, mu, nu))
    return out


# --- obtuse triangles --------------------------------------------------------


@dataclass
class ObtuseVerdict:
    verdict: str  # "impossible", "declined" or "undetermined"
    limiting: str
    corners: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "limiting": self.limiting, "corners": dict(self.corners)}


def obtuse_split_check(angles: Sequence, k: int) -> ObtuseVerdict:
    """Capacity counting for triangles with an angle above 2 pi / 3.

    The gamma angles exactly fill their capacity (two per full vertex, one per
    half vertex, one at a master corner), so the gamma corner cannot be split
    and a k-split must happen at beta with beta = k alpha.  The same counting
    then applies to beta.
    """
    al, be, ga = sorted(Fraction(a) for a in angles)
    if al <= 0 or al + be + ga != 1:
        raise ValueError("angles must be positive and sum to pi")
    if k < 3:
        raise ValueError("k must be at least 3")
    if ga <= Fraction(2, 3):
        return ObtuseVerdict("declined", "largest angle not above 2 pi / 3")
    corners = {}
    # a corner smaller than or equal to every tile angle cannot hold two tile corners
    corners["alpha"] = "angle-sum"
    gamma_full = 3 * ga > 2 and 2 * ga > 1
    corners["gamma"] = "gamma-capacity" if gamma_full else "open"
    if be != k * al:
        corners["beta"] = "angle-sum"
    elif 2 * ga + 3 * be > 2 and ga + 2 * be > 1:
        corners["beta"] = "beta-capacity"
    else:
        corners["beta"] = "open"
    if "open" in corners.values():
        return ObtuseVerdict("undetermined", "capacity bound not tight", corners)
    return ObtuseVerdict("impossible", "gamma-capacity", corners)
