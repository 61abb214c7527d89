"""
Crossings inside tubes

A tube is charted as [0, 1] x (R/Z): x runs from its first port to its
second, s follows the ring. The strand at ring index k of n sits at
theta = (k + 1/2) / n at both ends and is the line s = theta + t*x, t its
twist. Panels carry no crossings, so every red-blue intersection of the
diagram is counted here.
"""

import logging
from fractions import Fraction
from math import floor

from pydantic import BaseModel, ConfigDict

from algebra.exact_linalg import IntMatrix, cokernel
from utils.errors import CompileError

logger = logging.getLogger(__name__)


class StrandGeometry(BaseModel):
    """One strand of a tube, normalized to the tube's direction"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    strand: str
    curve: str
    color: str
    theta_in: Fraction
    theta_out: Fraction
    twist: int = 0
    # +1 when the curve runs from the first port to the second
    direction: int = 1

    @property
    def winding(self):
        return self.twist + self.theta_out - self.theta_in


class CrossingRecord(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tube: str
    red_strand: str
    blue_strand: str
    red_curve: str
    blue_curve: str
    position: Fraction
    sign: int


def station_theta(index, size):
    return Fraction(2 * index + 1, 2 * size)


def _offsets(s1, s2):
    if s1.theta_in == s2.theta_in or s1.theta_out == s2.theta_out:
        raise CompileError(f"strands {s1.strand} and {s2.strand} share a station")
    u = s1.theta_in - s2.theta_in
    return u, u + (s1.winding - s2.winding)


def annulus_crossings(s1, s2):
    """
    Algebraic intersection number of two strands of one annulus

    Returns:
        int: direction(s1) * direction(s2) * (floor(v) - floor(u))

    Raises:
        CompileError: the strands share a station
    """
    u, v = _offsets(s1, s2)
    return s1.direction * s2.direction * (floor(v) - floor(u))


def geometric_crossings(s1, s2):
    u, v = _offsets(s1, s2)
    return abs(floor(v) - floor(u))


def crossing_positions(s1, s2):
    """x coordinates of the crossings, increasing"""
    u, v = _offsets(s1, s2)
    lo, hi = sorted((u, v))
    return sorted(Fraction(k - u) / (v - u) for k in range(floor(lo) + 1, floor(hi) + 1))


def tube_strands(diagram):
    """
    Strand geometry per tube, in ring order

    Returns:
        dict: tube id -> list[StrandGeometry]
    """
    passes = {}
    for c in diagram.curves:
        for s in c.passes:
            passes[s.strand] = (c, s)
    out = {}
    for t in diagram.tubes:
        n = len(t.stations)
        strands = []
        for k, strand in enumerate(t.stations):
            if strand not in passes:
                raise CompileError(f"tube '{t.id}' lists strand '{strand}' that no curve passes")
            curve, seg = passes[strand]
            theta = station_theta(k, n)
            strands.append(
                StrandGeometry(
                    strand=strand,
                    curve=curve.id,
                    color=curve.color,
                    theta_in=theta,
                    theta_out=theta,
                    twist=seg.twist,
                    direction=1 if seg.direction == "forward" else -1,
                )
            )
        out[t.id] = strands
    return out


def crossing_census(diagram):
    """
    Every red-blue crossing, tube by tube, ordered by position

    Raises:
        CompileError: two strands of the same colour cross
    """
    records = []
    for tube_id, strands in tube_strands(diagram).items():
        for i, a in enumerate(strands):
            for b in strands[i + 1 :]:
                if a.color == b.color:
                    if geometric_crossings(a, b):
                        raise CompileError(f"{a.color} strands {a.strand} and {b.strand} cross in tube '{tube_id}'")
                    continue
                blue, red = (a, b) if a.color == "blue" else (b, a)
                u, v = _offsets(blue, red)
                sign = blue.direction * red.direction * (1 if v > u else -1)
                for x in crossing_positions(blue, red):
                    records.append(
                        CrossingRecord(
                            tube=tube_id,
                            red_strand=red.strand,
                            blue_strand=blue.strand,
                            red_curve=red.curve,
                            blue_curve=blue.curve,
                            position=x,
                            sign=sign,
                        )
                    )
    records.sort(key=lambda r: (r.tube, r.position, r.red_strand, r.blue_strand))
    return records


def tube_crossing_counts(diagram):
    """tube id -> number of crossings inside it"""
    counts = {t.id: 0 for t in diagram.tubes}
    for r in crossing_census(diagram):
        counts[r.tube] += 1
    return counts


def total_crossings(diagram):
    return len(crossing_census(diagram))


def relation_matrix(diagram):
    """
    Algebraic intersections of the blue curves (rows) with the red curves (columns)

    Returns:
        IntMatrix: G x G
    """
    reds = {c.id: i for i, c in enumerate(diagram.red_curves())}
    blues = {c.id: j for j, c in enumerate(diagram.blue_curves())}
    rows = [[0] * len(reds) for _ in blues]
    for strands in tube_strands(diagram).values():
        for b in strands:
            if b.color != "blue":
                continue
            for r in strands:
                if r.color == "red":
                    rows[blues[b.curve]][reds[r.curve]] += annulus_crossings(b, r)
    logger.debug("relation matrix %s", rows)
    if not rows:
        return IntMatrix.zeros(0, 0)
    return IntMatrix.from_rows(rows)


def h1_from_diagram(diagram):
    """First homology of the manifold presented by the diagram"""
    return cokernel(relation_matrix(diagram))
