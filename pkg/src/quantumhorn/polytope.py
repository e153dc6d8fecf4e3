"""The eigenvalue inequalities for products of special-unitary matrices.

A tuple of conjugacy classes ``A_1, ..., A_s`` in SU(n), each given by its
point of ``Delta_{n-1}``, contains matrices with product the identity iff
``sum_l lambda_{I^l}(A_l) - d <= 0`` for every record with intersection
number 1.  This module enumerates those records, classifies them, tests
membership and decides irredundancy with an exact LP.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from quantumhorn.gw import generalized_gw, gw_invariant
from quantumhorn.lp import LE, EQ, LpProblem, LpResult, lp_max
from quantumhorn.moduli import (
    ConstructionInapplicable,
    ConstructiveWitness,
    WeightSystem,
    check_semistable,
    constructive_witness,
    is_polyrigid,
)
from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    all_indices,
    degree_from_cycles,
    format_index,
    format_point,
    lambda_I,
    normalize_weights,
)


@dataclass(frozen=True)
class IneqRecord:
    """``sum_l lambda_{I^l}(A_l) - d <= 0`` together with its classification."""

    r: int
    d: int
    indices: tuple[SchubertIndex, ...]
    gw_value: int
    polyrigid: bool | None = None
    lp_irredundant: bool | None = None

    @property
    def n(self) -> int:
        return self.indices[0].n

    @property
    def s(self) -> int:
        return len(self.indices)

    @property
    def problem(self) -> GwProblem:
        return GwProblem(self.n, self.r, self.d, 0, self.indices)

    @property
    def is_classical(self) -> bool:
        return self.d == 0

    def coefficients(self) -> list[int]:
        """Row of the inequality matrix: n coefficients per point."""
        row = []
        for I in self.indices:
            members = set(I.elements)
            row.extend(1 if t in members else 0 for t in range(1, self.n + 1))
        return row

    def evaluate(self, A: Sequence[Sequence]) -> Fraction:
        """``sum_l lambda_{I^l}(A_l) - d``; positive means violated."""
        return sum((lambda_I(I, a) for I, a in zip(self.indices, A)), Fraction(0)) - self.d

    def key(self) -> str:
        return f"Ineq(d={self.d},r={self.r};" + ",".join(format_index(I.elements) for I in self.indices) + ")"

    def to_json(self):
        return {
            "r": self.r,
            "d": self.d,
            "indices": [format_index(I.elements) for I in self.indices],
            "gw": self.gw_value,
            "polyrigid": self.polyrigid,
            "lp_irredundant": self.lp_irredundant,
        }


def _check_ns(n: int, s: int):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if s < 3:
        raise ValueError(f"need s >= 3 points for a polytope with interior, got {s}")


def enumerate_inequalities(n: int, s: int) -> list[IneqRecord]:
    """Every ordered ``(r, d, I^1..I^s)`` with intersection number exactly 1, in lexicographic order."""
    _check_ns(n, s)
    records = []
    values: dict[tuple, int] = {}
    for r in range(1, n):
        for combo in itertools.product(all_indices(r, n), repeat=s):
            d = degree_from_cycles(combo, 0)
            if d is None:
                continue
            # the number is symmetric in the points
            key = (r, d, tuple(sorted(I.elements for I in combo)))
            if key not in values:
                values[key] = gw_invariant(GwProblem(n, r, d, 0, combo))
            if values[key] == 1:
                records.append(IneqRecord(r, d, tuple(combo), 1))
    return records


def classify(records: Sequence[IneqRecord], M: int | None = None) -> list[IneqRecord]:
    """Set the polyrigid flag; classical records need only ``f(1) = 1``."""
    out = []
    verdicts: dict[tuple, bool] = {}
    for rec in records:
        key = (rec.r, rec.d, tuple(sorted(I.elements for I in rec.indices)))
        if key not in verdicts:
            bound = 1 if rec.is_classical else (M if M is not None else rec.r + 1)
            verdicts[key] = rec.gw_value == 1 and is_polyrigid(rec.problem, bound)
        out.append(replace(rec, polyrigid=verdicts[key]))
    return out


def collapse_orbits(records: Sequence[IneqRecord]) -> list[IneqRecord]:
    """Keep one record per orbit under permutation of the points."""
    seen, out = set(), []
    for rec in records:
        key = (rec.r, rec.d, tuple(sorted(I.elements for I in rec.indices)))
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out


# --------------------------------------------------------------------------
# LP

def simplex_constraints(prob: LpProblem, n: int, s: int):
    """Add the description of ``Delta_{n-1}`` for each of the s points (variables point-major)."""
    for l in range(s):
        base = l * n
        for j in range(n - 1):
            row = [0] * (n * s)
            row[base + j + 1], row[base + j] = 1, -1
            prob.add(row, LE, 0)
        row = [0] * (n * s)
        row[base], row[base + n - 1] = 1, -1
        prob.add(row, LE, 1)
        row = [0] * (n * s)
        for j in range(n):
            row[base + j] = 1
        prob.add(row, EQ, 0)


def region_problem(records: Sequence[IneqRecord], objective: Sequence, n: int, s: int) -> LpProblem:
    prob = LpProblem(n * s, [Fraction(c) for c in objective])
    simplex_constraints(prob, n, s)
    for rec in records:
        prob.add(rec.coefficients(), LE, rec.d)
    return prob


def split_point(x: Sequence[Fraction], n: int, s: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(x[l * n:(l + 1) * n]) for l in range(s))


def lp_deletion(k: int, records: Sequence[IneqRecord]) -> LpResult:
    """Maximize record k's left side over the region cut out by all the other records."""
    target = records[k]
    n, s = target.n, target.s
    others = [rec for i, rec in enumerate(records) if i != k]
    res = lp_max(region_problem(others, target.coefficients(), n, s))
    if res.status == "infeasible":
        raise EmptyRegion("the simplex constraints and the remaining inequalities have no common point")
    return res


class EmptyRegion(ValueError):
    """The LP found no feasible point, which means the configuration is inconsistent."""


def lp_irredundant(k: int, records: Sequence[IneqRecord]) -> bool:
    """True iff deleting record k strictly enlarges the region."""
    res = lp_deletion(k, records)
    if res.status == "unbounded":
        return True
    return res.value > records[k].d


def lp_witness(k: int, records: Sequence[IneqRecord]) -> tuple[tuple[Fraction, ...], ...] | None:
    """A point violating only record k, if k is irredundant."""
    res = lp_deletion(k, records)
    if res.status != "optimal" or res.value <= records[k].d:
        return None
    return split_point(res.point, records[k].n, records[k].s)


def lp_classify(records: Sequence[IneqRecord]) -> list[IneqRecord]:
    return [replace(rec, lp_irredundant=lp_irredundant(k, records)) for k, rec in enumerate(records)]


# --------------------------------------------------------------------------
# membership

@dataclass
class Membership:
    member: bool
    violated: list[int]
    tight: list[int]

    def to_json(self):
        return {"member": self.member, "violated": self.violated, "tight": self.tight}


def in_simplex(a: Sequence[Fraction]) -> bool:
    return (all(x >= y for x, y in zip(a, a[1:])) and a[-1] >= a[0] - 1 and sum(a) == 0)


def membership(A: Sequence[Sequence], records: Sequence[IneqRecord]) -> Membership:
    A = [tuple(Fraction(x) for x in a) for a in A]
    for a in A:
        if not in_simplex(a):
            raise ValueError(f"{format_point(a)} is not a point of the simplex")
    violated, tight = [], []
    for i, rec in enumerate(records):
        if len(A) != rec.s or any(len(a) != rec.n for a in A):
            raise ValueError("point shape does not match the records")
        val = rec.evaluate(A)
        if val > 0:
            violated.append(i)
        elif val == 0:
            tight.append(i)
    return Membership(not violated, violated, tight)


def random_point(n: int, s: int, rng: random.Random, denominator: int = 60) -> tuple[tuple[Fraction, ...], ...]:
    """Sort i.i.d. rationals in [0, 1] with bounded denominators, then remove the mean."""
    out = []
    for _ in range(s):
        t = sorted((Fraction(rng.randint(0, denominator), denominator) for _ in range(n)), reverse=True)
        out.append(normalize_weights(t))
    return tuple(out)


# --------------------------------------------------------------------------
# witnesses

@dataclass
class Witness:
    """Weights under which the target record is the sole failing inequality."""

    record: IneqRecord
    method: str  # "constructive" or "lp"
    point: tuple[tuple[Fraction, ...], ...]
    constructive: ConstructiveWitness | None = None
    note: str = ""

    def weights(self) -> WeightSystem:
        return WeightSystem(self.record.n, 0, self.point)

    def to_json(self):
        out = {
            "record": self.record.to_json(),
            "method": self.method,
            "point": [format_point(a) for a in self.point],
        }
        if self.constructive is not None:
            c = self.constructive
            out["constructive"] = {
                "weights": c.weights.to_json(),
                "constant": str(c.constant),
                "l": c.l,
                "positions": [format_index(I.elements) for I in c.positions],
                "tight": [P.canonical() for P in c.report.tight],
            }
        if self.note:
            out["note"] = self.note
        return out


def _centre(points: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    out = []
    for p in points:
        p = tuple(Fraction(x) for x in p)
        m = sum(p) / len(p)
        out.append(tuple(x - m for x in p))
    return tuple(out)


def witness_weights(record: IneqRecord, records: Sequence[IneqRecord] | None = None,
                    step: Fraction = Fraction(1, 64)) -> Witness:
    """Weights for which the target is tight, then a point where it alone fails.

    The constructive weights put the target on the boundary of the region with
    every inequality satisfied.  Moving a short way toward the LP witness (a
    point that violates only the target) keeps every other inequality valid by
    convexity, so the target becomes the sole violated inequality.
    """
    records = list(records) if records is not None else enumerate_inequalities(record.n, record.s)
    try:
        k = next(i for i, rec in enumerate(records) if rec.indices == record.indices and rec.d == record.d)
    except StopIteration:
        raise ValueError(f"{record.key()} is not among the given records") from None
    far = lp_witness(k, records)
    if far is None:
        raise ValueError(f"{record.key()} is redundant; it has no witness")
    try:
        cw = constructive_witness(record.problem)
    except ConstructionInapplicable as exc:
        return Witness(record, "lp", far, None, str(exc))
    near = _centre(cw.weights.points)
    point = tuple(tuple(x + step * (y - x) for x, y in zip(a, b)) for a, b in zip(near, far))
    return Witness(record, "constructive", point, cw)


def sole_violation(W: WeightSystem, target: IneqRecord) -> bool:
    """``check_semistable`` fails at exactly the target's inequality."""
    rep = check_semistable(W)
    return [P.indices for P, _ in rep.violated] == [target.indices] and rep.violated[0][0].d == target.d


# --------------------------------------------------------------------------
# planes meeting given subspaces in a line

def nori_instance(dims: Sequence[int], W_dim: int) -> IneqRecord:
    """The classical record in Gr(s-1, W) built from subspaces of dimensions ``dims``.

    ``I(a) = {dims[a]} | {W-s+3, ..., W}``; the count of (s-1)-planes meeting
    every given subspace in a line is checked to be 1.
    """
    s = len(dims)
    r = s - 1
    if sum(dims) != W_dim + 1:
        raise ValueError(f"dimensions {tuple(dims)} must add up to {W_dim + 1}")
    if not 1 <= r < W_dim:
        raise ValueError(f"need 1 <= s-1 < {W_dim}, got s={s}")
    if any(not 1 <= v < W_dim for v in dims):
        raise ValueError(f"each dimension must lie in 1..{W_dim - 1}")
    tail = tuple(range(W_dim - s + 3, W_dim + 1))
    indices = []
    for v in dims:
        if tail and v >= tail[0]:
            raise ValueError(f"dimension {v} collides with the fixed block {format_index(tail)}")
        indices.append(SchubertIndex(W_dim, (v,) + tail))
    P = GwProblem(W_dim, r, 0, 0, tuple(indices))
    if P.expected_dim != 0:
        raise ValueError(f"{P.canonical()} has expected dimension {P.expected_dim}")
    value = generalized_gw(P)
    if value != 1:
        raise ValueError(f"{P.canonical()} has intersection number {value}, expected 1")
    return IneqRecord(r, 0, tuple(indices), value)
