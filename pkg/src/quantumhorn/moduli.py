"""Witten weights, parabolic dimension counts, semistability and polyrigidity.

A weight system is a list of per-point weight vectors on a bundle of rank m
and degree -e over the projective line.  Its slope is
``(-e + sum of all weights) / m``; a subbundle of rank p and degree -q sitting
in Schubert positions ``K^l`` has slope ``(-q + sum_l sum_{a in K^l} theta^l_a) / p``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from quantumhorn.gw import (
    f_of_N,
    generalized_gw,
    gw_dual,
    reduce_to_trivial,
)
from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    all_indices,
    codim,
    format_rational,
    grassmann_dual,
)

Weights = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeightSystem:
    """Per-point weakly decreasing weights of spread at most one on a bundle of rank n, degree -D."""

    n: int
    D: int
    points: tuple[Weights, ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.n:
                raise ValueError(f"weight vector {p} should have {self.n} entries")
            if any(a < b for a, b in zip(p, p[1:])):
                raise ValueError(f"weights must be weakly decreasing: {p}")
            if p[0] - p[-1] > 1:
                raise ValueError(f"weights at one point may spread by at most 1: {p}")

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def total_weight(self) -> Fraction:
        return sum((sum(p) for p in self.points), Fraction(0))

    @property
    def slope(self) -> Fraction:
        return (-self.D + self.total_weight) / self.n

    def sub_slope(self, q: int, positions: Sequence[Iterable[int]]) -> Fraction:
        parts = [tuple(K) for K in positions]
        p = len(parts[0])
        w = sum((self.points[l][a - 1] for l, K in enumerate(parts) for a in K), Fraction(0))
        return (-q + w) / p

    def to_json(self):
        return [[format_rational(x) for x in p] for p in self.points]


# --------------------------------------------------------------------------
# weights and dimensions

def witten_weights(indices: Sequence[SchubertIndex]) -> tuple[Weights, ...]:
    """``alpha_k = (n - r + k - i_k) / (n - r)`` at every point."""
    out = []
    for I in indices:
        n, r = I.n, I.r
        out.append(tuple(Fraction(n - r + k - i, n - r) for k, i in enumerate(I.elements, start=1)))
    return tuple(out)


def jump_set(theta: Sequence) -> tuple[int, ...]:
    m = len(theta)
    return tuple(a for a in range(1, m + 1) if a == m or theta[a] < theta[a - 1])


def flag_dim(jumps: Sequence[int], n: int) -> int:
    total, prev = 0, 0
    for lam in jumps:
        total += (lam - prev) * (n - lam)
        prev = lam
    return total


def spread(theta: Sequence) -> Fraction:
    return Fraction(theta[0]) - Fraction(theta[-1])


def rotate_weights(theta: Sequence) -> Weights:
    """``(theta_2, ..., theta_m, theta_1 - 1)``: the same moduli problem with degree raised by one."""
    theta = tuple(Fraction(x) for x in theta)
    return theta[1:] + (theta[0] - 1,)


def normalize_data(e: int, points: Sequence[Sequence]) -> tuple[int, tuple[Weights, ...]]:
    """Rotate every point of spread exactly one until all spreads are below one."""
    new_points = []
    for theta in points:
        theta = tuple(Fraction(x) for x in theta)
        while len(theta) > 1 and spread(theta) == 1:
            theta = rotate_weights(theta)
            e -= 1
        new_points.append(theta)
    return e, tuple(new_points)


def weights_moduli_dim(points: Sequence[Sequence]) -> int:
    m = len(points[0])
    return sum(flag_dim(jump_set(p), m) for p in points) - m * m + 1


def moduli_dim(indices: Sequence[SchubertIndex], normalize: bool = False) -> int:
    """``sum_l dim X_{Lambda_l} - r^2 + 1`` for the Witten weights of ``indices``.

    Points whose weights spread by exactly one must be normalised first; pass
    ``normalize=True`` to rotate them automatically.
    """
    points = witten_weights(indices)
    if any(len(p) > 1 and spread(p) == 1 for p in points):
        if not normalize:
            bad = [str(I) for I, p in zip(indices, points) if spread(p) == 1]
            raise ValueError(f"weights at {', '.join(bad)} spread by exactly 1; normalise first")
        _, points = normalize_data(0, points)
    return weights_moduli_dim(points)


def rigidity_weights(jumps: Sequence[int], n: int) -> Weights:
    """Weight ``(n - Lambda_k) / n`` on the k-th block of the flag."""
    out: list[Fraction] = []
    prev = 0
    for lam in jumps:
        out.extend([Fraction(n - lam, n)] * (lam - prev))
        prev = lam
    if prev != n:
        raise ValueError(f"jump set {tuple(jumps)} must end at {n}")
    return tuple(out)


def rigidity_system(points: Sequence[Sequence], D: int) -> WeightSystem:
    m = len(points[0])
    return WeightSystem(m, D, tuple(rigidity_weights(jump_set(p), m) for p in points))


def rigidity_parabolic_weight(points: Sequence[Sequence]) -> Fraction:
    """Total parabolic weight of the rigidity structure; equals ``sum of flag dims / m``."""
    return rigidity_system(points, 0).total_weight


def rigidity_slope_bound(n: int, D: int, r: int) -> Fraction:
    """Upper bound ``1 - D/n - 1/(rn)`` for rank-r subbundles of a rigid structure."""
    return 1 - Fraction(D, n) - Fraction(1, r * n)


# --------------------------------------------------------------------------
# semistability

@dataclass
class SemistabilityReport:
    slope: Fraction
    violated: list[tuple[GwProblem, Fraction]] = field(default_factory=list)
    tight: list[GwProblem] = field(default_factory=list)

    @property
    def semistable(self) -> bool:
        return not self.violated

    def to_json(self):
        return {
            "semistable": self.semistable,
            "slope": format_rational(self.slope),
            "violated": [{"problem": P.canonical(), "sub_slope": format_rational(mu)} for P, mu in self.violated],
            "tight": [P.canonical() for P in self.tight],
        }


def _common_scale(points: Sequence[Sequence[Fraction]]) -> int:
    den = 1
    for p in points:
        for x in p:
            den = math.lcm(den, Fraction(x).denominator)
    return den


def subbundle_candidates(W: WeightSystem, ranks: Iterable[int] | None = None):
    """Yield ``(r, d, indices, lhs - rhs)`` for every Schubert datum whose inequality is tight or violated.

    Uses integer arithmetic: everything is scaled by a common denominator.
    """
    n, s = W.n, W.s
    L = _common_scale(W.points)
    scaled = [[int(x * L) for x in p] for p in W.points]
    total = sum(sum(p) for p in scaled)
    for r in ranks if ranks is not None else range(1, n):
        idx = all_indices(r, n)
        per_point = []
        for p in scaled:
            per_point.append([(sum(p[a - 1] for a in I.elements), codim(I), I) for I in idx])
        base = r * (n - r) - W.D * r
        for combo in itertools.product(*per_point):
            csum = sum(c for _, c, _ in combo)
            num = csum - base
            if num % n:
                continue
            d = num // n
            wsum = sum(w for w, _, _ in combo)
            # n(-dL + wsum) vs r(-DL + total)
            diff = n * (wsum - d * L) - r * (total - W.D * L)
            if diff >= 0:
                yield r, d, tuple(I for _, _, I in combo), Fraction(diff, L * n * r)


def check_semistable(W: WeightSystem, gw_source: Callable[[GwProblem], int] | None = None) -> SemistabilityReport:
    """Evaluate every inequality with generalized GW number 1 against the weights ``W``."""
    gw_source = gw_source or generalized_gw
    report = SemistabilityReport(W.slope)
    for r, d, indices, excess in subbundle_candidates(W):
        P = GwProblem(W.n, r, d, W.D, indices)
        if gw_source(P) != 1:
            continue
        if excess > 0:
            report.violated.append((P, W.slope + excess))
        else:
            report.tight.append(P)
    return report


# --------------------------------------------------------------------------
# extensions

def minimal_extension(sub_weights: Sequence[Sequence], positions: Sequence[SchubertIndex]) -> tuple[Weights, ...]:
    """Extend weights on a rank-r subbundle in positions ``I`` to the whole rank-n bundle, as low as possible."""
    out = []
    for theta, I in zip(sub_weights, positions):
        theta = tuple(Fraction(x) for x in theta)
        if len(theta) != I.r:
            raise ValueError(f"{len(theta)} weights for a position of size {I.r}")
        ext = []
        u = 0  # number of positions at or below j
        for j in range(1, I.n + 1):
            while u < I.r and I.elements[u] < j:
                u += 1
            if u < I.r and I.elements[u] == j:
                ext.append(theta[u])
            elif u == 0:
                ext.append(theta[0])
            elif u == I.r:
                ext.append(theta[0] - 1)
            else:
                ext.append(theta[u])
        out.append(tuple(ext))
    return tuple(out)


# --------------------------------------------------------------------------
# polyrigidity

def is_polyrigid(P: GwProblem, M: int | None = None) -> bool:
    """``f(N) = 1`` for ``1 <= N <= M`` (default ``M = r + 1``)."""
    M = P.r + 1 if M is None else M
    if M < 1:
        raise ValueError("M must be at least 1")
    return all(f_of_N(P, N) == 1 for N in range(1, M + 1))


@dataclass(frozen=True)
class TightDatum:
    p: int
    q: int
    K: tuple[tuple[int, ...], ...]
    rank: int
    degree: int
    branch: str = ""

    def to_json(self):
        return {"p": self.p, "q": self.q, "K": [list(k) for k in self.K],
                "rank": self.rank, "degree": self.degree, "branch": self.branch}


@dataclass
class ModuliReport:
    expected_dim: int
    verdict: str
    polyrigid: bool
    evidence: list[TightDatum] = field(default_factory=list)
    dual_polyrigid: bool | None = None
    dual_evidence: list[TightDatum] = field(default_factory=list)

    def to_json(self):
        out = {
            "expected_dim": self.expected_dim,
            "verdict": self.verdict,
            "polyrigid": self.polyrigid,
            "evidence": [t.to_json() for t in self.evidence],
        }
        if self.dual_polyrigid is not None:
            out["dual_polyrigid"] = self.dual_polyrigid
            out["dual_evidence"] = [t.to_json() for t in self.dual_evidence]
        return out


def tight_subbundles(m: int, e: int, points: Sequence[Weights], first_level_only: bool = True) -> list[TightDatum]:
    """Rigid subbundle data (expected dimension 0, nonzero count) whose slope equals the slope of the bundle.

    Ranks are scanned upwards; with ``first_level_only`` the scan stops after the
    first rank that has any tight datum, returning all data of that rank.
    """
    s = len(points)
    total = sum((sum(p) for p in points), Fraction(0))
    mu = (-e + total) / m
    found: list[TightDatum] = []
    for p in range(1, m):
        subsets = list(itertools.combinations(range(1, m + 1), p))
        per_point = [[(sum(pt[a - 1] for a in K), sum(m - p + i - k for i, k in enumerate(K, start=1)), K)
                      for K in subsets] for pt in points]
        base = p * (m - p) - e * p
        for combo in itertools.product(*per_point):
            num = sum(c for _, c, _ in combo) - base
            if num % m:
                continue
            q = num // m
            w = sum(x for x, _, _ in combo)
            if (-q + w) != mu * p:
                continue
            Ks = tuple(K for _, _, K in combo)
            sub = GwProblem(m, p, q, e, tuple(SchubertIndex(m, K) for K in Ks))
            if generalized_gw(sub) != 0:
                found.append(TightDatum(p, q, Ks, m, e))
        if found and first_level_only:
            return found
    return found


def _decide(m: int, e: int, points: tuple[Weights, ...], branch: str, memo: dict, evidence: list) -> bool:
    e, points = normalize_data(e, points)
    key = (m, e, points)
    if key in memo:
        return memo[key]
    if m == 1:
        memo[key] = True
        return True
    tight = tight_subbundles(m, e, points)
    if not tight:
        verdict = weights_moduli_dim(points) == 0
        memo[key] = verdict
        return verdict
    evidence.extend(TightDatum(t.p, t.q, t.K, t.rank, t.degree, branch) for t in tight)
    t = tight[0]
    sub_points = tuple(tuple(pt[a - 1] for a in K) for pt, K in zip(points, t.K))
    quot_points = tuple(tuple(pt[a - 1] for a in range(1, m + 1) if a not in K) for pt, K in zip(points, t.K))
    verdict = (_decide(t.p, t.q, sub_points, branch + "S", memo, evidence)
               and _decide(m - t.p, e - t.q, quot_points, branch + "Q", memo, evidence))
    memo[key] = verdict
    return verdict


def analyse_witten_data(P: GwProblem) -> tuple[int, str, bool, list[TightDatum]]:
    Q = reduce_to_trivial(P)
    points = witten_weights(Q.indices)
    e, normal = normalize_data(Q.d, points)
    dim = weights_moduli_dim(normal)
    evidence: list[TightDatum] = []
    verdict_poly = _decide(Q.r, Q.d, points, "", {}, evidence)
    top = [t for t in evidence if t.branch == ""]
    verdict = "strictly-semistable" if top else "stable-generic"
    return dim, verdict, verdict_poly, evidence


def is_polyrigid_recursive(P: GwProblem, with_dual: bool = True) -> ModuliReport:
    """Decide polyrigidity by splitting off tight rigid subbundles of the Witten data.

    A leaf with no tight subbundle is stable, and is rigid iff its moduli
    dimension is 0.  The report lists every tight datum met on the way; the
    branch string records the path (S = subbundle, Q = quotient).
    """
    value = generalized_gw(P)
    if value != 1:
        raise ValueError(f"{P.canonical()} has intersection number {value}, not 1")
    dim, verdict, poly, evidence = analyse_witten_data(P)
    report = ModuliReport(dim, verdict, poly, evidence)
    if with_dual:
        _, _, dpoly, devidence = analyse_witten_data(gw_dual(P))
        report.dual_polyrigid = dpoly
        report.dual_evidence = devidence
    return report


def moduli_report(P: GwProblem, M: int | None = None) -> dict:
    """Both deciders side by side; the recursive one only runs when the number is 1."""
    value = generalized_gw(P)
    out = {"problem": P.canonical(), "gw": value}
    Q = reduce_to_trivial(P)
    e, pts = normalize_data(Q.d, witten_weights(Q.indices))
    out["expected_dim"] = weights_moduli_dim(pts)
    out["polyrigid_fN"] = value == 1 and is_polyrigid(P, M)
    if value == 1:
        rep = is_polyrigid_recursive(P)
        out.update(rep.to_json())
        out["agree"] = rep.polyrigid == out["polyrigid_fN"]
    else:
        out.update({"verdict": "undetermined", "polyrigid": False, "evidence": []})
        out["agree"] = True
    return out


# --------------------------------------------------------------------------
# witnesses

def quotient_constant(s: int, l: int) -> Fraction:
    """The constant ``c`` with ``s c = 1 / l^2`` added to every quotient weight."""
    return Fraction(1, s * l * l)


@dataclass
class ConstructiveWitness:
    weights: WeightSystem
    constant: Fraction
    l: int
    positions: tuple[SchubertIndex, ...]
    degree: int
    tight_ok: bool
    semistable: bool
    separated: bool
    report: SemistabilityReport

    @property
    def ok(self) -> bool:
        return self.tight_ok and self.semistable and self.separated


class ConstructionInapplicable(ValueError):
    """The constructive witness path does not apply to this record."""


def _separated(points: Sequence[Weights], positions: Sequence[SchubertIndex]) -> bool:
    for pt, I in zip(points, positions):
        inside = [pt[a - 1] for a in I.elements]
        outside = [pt[a - 1] for a in range(1, len(pt) + 1) if a not in I.elements]
        if any(not 0 < abs(x - y) < 1 for x in inside for y in outside):
            return False
    return True


def _candidate_subbundles(P: GwProblem):
    """Subbundles whose Witten weights get extended, in the order they are tried.

    Yields ``(positions, degree, l)``.  First the target itself with the whole
    dual as one factor (l = n - r); then, for each tight rigid subbundle L of
    the dual Witten data of least rank, the annihilator of L, which contains
    the target (l = rank L).
    """
    n = P.n
    yield P.indices, P.d, n - P.r
    D = gw_dual(P)
    Dq = reduce_to_trivial(D)
    if Dq.indices != D.indices:
        return
    dual_points = witten_weights(D.indices)
    if any(len(p) > 1 and spread(p) == 1 for p in dual_points):
        return
    tight = tight_subbundles(D.r, Dq.d, dual_points)
    if not tight:
        return
    least = min(t.p for t in tight)
    for t in sorted((t for t in tight if t.p == least), key=lambda t: t.K, reverse=True):
        positions = []
        for J, K in zip(D.indices, t.K):
            positions.append(grassmann_dual(SchubertIndex(n, tuple(J.elements[k - 1] for k in K))))
        yield tuple(positions), P.D + t.q, t.p


def _build_witness(P: GwProblem, positions, degree: int, l: int) -> ConstructiveWitness:
    base = minimal_extension(witten_weights(positions), positions)
    c = quotient_constant(P.s, l)
    pts = []
    for pt, I in zip(base, positions):
        pts.append(tuple(x if a in I.elements else x + c for a, x in enumerate(pt, start=1)))
    W = WeightSystem(P.n, P.D, tuple(pts))
    report = check_semistable(W)
    target_slope = W.sub_slope(P.d, [I.elements for I in P.indices])
    return ConstructiveWitness(
        weights=W,
        constant=c,
        l=l,
        positions=tuple(positions),
        degree=degree,
        tight_ok=target_slope == W.slope,
        semistable=report.semistable,
        separated=_separated(W.points, positions),
        report=report,
    )


def constructive_witness(P: GwProblem) -> ConstructiveWitness:
    """Weights on the ambient bundle under which the target is tight, with separated weights.

    The Witten weights of a subbundle containing the target are extended
    minimally, then ``c = 1 / (s l^2)`` is added to every quotient slot at every
    point.  Candidates are tried in turn and the first that verifies exactly
    (target tight, semistable, separated) is returned.
    """
    if P.D != 0:
        raise ConstructionInapplicable("only trivial ambient bundles are supported")
    tried = []
    for positions, degree, l in _candidate_subbundles(P):
        try:
            w = _build_witness(P, positions, degree, l)
        except ValueError as exc:
            tried.append(str(exc))
            continue
        if w.ok:
            return w
        tried.append(f"l={l} at {','.join(map(str, positions))} does not verify")
    raise ConstructionInapplicable(f"{P.canonical()}: " + "; ".join(tried))
