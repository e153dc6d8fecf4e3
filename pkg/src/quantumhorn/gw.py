"""Classical and quantum intersection numbers on Gr(r, n).

Two independent engines compute ``<sigma_{I^1}, ..., sigma_{I^s}>_d``:

* :func:`gw_invariant` multiplies Schur classes with the LR rule in r
  variables and reduces the overflow by removing n-rim hooks;
* :func:`fusion_oracle` folds su(r) tensor products into the level n-r alcove.

Generalized numbers over a generic ambient bundle of degree -D are reduced to
D = 0 by the shift and twist moves.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from quantumhorn import fusion
from quantumhorn.cache import active_cache
from quantumhorn.lrcalc import Partition, complement, lr_coefficient, lr_product, strip
from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    codim,
    delta,
    grassmann_dual,
    index_to_partition,
    scale_index,
    shift_S,
)

log = logging.getLogger(__name__)

__all__ = [
    "DimensionMismatch",
    "classical_intersection",
    "f_of_N",
    "fusion_oracle",
    "generalized_gw",
    "gw_dual",
    "gw_invariant",
    "horn_nonvanishing",
    "lr_coefficient",
    "quantum_product",
    "rim_hook_reduce",
    "transform_shift",
    "transform_twist",
]


class DimensionMismatch(ValueError):
    """The codimensions do not add up to the dimension of the relevant space."""


def _require_dim_zero(P: GwProblem):
    if P.expected_dim != 0:
        raise DimensionMismatch(
            f"{P.canonical()}: codimension sum {sum(codim(I) for I in P.indices)} "
            f"leaves expected dimension {P.expected_dim}, need 0")


# --------------------------------------------------------------------------
# rim-hook engine

def rim_hook_reduce(lam: Sequence[int], r: int, n: int) -> tuple[int, int, Partition] | None:
    """Reduce a partition with at most r rows into the r x (n-r) box.

    Returns ``(sign, q_degree, partition)`` or None when the class vanishes.
    Each n-rim hook removed contributes a factor ``q`` and the sign
    ``(-1)^(r - height)``.  On the abacus with beads ``lam_a + r - a`` a hook
    is a bead sliding down by n, its height one more than the beads it jumps.
    """
    lam = tuple(lam) + (0,) * (r - len(lam))
    if len(lam) > r:
        return None
    beads = [lam[a] + r - 1 - a for a in range(r)]
    occupied = set(beads)
    sign, degree = 1, 0
    while beads[0] >= n:
        top = beads[0]
        target = top - n
        if target in occupied:
            return None
        jumped = sum(1 for b in beads if target < b < top)
        # height = jumped + 1, sign (-1)^(r - height)
        if (r - 1 - jumped) % 2:
            sign = -sign
        degree += 1
        occupied.remove(top)
        occupied.add(target)
        beads = sorted(occupied, reverse=True)
    return sign, degree, strip(beads[a] - (r - 1 - a) for a in range(r))


@lru_cache(maxsize=None)
def quantum_product(lam: Partition, mu: Partition, r: int, n: int) -> dict[tuple[Partition, int], int]:
    """``sigma_lam * sigma_mu`` in QH*(Gr(r, n)) as ``{(partition, q_degree): coefficient}``."""
    out: dict[tuple[Partition, int], int] = defaultdict(int)
    for nu, c in lr_product(strip(lam), strip(mu), r).items():
        red = rim_hook_reduce(nu, r, n)
        if red is None:
            continue
        sign, deg, rho = red
        out[(rho, deg)] += sign * c
    return {key: c for key, c in out.items() if c}


def _iterated_product(parts: Sequence[Partition], r: int, n: int, max_degree: int):
    current: dict[tuple[Partition, int], int] = {((), 0): 1}
    for lam in parts:
        nxt: dict[tuple[Partition, int], int] = defaultdict(int)
        for (nu, e), c in current.items():
            for (rho, f), m in quantum_product(nu, lam, r, n).items():
                if e + f <= max_degree:
                    nxt[(rho, e + f)] += c * m
        current = {key: c for key, c in nxt.items() if c}
    return current


def _partitions(P: GwProblem) -> list[Partition]:
    # larger classes first keeps intermediate products small
    return sorted((strip(index_to_partition(I)) for I in P.indices), key=lambda p: (-sum(p), p))


def classical_intersection(P: GwProblem) -> int:
    """The s-fold intersection number of Schubert classes in Gr(r, n)."""
    if P.d != 0 or P.D != 0:
        raise ValueError(f"{P.canonical()}: classical numbers need d = D = 0")
    _require_dim_zero(P)
    r, k = P.r, P.n - P.r
    parts = _partitions(P)
    last = complement(parts[-1], r, k)
    if len(parts) == 3:
        return lr_coefficient(parts[0], parts[1], last)
    current: dict[Partition, int] = {(): 1}
    for lam in parts[:-1]:
        nxt: dict[Partition, int] = defaultdict(int)
        for nu, c in current.items():
            for rho, m in lr_product(nu, lam, r, k).items():
                nxt[rho] += c * m
        current = nxt
    return current.get(last, 0)


def gw_invariant(P: GwProblem) -> int:
    """``<sigma_{I^1}, ..., sigma_{I^s}>_d`` for the trivial ambient bundle (D = 0)."""
    if P.D != 0:
        raise ValueError(f"{P.canonical()}: gw_invariant needs D = 0; use generalized_gw")
    _require_dim_zero(P)
    if P.d < 0:
        raise DimensionMismatch(f"{P.canonical()}: negative degree")
    if P.d == 0:
        return classical_intersection(P)
    r, n = P.r, P.n
    parts = _partitions(P)
    target = (complement(parts[-1], r, n - r), P.d)
    return _iterated_product(parts[:-1], r, n, P.d).get(target, 0)


def fusion_oracle(P: GwProblem) -> int:
    """Same number as :func:`gw_invariant`, computed by level n-r su(r) fusion."""
    if P.D != 0:
        raise ValueError(f"{P.canonical()}: fusion_oracle needs D = 0")
    _require_dim_zero(P)
    if P.d < 0:
        raise DimensionMismatch(f"{P.canonical()}: negative degree")
    r, k = P.r, P.n - P.r
    if r == 1:
        return 1
    weights = [fusion.normalize(index_to_partition(I)) for I in P.indices]
    weights[0] = fusion.rotate(weights[0], k, P.d)
    return fusion.trivial_multiplicity(weights, r, k)


# --------------------------------------------------------------------------
# transformations of generalized numbers

def transform_shift(P: GwProblem, direction: int = 1) -> GwProblem:
    """``(d, D) -> (d + r, D + n)``, or its inverse for ``direction = -1``; repeated ``|direction|`` times."""
    return P.with_indices(P.indices, d=P.d + direction * P.r, D=P.D + direction * P.n)


def _twist_index(I: SchubertIndex, m: int) -> tuple[SchubertIndex, int]:
    n = I.n
    moved = sorted((u - m) if u > m else (u - m + n) for u in I.elements)
    return SchubertIndex(n, tuple(moved)), sum(1 for u in I.elements if u <= m)


def transform_twist(P: GwProblem, shifts: Sequence[int]) -> GwProblem:
    """Replace each ``I^l`` by ``I^l - n_l`` cyclically, ``d -> d - sum k_l``, ``D -> D - sum n_l``."""
    if len(shifts) != P.s:
        raise ValueError(f"need one shift per index, got {len(shifts)} for {P.s}")
    if any(not 0 <= m < P.n for m in shifts):
        raise ValueError(f"shifts must lie in 0..{P.n - 1}")
    new, dropped = [], 0
    for I, m in zip(P.indices, shifts):
        J, k = _twist_index(I, m)
        new.append(J)
        dropped += k
    return P.with_indices(new, d=P.d - dropped, D=P.D - sum(shifts))


def reduce_to_trivial(P: GwProblem) -> GwProblem:
    """The canonical D = 0 representative: shift until 0 <= D < n, then twist the first point by D."""
    t = P.D // P.n
    Q = transform_shift(P, -t) if t else P
    if Q.D:
        Q = transform_twist(Q, [Q.D] + [0] * (Q.s - 1))
    return Q


def generalized_gw(P: GwProblem) -> int:
    """``<sigma_{I^1}, ..., sigma_{I^s}>_{d,D,n}`` over the generic bundle of degree -D."""
    _require_dim_zero(P)
    cache = active_cache()
    key = P.canonical()
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    Q = reduce_to_trivial(P)
    if Q.d < 0:
        log.info("%s reduces to %s with negative degree; no subbundles, value 0", key, Q.canonical())
        value = 0
    else:
        value = gw_invariant(Q)
    if cache is not None:
        cache.put(key, value)
    return value


def gw_dual(P: GwProblem) -> GwProblem:
    """The same number seen in Gr(n-r, n): dual indices, degree d - D, ambient degree -D."""
    return GwProblem(P.n, P.n - P.r, P.d - P.D, -P.D, tuple(grassmann_dual(I) for I in P.indices))


def scaled_problem(P: GwProblem, N: int) -> GwProblem:
    """``<sigma_{NI^1}, ..., sigma_{NI^s}>_{d, d + N(D - d), r + N(n - r)}``."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    idx = tuple(scale_index(I, N) for I in P.indices)
    return GwProblem(P.r + N * (P.n - P.r), P.r, P.d, P.d + N * (P.D - P.d), idx)


def f_of_N(P: GwProblem, N: int) -> int:
    _require_dim_zero(P)
    return generalized_gw(scaled_problem(P, N))


# --------------------------------------------------------------------------
# Horn recursion

@lru_cache(maxsize=None)
def _horn(n: int, r: int, d: int, indices: tuple[tuple[int, ...], ...]) -> bool:
    if r == 1:
        return True
    deltas = [delta(SchubertIndex(n, I)) for I in indices]
    deltas[0] = shift_S(deltas[0], d)
    s = len(indices)
    for p in range(1, r):
        subsets = list(itertools.combinations(range(1, r + 1), p))
        sub_codims = {K: sum(r - p + a - k for a, k in enumerate(K, start=1)) for K in subsets}
        for Ks in itertools.product(subsets, repeat=s):
            total = sum(sub_codims[K] for K in Ks) - p * (r - p)
            if total < 0 or total % r:
                continue
            q = total // r
            lhs = sum((sum((deltas[j][a - 1] for a in K), Fraction(0)) for j, K in enumerate(Ks)), Fraction(0))
            if lhs <= q:
                continue
            if _horn(r, p, q, tuple(Ks)):
                return False
    return True


def horn_nonvanishing(P: GwProblem) -> bool:
    """Decide ``<sigma_{I^1}, ..., sigma_{I^s}>_d != 0`` by the recursive eigenvalue inequalities."""
    if P.D != 0:
        raise ValueError(f"{P.canonical()}: horn_nonvanishing needs D = 0")
    _require_dim_zero(P)
    if P.d < 0:
        raise DimensionMismatch(f"{P.canonical()}: negative degree")
    return _horn(P.n, P.r, P.d, tuple(I.elements for I in P.indices))


def horn_violations(P: GwProblem) -> list[tuple[int, int, tuple[tuple[int, ...], ...]]]:
    """All (p, q, K-tuple) whose inequality fails at the delta point of ``P``."""
    _require_dim_zero(P)
    out = []
    r, s = P.r, P.s
    deltas = [delta(I) for I in P.indices]
    deltas[0] = shift_S(deltas[0], P.d)
    for p in range(1, r):
        subsets = list(itertools.combinations(range(1, r + 1), p))
        for Ks in itertools.product(subsets, repeat=s):
            total = sum(sum(r - p + a - k for a, k in enumerate(K, start=1)) for K in Ks) - p * (r - p)
            if total < 0 or total % r:
                continue
            q = total // r
            lhs = sum(sum(deltas[j][a - 1] for a in K) for j, K in enumerate(Ks))
            if lhs > q and _horn(r, p, q, tuple(Ks)):
                out.append((p, q, tuple(Ks)))
    return out
