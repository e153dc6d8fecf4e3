"""Littlewood-Richardson products of Schur functions in a bounded number of variables.

Partitions are tuples of positive parts (trailing zeros stripped).  The product
rule adds the content of the second factor one label at a time as horizontal
strips, keeping the row-reading word a lattice word.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Sequence

Partition = tuple[int, ...]


def strip(lam: Sequence[int]) -> Partition:
    lam = tuple(lam)
    end = len(lam)
    while end and lam[end - 1] == 0:
        end -= 1
    return lam[:end]


def is_partition(lam: Sequence[int]) -> bool:
    return all(p >= 0 for p in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def fits(lam: Sequence[int], rows: int, cols: int) -> bool:
    lam = strip(lam)
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def complement(lam: Sequence[int], rows: int, cols: int) -> Partition:
    """The box complement ``lam^vee`` in the rows x cols rectangle, read in reverse."""
    lam = tuple(lam) + (0,) * (rows - len(lam))
    if len(lam) > rows or (lam and lam[0] > cols):
        raise ValueError(f"{lam} does not fit in a {rows}x{cols} box")
    return strip(cols - p for p in reversed(lam))


def _strips(base: tuple[int, ...], shape: list[int], used: list[list[int]], label: int,
            remaining: int, row: int, rows: int, cols: int | None):
    """Yield (shape, used) after adding ``remaining`` boxes labelled ``label`` from ``row`` downwards.

    ``base`` is the shape before this label was started; a horizontal strip may
    only extend row i up to the old length of row i-1.
    """
    if remaining == 0:
        yield shape, used
        return
    if row >= rows or row > len(base):
        return
    cur = shape[row] if row < len(shape) else 0
    limit = remaining
    if row > 0:
        limit = min(limit, base[row - 1] - cur)
    if cols is not None:
        limit = min(limit, cols - cur)
    if label > 0:
        # lattice word: the label's count read so far must not exceed label-1 in rows above
        above_k = sum(u[label] for u in used[:row])
        above_prev = sum(u[label - 1] for u in used[:row])
        limit = min(limit, above_prev - above_k)
    for m in range(limit, -1, -1):
        if m == 0:
            yield from _strips(base, shape, used, label, remaining, row + 1, rows, cols)
            continue
        new_shape = list(shape)
        new_used = [list(u) for u in used]
        if row < len(new_shape):
            new_shape[row] += m
        else:
            new_shape.append(m)
            new_used.append([0] * len(used[0]) if used else [0] * (label + 1))
        new_used[row][label] += m
        yield from _strips(base, new_shape, new_used, label, remaining - m, row + 1, rows, cols)


@lru_cache(maxsize=None)
def lr_product(lam: Partition, mu: Partition, rows: int, cols: int | None = None) -> dict[Partition, int]:
    """``s_lam * s_mu`` restricted to partitions with at most ``rows`` rows (and ``cols`` columns)."""
    lam, mu = strip(lam), strip(mu)
    if len(lam) > rows or len(mu) > rows:
        return {}
    if cols is not None and ((lam and lam[0] > cols) or (mu and mu[0] > cols)):
        return {}
    if not mu:
        return {lam: 1}
    if not lam:
        return {mu: 1}
    k = len(mu)
    # tableaux that agree on shape and per-row label counts extend identically
    states: dict = {(lam, tuple((0,) * k for _ in lam)): 1}
    for label, size in enumerate(mu):
        nxt: dict = defaultdict(int)
        for (shape, used), mult in states.items():
            for s2, u2 in _strips(shape, list(shape), [list(u) for u in used], label, size, 0, rows, cols):
                nxt[(tuple(s2), tuple(tuple(u) for u in u2))] += mult
        states = nxt
    out: dict[Partition, int] = defaultdict(int)
    for (shape, _), mult in states.items():
        out[strip(shape)] += mult
    return dict(out)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    lam, mu, nu = strip(lam), strip(mu), strip(nu)
    for p in (lam, mu, nu):
        if not is_partition(p):
            raise ValueError(f"{p} is not a partition")
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(nu) < max(len(lam), len(mu)):
        return 0
    return lr_product(lam, mu, len(nu), nu[0] if nu else 0).get(nu, 0)
