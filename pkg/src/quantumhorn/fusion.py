"""Level-k fusion for su(r) via the Kac-Walton algorithm.

This is a second, independent route to the quantum intersection numbers of
Gr(r, n): highest weights are partitions with at most r rows and at most
k = n - r columns, tensor products come from Racah-Speiser over the weights
of the second factor, and the result is folded into the level-k alcove by
the affine Weyl group.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

Weight = tuple[int, ...]


def normalize(lam) -> Weight:
    """Remove full columns so the last part is zero."""
    lam = tuple(lam)
    m = lam[-1]
    return tuple(x - m for x in lam)


@lru_cache(maxsize=None)
def gl_weights(mu: Weight, r: int) -> dict[Weight, int]:
    """Weight multiplicities of the gl(r) module with highest weight ``mu`` (Gelfand-Tsetlin branching)."""
    mu = tuple(mu) + (0,) * (r - len(mu))
    if r == 1:
        return {(mu[0],): 1}
    out: dict[Weight, int] = defaultdict(int)
    ranges = [range(mu[i + 1], mu[i] + 1) for i in range(r - 1)]
    total = sum(mu)
    for nu in itertools.product(*ranges):
        last = total - sum(nu)
        for w, m in gl_weights(tuple(nu), r - 1).items():
            out[w + (last,)] += m
    return dict(out)


def _fold(beta: list[int], shifted_level: int) -> tuple[int, tuple[int, ...]] | None:
    """Bring ``beta`` into the open shifted alcove; return (sign, beta) or None on a wall."""
    sign = 1
    r = len(beta)
    while True:
        # sort decreasing, tracking the permutation sign
        order = sorted(range(r), key=lambda i: -beta[i])
        sorted_beta = [beta[i] for i in order]
        if any(a == b for a, b in zip(sorted_beta, sorted_beta[1:])):
            return None
        sign *= _perm_sign(order)
        beta = sorted_beta
        gap = beta[0] - beta[-1]
        if gap == shifted_level:
            return None
        if gap < shifted_level:
            return sign, tuple(beta)
        # affine reflection s_0
        beta = [beta[-1] + shifted_level] + beta[1:-1] + [beta[0] - shifted_level]
        sign = -sign


def _perm_sign(order) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def fusion_product(lam: Weight, mu: Weight, r: int, k: int) -> dict[Weight, int]:
    """Level-k fusion product of two su(r) weights given as normalized partitions."""
    rho = tuple(range(r - 1, -1, -1))
    out: dict[Weight, int] = defaultdict(int)
    for w, mult in gl_weights(mu, r).items():
        beta = [lam[i] + w[i] + rho[i] for i in range(r)]
        folded = _fold(beta, k + r)
        if folded is None:
            continue
        sign, b = folded
        nu = normalize(tuple(b[i] - rho[i] for i in range(r)))
        out[nu] += sign * mult
    return {nu: c for nu, c in out.items() if c}


def rotate(lam: Weight, k: int, times: int = 1) -> Weight:
    """The level-k outer automorphism ``lam -> (lam_2 + k, ..., lam_r + k, lam_1)``, mod full columns."""
    r = len(lam)
    times %= r
    for _ in range(times):
        lam = normalize(tuple(x + k for x in lam[1:]) + (lam[0],))
    return lam


def trivial_multiplicity(weights: list[Weight], r: int, k: int) -> int:
    """Multiplicity of the trivial module in the level-k fusion of ``weights``."""
    zero = (0,) * r
    current: dict[Weight, int] = {zero: 1}
    for lam in weights:
        nxt: dict[Weight, int] = defaultdict(int)
        for nu, c in current.items():
            for rho, m in fusion_product(nu, lam, r, k).items():
                nxt[rho] += c * m
        current = nxt
    return current.get(zero, 0)
