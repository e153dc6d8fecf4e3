"""Enumerators for exhaustive sweeps over small Grassmannians."""

import itertools

from quantumhorn.schubert import GwProblem, all_indices, degree_from_cycles


def problems(n_values, s_values, d_max=None, ordered=True, ranks=None):
    """Every zero-dimensional problem with D = 0 in the given range."""
    pick = itertools.product if ordered else itertools.combinations_with_replacement
    for n in n_values:
        for r in ranks or range(1, n):
            if not 1 <= r < n:
                continue
            idx = all_indices(r, n)
            for s in s_values:
                for combo in (pick(idx, repeat=s) if ordered else pick(idx, s)):
                    d = degree_from_cycles(combo, 0)
                    if d is None or (d_max is not None and d > d_max):
                        continue
                    yield GwProblem(n, r, d, 0, tuple(combo))
