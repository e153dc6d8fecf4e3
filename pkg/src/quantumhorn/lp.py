"""Exact rational linear programming: a condensed-tableau simplex with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

LE, GE, EQ = "<=", ">=", "=="


@dataclass
class LpProblem:
    """Maximize ``objective . x`` subject to ``rows``; variables are free unless listed in ``nonneg``."""

    n_vars: int
    objective: list[Fraction]
    rows: list[tuple[list[Fraction], str, Fraction]] = field(default_factory=list)
    nonneg: frozenset[int] = frozenset()

    def add(self, coeffs: Sequence, sense: str, rhs):
        if sense not in (LE, GE, EQ):
            raise ValueError(f"unknown constraint sense {sense!r}")
        if len(coeffs) != self.n_vars:
            raise ValueError(f"constraint has {len(coeffs)} coefficients, expected {self.n_vars}")
        self.rows.append(([Fraction(c) for c in coeffs], sense, Fraction(rhs)))


@dataclass
class LpResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Condensed tableau: basic_i = b_i - sum_j T[i][j] * nonbasic_j, z = v + sum_j c_j * nonbasic_j."""

    def __init__(self, T, b, c, basis, nonbasis):
        self.T, self.b, self.c = T, b, c
        self.v = Fraction(0)
        self.basis, self.nonbasis = basis, nonbasis

    def pivot(self, p: int, q: int):
        T, b, c = self.T, self.b, self.c
        piv = T[p][q]
        row_p = T[p]
        inv = 1 / piv
        new_row = [x * inv for x in row_p]
        new_row[q] = inv
        bp = b[p] * inv
        for i, row in enumerate(T):
            if i == p:
                continue
            f = row[q]
            if f == 0:
                continue
            for j, x in enumerate(new_row):
                if j != q and x:
                    row[j] -= f * x
            row[q] = -f * inv
            b[i] -= f * bp
        f = c[q]
        if f:
            for j, x in enumerate(new_row):
                if j != q and x:
                    c[j] -= f * x
            c[q] = -f * inv
            self.v += f * bp
        T[p] = new_row
        b[p] = bp
        self.basis[p], self.nonbasis[q] = self.nonbasis[q], self.basis[p]

    def run(self) -> bool:
        """Optimize; returns False if unbounded."""
        while True:
            q = None
            for j in sorted(range(len(self.c)), key=lambda j: self.nonbasis[j]):
                if self.c[j] > 0:
                    q = j
                    break
            if q is None:
                return True
            p, best = None, None
            for i, row in enumerate(self.T):
                if row[q] > 0:
                    ratio = self.b[i] / row[q]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[p]):
                        p, best = i, ratio
            if p is None:
                return False
            self.pivot(p, q)


def lp_max(prob: LpProblem) -> LpResult:
    """Exact optimum of ``prob`` with an optimal vertex, or the reason there is none."""
    # standard form: split free variables, turn >= and == into <= rows
    cols: list[tuple[int, int]] = []
    for v in range(prob.n_vars):
        cols.append((v, 1))
        if v not in prob.nonneg:
            cols.append((v, -1))
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for coeffs, sense, rhs in prob.rows:
        row = [coeffs[v] * sgn for v, sgn in cols]
        if sense in (LE, EQ):
            A.append(row)
            b.append(rhs)
        if sense in (GE, EQ):
            A.append([-x for x in row])
            b.append(-rhs)
    c = [Fraction(prob.objective[v]) * sgn for v, sgn in cols]
    n, m = len(cols), len(A)
    basis = list(range(n, n + m))
    nonbasis = list(range(n))

    if any(x < 0 for x in b):
        aux = n + m
        tab = _Tableau([row[:] + [Fraction(-1)] for row in A], b[:], [Fraction(0)] * n + [Fraction(-1)],
                       basis, nonbasis + [aux])
        p = min(range(m), key=lambda i: (tab.b[i], tab.basis[i]))
        tab.pivot(p, n)
        tab.run()
        if tab.v < 0:
            return LpResult("infeasible")
        if aux in tab.basis:
            p = tab.basis.index(aux)
            q = next(j for j, x in enumerate(tab.T[p]) if x != 0)
            tab.pivot(p, q)
        q = tab.nonbasis.index(aux)
        for row in tab.T:
            del row[q]
        del tab.nonbasis[q]
        # restore the real objective in terms of the current nonbasis
        cost = {j: c[j] for j in range(n)}
        new_c = [cost.get(var, Fraction(0)) for var in tab.nonbasis]
        v = Fraction(0)
        for i, var in enumerate(tab.basis):
            w = cost.get(var, Fraction(0))
            if w:
                v += w * tab.b[i]
                for j in range(len(new_c)):
                    new_c[j] -= w * tab.T[i][j]
        tab.c, tab.v = new_c, v
    else:
        tab = _Tableau([row[:] for row in A], b[:], c[:], basis, nonbasis)

    if not tab.run():
        return LpResult("unbounded")
    values = [Fraction(0)] * n
    for i, var in enumerate(tab.basis):
        if var < n:
            values[var] = tab.b[i]
    x = [Fraction(0)] * prob.n_vars
    for (v, sgn), val in zip(cols, values):
        x[v] += sgn * val
    return LpResult("optimal", tab.v, tuple(x))
