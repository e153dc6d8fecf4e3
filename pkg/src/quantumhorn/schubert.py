"""Schubert indices and the exact simplex-valued functions built on them.

A Schubert index is an r-element subset ``I = {i_1 < ... < i_r}`` of
``{1..n}``.  Its partition is ``lambda_a = n - r + a - i_a`` and its
codimension in ``Gr(r, n)`` is ``|lambda|``.  Everything here is exact:
rationals are :class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Partition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class SchubertIndex:
    """An r-subset of {1..n}, kept sorted."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if self.n < 1:
            raise ValueError(f"ambient dimension must be positive, got {self.n}")
        if not elems:
            raise ValueError("a Schubert index needs at least one element")
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise ValueError(f"elements must be strictly increasing: {elems}")
        if elems[0] < 1 or elems[-1] > self.n:
            raise ValueError(f"elements of {elems} must lie in 1..{self.n}")
        if len(elems) >= self.n:
            raise ValueError(f"need r < n, got r={len(elems)}, n={self.n}")

    @property
    def r(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return format_index(self.elements)

    @classmethod
    def parse(cls, text: str, n: int) -> "SchubertIndex":
        return cls(n, parse_index(text))

    @classmethod
    def top(cls, r: int, n: int) -> "SchubertIndex":
        """The fundamental class {n-r+1, ..., n}."""
        return cls(n, tuple(range(n - r + 1, n + 1)))

    @classmethod
    def point(cls, r: int, n: int) -> "SchubertIndex":
        """The point class {1, ..., r}."""
        return cls(n, tuple(range(1, r + 1)))


@dataclass(frozen=True)
class GwProblem:
    """Numerical data of ``<sigma_{I^1}, ..., sigma_{I^s}>_{d,D,n}`` in Gr(r, n)."""

    n: int
    r: int
    d: int
    D: int
    indices: tuple[SchubertIndex, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if not 1 <= self.r < self.n:
            raise ValueError(f"need 1 <= r < n, got r={self.r}, n={self.n}")
        if not idx:
            raise ValueError("a problem needs at least one index")
        for I in idx:
            if I.n != self.n or I.r != self.r:
                raise ValueError(f"index {I} does not live in Gr({self.r},{self.n})")

    @classmethod
    def make(cls, n: int, d: int, D: int, cycles: Iterable[Sequence[int]]) -> "GwProblem":
        idx = tuple(SchubertIndex(n, tuple(c)) for c in cycles)
        return cls(n, idx[0].r, d, D, idx)

    @property
    def s(self) -> int:
        return len(self.indices)

    @property
    def expected_dim(self) -> int:
        r, n = self.r, self.n
        return r * (n - r) + self.d * n - self.D * r - sum(codim(I) for I in self.indices)

    @property
    def is_classical(self) -> bool:
        return self.d == 0 and self.D == 0

    def canonical(self) -> str:
        body = ",".join(format_index(I.elements) for I in self.indices)
        return f"gw(n={self.n},r={self.r},d={self.d},D={self.D};{body})"

    def __str__(self):
        return self.canonical()

    def with_indices(self, indices, d=None, D=None) -> "GwProblem":
        return GwProblem(self.n, self.r, self.d if d is None else d, self.D if D is None else D, tuple(indices))


# --------------------------------------------------------------------------
# serialization

_INDEX_RE = re.compile(r"^\{\s*(\d+(\s*,\s*\d+)*)?\s*\}$")


def parse_index(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not _INDEX_RE.match(text):
        raise ValueError(f"malformed index set {text!r}; expected e.g. '{{1,4}}'")
    inner = text[1:-1].strip()
    return tuple(int(x) for x in inner.split(",")) if inner else ()


def format_index(elements: Iterable[int]) -> str:
    return "{" + ",".join(str(e) for e in elements) + "}"


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_point(coords: Iterable) -> str:
    return "[" + ",".join(format_rational(c) for c in coords) + "]"


def parse_point(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"malformed point {text!r}; expected e.g. '[1/2,-1/2]'")
    inner = text[1:-1].strip()
    return tuple(parse_rational(x) for x in inner.split(",")) if inner else ()


# --------------------------------------------------------------------------
# conversions

def index_to_partition(I: SchubertIndex) -> Partition:
    n, r = I.n, I.r
    return tuple(n - r + a - i for a, i in enumerate(I.elements, start=1))


def partition_to_index(lam: Sequence[int], r: int, n: int) -> SchubertIndex:
    """Inverse of :func:`index_to_partition`; ``lam`` is padded with zeros to length r."""
    lam = tuple(lam) + (0,) * (r - len(lam))
    if len(lam) != r:
        raise ValueError(f"partition {lam} has more than {r} parts")
    if any(b > a for a, b in zip(lam, lam[1:])) or (lam and (lam[-1] < 0 or lam[0] > n - r)):
        raise ValueError(f"partition {lam} does not fit in the {r}x{n - r} box")
    return SchubertIndex(n, tuple(n - r + a - p for a, p in enumerate(lam, start=1)))


def codim(I: SchubertIndex) -> int:
    return sum(index_to_partition(I))


def grassmann_dual(I: SchubertIndex) -> SchubertIndex:
    n = I.n
    members = set(I.elements)
    return SchubertIndex(n, tuple(a for a in range(1, n + 1) if n + 1 - a not in members))


def scale_index(I: SchubertIndex, N: int) -> SchubertIndex:
    """``NI`` inside ``{1..r+N(n-r)}``: ``k_a = a + N(i_a - a)``."""
    if N < 1:
        raise ValueError("scale factor must be a positive integer")
    r = I.r
    return SchubertIndex(r + N * (I.n - r), tuple(a + N * (i - a) for a, i in enumerate(I.elements, start=1)))


def _blow_up(I: SchubertIndex, N: int) -> SchubertIndex:
    out = []
    for i in I.elements:
        out.extend(N * i - b for b in range(N - 1, -1, -1))
    return SchubertIndex(N * I.n, tuple(out))


def scale_situation(P: GwProblem, N: int) -> GwProblem:
    """Scale a whole intersection into Gr(Nr, Nn) with degrees (Nd, ND)."""
    if N < 1:
        raise ValueError("scale factor must be a positive integer")
    if N == 1:
        return P
    return GwProblem(N * P.n, N * P.r, N * P.d, N * P.D, tuple(_blow_up(I, N) for I in P.indices))


# --------------------------------------------------------------------------
# simplex-valued functions

def in_simplex(a: Sequence) -> bool:
    """Membership in Delta_r: decreasing, a_r >= a_1 - 1, zero sum."""
    a = [Fraction(x) for x in a]
    if not a:
        return False
    return (all(x >= y for x, y in zip(a, a[1:])) and a[-1] >= a[0] - 1 and sum(a) == 0)


def delta(I: SchubertIndex) -> tuple[Fraction, ...]:
    n, r = I.n, I.r
    raw = [Fraction(j - i, n - r) for j, i in enumerate(I.elements, start=1)]
    c = sum(raw) / r
    return tuple(x - c for x in raw)


def shift_S(a: Sequence, times: int = 1) -> tuple[Fraction, ...]:
    """The cyclic shift ``(a_2+1/r, ..., a_r+1/r, a_1-(1-1/r))``, applied ``times`` times.

    Negative ``times`` applies the inverse shift.
    """
    a = tuple(Fraction(x) for x in a)
    r = len(a)
    times %= r
    for _ in range(times):
        step = Fraction(1, r)
        a = tuple(x + step for x in a[1:]) + (a[0] - (1 - step),)
    return a


def lambda_I(I: Iterable[int], A: Sequence) -> Fraction:
    """``sum_{t in I} a_t`` for a conjugacy class ``A`` given by its simplex point."""
    elements = I.elements if isinstance(I, SchubertIndex) else tuple(I)
    return sum((Fraction(A[t - 1]) for t in elements), Fraction(0))


def is_normalised(I: SchubertIndex) -> bool:
    return I.elements[0] > 1 or I.elements[-1] < I.n


def normalize_weights(t: Sequence) -> tuple[Fraction, ...]:
    """Map a point of the large weight space onto Delta_{n-1} by removing the mean."""
    t = tuple(Fraction(x) for x in t)
    if not t:
        raise ValueError("empty weight vector")
    if any(x < y for x, y in zip(t, t[1:])) or t[0] > 1 or t[-1] < 0:
        raise ValueError(f"weights must satisfy 1 >= t_1 >= ... >= t_n >= 0, got {t}")
    c = sum(t) / len(t)
    return tuple(x - c for x in t)


def degree_from_cycles(indices: Sequence[SchubertIndex], D: int = 0) -> int | None:
    """The degree ``d >= 0`` making the expected dimension zero, or None."""
    if not indices:
        raise ValueError("need at least one index")
    r, n = indices[0].r, indices[0].n
    if any(I.r != r or I.n != n for I in indices):
        raise ValueError("all indices must share (r, n)")
    num = sum(codim(I) for I in indices) - r * (n - r) + D * r
    if num < 0 or num % n:
        return None
    return num // n


def all_indices(r: int, n: int):
    """Every r-subset of {1..n} in lexicographic order."""
    from itertools import combinations

    return [SchubertIndex(n, c) for c in combinations(range(1, n + 1), r)]
