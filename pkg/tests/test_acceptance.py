"""Acceptance suite: one recorded pass/fail line per criterion (shown in the pytest summary)."""

import itertools
import random
import time
from fractions import Fraction as F

from _instances import problems
from quantumhorn.gw import (
    classical_intersection,
    f_of_N,
    fusion_oracle,
    generalized_gw,
    gw_dual,
    gw_invariant,
    horn_nonvanishing,
    transform_shift,
    transform_twist,
)
from quantumhorn.moduli import (
    constructive_witness,
    flag_dim,
    is_polyrigid,
    is_polyrigid_recursive,
    jump_set,
    moduli_dim,
    witten_weights,
)
from quantumhorn.polytope import (
    IneqRecord,
    classify,
    enumerate_inequalities,
    lp_classify,
    membership,
    random_point,
    sole_violation,
    witness_weights,
)
from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    codim,
    delta,
    format_point,
    grassmann_dual,
    shift_S,
)

GR8_12 = GwProblem.make(12, 0, 0, [(3, 4, 5, 7, 8, 10, 11, 12), (2, 3, 5, 6, 8, 9, 11, 12), (2, 3, 5, 6, 8, 9, 11, 12)])
GR5_9 = GwProblem.make(9, 0, 0, [(3, 5, 6, 8, 9), (2, 4, 5, 7, 9), (2, 3, 5, 8, 9)])


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_gr8_12(record_criterion):
    with Timer() as t:
        value = classical_intersection(GR8_12)
        dim = moduli_dim(GR8_12.indices)
    ok = value == 6 and dim == 6 and t.seconds < 30
    record_criterion(1, ok, f"Gr(8,12) intersection={value}, moduli_dim={dim}, {t.seconds:.2f}s (< 30s)")
    assert ok


def test_criterion_02_gr5_9(record_criterion):
    with Timer() as t:
        dims = [flag_dim(jump_set(p), 5) for p in witten_weights(GR5_9.indices)]
        poly = is_polyrigid(GR5_9)
        rep = is_polyrigid_recursive(GR5_9)
        line = any(d.p == 1 and d.rank == 5 and d.K == ((5,), (4,), (2,)) for d in rep.evidence)
    ok = dims == [8, 9, 8] and poly and rep.polyrigid and line and t.seconds < 60
    record_criterion(2, ok, f"Gr(5,9) flag dims={dims}, polyrigid f(N)={poly}, recursive={rep.polyrigid}, "
                            f"rank-1 datum ({{5}},{{4}},{{2}}) in evidence={line}, {t.seconds:.2f}s (< 60s)")
    assert ok


def test_criterion_03_delta_shift(record_criterion):
    a = delta(SchubertIndex(4, (1, 4)))
    b = delta(SchubertIndex(4, (2, 3)))
    c = shift_S(a)
    ok = a == (F(1, 2), F(-1, 2)) and b == (0, 0) and c == (0, 0)
    record_criterion(3, ok, f"delta{{1,4}}={format_point(a)}, delta{{2,3}}={format_point(b)}, "
                            f"S(delta{{1,4}})={format_point(c)}")
    assert ok


def test_criterion_04_duality(record_criterion):
    with Timer() as t:
        g1 = grassmann_dual(SchubertIndex(8, (3, 4, 5, 7, 8))).elements
        g2 = grassmann_dual(SchubertIndex(5, (2, 5))).elements
        checked, bad = 0, 0
        for n in range(1, 13):
            for r in range(1, n + 1):
                for elems in itertools.combinations(range(1, n + 1), r):
                    if r == n:
                        continue
                    I = SchubertIndex(n, elems)
                    J = grassmann_dual(I)
                    checked += 1
                    bad += grassmann_dual(J) != I or codim(J) != codim(I)
    ok = g1 == (3, 7, 8) and g2 == (2, 3, 5) and bad == 0 and t.seconds < 5
    record_criterion(4, ok, f"goldens {g1} {g2}; {checked} index sets n<=12, {bad} failures, {t.seconds:.2f}s (< 5s)")
    assert ok


def test_criterion_05_engines(record_criterion):
    with Timer() as t:
        count, bad = 0, []
        for P in problems(range(2, 7), range(1, 5), d_max=3):
            count += 1
            a, b = gw_invariant(P), fusion_oracle(P)
            if a != b:
                bad.append((P.canonical(), a, b))
    ok = not bad and count > 1000 and t.seconds < 600
    record_criterion(5, ok, f"{count} problems n<=6, s<=4, d<=3; {len(bad)} disagreements, {t.seconds:.1f}s (< 600s)")
    assert ok, bad[:5]


def test_criterion_06_horn(record_criterion):
    with Timer() as t:
        count, bad = 0, []
        for n, r in [(4, 2), (5, 2), (6, 3)]:
            for P in problems([n], range(1, 5), d_max=2, ranks=[r]):
                count += 1
                if horn_nonvanishing(P) != (gw_invariant(P) != 0):
                    bad.append(P.canonical())
    ok = not bad and t.seconds < 600
    record_criterion(6, ok, f"{count} problems in Gr(2,4), Gr(2,5), Gr(3,6), s<=4, d<=2; {len(bad)} disagreements, "
                            f"{t.seconds:.1f}s (< 600s)")
    assert ok, bad[:5]


def test_criterion_07_invariance(record_criterion):
    with Timer() as t:
        count, bad = 0, []
        for P in itertools.chain(problems(range(2, 6), range(1, 4)), problems(range(2, 6), [4], ordered=False)):
            v = generalized_gw(P)
            images = [transform_shift(P), transform_shift(P, -1), transform_shift(P, 2),
                      gw_dual(P), gw_dual(transform_shift(P))]
            images += [transform_twist(P, sh) for sh in itertools.product(range(P.n), repeat=P.s)]
            for Q in images:
                count += 1
                if generalized_gw(Q) != v:
                    bad.append((P.canonical(), Q.canonical()))
    ok = not bad and t.seconds < 300
    record_criterion(7, ok, f"{count} shift/twist/dual images, n<=5 (s<=3 ordered, s=4 unordered); "
                            f"{len(bad)} changes, {t.seconds:.1f}s (< 300s)")
    assert ok, bad[:5]


def test_criterion_08_saturation(record_criterion):
    with Timer() as t:
        count, bad = 0, []
        for P in problems(range(2, 6), range(1, 5), ordered=False):
            f1 = generalized_gw(P)
            if not f1:
                continue
            for N in (2, 3):
                fN = f_of_N(P, N)
                count += 1
                if not (fN > 0 and f1 <= fN):
                    bad.append((P.canonical(), N, f1, fN))
    ok = not bad and t.seconds < 600
    record_criterion(8, ok, f"{count} (instance, N) pairs with f(1)>0, n<=5, s<=4; {len(bad)} failures, "
                            f"{t.seconds:.1f}s (< 600s)")
    assert ok, bad[:5]


def test_criterion_09_main_theorem(record_criterion):
    lines, ok = [], True
    with Timer() as t:
        for n, s in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (4, 3)]:
            recs = lp_classify(classify(enumerate_inequalities(n, s)))
            same = {k for k, r in enumerate(recs) if r.lp_irredundant} == {k for k, r in enumerate(recs) if r.polyrigid}
            poly = [r for r in recs if r.polyrigid]
            rng = random.Random(1000 * n + s)
            agree = 0
            for _ in range(200):
                A = random_point(n, s, rng)
                agree += membership(A, poly).member == membership(A, recs).member
            ok &= same and agree == 200
            lines.append(f"({n},{s}): {len(recs)} records, {len(poly)} polyrigid, sets equal={same}, membership {agree}/200")
    ok &= t.seconds < 1800
    record_criterion(9, ok, "; ".join(lines) + f"; {t.seconds:.1f}s (< 1800s)")
    assert ok


def test_criterion_10_classical_rigidity(record_criterion):
    with Timer() as t:
        count, bad = 0, []
        for P in problems(range(2, 7), range(3, 5), d_max=0, ordered=False):
            if classical_intersection(P) != 1:
                continue
            count += 1
            m1 = classify([IneqRecord(P.r, 0, P.indices, 1)])[0].polyrigid
            full = is_polyrigid(P, P.r + 1)
            if not (m1 and full):
                bad.append(P.canonical())
    ok = not bad and count > 0 and t.seconds < 600
    record_criterion(10, ok, f"{count} classical records with intersection 1, n<=6, s in (3,4); "
                             f"M=1 vs M=r+1 disagreements {len(bad)}, {t.seconds:.1f}s (< 600s)")
    assert ok, bad[:5]


def test_criterion_11_witnesses(record_criterion):
    with Timer() as t:
        checked, bad, methods = 0, [], {}
        for n, pick in [(2, lambda r: True),
                        (5, lambda r: all(I.elements == (2, 5) for I in r.indices)),
                        (4, lambda r: r.r == 2)]:
            recs = enumerate_inequalities(n, 3)
            for rec in filter(pick, recs):
                w = witness_weights(rec, recs)
                checked += 1
                methods[w.method] = methods.get(w.method, 0) + 1
                if not sole_violation(w.weights(), rec):
                    bad.append(rec.key())
        # the displayed constants: 3 eps = 1 for the Gr(2,5) record, 9 eps = 1/3 for the Gr(5,8) record
        ex3 = constructive_witness(GwProblem.make(5, 0, 0, [(2, 5)] * 3))
        ex2 = constructive_witness(GwProblem.make(8, 0, 0, [(3, 4, 5, 7, 8), (2, 3, 5, 6, 8), (2, 3, 5, 6, 8)]))
        # a quantum member of the {1,4}^(2m) family, m = 3
        fam = constructive_witness(GwProblem.make(4, 2, 0, [(1, 4)] * 6))
        consts = ex3.ok and 3 * ex3.constant == 1 and ex2.ok and 9 * ex2.constant == F(1, 3) and fam.ok
    ok = not bad and consts and t.seconds < 60
    record_criterion(11, ok, f"{checked} records with a sole-violation witness ({methods}), {len(bad)} failures; "
                             f"3eps={3 * ex3.constant}, 9eps={9 * ex2.constant}, family m=3 c={fam.constant}; "
                             f"{t.seconds:.1f}s (< 60s)")
    assert ok, bad[:5]
