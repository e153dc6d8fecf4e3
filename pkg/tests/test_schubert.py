from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    all_indices,
    codim,
    degree_from_cycles,
    delta,
    format_point,
    grassmann_dual,
    in_simplex,
    index_to_partition,
    is_normalised,
    lambda_I,
    normalize_weights,
    parse_index,
    parse_point,
    partition_to_index,
    scale_index,
    scale_situation,
    shift_S,
)


def S(n, *elems):
    return SchubertIndex(n, elems)


def test_index_validation():
    with pytest.raises(ValueError):
        S(4, 2, 1)
    with pytest.raises(ValueError):
        S(4, 0, 2)
    with pytest.raises(ValueError):
        S(4, 1, 5)
    with pytest.raises(ValueError):
        S(4, 1, 2, 3, 4)


def test_parse_and_format():
    assert parse_index("{1,4}") == (1, 4)
    assert parse_index(" { 2 , 3 } ") == (2, 3)
    assert str(S(4, 1, 4)) == "{1,4}"
    for bad in ("1,4", "{1;4}", "{a}", "[1,4]"):
        with pytest.raises(ValueError):
            parse_index(bad)
    assert parse_point("[1/2,-1/2]") == (F(1, 2), F(-1, 2))
    assert format_point((F(2, 4), F(-1, 2))) == "[1/2,-1/2]"


def test_partition_examples():
    assert index_to_partition(S(4, 1, 4)) == (2, 0)
    assert index_to_partition(S(4, 3, 4)) == (0, 0)
    assert index_to_partition(S(9, 2, 3, 5, 8, 9)) == (3, 3, 2, 0, 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_partition_round_trip(n):
    for r in range(1, n):
        for I in all_indices(r, n):
            assert partition_to_index(index_to_partition(I), r, n) == I


def test_codim_examples():
    assert codim(S(4, 3, 4)) == 0
    assert codim(S(4, 1, 4)) == 2
    assert codim(S(4, 1, 2)) == 4


def test_dual_examples():
    assert grassmann_dual(S(8, 3, 4, 5, 7, 8)) == S(8, 3, 7, 8)
    assert grassmann_dual(S(5, 2, 5)) == S(5, 2, 3, 5)
    assert grassmann_dual(S(2, 1)) == S(2, 1)


def test_scale_index_examples():
    assert scale_index(S(4, 1, 4), 2) == S(6, 1, 6)
    assert scale_index(S(4, 1, 4), 1) == S(4, 1, 4)
    assert scale_index(S(4, 2, 3), 3) == S(8, 4, 5)


@pytest.mark.parametrize("n", range(2, 9))
def test_scale_index_multiplies_codim(n):
    for r in range(1, n):
        for I in all_indices(r, n):
            for N in (1, 2, 3):
                assert codim(scale_index(I, N)) == N * codim(I)


def test_scale_situation():
    P = GwProblem(2, 1, 0, 0, (S(2, 1), S(2, 2), S(2, 2)))
    Q = scale_situation(P, 2)
    assert (Q.n, Q.r, Q.d, Q.D) == (4, 2, 0, 0)
    assert Q.indices[0] == S(4, 1, 2)
    assert scale_situation(P, 1) == P
    P = GwProblem(4, 2, 1, 0, (S(4, 1, 4), S(4, 2, 3), S(4, 1, 2)))
    assert scale_situation(P, 2).indices[0] == S(8, 1, 2, 7, 8)
    assert scale_situation(P, 2).d == 2


def test_delta_and_shift_examples():
    assert delta(S(4, 1, 4)) == (F(1, 2), F(-1, 2))
    assert delta(S(4, 2, 3)) == (0, 0)
    assert delta(SchubertIndex.top(3, 7)) == (0, 0, 0)
    assert shift_S((F(1, 2), F(-1, 2))) == (0, 0)
    assert shift_S((0, 0, 0)) == (F(1, 3), F(1, 3), F(-2, 3))


@pytest.mark.parametrize("n", range(2, 8))
def test_delta_in_simplex_and_shift_cycle(n):
    for r in range(1, n):
        for I in all_indices(r, n):
            a = delta(I)
            assert in_simplex(a)
            b = a
            for _ in range(r):
                b = shift_S(b)
                assert in_simplex(b)
            assert b == a
            assert shift_S(a, r) == a


def test_lambda_I():
    assert lambda_I((1,), (F(1, 2), F(-1, 2))) == F(1, 2)
    A = (F(2, 5), F(1, 5), 0, F(-1, 5), F(-2, 5))
    assert lambda_I((1, 2, 3, 4, 5), A) == 0
    assert lambda_I((2, 5), A) == F(-1, 5)


def test_is_normalised():
    assert not is_normalised(S(4, 1, 4))
    assert is_normalised(S(4, 2, 3))
    assert is_normalised(S(4, 1, 2))


def test_normalize_weights():
    assert normalize_weights((1, 0)) == (F(1, 2), F(-1, 2))
    assert normalize_weights((F(1, 3),) * 4) == (0, 0, 0, 0)
    assert normalize_weights((1, 1, 0)) == (F(1, 3), F(1, 3), F(-2, 3))
    with pytest.raises(ValueError):
        normalize_weights((0, 1))
    with pytest.raises(ValueError):
        normalize_weights((2, 0))


def test_degree_from_cycles():
    assert degree_from_cycles([S(4, 1, 4), S(4, 2, 3), S(4, 1, 2)]) == 1
    assert degree_from_cycles([S(2, 1), S(2, 2), S(2, 2)]) == 0
    assert degree_from_cycles([S(4, 1, 2), S(4, 1, 2)]) == 1
    assert degree_from_cycles([S(4, 1, 2), S(4, 1, 3)]) is None
    # too few codimensions for any non-negative degree
    assert degree_from_cycles([S(4, 3, 4), S(4, 2, 4)]) is None


def test_problem_canonical_and_dim():
    P = GwProblem.make(4, 1, 0, [(1, 4), (2, 3), (1, 2)])
    assert P.canonical() == "gw(n=4,r=2,d=1,D=0;{1,4},{2,3},{1,2})"
    assert P.expected_dim == 0
    assert not P.is_classical
    with pytest.raises(ValueError):
        GwProblem(4, 2, 0, 0, (S(4, 1, 4), S(4, 1)))


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n), min_size=1, max_size=n - 1))))
def test_dual_involution_random(data):
    n, elems = data
    I = SchubertIndex(n, tuple(sorted(elems)))
    J = grassmann_dual(I)
    assert J.r == n - I.r
    assert grassmann_dual(J) == I
    assert codim(J) == codim(I)
