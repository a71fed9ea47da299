from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieorder.exactlin import (
    IntMatrix,
    elementary_divisors,
    hnf_rows,
    in_row_lattice,
    kernel_count,
    kernel_count_from_divisors,
    rhnf,
    row_lattice_equal,
    sign_normalize,
    snf,
)
from lieorder.verify import _snf_problems, brute_kernel_count


def matrices(max_rows=4, max_cols=3, bound=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=0, max_size=max_rows
        ).map(lambda rows: IntMatrix.from_rows(rows, c))
    )


def test_matmul_and_det():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert (a @ IntMatrix.identity(2)) == a
    assert a.det() == -2
    assert a.transpose().tolist() == [[1, 3], [2, 4]]


def test_rows_must_match_width():
    with pytest.raises(ValueError):
        IntMatrix(((1, 2), (3,)), 2)


def test_g2_fix_system_divisors():
    # rows 2v_1 and 2v_2 for the central element
    assert elementary_divisors([[2, 0], [2, -2]]) == (2, 2)
    assert elementary_divisors([[2, -1], [1, 0]]) == (1, 1)
    assert elementary_divisors([[0, 1], [4, -2]]) == (1, 4)


def test_zero_matrix_and_empty_matrix():
    assert snf(IntMatrix.zeros(2, 3)).divisors == ()
    assert kernel_count(IntMatrix.zeros(0, 2), 5) == 25
    assert kernel_count_from_divisors((), 3, 2) == 8


def test_kernel_count_rejects_bad_m():
    with pytest.raises(ValueError):
        kernel_count([[1]], 0)


@given(matrices())
def test_snf_axioms(a):
    assert _snf_problems(a) == []


@given(matrices(), st.integers(1, 6))
def test_kernel_count_matches_brute_force(a, m):
    assert kernel_count(a, m) == brute_kernel_count(a, m)


@given(matrices(), st.data())
def test_divisors_invariant_under_unimodular_row_ops(a, data):
    if a.nrows < 2:
        return
    i, j = data.draw(st.permutations(range(a.nrows)))[:2]
    q = data.draw(st.integers(-3, 3))
    rows = [list(r) for r in a.rows]
    rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
    b = IntMatrix.from_rows(rows, a.ncols)
    assert elementary_divisors(a) == elementary_divisors(b)
    assert row_lattice_equal(a, b)


@given(matrices())
def test_hnf_is_canonical_and_spans(a):
    basis = hnf_rows(a.rows, a.ncols)
    assert hnf_rows(basis, a.ncols) == basis
    lat = rhnf(a)
    for r in a.rows:
        assert in_row_lattice(r, lat)
    # every basis row must be reachable: same lattice as the input
    assert rhnf(IntMatrix(basis, a.ncols)) == lat


@given(matrices(max_rows=3, max_cols=2, bound=3))
def test_membership_matches_bounded_search(a):
    lat = rhnf(a)
    coeffs = range(-3, 4)
    reachable = set()
    for cs in product(coeffs, repeat=a.nrows):
        reachable.add(tuple(sum(c * r[j] for c, r in zip(cs, a.rows)) for j in range(a.ncols)))
    for v in product(range(-2, 3), repeat=a.ncols):
        if v in reachable:
            assert in_row_lattice(v, lat)


def test_membership_examples():
    lat = rhnf([[0, 1], [3, -1]])
    assert (3, -2) in lat
    assert (1, 0) not in lat


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_sign_normalize(v):
    n = sign_normalize(v)
    assert n == sign_normalize([-x for x in v])
    nz = [x for x in n if x]
    assert not nz or nz[0] > 0
