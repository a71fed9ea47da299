import pytest

from lieorder.exactlin import sign_normalize
from lieorder.ordercount import (
    class_fix_data,
    fix_count,
    fix_data,
    fix_matrix,
    n_gm,
    n_gm_quasipoly,
    n_gm_symbolic,
)
from lieorder.quasipoly import detect_period
from lieorder.weylgroup import ClassTableError, conjugacy_classes, enumerate_group, from_word, identity


def _rows(w):
    return sorted({sign_normalize(r) for r in fix_matrix(w).matrix.rows if any(r)})


def test_g2_fix_matrices():
    assert _rows(identity("G2")) == []
    assert _rows(from_word("G2", [1])) == [(2, -1)]
    assert _rows(from_word("G2", [2, 1, 2, 1, 2, 1])) == [(2, -2), (2, 0)]
    assert _rows(from_word("G2", [2, 1, 2, 1])) == [(0, 1), (3, -1)]


def test_g2_fix_counts():
    w = from_word("G2", [2, 1, 2, 1, 2, 1])
    assert [fix_count(w, m) for m in (1, 2, 3, 4)] == [1, 4, 1, 4]
    assert fix_count(identity("G2"), 5) == 25


def test_g2_values():
    assert [n_gm("G2", m) for m in range(1, 13)] == [1, 2, 3, 4, 5, 7, 8, 10, 12, 14, 16, 19]


@pytest.mark.parametrize("g,m,expected", [("F4", 2, 3), ("E8", 2, 3), ("E6", 9, 195), ("G2", 6, 7)])
def test_spot_values(g, m, expected):
    assert n_gm(g, m) == expected


def test_rejects_bad_m():
    with pytest.raises(ValueError):
        n_gm("G2", 0)


def test_divisibility_guard():
    data = class_fix_data("G2")
    broken = ((data[0][0] + 1, data[0][1]),) + data[1:]
    with pytest.raises(ClassTableError, match="not divisible"):
        n_gm("G2", 5, broken)


def test_enumerated_classes_give_same_counts():
    data = fix_data(conjugacy_classes("F4", mode="enumerate"))
    assert [n_gm("F4", m, data) for m in range(1, 13)] == [n_gm("F4", m) for m in range(1, 13)]


def test_burnside_over_all_elements_g2():
    grp = enumerate_group("G2")
    for m in range(1, 10):
        assert sum(fix_count(w, m) for w in grp) == 12 * n_gm("G2", m)


def test_symbolic_matches_numeric():
    for g in ("G2", "F4", "E6"):
        e = n_gm_symbolic(g)
        assert all(e.evaluate_int(m) == n_gm(g, m) for m in range(1, 30))


@pytest.mark.parametrize("g,period", [("G2", 6), ("F4", 12), ("E6", 6), ("E7", 12), ("E8", 60)])
def test_periods(g, period):
    assert detect_period(n_gm_symbolic(g)) == period
    assert n_gm_quasipoly(g).period == period
