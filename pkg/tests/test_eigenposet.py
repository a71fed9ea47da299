from math import comb

import numpy as np
import pytest

from lieorder.eigenposet import (
    OutOfScope,
    PMatrix,
    brute_find_r,
    build_m_poset,
    build_p_matrix,
    closure,
    find_r,
    fix_s_count,
    load_poset,
    max_s,
    n_gms,
    n_gms_symbolic,
    p_matrix,
    s_function,
    s_w,
    save_poset,
)
from lieorder.exactlin import hnf_rows
from lieorder.ordercount import fix_count, n_gm
from lieorder.oracle import grid_orbits, vanishing_rows
from lieorder.rootdata import weight_system
from lieorder.weylgroup import enumerate_group, from_word, identity

G2_ROWS = {(1, 0), (1, -1), (2, -1), (2, 0), (0, 1), (3, -1), (2, -2), (3, -2), (4, -2)}


def idx(p, rows):
    return tuple(sorted(p.find(r) for r in rows))


# --- P-matrix --------------------------------------------------------------------


def test_g2_p_matrix():
    p = p_matrix("G2")
    assert set(p.rows) == G2_ROWS and len(p) == 9
    for r in p.rows:
        assert next(x for x in r if x) > 0


def test_p_matrix_sizes():
    assert len(p_matrix("E6")) == 441
    assert len(p_matrix("F4")) <= 2 * comb(12, 2) + 24
    assert len(p_matrix("F4")) == 84


def test_tags_record_every_relation():
    p = p_matrix("G2")
    # v1 + v2 = v3 and v3 - v1 = -v2 both land on existing rows
    tags = p.tags[p.find((2, -1))]
    assert ("SUM", 1, 2) in tags and ("SINGLE", 3) in tags
    assert ("DOUBLE", 1) in p.tags[p.find((2, 0))]


# --- closure and r -------------------------------------------------------------------


def test_closure_examples():
    p = p_matrix("G2")
    q = closure(idx(p, [(0, 1), (3, -1)]), p)
    assert q.rowset == idx(p, [(0, 1), (3, -1), (3, -2)])
    assert q.divisors == (1, 3)
    assert closure((), p).rowset == ()
    assert closure(range(len(p)), p).rowset == tuple(range(len(p)))


def test_find_r():
    assert find_r(p_matrix("G2")) == 2 == brute_find_r(p_matrix("G2"))
    one = PMatrix(((1,),), ((("SINGLE", 1),),), 1, "G2")
    assert find_r(one) == 1 == brute_find_r(one)


def test_find_r_f4(f4_poset):
    assert f4_poset.r == 4


def test_refuses_large_groups():
    for g in ("E6", "E7", "E8"):
        with pytest.raises(OutOfScope, match="infeasible"):
            build_m_poset(g)
    with pytest.raises(OutOfScope):
        n_gms("E6", 2, 2)


# --- G2 poset --------------------------------------------------------------------


def test_g2_poset_shape(g2_poset):
    assert len(g2_poset) == 19
    empty = g2_poset.nodes[g2_poset.node(())]
    assert empty.svalue == 7
    assert g2_poset.nodes[-1].svalue == 1 and len(g2_poset.nodes[-1].rowset) == 9


def test_closure_property(g2_poset, f4_poset):
    for poset in (g2_poset, f4_poset):
        p = poset.p
        for node in poset.nodes[:: max(1, len(poset) // 500)]:
            basis = hnf_rows([p.rows[i] for i in node.rowset], p.ncols)
            assert closure(node.rowset, p).rowset == node.rowset
            assert basis == node.lattice


def test_g2_g_and_s_values(g2_poset):
    p = g2_poset.p
    i = g2_poset.node(idx(p, [(2, 0)]))
    assert [g2_poset.g_m(i, m) for m in (1, 2, 3, 4)] == [1, 4, 3, 8]
    q = g2_poset.node(idx(p, [(3, -2), (3, -1), (0, 1)]))
    assert g2_poset.nodes[q].svalue == 3
    assert [g2_poset.g_m(q, m) for m in (1, 3, 6, 7)] == [1, 3, 3, 1]
    assert str(g2_poset.g_sym(g2_poset.node(()))) == "1*m^2"


def test_g2_mobius_example(g2_poset):
    p = g2_poset.p
    s1 = g2_poset.node(idx(p, [(2, 0), (2, -2), (4, -2)]))
    s2 = g2_poset.node(idx(p, [(2, -1), (0, 1), (2, 0), (2, -2), (4, -2)]))
    full = g2_poset.node(range(9))
    assert g2_poset.mobius(full, s1) == 2
    assert g2_poset.mobius(s2, s1) == -1
    assert g2_poset.mobius(s1, s1) == 1
    assert g2_poset.mobius(s1, s2) == 0
    for m in range(1, 13):
        assert g2_poset.f_m(s1, m) == 0
        assert g2_poset.f_m(s2, m) == (1 if m % 2 == 0 else 0)


def test_recursion_equals_explicit_mobius(g2_poset, f4_poset):
    for i in range(len(g2_poset)):
        for m in range(1, 13):
            assert g2_poset.f_m(i, m) == g2_poset.f_m_mobius(i, m)
    rng = np.random.default_rng(1)
    for i in rng.choice(len(f4_poset), 15, replace=False):
        # the largest down-sets are the expensive ones; skip the top node
        if len(f4_poset.nodes[i].rowset) == 0:
            continue
        for m in (2, 6, 12):
            assert f4_poset.f_m(int(i), m) == f4_poset.f_m_mobius(int(i), m)


def test_f_at_m_equal_one(g2_poset):
    full = g2_poset.node(range(9))
    assert [g2_poset.f_m(i, 1) for i in range(len(g2_poset))] == [int(i == full) for i in range(len(g2_poset))]


@pytest.mark.parametrize("which", ["g2_poset", "f4_poset"])
def test_f_nonnegative(which, request):
    poset = request.getfixturevalue(which)
    assert (poset.f_table(range(1, 101)) >= 0).all()


def test_partition_identity_g2(g2_poset):
    ms = range(1, 25)
    f, g = g2_poset.f_table(ms), g2_poset.g_table(ms)
    for i in range(len(g2_poset)):
        assert (f[g2_poset.below(i)].sum(axis=0) == g[i]).all()


def test_f4_poset_size(f4_poset):
    assert len(f4_poset) == 22075
    assert f4_poset.svalues.max() == max_s("F4") == 25


# --- s-function ----------------------------------------------------------------------


def _synthetic(tags):
    return PMatrix(tuple((i + 1,) for i in range(len(tags))), tuple(tuple(t) for t in tags), 1, "E7")


def test_e7_s_function_cases():
    ws = weight_system("E7")
    p = _synthetic([[("SINGLE", 1)], [("DOUBLE", 2)], [("DIFF", 3, 4)]])
    assert s_function((), p, ws) == 56
    assert s_function((1,), p, ws) == 55  # [0] alone nontrivial
    assert s_function((0,), p, ws) == 55  # [1/2] trivial, [0] nontrivial
    assert s_function((0, 1), p, ws) == 54
    assert s_function((2,), p, ws) == 54


def test_double_ignored_when_single_present():
    ws = weight_system("G2")
    p = _synthetic([[("SINGLE", 1)], [("DOUBLE", 1)]])
    p = PMatrix(p.rows, p.tags, 1, "G2")
    assert s_function((0, 1), p, ws) == s_function((0,), p, ws) == 5


def test_e6_uses_differences_only():
    ws = weight_system("E6")
    p = _synthetic([[("SUM", 1, 2)], [("DIFF", 1, 2)]])
    p = PMatrix(p.rows, p.tags, 1, "E6")
    assert s_function((0,), p, ws) == 27
    assert s_function((1,), p, ws) == 26


def test_s_values_match_grid(g2_poset, f4_poset):
    """Each grid point's vanishing rows form a node whose s-value is its eigenvalue count."""
    for poset, ms in ((g2_poset, range(1, 13)), (f4_poset, range(1, 7))):
        for m in ms:
            orbits = grid_orbits(poset.group, m)
            for k, d in zip(orbits.points, orbits.distinct):
                rows = vanishing_rows(poset.p, k, m)
                assert rows in poset.index
                assert poset.nodes[poset.index[rows]].svalue == d


# --- S_w and N(G, m, s) ------------------------------------------------------------------


def test_s_w_examples():
    p = p_matrix("G2")
    assert s_w(identity("G2")) == ()
    assert s_w(from_word("G2", [1])) == idx(p, [(2, -1)])
    assert s_w(from_word("G2", [2, 1, 2, 1])) == idx(p, [(3, -1), (0, 1)])


def test_fix_s_examples(g2_poset):
    n1 = from_word("G2", [1])
    assert fix_s_count(n1, 4, 2, g2_poset) == 1
    assert fix_s_count(identity("G2"), 1, 7, g2_poset) == 0
    assert all(fix_s_count(identity("G2"), m, 1, g2_poset) == 1 for m in range(1, 9))


def test_fix_s_sums_to_fix_g2(g2_poset):
    for w in enumerate_group("G2"):
        for m in range(1, 9):
            assert sum(fix_s_count(w, m, s, g2_poset) for s in range(1, 8)) == fix_count(w, m)


def test_fix_s_sums_to_fix_f4(f4_poset):
    ms = list(range(1, 9))
    f = f4_poset.f_table(ms)
    for w in enumerate_group("F4"):
        total = f[f4_poset.containing(s_w(w, p=f4_poset.p))].sum(axis=0)
        assert list(total) == [fix_count(w, m) for m in ms]


def test_n_gms_examples(f4_poset):
    assert [n_gms("G2", m, 2) for m in (2, 3, 4, 5)] == [1, 0, 1, 0]
    assert n_gms("G2", 12, 7) == 5
    assert n_gms("F4", 2, 2) == 2
    assert n_gms("G2", 12, 99) == 0


def test_completeness(f4_poset):
    for m in range(1, 61):
        assert sum(n_gms("G2", m, s) for s in range(1, 8)) == n_gm("G2", m)
    for m in range(1, 25):
        assert sum(n_gms("F4", m, s) for s in range(1, 26)) == n_gm("F4", m)


def test_symbolic_matches_numeric(f4_poset):
    for s in (1, 3, 7, 25):
        e = n_gms_symbolic("F4", s)
        assert all(e.evaluate_int(m) == n_gms("F4", m, s) for m in range(1, 30))


# --- cache ---------------------------------------------------------------------------


def test_cache_round_trip(tmp_path, g2_poset):
    path = tmp_path / "g2.json"
    save_poset(g2_poset, path)
    again = load_poset(path, "G2")
    assert [n.rowset for n in again.nodes] == [n.rowset for n in g2_poset.nodes]
    assert again.r == 2


def test_cache_detects_tampering(tmp_path, g2_poset):
    import json

    path = tmp_path / "g2.json"
    save_poset(g2_poset, path)
    data = json.loads(path.read_text())
    data["nodes"][1]["s"] += 1
    path.write_text(json.dumps(data))
    with pytest.raises(ValueError, match="inconsistent"):
        load_poset(path, "G2")
    data = json.loads(path.read_text())
    data["p_digest"] = "0" * 64
    path.write_text(json.dumps(data))
    with pytest.raises(ValueError, match="digest"):
        load_poset(path, "G2")


def test_cache_detects_non_closed_node(tmp_path, g2_poset):
    import json

    path = tmp_path / "g2.json"
    save_poset(g2_poset, path)
    data = json.loads(path.read_text())
    # {[0,1],[3,-1]} without [3,-2] is not closed
    data["nodes"].append({"rows": [[0, 1], [3, -1]], "divisors": [1, 3], "s": 3})
    path.write_text(json.dumps(data))
    with pytest.raises(ValueError, match="not closed"):
        load_poset(path, "G2")
