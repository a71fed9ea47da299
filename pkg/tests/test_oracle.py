import pytest

from lieorder.oracle import BudgetExceeded, brute_n_gm, brute_n_gms, grid_orbits
from lieorder.rootdata import group_type


def test_examples():
    assert brute_n_gm("G2", 6) == 7
    assert brute_n_gm("G2", 1) == 1
    assert brute_n_gm("F4", 2) == 3
    assert brute_n_gms("G2", 2, 2) == 1
    assert brute_n_gms("G2", 3, 3) == 2
    assert all(brute_n_gms("G2", m, 1) == 1 for m in range(1, 13))


def test_budget():
    with pytest.raises(BudgetExceeded):
        brute_n_gm("G2", 25)
    with pytest.raises(BudgetExceeded):
        brute_n_gm("F4", 7)
    with pytest.raises(BudgetExceeded):
        brute_n_gm("E6", 2)
    with pytest.raises(ValueError):
        brute_n_gm("G2", 0)


@pytest.mark.parametrize("g,m", [("G2", 12), ("G2", 24), ("F4", 4), ("F4", 6)])
def test_orbit_invariants(g, m):
    orbits = grid_orbits(g, m)
    w = group_type(g).weyl_order
    assert all(w % size == 0 for size in orbits.orbit_sizes())
    smax = orbits.distinct.max()
    assert sum(orbits.count(s) for s in range(1, smax + 1)) == orbits.count()
    assert orbits.distinct[0] == 1  # the identity point k = 0
