import pytest

from dglie import catalog as cat
from dglie.cealg import CEAlgebra, ce_algebra, ce_cohomology, ce_module, canonical_mc
from dglie.liecoalg import coadjoint


# Lie algebra cohomology of the duals (classical values)
EXPECTED = {
    "heisenberg": [1, 2, 2, 1],
    "sl2dual": [1, 0, 0, 1],
    "affine2": [1, 1, 0, 0],
    "g1": [1, 0, 0, 0],
    "g2": [1, 0, 0, 0],
    "g3": [1, 0, 0, 0],
    "odd1": [1, 0, 1, 0],
    "nilpotent2": [1, 0, 1, 0],
    "line": [1, 1, 0, 0],
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_ce_cohomology(name):
    res = ce_cohomology(cat.coalgebra(name), cap=4, window=(0, 3))
    assert res.betti.as_list() == EXPECTED[name] and res.is_stable


@pytest.mark.parametrize("name", cat.COALGEBRAS)
def test_ce_differential_squares_to_zero(name):
    ce_algebra(cat.coalgebra(name), cap=3, window=(0, 4))


@pytest.mark.parametrize("name", cat.COALGEBRAS)
def test_canonical_element_is_maurer_cartan(name):
    assert canonical_mc(cat.coalgebra(name), env_cap=2).ok


def test_ce_is_graded_commutative():
    A = CEAlgebra(cat.coalgebra("heisenberg"))
    x, y = (0,), (1,)
    s1, xy = A.mul(x, y)
    s2, yx = A.mul(y, x)
    assert xy == yx and s1 == -s2
    assert A.mul(x, x)[0] == 0


def test_module_cohomology():
    line = cat.comodule("line", "jordan")
    assert ce_cohomology(line.g, line, cap=3, window=(0, 2)).betti.as_list() == [1, 1, 0]
    g1k = cat.comodule("g1", "k_1")
    assert ce_cohomology(g1k.g, g1k, cap=3, window=(0, 2)).betti.as_list() == [0, 0, 0]


def test_heisenberg_standard_module_needs_weight_five_for_top_class():
    M = cat.comodule("heisenberg", "std")
    low = ce_cohomology(M.g, M, cap=4, window=(0, 3))
    assert low.betti.as_list() == [1, 3, 3, 0] and low.unstable_degrees() == [3]


def test_twisted_differential_squares_to_zero_on_coadjoint():
    g = cat.coalgebra("nilpotent2")
    ce_module(g, coadjoint(g), cap=4, window=(0, 3))
