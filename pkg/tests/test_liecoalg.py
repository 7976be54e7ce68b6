import pytest

from dglie import catalog as cat
from dglie.gradecore import GradedSpace, StructureError
from dglie.liecoalg import (DgComodule, DgLieCoalgebra, character, coadjoint,
                            cofree_conilpotent_lie, dual_comodule, dualize_lie, hom_comodule,
                            lie_to_coalgebra, tensor_comodule, trivial_comodule)


def heis():
    return cat.coalgebra("heisenberg")


@pytest.mark.parametrize("name", cat.COALGEBRAS)
def test_catalog_coalgebras_validate(name):
    g = cat.coalgebra(name)
    assert g.validate().ok
    assert g.is_conilpotent() == (name in cat.CONILPOTENT)


def test_dual_lie_algebra_satisfies_jacobi_and_round_trips():
    for name in cat.COALGEBRAS:
        g = cat.coalgebra(name)
        L = dualize_lie(g)
        assert L.validate().ok
        back = lie_to_coalgebra(L)
        assert back.cobracket == g.cobracket and back.d == g.d


def test_broken_coanticommutativity_is_reported():
    V = GradedSpace({0: ["x", "y", "z"]})
    g = DgLieCoalgebra(V, cobracket={"z": {("x", "y"): 1}})
    assert "coanticommutativity" in g.validate().failed_axioms()


def test_broken_co_jacobi_is_reported():
    # dual of a bracket with [x,y]=x, [y,z]=x, [x,z]=y violates Jacobi
    V = GradedSpace({0: ["x", "y", "z"]})
    cob = {"x": {("x", "y"): 1, ("y", "x"): -1, ("y", "z"): 1, ("z", "y"): -1},
           "y": {("x", "z"): 1, ("z", "x"): -1}}
    g = DgLieCoalgebra(V, cobracket=cob)
    assert "co-Jacobi" in g.validate().failed_axioms()
    assert not dualize_lie(g).validate().ok


def test_constructor_rejects_bad_degrees_and_labels():
    V = GradedSpace({0: ["x"], 1: ["y"]})
    with pytest.raises(StructureError):
        DgLieCoalgebra(V, d={"y": {"x": 1}})
    with pytest.raises(StructureError):
        DgLieCoalgebra(V, cobracket={"x": {("x", "y"): 1}})
    with pytest.raises(StructureError):
        DgLieCoalgebra(V, d={"q": {"x": 1}})


def test_conilpotency_and_derived_weights():
    assert heis().grading() == ({"x": 1, "y": 1, "z": 2}, True)
    sl2 = cat.coalgebra("sl2dual")
    assert not sl2.is_conilpotent() and sl2.grading()[1] is False


def test_cofree_lie_coalgebra_is_a_lie_coalgebra():
    g = cofree_conilpotent_lie([("a", 0), ("b", 0)], 3)
    assert g.dim() == 2 + 1 + 2
    assert g.validate().ok and g.is_conilpotent()


def test_comodule_constructions_validate():
    g = heis()
    M = cat.comodule("heisenberg", "std")
    for N in (M, coadjoint(g), trivial_comodule(g), dual_comodule(M),
              tensor_comodule(M, M), hom_comodule(M, M)):
        assert N.validate().ok, N.name
        assert N.is_conilpotent()


def test_standard_comodule_filtration():
    M = cat.comodule("heisenberg", "std")
    assert M.filtration_spaces() == [{0: 1}, {0: 1}]


def test_bad_coaction_is_reported():
    g = heis()
    V = GradedSpace({0: ["u", "v"]})
    # x and y both acting nontrivially in the same direction breaks [x,y]=z
    M = DgComodule(g, V, coaction={"v": {("x", "u"): 1, ("y", "u"): 1},
                                   "u": {("x", "v"): 1}})
    assert "coaction" in M.validate().failed_axioms()


def test_characters_need_a_cocycle():
    g1 = cat.coalgebra("g1")
    assert character(g1, {"dx": 3}).validate().ok
    line = cat.coalgebra("line")
    assert character(line, {"t": 2}).validate().ok
