
import pytest

from dglie import catalog as cat
from dglie.envelope import (ConilpotencyError, NotConilpotentWarning, TensorModule,
                            TruncatedEnvelope, comodule_to_module, coregular_comodule,
                            module_to_comodule, pbw_check, symmetric_power_dims,
                            tres_resolution_check, u_con)
from dglie.cealg import ce_cohomology


@pytest.mark.parametrize("name,expected", [
    ("heisenberg", [1, 3, 6, 10]),
    ("odd1", [1, 1, 0, 0]),
    ("mixed2", [1, 2, 2, 2]),
    ("nilpotent2", [1, 2, 2, 2]),
])
def test_pbw_graded_pieces_are_symmetric_powers(name, expected):
    rep = pbw_check(u_con(cat.coalgebra(name), 3))
    assert rep.gr == expected and rep.verdict


def test_symmetric_power_dims():
    assert symmetric_power_dims([0, 0], 3) == [1, 2, 3, 4]
    assert symmetric_power_dims([1, 1], 3) == [1, 2, 1, 0]


@pytest.mark.parametrize("name", cat.CONILPOTENT)
def test_truncated_envelope_is_a_dg_coalgebra(name):
    env = u_con(cat.coalgebra(name), 3)
    assert not env.coassociativity_violations()
    assert not env.coderivation_violations()


def test_non_conilpotent_input_warns_and_breaks_coassociativity():
    with pytest.warns(NotConilpotentWarning):
        env = TruncatedEnvelope(cat.coalgebra("sl2dual"), 2)
    assert env.warning and env.coassociativity_violations()


def test_weight_mode_uses_internal_grading():
    env = TruncatedEnvelope(cat.coalgebra("heisenberg"), 2, mode="weight")
    # monomials of weight <= 2 with |x|=|y|=1, |z|=2: 1, x, y, z, xx, xy, yy
    assert len(env.basis) == 7
    with pytest.raises(ValueError):
        TruncatedEnvelope(cat.coalgebra("heisenberg"), 2, mode="other")


def test_comodule_module_round_trip():
    env = u_con(cat.coalgebra("heisenberg"), 3)
    M = cat.comodule("heisenberg", "std")
    action = comodule_to_module(env, M)
    assert module_to_comodule(env, action, M).coaction == M.coaction


def test_non_conilpotent_comodule_names_a_word():
    env = u_con(cat.coalgebra("line"), 2)
    with pytest.raises(ConilpotencyError, match="t t t"):
        comodule_to_module(env, cat.comodule("line", "identity"))


def test_coregular_comodule_is_acyclic_in_positive_degrees():
    env = u_con(cat.coalgebra("heisenberg"), 3)
    C = coregular_comodule(env)
    assert C.validate().ok
    res = ce_cohomology(env.g, C, cap=3, window=(0, 3))
    assert res.betti.as_list() == [1, 0, 0, 0]


@pytest.mark.parametrize("U", [{"u": 0}, {"u": 0, "v": 1}])
def test_two_term_resolution_is_exact_below_the_cap(U):
    for cap in (3, 4):
        res = tres_resolution_check(U, TensorModule.trivial(), cap)
        assert all(res[w] == "exact" for w in range(cap))
        assert res[cap] == "unstable"


def test_two_term_resolution_of_a_free_module():
    res = tres_resolution_check({"u": 0}, TensorModule.free({"u": 0}, 3), 3)
    assert [res[w] for w in range(3)] == ["exact"] * 3
