from fractions import Fraction
from itertools import product
from math import cos, e

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dglie.gradecore import StructureError
from dglie.twist import (DeRham, TwistedModule, check_mc, det, element, exterior, intertwiners,
                         mat, realizable, s1_system, scalar_form, twisted_hom_cohomology,
                         twisted_hom_general)

small = st.integers(-2, 2)
matrices2 = st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2)


def const(c):
    return scalar_form([c])


def test_matrix_helpers():
    assert det(mat([[1, 2], [3, 4]])) == -2
    with pytest.raises(StructureError):
        mat([[1, 2]])


def test_every_one_form_is_maurer_cartan_over_the_line():
    xi = DeRham.one_form([[[1, 2], [0]], [[3], [0, 0, 1]]])
    assert check_mc(DeRham, xi).ok


def test_degree_zero_candidate_is_rejected():
    with pytest.raises(StructureError):
        check_mc(DeRham, element(DeRham, {(1, 0): [[1]]}))


@settings(max_examples=30, deadline=None)
@given(matrices2)
def test_square_zero_matches_mc_on_exterior_host(R):
    xi = element(exterior(), {"x": R})
    assert check_mc(exterior(), xi).ok
    assert TwistedModule(exterior(), xi).square_zero()


def test_non_mc_element_on_a_host_with_products():
    # x^2 = y in degree 2, so R x is MC only when R^2 = 0
    host = exterior()
    host.basis["y"] = 2
    host.table[("x", "x")] = {"y": 1}
    R = [[1, 0], [0, 0]]
    xi = element(host, {"x": R})
    assert not check_mc(host, xi).ok
    assert not TwistedModule(host, xi).square_zero()
    assert check_mc(host, element(host, {"x": [[0, 1], [0, 0]]})).ok


@pytest.mark.parametrize("a,b", list(product(range(-2, 3), repeat=2)))
def test_constant_coefficient_odes(a, b):
    # F' + bF - aF = 0 has a polynomial solution only when a = b; the
    # inhomogeneous equation is always solvable on polynomials
    res = twisted_hom_cohomology(const(a), const(b), degree_bound=8)
    assert res.stable
    assert res.betti.as_list() == [1 if a == b else 0, 0]


FORMS = [[0], [1], [Fraction(-1, 2)], [0, 1], [0, 0, 1]]


@pytest.mark.parametrize("i,j", [(i, j) for i in range(5) for j in range(5) if i != j])
def test_distinct_forms_have_no_morphisms(i, j):
    res = twisted_hom_cohomology(scalar_form(FORMS[i]), scalar_form(FORMS[j]))
    assert res.betti[0] == 0


def test_zero_form_against_z_dz():
    res = twisted_hom_cohomology(scalar_form([0]), scalar_form([0, 1]))
    assert res.betti.as_list() == [0, 1] and res.stable


def test_nilpotent_endomorphisms():
    N = [[[0], [1]], [[0], [0]]]
    res = twisted_hom_cohomology(N, N)
    assert res.betti[0] == 4 and res.stable


@settings(max_examples=25, deadline=None)
@given(matrices2, matrices2)
def test_exterior_hom_degree_zero_is_intertwiners(R, S):
    xr = element(exterior(), {"x": R})
    xs = element(exterior(), {"x": S})
    H = twisted_hom_general(exterior(), xr, xs)
    assert H[0] == intertwiners(mat(R), mat(S))
    # Euler characteristic of Hom(k^2, k^2) (x) Lambda(x) is 4 - 4
    assert H[0] == H[1]


def test_scalar_local_system():
    rep = s1_system([[Fraction(1, 2)]])
    assert rep.character == "e^(1/2)" and rep.det == "e^(1/2)" and rep.in_image


def test_nilpotent_local_system_has_exact_unipotent_monodromy():
    rep = s1_system([[0, 1], [0, 0]])
    assert rep.nilpotent and rep.exp == mat([[1, 1], [0, 1]])
    assert rep.as_dict()["monodromy"] == [["1", "1"], ["0", "1"]]


def test_series_bound_contains_true_exponential():
    rep = s1_system([[1]])
    total, bound = rep.series(12)
    assert abs(float(total[0][0]) - e) <= float(bound)
    rep = s1_system([[0, 2], [-2, 0]])
    total, bound = rep.series(20)
    assert abs(float(total[0][0]) - cos(2)) <= float(bound)


def test_realizability():
    assert realizable([[-1]]) is False
    assert realizable([[0]]) is False
    assert realizable([[3]]) is True
    assert realizable([[-1, 0], [0, 1]]) is False
    assert realizable([[2, 0], [0, 3]]) == "undetermined"
