import pytest

from dglie.gradecore import (BettiTable, Complex, GradedSpace, LinMap, StructureError,
                             WeightedComplex, cohomology, cone, direct_sum, dualize,
                             from_complex, tensor, weighted_cohomology, weighted_cone)


def interval():
    """k.a -> k.b in degrees 0 -> 1, d a = b (acyclic)."""
    V = GradedSpace({0: ["a"], 1: ["b"]})
    return Complex(V, {"a": {"b": 1}})


def circle():
    """Cellular cochains of S^1: two vertices, two edges."""
    V = GradedSpace({0: ["v", "w"], 1: ["e", "f"]})
    return Complex(V, {"v": {"e": -1, "f": 1}, "w": {"e": 1, "f": -1}})


def test_graded_space_rejects_duplicates():
    with pytest.raises(StructureError):
        GradedSpace({0: ["a"], 1: ["a"]})


def test_complex_rejects_nonzero_square():
    V = GradedSpace({0: ["a"], 1: ["b"], 2: ["c"]})
    with pytest.raises(StructureError):
        Complex(V, {"a": {"b": 1}, "b": {"c": 1}})


def test_cohomology_of_circle():
    assert cohomology(circle(), (0, 1)).as_list() == [1, 1]
    assert cohomology(interval(), (0, 1)).is_zero()


def test_betti_table_helpers():
    t = BettiTable((0, 1), {0: 1, 1: 1})
    assert t.euler() == 0 and str(t) == "H^0=1 H^1=1" and t[1] == 1


def test_identity_cone_is_acyclic():
    C = circle()
    f = LinMap(C.space, C.space, {x: {x: 1} for x in C.space.labels()})
    assert cohomology(cone(f, C, C), (-1, 1)).is_zero()


def test_zero_map_cone_is_shifted_sum():
    C = circle()
    f = LinMap(C.space, C.space, {})
    assert cohomology(cone(f, C, C), (-1, 1)).as_list() == [1, 2, 1]


def test_cone_rejects_non_chain_map():
    C = interval()
    f = LinMap(C.space, C.space, {"a": {"a": 1}})
    with pytest.raises(StructureError):
        cone(f, C, C)


def test_kunneth_for_tensor_and_sum():
    C = circle()
    assert cohomology(tensor(C, C), (0, 2)).as_list() == [1, 2, 1]
    assert cohomology(direct_sum(C, C), (0, 1)).as_list() == [2, 2]


def test_dual_reverses_degrees_and_squares_to_zero():
    D = dualize(circle())
    assert cohomology(D, (-1, 0)).as_list() == [1, 1]
    DD = dualize(D)
    assert cohomology(DD, (0, 1)).as_list() == [1, 1]


def polynomial_de_rham():
    """k[t] -> k[t] dt, weight = polynomial degree (t^n and t^{n-1} dt share weight n)."""
    def pieces(n, w):
        if n == 0:
            return [("f", w)]
        if n == 1 and w >= 1:
            return [("g", w)]
        return []

    def diff(lab):
        kind, w = lab
        return {("g", w): w} if kind == "f" and w else {}

    return WeightedComplex(pieces, diff, lambda lab: lab[1], name="dR")


def test_weighted_cohomology_poincare_lemma():
    X = polynomial_de_rham()
    for cap in (1, 3, 6):
        assert weighted_cohomology(X, (0, 1), cap).as_list() == [1, 0]


def test_weighted_identity_cone_and_from_complex():
    X = polynomial_de_rham()
    K = weighted_cone(lambda lab: {lab: 1}, X, X)
    assert weighted_cohomology(K, (-1, 1), 4).is_zero()
    W = from_complex(circle())
    assert weighted_cohomology(W, (0, 1), 2).as_list() == [1, 1]
