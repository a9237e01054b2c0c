import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotsw import swcalc
from knotsw.cli import random_braid_diagram
from knotsw.diagram import parse, twist, unknot, whitehead
from knotsw.laurent import LaurentPoly, equal_up_to_units, evaluate_all_ones, parse_poly
from knotsw.script import sw_in_t
from knotsw.swcalc import HypothesisError, IdentityViolation, SWError

K3_VARS = ("T1", "T2", "T3")
TREFOIL = "BR(2; 1 1 1)"


def knots():
    def make(seed):
        rng = random.Random(seed)
        while True:
            d = random_braid_diagram(rng)
            if d.n_components == 1:
                return d
    return st.integers(0, 10**9).map(make)


def k3():
    return swcalc.builtin("K3")


def v(name, vars=K3_VARS):
    return LaurentPoly.var(name, vars)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_k3_twist_surgery(k):
    Y = swcalc.knot_surgery(k3(), "T1", twist(k))
    t = LaurentPoly.var("t")
    assert sw_in_t(Y) == k * t - (2 * k + 1) + k * t ** -1
    assert swcalc.symplectic_status(Y)["standard"] == ("no" if k > 1 else "unknown")


def test_builtins():
    X = k3()
    assert (X.euler, X.signature, X.b_plus) == (24, -16, 3)
    assert X.sw == LaurentPoly.const(1, K3_VARS)
    assert swcalc.builtin("E2").sw == X.sw
    assert swcalc.builtin("E1").sw is None
    with pytest.raises(SWError):
        swcalc.builtin("CP2")


def test_theta_recovers_knot_polynomial():
    X = k3()
    Y = swcalc.knot_surgery(X, "T2", parse(TREFOIL))
    assert swcalc.theta(Y, X) == v("T2") ** 2 - 1 + v("T2") ** -2


def test_unknot_surgery_is_identity():
    X = k3()
    assert swcalc.knot_surgery(X, "T1", unknot()).sw == X.sw


@pytest.mark.parametrize("k", [1, 2, 3])
def test_e1_link_surgery_whitehead(k):
    Y = swcalc.link_surgery_e1(whitehead(k))
    want = k * parse_poly("t1^(1/2) - t1^(-1/2)", ("t1", "t2")) * parse_poly("t2^(1/2) - t2^(-1/2)", ("t1", "t2"))
    assert sw_in_t(Y) == want or sw_in_t(Y) == -want
    assert (Y.euler, Y.signature, Y.b_plus) == (24, -16, 3)
    assert swcalc.symmetry_check(Y)


def test_triple_surgery_and_realizability():
    X = k3()
    for T, k in (("T1", 1), ("T2", 2), ("T3", 3)):
        X = swcalc.knot_surgery(X, T, twist(k))
    assert abs(evaluate_all_ones(X.sw)) == 1
    assert swcalc.realizability_check(X, [1, 1, 1])
    for ps in ([2, 1, 1], [1, -3, 1], [2, 2, 2], [5, 1, 7]):
        assert not swcalc.realizability_check(X, ps)


def test_gluing_triangle():
    X = k3()
    for K in (parse(TREFOIL), twist(2)):
        XK = swcalc.knot_surgery(X, "T1", K)
        lhs = swcalc.e1_fiber_sum(XK, "T1").sw
        factor = swcalc.theta(XK, X)
        assert lhs == swcalc.e1_fiber_sum(X, "T1").sw * factor


def test_e1_fiber_sum_invariants():
    Z = swcalc.e1_fiber_sum(k3(), "T1")
    assert (Z.euler, Z.signature, Z.b_plus) == (36, -24, 5)
    assert Z.sw == v("T1") - v("T1") ** -1


def test_fiber_sum_of_two_k3():
    Z = swcalc.fiber_sum(k3(), "T1", k3(), "T1")
    assert Z.euler == 48 and Z.b_plus == 7
    t1 = LaurentPoly.var("T1", Z.class_basis)
    assert Z.sw == (t1 - t1 ** -1) ** 2
    assert swcalc.symmetry_check(Z)


def test_internal_fiber_sum():
    Z = swcalc.internal_fiber_sum(k3(), "T1", "T2")
    assert Z.b_plus is None and Z.warnings
    t1 = LaurentPoly.var("T1", Z.class_basis)
    assert Z.sw == (t1 - t1 ** -1) ** 2


def test_log_transform_multiplicity():
    X = k3()
    Y01 = swcalc.knot_surgery(X, "T1", twist(1))
    Z = swcalc.log_transform(X, "T1", 3, 1, Y01, dual_torus_hypothesis=True)
    assert Z.sw == 3 * X.sw + Y01.sw
    with pytest.raises(SWError):
        swcalc.log_transform(X, "T1", 2, 4, Y01, dual_torus_hypothesis=True)


def test_double_transform_matches_axiom_shape():
    Y = swcalc.link_surgery_e1(whitehead(1))
    D = swcalc.double_transform(Y, 0, [0, 0])
    t = LaurentPoly.var("Tm1", Y.class_basis)
    from knotsw.laurent import substitute
    assert D.sw == (t + t ** -1) * substitute(Y.sw, {"Tm1": {"Tm1": 2}}, Y.class_basis)
    assert swcalc.symmetry_check(D)


def test_gromov_trefoil():
    X = swcalc.knot_surgery(k3(), "T1", unknot(), fibered=True)
    kappa, mult = swcalc.gromov_knot_surgery(X, "T1", parse(TREFOIL), fibered=True)
    assert kappa == (2, 0, 0)
    assert mult == parse_poly("tau^(2) - tau + 1", ("tau",))


def test_hypothesis_errors():
    with pytest.raises(HypothesisError):
        swcalc.gromov_knot_surgery(k3(), "T1", twist(2), fibered=True)
    with pytest.raises(HypothesisError):
        swcalc.knot_surgery(k3(), "T1", twist(2), fibered=True)
    with pytest.raises(SWError):
        swcalc.knot_surgery(swcalc.builtin("E1"), "F", twist(1))
    with pytest.raises(SWError):
        swcalc.knot_surgery(k3(), "T9", twist(1))


def test_non_alexander_input_rejected():
    with pytest.raises((IdentityViolation, SWError)):
        swcalc.knot_surgery(k3(), "T1", parse_poly("2*t - 2 + 2*t^(-1)"))


def test_reversed_orientation_rule():
    Y = swcalc.link_surgery_e1(whitehead(2), neg_surface=(0, -1))
    assert swcalc.symplectic_status(Y)["reversed"] == "no"
    Y = swcalc.link_surgery_e1(whitehead(2), neg_surface=(1, 0))
    assert swcalc.symplectic_status(Y)["reversed"] == "unknown"


@given(st.lists(st.tuples(st.sampled_from(K3_VARS), knots()), min_size=1, max_size=3))
@settings(max_examples=25, deadline=None)
def test_every_output_is_symmetric(steps):
    X = k3()
    for T, K in steps:
        X = swcalc.knot_surgery(X, T, K)
        assert swcalc.symmetry_check(X)
    Z = swcalc.e1_fiber_sum(X, steps[0][0])
    assert swcalc.symmetry_check(Z)
    W = swcalc.fiber_sum(X, "T1", k3(), "T2")
    assert swcalc.symmetry_check(W)


@given(knots())
@settings(max_examples=25, deadline=None)
def test_theta_equals_knot_delta(K):
    X = k3()
    got = swcalc.theta(swcalc.knot_surgery(X, "T3", K), X)
    delta = swcalc.knot_delta(K)
    from knotsw.laurent import substitute
    assert got == substitute(delta, {"s": {"T3": 1}}, K3_VARS)


def test_descriptor_to_dict():
    d = swcalc.knot_surgery(k3(), "T1", twist(2)).to_dict()
    assert d["euler"] == 24 and "sw" in d
