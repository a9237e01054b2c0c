import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotsw import bplus1, swcalc
from knotsw.bplus1 import MINUS, PLUS, TailSeries
from knotsw.diagram import parse, twist, unknot
from knotsw.laurent import LaurentPoly, parse_poly, substitute
from knotsw.swcalc import IdentityViolation, SWError

F = ("F",)


def fvar():
    return LaurentPoly.var("F")


def in_t(p):
    return substitute(p, {"F": {"t": "1/2"}}, ("t",))


def test_e1_collapse_is_minus_one():
    E = bplus1.e1_restricted()
    assert bplus1.collapse(E.plus) == LaurentPoly.const(-1, F)
    assert bplus1.collapse(E.minus) == LaurentPoly.const(-1, F)
    assert bplus1.lemma_equal(E)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sw0_of_twist_surgery(k):
    pair = bplus1.knot_surgery_b1(bplus1.e1_restricted(), twist(k))
    assert bplus1.lemma_equal(pair)
    got = in_t(bplus1.sw0(pair))
    assert got == parse_poly(f"{k}*t^(-1/2) - {k}*t^(1/2)")


def test_unknot_is_identity():
    E = bplus1.e1_restricted()
    assert bplus1.knot_surgery_b1(E, unknot()) == E


def test_e1_fiber_sum_gives_k3():
    E = bplus1.e1_restricted()
    assert bplus1.fiber_sum_b1(E, E) == LaurentPoly.const(1, F)


def test_fiber_sum_with_k3_descriptor():
    E = bplus1.e1_restricted()
    out = bplus1.fiber_sum_b1(E, swcalc.builtin("K3"), "T1")
    assert out == -(fvar() - fvar() ** -1).extend(out.vars)


def test_fiber_sum_after_knot_surgery_scales_by_delta():
    E = bplus1.e1_restricted()
    K = parse("BR(2; 1 1 1)")
    a = bplus1.fiber_sum_b1(bplus1.knot_surgery_b1(E, K), E)
    assert a == fvar() ** 2 - 1 + fvar() ** -2


def test_coefficients_of_tail():
    E = bplus1.e1_restricted()
    # SW- is the sum of F^(2n+1) over n >= 0
    assert bplus1.coefficient(E.minus, {"F": 1}) == 1
    assert bplus1.coefficient(E.minus, {"F": 5}) == 1
    assert bplus1.coefficient(E.minus, {"F": 2}) == 0
    assert bplus1.coefficient(E.minus, {"F": -1}) == 0
    assert bplus1.coefficient(E.plus, {"F": -3}) == -1


@given(st.dictionaries(st.integers(-4, 4).map(lambda x: (2 * x,)), st.integers(-5, 5), max_size=4),
       st.sampled_from([PLUS, MINUS]))
@settings(max_examples=80, deadline=None)
def test_collapse_matches_truncated_product(terms, direction):
    # multiply a long truncation by (F - 1/F); away from the cut it equals collapse
    ts = TailSeries(LaurentPoly(terms, F), direction, "F")
    hi = 60
    trunc = bplus1._truncate(ts, -hi, hi)
    prod = trunc * (fvar() - fvar() ** -1)
    want = bplus1.collapse(ts)
    inner = {e: c for e, c in prod.terms.items() if abs(e[0]) < hi - 20}
    assert LaurentPoly(inner, F) == want


@given(st.integers(-3, 3), st.integers(-3, 3).filter(lambda q: q != 0))
@settings(max_examples=30, deadline=None)
def test_log_transform_keeps_lemma(p, q):
    if p == 0:
        return
    from math import gcd
    if gcd(p, q) != 1:
        return
    E = bplus1.e1_restricted()
    y01 = parse_poly("F - F^(-1)", F)
    out = bplus1.log_transform_b1(E, p, q, y01)
    assert bplus1.lemma_equal(out)


def test_wall_crossing_jumps():
    # E(1): e = 12, sign = -8, multiples of the fiber have k^2 = 0
    assert bplus1.wall_dim(0, 12, -8) == 0
    assert bplus1.wall_dim(-8, 12, -8) == -2
    assert bplus1.wall_crossing_jump(0) == -1
    assert bplus1.wall_crossing_jump(2) == 1
    for delta in (0, 2, 4, 6):
        assert abs(bplus1.wall_crossing_jump(delta)) == 1
    with pytest.raises(SWError):
        bplus1.wall_crossing_jump(1)
    with pytest.raises(SWError):
        bplus1.wall_dim(2, 12, -8)


def test_wall_crossing_for_e1_chambers():
    E = bplus1.e1_restricted()
    # SW- minus SW+ at each odd exponent is the jump, of size 1
    for n in range(-7, 8, 2):
        diff = bplus1.coefficient(E.minus, {"F": n}) - bplus1.coefficient(E.plus, {"F": n})
        assert diff == 1


def test_lemma_violation_detected():
    bad = bplus1.RestrictedPair(
        TailSeries(LaurentPoly.const(1, F), MINUS, "F"),
        TailSeries(LaurentPoly.const(1, F), PLUS, "F"),
    )
    assert not bplus1.lemma_equal(bad)
    with pytest.raises(IdentityViolation):
        bplus1.fiber_sum_b1(bad, bad)


def test_bad_direction():
    with pytest.raises(SWError):
        TailSeries(LaurentPoly.const(1, F), "sideways", "F")


def test_render():
    E = bplus1.e1_restricted()
    assert E.minus.render() == "(1) * SUM t^((2n+1)/2)"
    assert "plus" in E.to_dict()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_twist_surgery_tail_coefficients(k):
    # SW- of E(1)_T(k) is (k t - (2k+1) + k/t) times the sum of t^((2n+1)/2); t = F^2
    pair = bplus1.knot_surgery_b1(bplus1.e1_restricted(), twist(k))
    assert bplus1.coefficient(pair.minus, {"F": -1}) == k
    assert bplus1.coefficient(pair.minus, {"F": 1}) == -k - 1
    assert bplus1.coefficient(pair.minus, {"F": 3}) == -1
    assert bplus1.coefficient(pair.minus, {"F": 7}) == -1
    assert bplus1.coefficient(pair.minus, {"F": -3}) == 0
