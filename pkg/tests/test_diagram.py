import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotsw.cli import random_braid_diagram
from knotsw.diagram import (
    POSITIVE_OVER_SLOT,
    DiagramError,
    LinkDiagram,
    braid_closure,
    family,
    parse,
    parse_braid,
    parse_gc,
    parse_pd,
    twist,
    unknot,
    unlink,
    whitehead,
)

TREFOIL_PD = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"

braids = st.integers(0, 10**9).map(lambda s: random_braid_diagram(random.Random(s)))


def test_trefoil_writhe_pins_sign_convention():
    d = parse(TREFOIL_PD)
    assert d.n_crossings == 3 and d.n_components == 1
    assert abs(d.writhe()) == 3
    assert parse("BR(2; 1 1 1)").writhe() == 3
    assert POSITIVE_OVER_SLOT == 1


def test_hopf_linking_number():
    hopf = parse("BR(2; 1 1)")
    assert hopf.n_components == 2
    assert hopf.linking_number(0, 1) == 1
    assert hopf.mirror().linking_number(0, 1) == -1
    assert hopf.linking_matrix() == [[0, 1], [1, 0]]


def test_unknot_and_unlink():
    assert unknot().n_components == 1 and unknot().n_crossings == 0
    u = unlink(3)
    assert u.n_components == 3 and u.n_free_loops == 3
    assert u.is_split()
    assert parse(u.to_pd()) == u


@given(braids)
@settings(max_examples=60, deadline=None)
def test_pd_round_trip(d):
    assert parse(d.to_pd()) == d


@given(braids)
@settings(max_examples=60, deadline=None)
def test_gauss_round_trip(d):
    assert parse_gc(d.gauss_code()).canonical_code() == d.canonical_code()


@given(braids)
@settings(max_examples=60, deadline=None)
def test_crossing_change_is_involution(d):
    for k in range(d.n_crossings):
        c = d.crossing_change(k)
        assert c.signs[k] == -d.signs[k]
        assert c.crossing_change(k) == d


@given(braids)
@settings(max_examples=60, deadline=None)
def test_validate_and_euler(d):
    d.validate()
    assert d.writhe() == sum(d.signs)
    assert d.mirror().writhe() == -d.writhe()


@given(braids)
@settings(max_examples=40, deadline=None)
def test_resolution_changes_components_by_one(d):
    for k in range(d.n_crossings):
        r = d.resolve(k)
        assert r.n_crossings == d.n_crossings - 1
        assert abs(r.n_components - d.n_components) == 1


@given(braids)
@settings(max_examples=40, deadline=None)
def test_linking_symmetric_and_reverse(d):
    n = d.n_components
    for i in range(n):
        for j in range(n):
            if i != j:
                assert d.linking_number(i, j) == d.linking_number(j, i)
    r = d.reverse()
    if n >= 2:
        assert r.linking_number(0, 1) == d.linking_number(0, 1)


def test_crossing_order_does_not_change_canonical_code():
    a = parse_pd("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]")
    b = parse_pd("PD[X(5,3,6,2),X(1,5,2,4),X(3,1,4,6)]")
    assert a.canonical_code() == b.canonical_code()


def test_braid_parser_forms():
    assert parse_braid("BR(3; 1 -2 1 -2)") == braid_closure(3, [1, -2, 1, -2])
    assert parse("BR(1;)").n_components == 1


def test_families():
    for k in (-2, -1, 1, 2, 3):
        d = twist(k)
        assert d.n_components == 1
        assert family("twist", k) == d
    for k in (1, 2, 3):
        w = whitehead(k)
        assert w.n_components == 2
        assert w.linking_number(0, 1) == 0
    with pytest.raises(Exception):
        family("nope", 1)


def test_cable_keeps_components_and_linking():
    hopf = parse("BR(2; 1 1)")
    c = hopf.cable_2_1(0)
    assert c.n_components == 2
    c.validate()
    assert abs(c.linking_number(0, 1)) == 2


def test_connected_sum_and_union():
    tr = parse("BR(2; 1 1 1)")
    s = tr.connected_sum(tr.mirror())
    assert s.n_components == 1 and s.n_crossings == 6
    u = tr.disjoint_union(tr)
    assert u.n_components == 2 and u.is_split()


def test_descending_diagrams():
    assert unknot().is_descending()
    tr = parse("BR(2; 1 1 1)")
    assert tr.complexity()[0] == 3


@pytest.mark.parametrize("bad", ["PD[X(1,2,3)]", "PD[X(1,1,2,2),X(3,4,5,6)]", "BR(0; 1)", "GC[O1+]", "", "hello"])
def test_malformed_input_rejected(bad):
    with pytest.raises((DiagramError, ValueError)):
        parse(bad)


def test_parsed_diagram_is_dataclass():
    assert isinstance(parse(TREFOIL_PD), LinkDiagram)
