"""Multivariable Alexander polynomial from the Wirtinger presentation.

Fox derivatives of the crossing relations are abelianised into an
Alexander matrix over ``t1..tn`` (``t`` for knots).  One relation and one
column are dropped and the minor is computed by fraction-free Gaussian
elimination.  For links the minor is ``(t_j - 1)`` times the polynomial,
where ``j`` is the component of the dropped generator.

The module also hosts checks that tie the skein engine to this oracle:
the Torres reduction and two of Turaev's axioms.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram
from .laurent import (
    InexactDivision,
    LaurentPoly,
    canonical_rep,
    divide_exact,
    equal_up_to_units,
    substitute,
)
from . import skein

__all__ = [
    "FoxError",
    "Wirtinger",
    "wirtinger",
    "alexander_matrix",
    "alexander_multi",
    "determinant",
    "variables",
    "row_check",
    "torres_crosscheck",
    "knot_crosscheck",
    "conway_axiom_check",
    "doubling_axiom_check",
]


class FoxError(RuntimeError):
    pass


def variables(n: int) -> tuple:
    return ("t",) if n == 1 else tuple(f"t{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Wirtinger:
    """Arcs and crossing relations.

    ``arc_component[g]`` is the component of generator ``g``; relation
    ``x`` is ``(over, under_in, under_out, sign)`` as generator indices.
    """

    arc_component: tuple
    relations: tuple

    @property
    def n_generators(self) -> int:
        return len(self.arc_component)


def wirtinger(d: LinkDiagram) -> Wirtinger:
    if not d.crossings:
        raise FoxError("Wirtinger presentation needs at least one crossing")
    starts = {q[2] for q in d.crossings}
    arc_of = {}
    arcs = []
    for comp in d.components:
        if not comp:
            continue
        first = next((i for i, e in enumerate(comp) if e in starts), None)
        if first is None:
            # a component that is never under: one arc for the whole loop
            for e in comp:
                arc_of[e] = len(arcs)
            arcs.append(d.edge_component[comp[0]])
            continue
        rot = comp[first:] + comp[:first]
        for e in rot:
            if e in starts:
                arcs.append(d.edge_component[e])
            arc_of[e] = len(arcs) - 1
    rels = tuple(
        (arc_of[d.over_in(x)], arc_of[q[0]], arc_of[q[2]], d.signs[x])
        for x, q in enumerate(d.crossings)
    )
    return Wirtinger(tuple(arcs), rels)


def alexander_matrix(d: LinkDiagram, w: Wirtinger | None = None):
    """Abelianised Fox Jacobian: one row per relation, one column per arc."""
    w = w or wirtinger(d)
    vs = variables(d.n_components)
    tvar = [LaurentPoly.var(v, vs) for v in vs]
    one = LaurentPoly.const(1, vs)
    zero = LaurentPoly.zero(vs)
    rows = []
    for o, a, c, s in w.relations:
        to = tvar[w.arc_component[o]]
        ta = tvar[w.arc_component[a]]
        row = [zero] * w.n_generators
        if s > 0:
            entries = ((o, one - ta), (a, to), (c, -one))
        else:
            inv = to ** -1
            entries = ((o, inv * (ta - one)), (a, inv), (c, -one))
        for g, val in entries:
            row[g] = row[g] + val
        rows.append(row)
    return rows, w


def row_check(d: LinkDiagram) -> bool:
    """Fundamental identity: each row pairs with ``(t_g - 1)`` to zero."""
    rows, w = alexander_matrix(d)
    vs = variables(d.n_components)
    one = LaurentPoly.const(1, vs)
    tg = [LaurentPoly.var(vs[w.arc_component[g]], vs) - one for g in range(w.n_generators)]
    return all(sum((r * t for r, t in zip(row, tg)), LaurentPoly.zero(vs)).is_zero() for row in rows)


def determinant(m) -> LaurentPoly:
    """Bareiss elimination with exact Laurent division."""
    n = len(m)
    if n == 0:
        raise FoxError("determinant of an empty matrix is undefined here")
    vs = m[0][0].vars
    a = [list(r) for r in m]
    sign = 1
    prev = LaurentPoly.const(1, vs)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(vs)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divide_exact(a[i][j] * piv - a[i][k] * a[k][j], prev)
            a[i][k] = LaurentPoly.zero(vs)
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def alexander_multi(d: LinkDiagram, column: int = 0) -> LaurentPoly:
    """Canonical representative of the multivariable Alexander polynomial."""
    n = d.n_components
    vs = variables(n)
    if n >= 2 and (d.is_split() or d.n_free_loops):
        return LaurentPoly.zero(vs)
    if not d.crossings:
        return LaurentPoly.const(1, vs)
    rows, w = alexander_matrix(d)
    ng = w.n_generators
    if n >= 2 and ng != len(rows):
        # some component is never under: it can be lifted off the rest
        return LaurentPoly.zero(vs)
    if not 0 <= column < ng:
        raise FoxError(f"column {column} out of range")
    if ng == 1:
        minor = LaurentPoly.const(1, vs)
    else:
        minor = determinant([[r[g] for g in range(ng) if g != column] for r in rows[:-1]])
    if minor.is_zero():
        return minor
    if n >= 2:
        tj = LaurentPoly.var(vs[w.arc_component[column]], vs) - 1
        try:
            minor = divide_exact(minor, tj)
        except InexactDivision as exc:
            raise FoxError(f"minor is not divisible by {tj}: remainder {exc.remainder}") from exc
    return canonical_rep(minor)


def _half_to_single(p: LaurentPoly, name="t", power=2) -> LaurentPoly:
    """Send every variable of ``p`` to ``name**power``."""
    return substitute(p, {v: {name: power} for v in p.vars}, (name,))


def torres_crosscheck(d: LinkDiagram, skein_raw: LaurentPoly | None = None) -> bool:
    """Compare ``(t - 1/t) * multi(t_i -> t**2)`` with the raw skein value at ``s -> t``."""
    if d.n_components < 2:
        raise FoxError("torres_crosscheck needs at least two components")
    multi = alexander_multi(d)
    raw = skein.raw_alexander(d) if skein_raw is None else skein_raw
    t = LaurentPoly.var("t")
    lhs = _half_to_single(multi) * (t - t ** -1)
    rhs = substitute(raw, {"s": "t"}, ("t",))
    return equal_up_to_units(lhs, rhs)


def knot_crosscheck(d: LinkDiagram) -> bool:
    """For knots: Fox output equals the skein output with ``s**2 = t``."""
    if d.n_components != 1:
        raise FoxError("knot_crosscheck needs a knot")
    multi = alexander_multi(d)
    sk = skein.alexander(d).poly
    return equal_up_to_units(multi, substitute(sk, {"s": {"t": "1/2"}}, ("t",)))


def conway_axiom_check(d: LinkDiagram, k: int) -> bool:
    """``L+ = L- + (t - 1/t) L0`` on raw skein values, with ``s -> t``.

    If crossing ``k`` is negative in ``d`` the roles of ``d`` and its
    crossing change are swapped.
    """
    change, res = d.crossing_change(k), d.resolve(k)
    plus, minus = (d, change) if d.signs[k] > 0 else (change, d)
    vals = [substitute(skein.raw_alexander(x), {"s": "t"}, ("t",)) for x in (plus, minus, res)]
    t = LaurentPoly.var("t")
    return vals[0] == vals[1] + (t - t ** -1) * vals[2]


def doubling_axiom_check(d: LinkDiagram, j: int) -> bool:
    """Cable component ``j`` and compare with ``(T + 1/T)`` times the doubled original.

    In Fox variables: ``A'(t_i**2) ≐ (T + 1/T) A(t_i**2, t_j**4)`` with
    ``T = t_j * prod t_i**lk(j, i)``.
    """
    n = d.n_components
    if n < 2:
        raise FoxError("doubling_axiom_check needs at least two components")
    cabled = d.cable_2_1(j)
    if cabled.n_components != n:
        raise FoxError("cable changed the number of components")
    vs = variables(n)
    a_new = alexander_multi(cabled)
    a_old = alexander_multi(d)
    sq = {v: {v: 2} for v in vs}
    lhs = substitute(a_new, sq, vs)
    quad = dict(sq)
    quad[vs[j]] = {vs[j]: 4}
    T = LaurentPoly.var(vs[j], vs)
    for i in range(n):
        if i != j:
            T = T * LaurentPoly.var(vs[i], vs, power=d.linking_number(j, i))
    rhs = (T + T ** -1) * substitute(a_old, quad, vs)
    return equal_up_to_units(lhs, rhs)
