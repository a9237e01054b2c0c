"""Restricted invariants for b+ = 1 as exact tail series.

A :class:`TailSeries` ``(S, direction, var)`` stands for
``S * sum_{n >= 0} v**(±(2n+1))`` with ``v`` the torus variable, so in
``t = v**2`` the tail is ``sum t**(±(2n+1)/2)``.  Multiplying by
``v - 1/v`` telescopes the tail to ``-S`` (direction ``plus_infinity``)
or ``+S`` (``minus_infinity``); every finite manipulation closes over this
representation without truncation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, substitute
from .swcalc import HypothesisError, IdentityViolation, ManifoldDescriptor, SWError, knot_delta, _need_sw, torus_monomial

__all__ = [
    "PLUS",
    "MINUS",
    "TailSeries",
    "RestrictedPair",
    "e1_restricted",
    "tail_mul",
    "collapse",
    "coefficient",
    "lemma_equal",
    "sw0",
    "wall_dim",
    "wall_crossing_jump",
    "knot_surgery_b1",
    "fiber_sum_b1",
    "log_transform_b1",
    "absorb",
]

PLUS = "plus_infinity"
MINUS = "minus_infinity"


@dataclass(frozen=True)
class TailSeries:
    poly: LaurentPoly
    direction: str
    var: str

    def __post_init__(self):
        if self.direction not in (PLUS, MINUS):
            raise SWError(f"direction must be {PLUS} or {MINUS}")
        if self.var not in self.poly.vars:
            raise SWError(f"torus variable {self.var} not among {self.poly.vars}")

    @property
    def step(self) -> int:
        return 1 if self.direction == PLUS else -1

    def render(self) -> str:
        tail = "t^((2n+1)/2)" if self.direction == PLUS else "t^(-(2n+1)/2)"
        return f"({_in_t(self.poly, self.var)}) * SUM {tail}"

    def to_dict(self) -> dict:
        return {"poly": self.poly.to_json(), "direction": self.direction, "var": self.var, "text": self.render()}


@dataclass(frozen=True)
class RestrictedPair:
    plus: TailSeries
    minus: TailSeries

    def __post_init__(self):
        if self.plus.var != self.minus.var or self.plus.poly.vars != self.minus.poly.vars:
            raise SWError("both sides of a restricted pair need the same variables")

    @property
    def var(self) -> str:
        return self.plus.var

    def to_dict(self) -> dict:
        return {"plus": self.plus.to_dict(), "minus": self.minus.to_dict()}


def _in_t(p: LaurentPoly, var: str) -> str:
    """Render with the torus variable written through ``t = var**2``."""
    if p.is_zero():
        return "0"
    others = tuple(v for v in p.vars if v != var)
    target = ("t",) + others
    return str(substitute(p, {var: {"t": "1/2"}}, target).restrict_vars(
        ("t",) + tuple(v for v in others if v in p.used_vars())
    ))


def _v(ts_or_vars, var):
    vs = ts_or_vars if isinstance(ts_or_vars, tuple) else ts_or_vars.poly.vars
    return LaurentPoly.var(var, vs)


def e1_restricted() -> RestrictedPair:
    """E(1) with its fiber: ``SW- = sum t^((2n+1)/2)``, ``SW+ = -sum t^(-(2n+1)/2)``."""
    vs = ("F",)
    return RestrictedPair(
        plus=TailSeries(LaurentPoly.const(-1, vs), MINUS, "F"),
        minus=TailSeries(LaurentPoly.const(1, vs), PLUS, "F"),
    )


def tail_mul(ts: TailSeries, p: LaurentPoly) -> TailSeries:
    return TailSeries(ts.poly * p, ts.direction, ts.var)


def collapse(ts: TailSeries) -> LaurentPoly:
    """``(v - 1/v) * ts`` as a finite polynomial."""
    return -ts.poly if ts.direction == PLUS else ts.poly


def absorb(f: LaurentPoly, direction: str, var: str) -> LaurentPoly:
    """Finite part ``G`` with ``G * tail == f`` in the given direction."""
    v = LaurentPoly.var(var, f.vars)
    return f * (v ** -1 - v) if direction == PLUS else f * (v - v ** -1)


def coefficient(ts: TailSeries, exps) -> int:
    """Coefficient of one monomial (dict of real exponents, or doubled tuple)."""
    vs = ts.poly.vars
    if isinstance(exps, tuple):
        key = list(exps)
    else:
        from fractions import Fraction
        exps = dict(exps)
        key = [int(Fraction(exps.get(v, 0)) * 2) for v in vs]
    i = vs.index(ts.var)
    total = 0
    for e, c in ts.poly.terms.items():
        if any(e[j] != key[j] for j in range(len(vs)) if j != i):
            continue
        gap = (key[i] - e[i]) * ts.step  # doubled distance into the tail
        if gap >= 2 and gap % 4 == 2:
            total += c
    return total


def _truncate(ts: TailSeries, lo: int, hi: int) -> LaurentPoly:
    """Terms of the series with torus exponent (doubled) in ``[lo, hi]``."""
    vs = ts.poly.vars
    i = vs.index(ts.var)
    out = {}
    for e, c in ts.poly.terms.items():
        n = 0
        while True:
            x = e[i] + ts.step * (4 * n + 2)
            if (ts.step > 0 and x > hi) or (ts.step < 0 and x < lo):
                break
            if lo <= x <= hi:
                k = e[:i] + (x,) + e[i + 1:]
                out[k] = out.get(k, 0) + c
            n += 1
    return LaurentPoly(out, vs)


def lemma_equal(pair: RestrictedPair) -> bool:
    return collapse(pair.plus) == collapse(pair.minus)


def _checked(pair: RestrictedPair) -> RestrictedPair:
    if not lemma_equal(pair):
        raise IdentityViolation("collapse(SW+) != collapse(SW-)")
    return pair


def sw0(pair: RestrictedPair, report: dict | None = None) -> LaurentPoly:
    """Small-perturbation invariant.

    Positive torus exponents are read from ``SW+``, negative ones from
    ``SW-``; the exponent-zero part is taken from ``SW-`` and flagged in
    ``report`` when nonzero.
    """
    if pair.plus.direction != MINUS or pair.minus.direction != PLUS:
        raise SWError("sw0 needs SW+ running to -infinity and SW- to +infinity")
    i = pair.var
    idx = pair.plus.poly.vars.index(i)
    hi = max((e[idx] for e in pair.plus.poly.terms), default=0)
    lo = min((e[idx] for e in pair.minus.poly.terms), default=0)
    pos = _truncate(pair.plus, 1, max(hi, 1))
    neg = _truncate(pair.minus, min(lo, -1), -1)
    zero = _truncate(pair.minus, 0, 0)
    if report is not None:
        report["zero_exponent_nonzero"] = not zero.is_zero()
    return pos + neg + zero


def wall_dim(k_square: int, euler: int, signature: int) -> int:
    num = k_square - 3 * signature - 2 * euler
    if num % 4:
        raise SWError(f"k^2 = {k_square} fails the parity condition for e = {euler}, sign = {signature}")
    return num // 4


def wall_crossing_jump(delta: int) -> int:
    """Change of the invariant across the wall: ``(-1)**(delta/2 + 1)``."""
    if delta % 2:
        raise SWError(f"wall crossing needs an even dimension, got {delta}")
    return -1 if (delta // 2) % 2 == 0 else 1


def knot_surgery_b1(pair: RestrictedPair, K, c_embedded: bool = True,
                    complement_simply_connected: bool = True) -> RestrictedPair:
    """``SW±_{X_K,T} = SW±_{X,T} * Delta_K(t)``."""
    if not c_embedded:
        raise HypothesisError("the torus must be c-embedded")
    if not complement_simply_connected:
        raise HypothesisError("the torus complement must be simply connected")
    delta = knot_delta(K)
    factor = substitute(delta, {"s": {pair.var: 1}}, pair.plus.poly.vars)
    return _checked(RestrictedPair(tail_mul(pair.plus, factor), tail_mul(pair.minus, factor)))


def _align(p: LaurentPoly, var_from: str, var_to: str, target: tuple) -> LaurentPoly:
    clash = [v for v in p.vars if v != var_from and v in target and v != var_to]
    extra = [v for v in p.vars if v != var_from and v not in target]
    vs = tuple(target) + tuple(extra)
    if clash:
        raise SWError(f"classes {clash} appear on both sides")
    return substitute(p, {var_from: {var_to: 1}}, vs)


def fiber_sum_b1(pair: RestrictedPair, other, torus: str | None = None) -> LaurentPoly:
    """SW of a fiber sum along the torus of ``pair``.

    ``other`` is a second :class:`RestrictedPair` (both b+ = 1) or a
    b+ > 1 descriptor with the torus name ``torus``.  Each ``(v - 1/v)``
    factor collapses one tail; the answer must not depend on the side.
    """
    _checked(pair)
    var = pair.var
    if isinstance(other, RestrictedPair):
        _checked(other)
        results = []
        for a, b in ((pair.plus, other.plus), (pair.minus, other.minus), (pair.plus, other.minus)):
            left = collapse(a)
            right = _align(collapse(b), other.var, var, left.vars)
            left = left.extend(right.vars)
            results.append(left * right)
    elif isinstance(other, ManifoldDescriptor):
        if torus is None:
            raise SWError("fiber sum with a descriptor needs its torus name")
        sw = _need_sw(other)
        v2 = torus_monomial(other, torus)
        if not v2.is_monomial() or sum(1 for x in v2.leading()[0] if x) != 1:
            raise SWError("the glued torus must be a basis class")
        tvar = other.class_basis[[bool(x) for x in v2.leading()[0]].index(True)]
        rel = sw * (v2 - v2 ** -1)
        results = []
        for a in (pair.plus, pair.minus):
            left = collapse(a)
            right = _align(rel, tvar, var, left.vars)
            left = left.extend(right.vars)
            results.append(left * right)
    else:
        raise SWError(f"cannot fiber-sum with {type(other).__name__}")
    if any(r != results[0] for r in results[1:]):
        raise IdentityViolation("fiber sum depends on the chamber choice")
    return results[0]


def log_transform_b1(pair: RestrictedPair, p: int, q: int, y01: LaurentPoly | None = None,
                     tau: str | None = None) -> RestrictedPair:
    """``p SW±_Y + q (SW_{Y(0/1)} folded)`` with the finite part absorbed into each tail."""
    if p == 0:
        raise SWError("p must be nonzero")
    vs = pair.plus.poly.vars
    if y01 is None or q == 0:
        f = LaurentPoly.zero(vs)
    else:
        f = y01
        if tau is not None:
            i = f.vars.index(tau)
            terms = {}
            for e, c in f.terms.items():
                if (e[i] // 2) % 2:
                    continue
                key = e[:i] + (0,) + e[i + 1:]
                terms[key] = terms.get(key, 0) + c
            f = LaurentPoly(terms, f.vars).restrict_vars(tuple(v for v in f.vars if v != tau))
        if f.vars != vs:
            f = f.restrict_vars(vs) if set(f.used_vars()) <= set(vs) else f
            if f.vars != vs:
                raise SWError(f"Y(0/1) classes {f.vars} do not match {vs}")
    sides = []
    for ts in (pair.plus, pair.minus):
        sides.append(TailSeries(p * ts.poly + q * absorb(f, ts.direction, ts.var), ts.direction, ts.var))
    return _checked(RestrictedPair(*sides))
