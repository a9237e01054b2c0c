"""Symbolic 4-manifold descriptors and the SW construction calculus.

SW values live in the group ring of the class basis: the variable named
after a class ``C`` stands for ``exp(C)``.  A torus ``T`` therefore carries
``t = exp(2[T]) = v_T**2`` and every SW value has integer exponents.

Descriptors are immutable; each construction returns a new one and checks
the SW symmetry law on its way out.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd

from .diagram import LinkDiagram
from .laurent import (
    LaurentPoly,
    classify,
    divide_exact,
    evaluate_all_ones,
    substitute,
)
from . import fox, skein

__all__ = [
    "SWError",
    "HypothesisError",
    "IdentityViolation",
    "TorusMark",
    "ManifoldDescriptor",
    "builtin",
    "torus_monomial",
    "relative_sw",
    "e1_fiber_sum",
    "fiber_sum",
    "internal_fiber_sum",
    "knot_surgery",
    "link_surgery_e1",
    "link_surgery_general",
    "log_transform",
    "double_transform",
    "theta",
    "gromov_knot_surgery",
    "symplectic_status",
    "realizability_check",
    "symmetry_check",
    "knot_delta",
]


class SWError(ValueError):
    """Bad input to a construction."""


class HypothesisError(SWError):
    """A theorem hypothesis flag is missing or false."""


class IdentityViolation(RuntimeError):
    """An identity the calculus relies on failed."""


@dataclass(frozen=True)
class TorusMark:
    class_vec: tuple
    c_embedded: bool = True
    complement_simply_connected: bool = True
    symplectic: bool = False

    @property
    def nullhomologous(self) -> bool:
        return not any(self.class_vec)


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    euler: int
    signature: int
    b_plus: int | None
    class_basis: tuple
    sw: LaurentPoly | None
    tori: dict = field(default_factory=dict)
    simply_connected: bool = False
    symplectic: str = "unknown"
    canonical_class: tuple | None = None
    neg_surface: tuple | None = None
    pairing: tuple | None = None
    warnings: tuple = ()
    history: tuple = ()

    def torus(self, name: str) -> TorusMark:
        try:
            return self.tori[name]
        except KeyError:
            raise SWError(f"{self.name} has no torus named {name!r}") from None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "euler": self.euler,
            "signature": self.signature,
            "b_plus": self.b_plus,
            "class_basis": list(self.class_basis),
            "sw": self.sw.to_json() if self.sw is not None else None,
            "sw_text": str(self.sw) if self.sw is not None else None,
            "tori": {
                k: {
                    "class_vec": list(t.class_vec),
                    "c_embedded": t.c_embedded,
                    "complement_simply_connected": t.complement_simply_connected,
                    "symplectic": t.symplectic,
                }
                for k, t in self.tori.items()
            },
            "simply_connected": self.simply_connected,
            "symplectic": self.symplectic,
            "canonical_class": list(self.canonical_class) if self.canonical_class is not None else None,
            "neg_surface": list(self.neg_surface) if self.neg_surface is not None else None,
            "warnings": list(self.warnings),
            "history": list(self.history),
            "verdict": symplectic_status(self),
        }


# ---------------------------------------------------------------------------
# helpers


def _unit(basis, name):
    return tuple(1 if c == name else 0 for c in basis)


def torus_monomial(X: ManifoldDescriptor, T: str) -> LaurentPoly:
    """``v_T = exp([T])`` as a monomial over the class basis."""
    vec = X.torus(T).class_vec
    return LaurentPoly.monomial(dict(zip(X.class_basis, vec)), 1, X.class_basis)


def _torus_image(X, T) -> dict:
    return {c: e for c, e in zip(X.class_basis, X.torus(T).class_vec) if e}


def _need_sw(X):
    if X.sw is None:
        raise HypothesisError(f"{X.name} has b+ = 1; use the restricted calculus")
    return X.sw


def _need_bplus(X, at_least=2):
    if X.b_plus is not None and X.b_plus < at_least:
        raise HypothesisError(f"{X.name} has b+ = {X.b_plus}; need at least {at_least}")


def _need_c_embedded(X, T):
    mark = X.torus(T)
    if not mark.c_embedded:
        raise HypothesisError(f"torus {T} of {X.name} is not c-embedded")
    if mark.nullhomologous:
        raise HypothesisError(f"torus {T} of {X.name} is nullhomologous")
    return mark


def _finish(X: ManifoldDescriptor) -> ManifoldDescriptor:
    if not symmetry_check(X):
        raise IdentityViolation(f"{X.name}: SW symmetry law fails for {X.sw}")
    return X


def _rename_basis(X: ManifoldDescriptor, taken, prefix: str, keep=()):
    """Rename classes of ``X`` that clash with ``taken``; returns (mapping, new basis)."""
    mapping = {}
    for c in X.class_basis:
        if c in keep:
            continue
        new = c
        while new in taken or new in mapping.values():
            new = f"{prefix}.{new}"
        mapping[c] = new
    return mapping


def knot_delta(K) -> LaurentPoly:
    """Alexander polynomial in ``s`` (``s**2 = t``) for a diagram or a polynomial in ``t``."""
    if isinstance(K, LinkDiagram):
        if K.n_components != 1:
            raise SWError("knot surgery needs a one-component diagram")
        return skein.alexander(K).poly
    if isinstance(K, LaurentPoly):
        if K.vars == ("s",):
            return K
        used = K.used_vars()
        if len(used) > 1:
            raise SWError("knot polynomial must be in one variable")
        p = K.restrict_vars(used or ("t",)) if K.vars != ("t",) else K
        if p.vars != ("t",):
            p = p.rename({p.vars[0]: "t"})
        return substitute(p, {"t": {"s": 2}}, ("s",))
    raise SWError(f"cannot read a knot from {type(K).__name__}")


def _delta_t(delta_s: LaurentPoly) -> LaurentPoly:
    return substitute(delta_s, {"s": {"t": "1/2"}}, ("t",))


# ---------------------------------------------------------------------------
# builtins


def builtin(name: str) -> ManifoldDescriptor:
    key = name.upper().replace("(", "").replace(")", "")
    if key in ("K3", "E2"):
        basis = ("T1", "T2", "T3")
        tori = {
            c: TorusMark(_unit(basis, c), True, True, True) for c in basis
        }
        return ManifoldDescriptor(
            name="K3",
            euler=24,
            signature=-16,
            b_plus=3,
            class_basis=basis,
            sw=LaurentPoly.const(1, basis),
            tori=tori,
            simply_connected=True,
            symplectic="yes",
            canonical_class=(0, 0, 0),
            neg_surface=(0, -2),
            history=("builtin K3",),
        )
    if key == "E1":
        basis = ("F",)
        return ManifoldDescriptor(
            name="E1",
            euler=12,
            signature=-8,
            b_plus=1,
            class_basis=basis,
            sw=None,
            tori={"F": TorusMark((1,), True, True, True)},
            simply_connected=True,
            symplectic="yes",
            neg_surface=(0, -1),
            history=("builtin E1",),
        )
    raise SWError(f"unknown builtin manifold {name!r}; known: K3, E1")


# ---------------------------------------------------------------------------
# gluing


def relative_sw(X: ManifoldDescriptor, T: str) -> LaurentPoly:
    """``SW_X * (v_T - 1/v_T)`` for a c-embedded torus."""
    sw = _need_sw(X)
    _need_bplus(X)
    _need_c_embedded(X, T)
    v = torus_monomial(X, T)
    return sw * (v - v ** -1)


def e1_fiber_sum(X: ManifoldDescriptor, T: str, name: str | None = None) -> ManifoldDescriptor:
    """Fiber sum with E(1) along its fiber: SW becomes the relative invariant."""
    sw = relative_sw(X, T)
    out = replace(
        X,
        name=name or f"E1#{X.name}",
        euler=X.euler + 12,
        signature=X.signature - 8,
        b_plus=None if X.b_plus is None else X.b_plus + 2,
        sw=sw,
        symplectic="unknown",
        canonical_class=None,
        history=X.history + (f"e1_fiber_sum {T}",),
    )
    return _finish(out)


def fiber_sum(X1, T1, X2, T2, name: str | None = None) -> ManifoldDescriptor:
    """Glue along ``T1`` and ``T2``; ``[T2]`` is identified with ``[T1]``."""
    rel1 = relative_sw(X1, T1)
    rel2 = relative_sw(X2, T2)
    m2 = X2.torus(T2)
    if sorted(m2.class_vec) != [0] * (len(m2.class_vec) - 1) + [1]:
        raise SWError(f"torus {T2} of {X2.name} must be a basis class to be identified")
    t2_class = X2.class_basis[m2.class_vec.index(1)]
    mapping = _rename_basis(X2, set(X1.class_basis), X2.name, keep=(t2_class,))
    img1 = _torus_image(X1, T1)
    basis = tuple(X1.class_basis) + tuple(mapping[c] for c in X2.class_basis if c != t2_class)
    rel1 = rel1.extend(basis)
    sub = {c: {mapping[c]: 1} for c in mapping}
    sub[t2_class] = img1
    rel2 = substitute(rel2, sub, basis)
    tori = dict(X1.tori)
    for tname, mark in X2.tori.items():
        if tname == T2:
            continue
        vec = dict.fromkeys(basis, 0)
        for c, e in zip(X2.class_basis, mark.class_vec):
            if c == t2_class:
                for cc, ee in img1.items():
                    vec[cc] += e * ee
            else:
                vec[mapping[c]] += e
        new = tname if tname not in tori else f"{X2.name}.{tname}"
        tori[new] = replace(mark, class_vec=tuple(vec[c] for c in basis))
    tori = {k: replace(v, class_vec=tuple(v.class_vec) + (0,) * (len(basis) - len(v.class_vec))) for k, v in tori.items()}
    b = None if X1.b_plus is None or X2.b_plus is None else X1.b_plus + X2.b_plus + 1
    out = ManifoldDescriptor(
        name=name or f"{X1.name}#{X2.name}",
        euler=X1.euler + X2.euler,
        signature=X1.signature + X2.signature,
        b_plus=b,
        class_basis=basis,
        sw=rel1 * rel2,
        tori=tori,
        simply_connected=X1.torus(T1).complement_simply_connected and m2.complement_simply_connected,
        symplectic="unknown",
        history=X1.history + X2.history + (f"fiber_sum {T1}={T2}",),
    )
    return _finish(out)


def internal_fiber_sum(X, T1, T2, name: str | None = None) -> ManifoldDescriptor:
    """Glue two tori of one manifold; the second class is identified with the first."""
    if T1 == T2:
        raise SWError("internal fiber sum needs two distinct tori")
    sw = _need_sw(X)
    _need_bplus(X)
    _need_c_embedded(X, T1)
    m2 = _need_c_embedded(X, T2)
    v1, v2 = torus_monomial(X, T1), torus_monomial(X, T2)
    prod = sw * (v1 - v1 ** -1) * (v2 - v2 ** -1)
    if sorted(m2.class_vec) != [0] * (len(m2.class_vec) - 1) + [1]:
        raise SWError(f"torus {T2} must be a basis class to be identified")
    c2 = X.class_basis[m2.class_vec.index(1)]
    basis = tuple(c for c in X.class_basis if c != c2)
    img1 = _torus_image(X, T1)
    if c2 in img1:
        raise SWError("the two tori share a class")
    new_sw = substitute(prod, {c2: img1}, basis)
    tori = {}
    for k, mark in X.tori.items():
        if k == T2:
            continue
        vec = dict(zip(X.class_basis, mark.class_vec))
        e2 = vec.pop(c2)
        for c, e in img1.items():
            vec[c] += e2 * e
        tori[k] = replace(mark, class_vec=tuple(vec[c] for c in basis))
    out = replace(
        X,
        name=name or f"{X.name}_{T1}{T2}",
        b_plus=None,
        class_basis=basis,
        sw=new_sw,
        tori=tori,
        symplectic="unknown",
        canonical_class=None,
        warnings=X.warnings + ("b_plus after an internal fiber sum is unspecified",),
        history=X.history + (f"internal_fiber_sum {T1}={T2}",),
    )
    return _finish(out)


# ---------------------------------------------------------------------------
# surgery


def knot_surgery(X, T, K, fibered: bool | None = None, name: str | None = None) -> ManifoldDescriptor:
    """``SW_{X_K} = SW_X * Delta_K(t)`` with ``t = v_T**2``."""
    sw = _need_sw(X)
    _need_bplus(X)
    mark = _need_c_embedded(X, T)
    if not mark.complement_simply_connected:
        raise HypothesisError(f"complement of {T} in {X.name} is not simply connected")
    if not X.simply_connected:
        raise HypothesisError(f"{X.name} is not simply connected")
    delta = knot_delta(K)
    flags = classify(_delta_t(delta))
    if not flags.a_polynomial:
        raise IdentityViolation(f"knot polynomial {delta} is not an A-polynomial")
    if fibered and not flags.monic:
        raise HypothesisError("a fibered knot has a monic Alexander polynomial")
    factor = substitute(delta, {"s": _torus_image(X, T)}, X.class_basis)
    d = max(delta.span("s")) // 2  # degree in t
    if X.symplectic == "yes" and mark.symplectic and fibered:
        symp = "yes"
    elif not flags.monic:
        symp = "no"
    else:
        symp = "unknown"
    kappa = None
    if X.canonical_class is not None and X.symplectic == "yes" and fibered:
        kappa = tuple(k + 2 * d * c for k, c in zip(X.canonical_class, mark.class_vec))
    out = replace(
        X,
        name=name or f"{X.name}_K",
        sw=sw * factor,
        symplectic=symp,
        canonical_class=kappa,
        history=X.history + (f"knot_surgery {T} delta={_delta_t(delta)} fibered={fibered}",),
    )
    return _finish(out)


def link_surgery_e1(L: LinkDiagram, name: str | None = None, neg_surface=None) -> ManifoldDescriptor:
    """``SW_{E(1)_L}`` is the multivariable Alexander polynomial at ``t_j = v_j**2``."""
    n = L.n_components
    if n < 2:
        raise SWError("E(1)_K for a knot has b+ = 1; use the restricted calculus")
    multi = fox.alexander_multi(L)
    basis = tuple(f"Tm{j + 1}" for j in range(n))
    sw = substitute(multi, {f"t{j + 1}": {basis[j]: 2} for j in range(n)}, basis)
    warnings = ()
    if any(L.linking_number(i, j) for i in range(n) for j in range(i + 1, n)):
        warnings = ("nonzero linking: relations among the torus classes are unknown",)
    tori = {c: TorusMark(_unit(basis, c), True, True, False) for c in basis}
    out = ManifoldDescriptor(
        name=name or "E1_L",
        euler=12 * n,
        signature=-8 * n,
        b_plus=2 * n - 1,
        class_basis=basis,
        sw=sw,
        tori=tori,
        simply_connected=True,
        symplectic="unknown",
        neg_surface=tuple(neg_surface) if neg_surface is not None else None,
        warnings=warnings,
        history=(f"link_surgery_e1 {L.to_pd()}",),
    )
    return _finish(out)


def link_surgery_general(Xs, Ts, L: LinkDiagram, name: str | None = None) -> ManifoldDescriptor:
    """``Delta_L * prod_j SW_{X_j} (v_j - 1/v_j)`` with ``t_j = v_j**2``."""
    n = L.n_components
    if n < 2:
        raise SWError("one-component input: use knot_surgery")
    if len(Xs) != n or len(Ts) != n:
        raise SWError(f"need {n} manifolds and {n} tori")
    basis = []
    sub_sw = []
    link_vars = []
    tori = {}
    for j, (X, T) in enumerate(zip(Xs, Ts)):
        mark = _need_c_embedded(X, T)
        rel = relative_sw(X, T)
        if not mark.complement_simply_connected or not X.simply_connected:
            raise HypothesisError(f"{X.name}: knot-surgery hypotheses fail for {T}")
        prefix = f"X{j + 1}"
        mapping = {c: f"{prefix}.{c}" for c in X.class_basis}
        basis += [mapping[c] for c in X.class_basis]
        sub_sw.append((rel, mapping))
        link_vars.append({mapping[c]: e for c, e in _torus_image(X, T).items()})
        for k, m in X.tori.items():
            tori[f"{prefix}.{k}"] = (m, mapping, X.class_basis)
    basis = tuple(basis)
    sw = LaurentPoly.const(1, basis)
    for rel, mapping in sub_sw:
        sw = sw * substitute(rel, {c: {v: 1} for c, v in mapping.items()}, basis)
    multi = fox.alexander_multi(L)
    img = {f"t{j + 1}": {c: 2 * e for c, e in link_vars[j].items()} for j in range(n)}
    sw = sw * substitute(multi, img, basis)
    marks = {}
    for k, (m, mapping, old_basis) in tori.items():
        vec = dict.fromkeys(basis, 0)
        for c, e in zip(old_basis, m.class_vec):
            vec[mapping[c]] += e
        marks[k] = replace(m, class_vec=tuple(vec[c] for c in basis))
    b = None if any(X.b_plus is None for X in Xs) else sum(X.b_plus for X in Xs) + n - 1
    out = ManifoldDescriptor(
        name=name or "X_L",
        euler=sum(X.euler for X in Xs),
        signature=sum(X.signature for X in Xs),
        b_plus=b,
        class_basis=basis,
        sw=sw,
        tori=marks,
        simply_connected=True,
        symplectic="unknown",
        history=(f"link_surgery_general {L.to_pd()}",),
    )
    return _finish(out)


def log_transform(Y, torus, p: int, q: int, Y01, dual_torus_hypothesis: bool = False,
                  tau: str | None = None, name: str | None = None) -> ManifoldDescriptor:
    """``p SW_Y + q SW_{Y(0/1)}``.

    Without the dual-torus hypothesis the shift sum over ``2 i tau`` is
    folded: terms of ``SW_{Y(0/1)}`` with odd ``tau`` exponent are dropped
    and ``tau`` is set to 1 (the class ``tau`` must not be in Y's basis).
    """
    sw = _need_sw(Y)
    if Y.b_plus is None or Y.b_plus < 3:
        raise HypothesisError(f"log transform formula needs b+ >= 3, {Y.name} has {Y.b_plus}")
    Y.torus(torus)
    if gcd(p, q) != 1:
        raise SWError(f"({p}, {q}) is not a coprime pair")
    other = _need_sw(Y01)
    if tau is not None and not dual_torus_hypothesis:
        if tau in Y.class_basis:
            raise SWError(f"{tau} is a class of {Y.name}")
        i = other.vars.index(tau)
        terms = {}
        for e, c in other.terms.items():
            if (e[i] // 2) % 2:
                continue
            key = e[:i] + (0,) + e[i + 1:]
            terms[key] = terms.get(key, 0) + c
        other = LaurentPoly(terms, other.vars)
    try:
        other = other.restrict_vars(Y.class_basis)
    except ValueError as exc:
        raise SWError(f"SW of {Y01.name} involves classes outside {Y.name}: {exc}") from None
    out = replace(
        Y,
        name=name or f"{Y.name}({p}/{q})",
        sw=p * sw + q * other,
        symplectic="unknown",
        canonical_class=None,
        history=Y.history + (f"log_transform {torus} p={p} q={q}",),
    )
    return _finish(out)


def double_transform(X, j, lks, name: str | None = None) -> ManifoldDescriptor:
    """Order-2 log transform on ``T_j``: ``(w + 1/w) SW(v_j -> v_j**2)``.

    ``w = v_j * prod_i v_i**lk(j, i)``; ``lks`` maps class names (or
    indices) to linking numbers with component ``j``.
    """
    sw = _need_sw(X)
    basis = X.class_basis
    cj = basis[j] if isinstance(j, int) else j
    if cj not in basis:
        raise SWError(f"{cj} is not a class of {X.name}")
    if lks is None:
        raise SWError("double transform needs the linking numbers")
    if not isinstance(lks, dict):
        lks = {basis[i]: lk for i, lk in enumerate(lks)}
    lks = {basis[k] if isinstance(k, int) else k: v for k, v in lks.items()}
    w = LaurentPoly.var(cj, basis)
    for c, lk in lks.items():
        if c != cj and lk:
            w = w * LaurentPoly.var(c, basis, power=lk)
    doubled = substitute(sw, {cj: {cj: 2}}, basis)
    out = replace(
        X,
        name=name or f"{X.name}~{cj}",
        sw=(w + w ** -1) * doubled,
        symplectic="unknown",
        canonical_class=None,
        history=X.history + (f"double_transform {cj}",),
    )
    return _finish(out)


def theta(XK, X) -> LaurentPoly:
    """Exact quotient ``SW_{X_K} / SW_X``."""
    num, den = _need_sw(XK), _need_sw(X)
    if den.is_zero():
        raise SWError("theta needs a nonzero SW for the base manifold")
    if den.vars != num.vars:
        den = den.extend(num.vars) if set(den.vars) <= set(num.vars) else den
    try:
        return divide_exact(num, den)
    except ValueError as exc:
        raise IdentityViolation(f"theta division is not exact: {exc}") from exc


def gromov_knot_surgery(X, T, K, fibered: bool = False):
    """Canonical-class update and Gromov multiplier ``tau**d Delta_K(tau)``, ``tau = v_T``."""
    if X.symplectic != "yes":
        raise HypothesisError(f"{X.name} is not known to be symplectic")
    mark = _need_c_embedded(X, T)
    if not mark.symplectic:
        raise HypothesisError(f"torus {T} is not symplectic")
    if not fibered:
        raise HypothesisError("fiberedness of the knot must be declared")
    delta = knot_delta(K)
    dt = _delta_t(delta)
    if not classify(dt).monic:
        raise HypothesisError("Delta is not monic, so the knot is not fibered")
    d = max(dt.span("t")) // 2
    mult = (dt * LaurentPoly.monomial({"t": d}, 1, ("t",))).rename({"t": "tau"})
    kappa = None
    if X.canonical_class is not None:
        kappa = tuple(k + 2 * d * c for k, c in zip(X.canonical_class, mark.class_vec))
    return kappa, mult


# ---------------------------------------------------------------------------
# verdicts


def symplectic_status(X) -> dict:
    standard = X.symplectic
    reversed_ = "unknown"
    if X.neg_surface is not None:
        g, m = X.neg_surface
        if (g > 0 and m < 2 - 2 * g) or (g == 0 and m < 0):
            reversed_ = "no"
    return {"standard": standard, "reversed": reversed_}


def realizability_check(X, multiplicities) -> bool:
    """Necessary condition for a log-transform construction: ``|SW(1,..,1)| = |prod p_i|``."""
    sw = _need_sw(X)
    prod = 1
    for p in multiplicities:
        prod *= p
    return abs(evaluate_all_ones(sw)) == abs(prod)


def symmetry_check(X) -> bool:
    if X.sw is None or X.sw.is_zero():
        return True
    total = X.euler + X.signature
    if total % 4:
        raise SWError(f"e + sign = {total} is not divisible by 4")
    sign = -1 if (total // 4) % 2 else 1
    return X.sw.invert() == sign * X.sw
