"""Construction scripts: named bindings, construction steps, reports and expectations.

One statement per line, tokenised with shell quoting rules; ``#`` starts a
comment.  Statements::

    NAME = builtin K3|E1
    NAME = family twist|whitehead K
    NAME = diagram "PD[...]"            (PD, GC or BR notation)
    NAME = poly "2*t^(1) - 5 + 2*t^(-1)"
    NAME = alexander KNOT               (one-variable polynomial in t)
    NAME = multivariable LINK           (Fox calculus, t or t1..tn)
    NAME = knot_surgery X TORUS KNOT [fibered=yes|no]
    NAME = e1_fiber_sum X TORUS
    NAME = fiber_sum X1 T1 X2 T2
    NAME = internal_fiber_sum X T1 T2
    NAME = link_surgery LINK [surface=G,M]
    NAME = link_surgery_general LINK X1:T1 X2:T2 ...
    NAME = log_transform Y TORUS P Q Y01 [dual=yes|no] [tau=CLASS]
    NAME = double_transform X CLASS LINK|lk=L1,L2,...
    NAME = theta XK X
    NAME = e1_restricted
    NAME = knot_surgery_b1 PAIR KNOT
    NAME = fiber_sum_b1 PAIR OTHER [TORUS]
    NAME = log_transform_b1 PAIR P Q [Y01POLY] [tau=CLASS]
    NAME = sw0 PAIR
    show NAME
    expect NAME sw|classes|value|sw0|standard|reversed|collapse TEXT
    expect NAME realizable P1 P2 ... yes|no
    check realizability NAME P1 P2 ...
    check symmetry NAME
    check lemma NAME
    check axioms LINK                   (Fox row, Torres, Conway and doubling checks)
    check selftest COUNT SEED           (random skein against Fox agreement)
"""
from __future__ import annotations

import random
import shlex

from . import bplus1, fox, skein, swcalc
from .diagram import LinkDiagram, family, parse as parse_diagram
from .laurent import LaurentPoly, parse_poly, substitute
from .swcalc import IdentityViolation, ManifoldDescriptor, SWError

__all__ = ["ScriptError", "ExpectationFailed", "run_script", "sw_in_t", "verdict_words"]


class ScriptError(ValueError):
    pass


class ExpectationFailed(IdentityViolation):
    pass


_WORDS = {"yes": "symplectic", "no": "not symplectic", "unknown": "unknown"}


def verdict_words(v: str) -> str:
    return _WORDS.get(v, v)


def sw_in_t(X: ManifoldDescriptor) -> LaurentPoly | None:
    """SW with each used class ``C`` written through ``t = exp(2C)``.

    One used class gives the variable ``t``; several give ``t1, t2, ...``
    in basis order.
    """
    if X.sw is None:
        return None
    used = [c for c in X.class_basis if c in X.sw.used_vars()]
    if not used:
        return X.sw.restrict_vars(("t",))
    names = ["t"] if len(used) == 1 else [f"t{i + 1}" for i in range(len(used))]
    return substitute(X.sw.restrict_vars(tuple(used)), {c: {n: "1/2"} for c, n in zip(used, names)}, tuple(names))


def _pair_in_t(p: LaurentPoly, var: str) -> LaurentPoly:
    others = tuple(v for v in p.used_vars() if v != var)
    return substitute(p.restrict_vars((var,) + others), {var: {"t": "1/2"}}, ("t",) + others)


def _flag(text: str) -> bool:
    low = text.lower()
    if low in ("yes", "true", "1"):
        return True
    if low in ("no", "false", "0"):
        return False
    raise ScriptError(f"expected yes/no, got {text!r}")


def _split_opts(args):
    pos, opts = [], {}
    for a in args:
        if "=" in a and not a.startswith(("PD", "GC", "BR")):
            k, v = a.split("=", 1)
            opts[k] = v
        else:
            pos.append(a)
    return pos, opts


class _Runner:
    def __init__(self):
        self.env = {}
        self.records = []
        self.lines = []

    def get(self, name, kind=None):
        try:
            val = self.env[name]
        except KeyError:
            raise ScriptError(f"unknown name {name!r}") from None
        if kind is not None and not isinstance(val, kind):
            raise ScriptError(f"{name} is a {type(val).__name__}, expected {kind.__name__}")
        return val

    def knot(self, name):
        val = self.get(name)
        if isinstance(val, (LinkDiagram, LaurentPoly)):
            return val
        raise ScriptError(f"{name} is not a knot or a knot polynomial")

    # -- statements ---------------------------------------------------------
    def run_line(self, lineno, line):
        toks = shlex.split(line, comments=True)
        if not toks:
            return
        try:
            if len(toks) >= 3 and toks[1] == "=":
                self.env[toks[0]] = self.build(toks[2], toks[3:])
            elif toks[0] == "show":
                for name in toks[1:]:
                    self.show(name)
            elif toks[0] == "expect":
                self.expect(*toks[1:])
            elif toks[0] == "check":
                self.check(toks[1:])
            else:
                raise ScriptError(f"unknown statement {toks[0]!r}")
        except (ScriptError, SWError) as exc:
            exc.args = (f"line {lineno}: {exc.args[0] if exc.args else exc}",)
            raise
        except IdentityViolation as exc:
            exc.args = (f"line {lineno}: {exc.args[0] if exc.args else exc}",)
            raise

    def build(self, op, args):
        pos, opts = _split_opts(args)

        def need(n):
            if len(pos) < n:
                raise ScriptError(f"{op} needs {n} arguments")

        if op == "builtin":
            need(1)
            return swcalc.builtin(pos[0])
        if op == "family":
            need(2)
            return family(pos[0], int(pos[1]))
        if op == "diagram":
            need(1)
            return parse_diagram(" ".join(pos))
        if op == "poly":
            need(1)
            return parse_poly(" ".join(pos))
        if op == "alexander":
            need(1)
            d = self.get(pos[0], LinkDiagram)
            return substitute(skein.alexander(d).poly, {"s": {"t": "1/2"}}, ("t",))
        if op == "multivariable":
            need(1)
            return fox.alexander_multi(self.get(pos[0], LinkDiagram))
        if op == "knot_surgery":
            need(3)
            fib = _flag(opts["fibered"]) if "fibered" in opts else None
            return swcalc.knot_surgery(self.get(pos[0], ManifoldDescriptor), pos[1], self.knot(pos[2]), fibered=fib)
        if op == "e1_fiber_sum":
            need(2)
            return swcalc.e1_fiber_sum(self.get(pos[0], ManifoldDescriptor), pos[1])
        if op == "fiber_sum":
            need(4)
            return swcalc.fiber_sum(self.get(pos[0], ManifoldDescriptor), pos[1], self.get(pos[2], ManifoldDescriptor), pos[3])
        if op == "internal_fiber_sum":
            need(3)
            return swcalc.internal_fiber_sum(self.get(pos[0], ManifoldDescriptor), pos[1], pos[2])
        if op == "link_surgery":
            need(1)
            surf = None
            if "surface" in opts:
                surf = tuple(int(v) for v in opts["surface"].split(","))
            return swcalc.link_surgery_e1(self.get(pos[0], LinkDiagram), neg_surface=surf)
        if op == "link_surgery_general":
            need(2)
            L = self.get(pos[0], LinkDiagram)
            Xs, Ts = [], []
            for item in pos[1:]:
                if ":" not in item:
                    raise ScriptError(f"expected MANIFOLD:TORUS, got {item!r}")
                x, t = item.split(":", 1)
                Xs.append(self.get(x, ManifoldDescriptor))
                Ts.append(t)
            return swcalc.link_surgery_general(Xs, Ts, L)
        if op == "log_transform":
            need(5)
            return swcalc.log_transform(
                self.get(pos[0], ManifoldDescriptor), pos[1], int(pos[2]), int(pos[3]),
                self.get(pos[4], ManifoldDescriptor),
                dual_torus_hypothesis=_flag(opts.get("dual", "no")),
                tau=opts.get("tau"),
            )
        if op == "double_transform":
            need(2)
            X = self.get(pos[0], ManifoldDescriptor)
            cls = pos[1]
            if "lk" in opts:
                lks = [int(v) for v in opts["lk"].split(",")]
            elif len(pos) > 2:
                L = self.get(pos[2], LinkDiagram)
                j = X.class_basis.index(cls)
                lks = [0 if i == j else L.linking_number(j, i) for i in range(L.n_components)]
            else:
                raise ScriptError("double_transform needs lk=... or a link")
            return swcalc.double_transform(X, cls, lks)
        if op == "theta":
            need(2)
            return swcalc.theta(self.get(pos[0], ManifoldDescriptor), self.get(pos[1], ManifoldDescriptor))
        if op == "e1_restricted":
            return bplus1.e1_restricted()
        if op == "knot_surgery_b1":
            need(2)
            return bplus1.knot_surgery_b1(self.get(pos[0], bplus1.RestrictedPair), self.knot(pos[1]))
        if op == "fiber_sum_b1":
            need(2)
            pair = self.get(pos[0], bplus1.RestrictedPair)
            other = self.get(pos[1])
            torus = pos[2] if len(pos) > 2 else None
            return bplus1.fiber_sum_b1(pair, other, torus)
        if op == "log_transform_b1":
            need(3)
            y01 = self.get(pos[3], LaurentPoly) if len(pos) > 3 else None
            return bplus1.log_transform_b1(
                self.get(pos[0], bplus1.RestrictedPair), int(pos[1]), int(pos[2]), y01, tau=opts.get("tau")
            )
        if op == "sw0":
            need(1)
            pair = self.get(pos[0], bplus1.RestrictedPair)
            return _Sw0(pair.var, bplus1.sw0(pair))
        raise ScriptError(f"unknown operation {op!r}")

    # -- reports ------------------------------------------------------------
    def show(self, name):
        val = self.get(name)
        rec = {"name": name}
        if isinstance(val, ManifoldDescriptor):
            v = swcalc.symplectic_status(val)
            swt = sw_in_t(val)
            rec.update(kind="manifold", descriptor=val.to_dict(), sw_t=str(swt) if swt is not None else None)
            b = "unspecified" if val.b_plus is None else val.b_plus
            self.lines.append(f"{name}: e={val.euler} sign={val.signature} b+={b}")
            self.lines.append(f"  sw = {swt}")
            self.lines.append(f"  sw in classes = {val.sw}")
            self.lines.append(f"  classes: {' '.join(val.class_basis)}")
            self.lines.append(f"  symmetry: {'ok' if swcalc.symmetry_check(val) else 'FAILED'}")
            self.lines.append(f"  standard orientation: {verdict_words(v['standard'])}")
            self.lines.append(f"  reversed orientation: {verdict_words(v['reversed'])}")
            if val.canonical_class is not None:
                self.lines.append(f"  canonical class: {list(val.canonical_class)}")
            for w in val.warnings:
                self.lines.append(f"  warning: {w}")
        elif isinstance(val, bplus1.RestrictedPair):
            rec.update(kind="restricted", pair=val.to_dict(), lemma_equal=bplus1.lemma_equal(val))
            self.lines.append(f"{name}: restricted pair on {val.var}")
            self.lines.append(f"  SW+ = {val.plus.render()}")
            self.lines.append(f"  SW- = {val.minus.render()}")
            self.lines.append(f"  collapse = {_pair_in_t(bplus1.collapse(val.plus), val.var)}")
        elif isinstance(val, _Sw0):
            p = _pair_in_t(val.poly, val.var)
            rec.update(kind="sw0", poly=p.to_json(), text=str(p))
            self.lines.append(f"{name}: SW0 = {p}")
        elif isinstance(val, LaurentPoly):
            rec.update(kind="poly", poly=val.to_json(), text=str(val))
            self.lines.append(f"{name} = {val}")
        elif isinstance(val, LinkDiagram):
            rec.update(kind="diagram", pd=val.to_pd())
            self.lines.append(f"{name} = {val.to_pd()}")
        self.records.append(rec)

    def _value_text(self, name, field):
        val = self.get(name)
        if field == "sw":
            return sw_in_t(self.get(name, ManifoldDescriptor))
        if field == "classes":
            return self.get(name, ManifoldDescriptor).sw
        if field == "value":
            return self.get(name, LaurentPoly)
        if field == "sw0":
            v = self.get(name, _Sw0)
            return _pair_in_t(v.poly, v.var)
        if field == "collapse":
            p = self.get(name, bplus1.RestrictedPair)
            return _pair_in_t(bplus1.collapse(p.plus), p.var)
        if field in ("standard", "reversed"):
            return swcalc.symplectic_status(self.get(name, ManifoldDescriptor))[field]
        raise ScriptError(f"cannot expect field {field!r} of {type(val).__name__}")

    def expect(self, name=None, field=None, *rest):
        if name is None or field is None or not rest:
            raise ScriptError("expect NAME FIELD VALUE")
        if field == "realizable":
            if len(rest) < 2:
                raise ScriptError("expect NAME realizable P1 ... yes|no")
            ps = [int(v) for v in rest[:-1]]
            got = "yes" if swcalc.realizability_check(self.get(name, ManifoldDescriptor), ps) else "no"
            text = rest[-1]
        else:
            text = " ".join(rest)
            got = self._value_text(name, field)
        if isinstance(got, str):
            ok = got == text
        else:
            want = parse_poly(text) if text.strip() != "0" else LaurentPoly.zero(got.vars)
            if want.vars != got.vars and set(want.used_vars()) <= set(got.vars):
                want = want.restrict_vars(got.vars)
            ok = want == got
        rec = {"expect": f"{name} {field}", "want": text, "got": str(got), "ok": ok}
        self.records.append(rec)
        self.lines.append(f"expect {name} {field}: {'ok' if ok else 'FAILED'} (got {got})")
        if not ok:
            raise ExpectationFailed(f"expected {name} {field} = {text}, got {got}")

    def check(self, args):
        if not args:
            raise ScriptError("check needs a kind")
        kind = args[0]
        if kind == "realizability":
            X = self.get(args[1], ManifoldDescriptor)
            ps = [int(v) for v in args[2:]]
            ok = swcalc.realizability_check(X, ps)
            self.lines.append(
                f"check realizability {args[1]} {ps}: {'consistent' if ok else 'cannot be built by these log transforms'}"
            )
        elif kind == "symmetry":
            ok = swcalc.symmetry_check(self.get(args[1], ManifoldDescriptor))
            self.lines.append(f"check symmetry {args[1]}: {'ok' if ok else 'FAILED'}")
            if not ok:
                raise IdentityViolation(f"symmetry law fails for {args[1]}")
        elif kind == "lemma":
            ok = bplus1.lemma_equal(self.get(args[1], bplus1.RestrictedPair))
            self.lines.append(f"check lemma {args[1]}: {'ok' if ok else 'FAILED'}")
            if not ok:
                raise IdentityViolation(f"collapse sides differ for {args[1]}")
        elif kind == "axioms":
            d = self.get(args[1], LinkDiagram)
            ok = fox.row_check(d) if d.crossings else True
            ok = ok and (fox.knot_crosscheck(d) if d.n_components == 1 else fox.torres_crosscheck(d))
            ok = ok and all(fox.conway_axiom_check(d, k) for k in range(d.n_crossings))
            if d.n_components >= 2:
                ok = ok and all(fox.doubling_axiom_check(d, j) for j in range(d.n_components))
            self.lines.append(f"check axioms {args[1]}: {'ok' if ok else 'FAILED'}")
            if not ok:
                raise IdentityViolation(f"axiom check fails for {args[1]}")
        elif kind == "selftest":
            from .cli import random_braid_diagram
            count, seed = int(args[1]), int(args[2])
            rng = random.Random(seed)
            bad = 0
            for _ in range(count):
                d = random_braid_diagram(rng)
                good = fox.knot_crosscheck(d) if d.n_components == 1 else fox.torres_crosscheck(d)
                bad += not good
            ok = not bad
            self.lines.append(f"check selftest {count} {seed}: {count - bad}/{count} agree")
            if not ok:
                raise IdentityViolation(f"{bad} random diagrams disagree")
        else:
            raise ScriptError(f"unknown check {kind!r}")
        key = "consistent" if kind == "realizability" else "ok"
        self.records.append({"check": " ".join(args), key: ok})


class _Sw0:
    def __init__(self, var, poly):
        self.var = var
        self.poly = poly


def run_script(text: str):
    """Execute a script and return ``(lines, records, env)``."""
    r = _Runner()
    for lineno, line in enumerate(text.splitlines(), 1):
        r.run_line(lineno, line)
    return r.lines, r.records, r.env
