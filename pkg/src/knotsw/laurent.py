"""Exact multivariable Laurent polynomials with half-integer exponents.

A polynomial lives over an ordered tuple of variable names.  Exponents are
stored doubled (``2 * e``) so that ``t^(1/2)`` is the integer ``1`` and all
storage stays integral.  Coefficients are Python ints, so nothing overflows.

Values are immutable; every operation returns a new polynomial.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "LaurentError",
    "VariableMismatch",
    "InexactDivision",
    "FractionalExponent",
    "LaurentPoly",
    "Classification",
    "divide_exact",
    "substitute",
    "evaluate_all_ones",
    "canonical_rep",
    "classify",
    "equal_up_to_units",
    "render",
    "parse_poly",
]


class LaurentError(ValueError):
    pass


class VariableMismatch(LaurentError):
    pass


class FractionalExponent(LaurentError):
    pass


class InexactDivision(LaurentError):
    """Raised by :func:`divide_exact`; carries the nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def _double(e) -> int:
    """Convert a (half-)integer exponent to its doubled integer form."""
    f = Fraction(e) * 2
    if f.denominator != 1:
        raise FractionalExponent(f"exponent {e} is not a half-integer")
    return int(f)


def _undouble(d: int):
    return d // 2 if d % 2 == 0 else Fraction(d, 2)


class LaurentPoly:
    """Element of Z[v_1^{±1/2}, ..., v_n^{±1/2}].

    ``terms`` maps doubled-exponent tuples to nonzero ints.
    """

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None, vars: Iterable[str] = ("t",)):
        vs = tuple(vars)
        if len(set(vs)) != len(vs):
            raise LaurentError(f"duplicate variable names in {vs}")
        clean = {}
        if terms:
            n = len(vs)
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise LaurentError(f"monomial {e} does not match variables {vs}")
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.vars = vs
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> "LaurentPoly":
        # trusted fast path: terms already clean
        p = cls.__new__(cls)
        p.vars = vars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, vars=("t",)):
        return cls._raw({}, tuple(vars))

    @classmethod
    def const(cls, c: int, vars=("t",)):
        vars = tuple(vars)
        c = int(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, vars)

    @classmethod
    def monomial(cls, exps: Mapping[str, object] | None = None, coeff: int = 1, vars=("t",)):
        """Monomial ``coeff * prod v^e`` with real exponents given per name."""
        vars = tuple(vars)
        exps = dict(exps or {})
        unknown = set(exps) - set(vars)
        if unknown:
            raise VariableMismatch(f"variables {sorted(unknown)} not in {vars}")
        key = tuple(_double(exps.get(v, 0)) for v in vars)
        return cls({key: coeff}, vars)

    @classmethod
    def var(cls, name: str, vars=None, power=1):
        vars = tuple(vars) if vars is not None else (name,)
        return cls.monomial({name: power}, 1, vars)

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> dict:
        """Copy of the doubled-exponent term dictionary."""
        return dict(self._terms)

    def items(self):
        """(exponent-dict, coefficient) pairs with real exponents."""
        for e, c in self._terms.items():
            yield {v: _undouble(x) for v, x in zip(self.vars, e) if x}, c

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({render(self)!r}, vars={self.vars})"

    def __str__(self):
        return render(self)

    def coeff(self, exps: Mapping[str, object] | tuple = ()) -> int:
        """Coefficient at a monomial given as real exponents (dict) or a doubled tuple."""
        if isinstance(exps, tuple):
            key = exps
        else:
            key = tuple(_double(dict(exps).get(v, 0)) for v in self.vars)
        return self._terms.get(key, 0)

    # -- variable handling ------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.const(other, self.vars)
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if other.vars != self.vars:
            # the zero and constant polynomials are variable-agnostic
            if not other._terms:
                return LaurentPoly.zero(self.vars)
            if list(other._terms) == [(0,) * len(other.vars)]:
                return LaurentPoly.const(other._terms[(0,) * len(other.vars)], self.vars)
            raise VariableMismatch(f"variable sets differ: {self.vars} vs {other.vars}")
        return other

    def extend(self, vars: Iterable[str]) -> "LaurentPoly":
        """Re-express over a superset variable tuple (new variables get exponent 0)."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars]
        if missing:
            raise VariableMismatch(f"cannot drop variables {missing}")
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self._terms.items():
            key = [0] * len(vars)
            for i, x in zip(idx, e):
                key[i] = x
            out[tuple(key)] = c
        return LaurentPoly._raw(out, vars)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        new = tuple(mapping.get(v, v) for v in self.vars)
        return LaurentPoly(self._terms, new)

    def used_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self._terms))

    def restrict_vars(self, vars: Iterable[str]) -> "LaurentPoly":
        """Drop variables that do not occur (error if one of them does)."""
        vars = tuple(vars)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self._terms):
                raise VariableMismatch(f"variable {v} occurs in the polynomial")
        idx = [self.vars.index(v) if v in self.vars else None for v in vars]
        out = {}
        for e, c in self._terms.items():
            out[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return LaurentPoly._raw(out, vars)

    # -- ring operations --------------------------------------------------
    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.vars)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.vars)
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()}, self.vars)
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        n = len(self.vars)
        if n == 1:
            for (x,), c in a.items():
                for (y,), d in b.items():
                    k = (x + y,)
                    out[k] = out.get(k, 0) + c * d
        elif n == 2:
            for (x0, x1), c in a.items():
                for (y0, y1), d in b.items():
                    k = (x0 + y0, x1 + y1)
                    out[k] = out.get(k, 0) + c * d
        else:
            for e1, c in a.items():
                for e2, d in b.items():
                    k = tuple(map(int.__add__, e1, e2))
                    out[k] = out.get(k, 0) + c * d
        return LaurentPoly._raw({k: v for k, v in out.items() if v}, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise LaurentError("negative power of a non-monomial")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise LaurentError("negative power of a non-unit monomial")
            return LaurentPoly._raw({tuple(-x * -k for x in e): c ** -k}, self.vars)
        result = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, doubled: tuple) -> "LaurentPoly":
        """Multiply by the monomial with the given doubled exponents."""
        return LaurentPoly._raw(
            {tuple(map(int.__add__, e, doubled)): c for e, c in self._terms.items()}, self.vars
        )

    def invert(self) -> "LaurentPoly":
        """Apply v -> v^-1 to every variable."""
        return LaurentPoly._raw({tuple(-x for x in e): c for e, c in self._terms.items()}, self.vars)

    # -- degree bookkeeping -----------------------------------------------
    def span(self, var: str) -> tuple[int, int]:
        """(min, max) doubled exponent of ``var``; raises on zero."""
        if not self._terms:
            raise LaurentError("span of the zero polynomial")
        i = self.vars.index(var)
        xs = [e[i] for e in self._terms]
        return min(xs), max(xs)

    def leading(self):
        """Lexicographically greatest (doubled exponent, coefficient)."""
        e = max(self._terms)
        return e, self._terms[e]

    # -- convenience wrappers ---------------------------------------------
    def substitute(self, mapping):
        return substitute(self, mapping)

    def evaluate_all_ones(self) -> int:
        return evaluate_all_ones(self)

    def canonical_rep(self):
        return canonical_rep(self)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), c] for e, c in sorted(self._terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({tuple(e): c for e, c in data["terms"]}, data["vars"])


# ---------------------------------------------------------------------------
# operations


def divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``.

    Long division on lex-leading terms.  In a Laurent ring every monomial
    divides every other, so termination is enforced by the Newton-box bound
    on the quotient's exponents; leaving the box means the division is not
    exact and :class:`InexactDivision` is raised with the remainder.
    """
    den = num._coerce(den) if isinstance(den, LaurentPoly) else LaurentPoly.const(den, num.vars)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.vars)
    n = len(num.vars)
    lo = [min(e[i] for e in num._terms) - min(e[i] for e in den._terms) for i in range(n)]
    hi = [max(e[i] for e in num._terms) - max(e[i] for e in den._terms) for i in range(n)]
    lead_e, lead_c = den.leading()
    rem = dict(num._terms)
    quot: dict = {}
    dterms = list(den._terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        qe = tuple(x - y for x, y in zip(e, lead_e))
        if c % lead_c or any(not (l <= x <= h) for x, l, h in zip(qe, lo, hi)):
            raise InexactDivision(
                f"{render(num)} is not divisible by {render(den)}",
                LaurentPoly._raw(rem, num.vars),
            )
        qc = c // lead_c
        quot[qe] = qc
        for de, dc in dterms:
            k = tuple(map(int.__add__, qe, de))
            v = rem.get(k, 0) - qc * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot, num.vars)


def substitute(p: LaurentPoly, mapping: Mapping[str, object], target_vars=None) -> LaurentPoly:
    """Ring homomorphism sending each variable to a monomial.

    ``mapping[v]`` is a :class:`LaurentPoly` monomial with coefficient 1, a
    variable name, or a dict ``{name: exponent}``.  Variables missing from
    ``mapping`` map to themselves.  ``target_vars`` defaults to the variables
    of the images plus the unmapped source variables, in first-seen order.
    """
    images = {}
    seen: list = []
    for v in p.vars:
        img = mapping.get(v, v)
        if isinstance(img, str):
            img = {img: 1}
        if isinstance(img, LaurentPoly):
            if not img.is_monomial() or img.leading()[1] != 1:
                raise LaurentError(f"image of {v} must be a monic monomial")
            e, _ = img.leading()
            img = {name: Fraction(x, 2) for name, x in zip(img.vars, e) if x}
        img = {k: Fraction(x) for k, x in dict(img).items()}
        images[v] = img
        for name in img:
            if name not in seen:
                seen.append(name)
    unknown = set(mapping) - set(p.vars)
    if unknown:
        raise VariableMismatch(f"mapping names variables {sorted(unknown)} not in {p.vars}")
    tv = tuple(target_vars) if target_vars is not None else tuple(seen)
    missing = [name for name in seen if name not in tv]
    if missing:
        raise VariableMismatch(f"target variables {tv} lack {missing}")
    # doubled image exponent of each source variable, per target slot
    rows = []
    for v in p.vars:
        rows.append([_double(images[v].get(name, 0)) for name in tv])
    out: dict = {}
    for e, c in p._terms.items():
        key = [0] * len(tv)
        for x, row in zip(e, rows):
            if not x:
                continue
            for j, y in enumerate(row):
                prod = x * y
                if prod % 2:
                    raise FractionalExponent(
                        f"substitution produces a non-half-integer exponent in {tv[j]}"
                    )
                key[j] += prod // 2
        k = tuple(key)
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return LaurentPoly._raw(out, tv)


def evaluate_all_ones(p: LaurentPoly) -> int:
    return sum(p._terms.values())


def canonical_rep(p: LaurentPoly) -> LaurentPoly:
    """Representative of ``p`` up to sign and monomial factors.

    Each variable is shifted so that min + max exponent is 0 (or 1/2 when the
    doubled span is odd and exact centring would need a quarter exponent);
    then the sign is fixed so the lex-greatest monomial has a positive
    coefficient.
    """
    if p.is_zero():
        raise LaurentError("canonical_rep of the zero polynomial")
    n = len(p.vars)
    shift = []
    for i in range(n):
        xs = [e[i] for e in p._terms]
        shift.append(-((min(xs) + max(xs)) // 2))
    q = p.shift(tuple(shift))
    if q.leading()[1] < 0:
        q = -q
    return q


def equal_up_to_units(a: LaurentPoly, b: LaurentPoly) -> bool:
    """The ``≐`` relation: equality up to ±1 and monomials."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if a.vars != b.vars:
        b = a._coerce(b) if not set(b.used_vars()) - set(a.vars) else b.restrict_vars(a.vars)
    return canonical_rep(a) == canonical_rep(b)


@dataclass(frozen=True)
class Classification:
    symmetric: bool
    a_polynomial: bool
    monic: bool


def classify(p: LaurentPoly) -> Classification:
    """Symmetric / A-polynomial / monic flags of a one-variable polynomial."""
    used = p.used_vars()
    if len(used) > 1:
        raise LaurentError(f"classify expects one variable, got {used}")
    if len(p.vars) != 1:
        p = p.restrict_vars(used or p.vars[:1])
    symmetric = all(p._terms.get((-e[0],), 0) == c for e, c in p._terms.items())
    a_poly = symmetric and abs(evaluate_all_ones(p)) == 1
    monic = a_poly and abs(p.leading()[1]) == 1
    return Classification(symmetric, a_poly, monic)


# ---------------------------------------------------------------------------
# text form:  3*t^(1) - 7 + 3*t^(-1),  1*t1^(1/2)*t2^(-1/2)


def _fmt_exp(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


def render(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p._terms, reverse=True):
        c = p._terms[e]
        factors = [f"{v}^({_fmt_exp(x)})" for v, x in zip(p.vars, e) if x]
        body = f"{abs(c)}*" + "*".join(factors) if factors else str(abs(c))
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_.']*)(?:\^\(?\s*(-?\d+(?:/2)?)\s*\)?)?$")


def parse_poly(text: str, vars: Iterable[str] | None = None) -> LaurentPoly:
    """Inverse of :func:`render`; also accepts omitted ``1*`` and ``v^e``."""
    s = text.strip()
    if not s:
        raise LaurentError("empty polynomial text")
    pieces = []
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:].lstrip()
    # split on top-level +/- that are binary operators
    buf = ""
    depth = 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and buf.strip() and buf.rstrip()[-1] not in "^*":
            pieces.append((sign, buf.strip()))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
        i += 1
    pieces.append((sign, buf.strip()))
    parsed = []
    names: list = []
    for sg, term in pieces:
        if not term:
            raise LaurentError(f"malformed polynomial {text!r}")
        coeff = 1
        exps = {}
        for f in term.split("*"):
            f = f.strip()
            if re.fullmatch(r"\d+", f):
                coeff *= int(f)
                continue
            m = _FACTOR.match(f)
            if not m:
                raise LaurentError(f"bad factor {f!r} in {text!r}")
            name, e = m.group(1), m.group(2)
            exps[name] = exps.get(name, 0) + (Fraction(e) if e else 1)
            if name not in names:
                names.append(name)
        parsed.append((sg * coeff, exps))
    vs = tuple(vars) if vars is not None else (tuple(names) or ("t",))
    out = LaurentPoly.zero(vs)
    for c, exps in parsed:
        out = out + LaurentPoly.monomial(exps, c, vs)
    return out
