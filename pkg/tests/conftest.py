import random

import sympy
from hypothesis import settings
from hypothesis import strategies as st

from knotsw.laurent import LaurentPoly

# fixed seeds: derandomised examples, no wall-clock deadline
settings.register_profile("knotsw", deadline=None, derandomize=True)
settings.load_profile("knotsw")

SYM = {}


def sym(name):
    if name not in SYM:
        SYM[name] = sympy.Symbol(name, positive=True)
    return SYM[name]


def to_sympy(p: LaurentPoly):
    """Independent oracle form: doubled exponents become rational powers."""
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Integer(c)
        for v, x in zip(p.vars, e):
            term *= sym(v) ** sympy.Rational(x, 2)
        expr += term
    return expr


def sympy_equal(a, b) -> bool:
    return sympy.expand(a - b) == 0


def polys(vars=("t",), max_terms=5, max_exp=4, max_coeff=6, half=True):
    step = 1 if half else 2
    exp = st.integers(-max_exp, max_exp).map(lambda x: x * step)
    key = st.tuples(*[exp for _ in vars])
    return st.dictionaries(key, st.integers(-max_coeff, max_coeff), max_size=max_terms).map(
        lambda d: LaurentPoly(d, vars)
    )


def seeded(seed):
    return random.Random(seed)


def sympy_knot_alexander(d):
    """Alexander polynomial of a knot diagram by an independent route.

    Classical Alexander matrix over sympy (arcs from the PD data, rows
    t, -1, 1-t), then a first minor; returned normalised as a sympy
    polynomial in t with positive leading coefficient and nonzero constant.
    """
    t = sympy.Symbol("t")
    if d.n_crossings == 0:
        return sympy.Integer(1)
    (comp,) = d.components
    outs = {q[2] for q in d.crossings}
    start = next(i for i, e in enumerate(comp) if e in outs)
    arc, cur = {}, -1
    for e in comp[start:] + comp[:start]:
        if e in outs:
            cur += 1
        arc[e] = cur
    n = cur + 1
    m = sympy.zeros(len(d.crossings), n)
    for row, (q, s) in enumerate(zip(d.crossings, d.signs)):
        a, b, c, _ = q
        o, i, j = arc[b], arc[a], arc[c]
        m[row, o] += 1 - t
        if s > 0:
            m[row, i] += t
            m[row, j] += -1
        else:
            m[row, i] += -1
            m[row, j] += t
    if n == 1:
        return sympy.Integer(1)
    det = sympy.expand(m[1:, 1:].det())
    poly = sympy.Poly(sympy.expand(det * t ** (4 * n)), t)
    # strip the power of t and the sign
    coeffs = poly.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs and coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return sympy.Poly(coeffs, t).as_expr() if coeffs else sympy.Integer(0)


def knot_poly_to_sympy(p):
    """Normalise a LaurentPoly in t the same way as sympy_knot_alexander."""
    t = sympy.Symbol("t")
    if p.is_zero():
        return sympy.Integer(0)
    lo = min(e[0] for e in p.terms)
    expr = sum(c * t ** ((e[0] - lo) // 2) for e, c in p.terms.items())
    poly = sympy.Poly(expr, t)
    coeffs = poly.all_coeffs()
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return sympy.Poly(coeffs, t).as_expr()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
