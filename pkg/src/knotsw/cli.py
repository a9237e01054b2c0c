"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 identity violation, 3 hypothesis
violation.  ``--format structured`` prints one JSON document carrying
``"schema": SCHEMA``.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import fox, skein
from .diagram import DiagramError, LinkDiagram, braid_closure, family, parse as parse_diagram
from .laurent import InexactDivision, LaurentError, LaurentPoly, substitute
from .script import ScriptError, run_script
from .swcalc import HypothesisError, IdentityViolation, SWError

SCHEMA = "knotsw/1"

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY, EXIT_HYPOTHESIS = 0, 1, 2, 3


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _diagram(arg: str) -> LinkDiagram:
    text = _read_input(arg).strip()
    if not text:
        raise DiagramError("empty diagram input")
    return parse_diagram(text)


def _s_to_t(p: LaurentPoly) -> LaurentPoly:
    return substitute(p, {"s": {"t": "1/2"}}, ("t",))


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.format == "structured":
        out = {"schema": SCHEMA, "verb": args.verb}
        out.update(data)
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# -- verbs --------------------------------------------------------------------


def cmd_alexander(args) -> int:
    d = _diagram(args.input)
    res = skein.alexander(d, tree=args.tree, jobs=args.jobs)
    poly_t = _s_to_t(res.poly)
    lines = [str(poly_t)]
    data = {
        "diagram": d.to_pd(),
        "components": d.n_components,
        "poly_t": poly_t.to_json(),
        "poly_s": res.poly.to_json(),
        "text": str(poly_t),
        "stats": res.stats,
    }
    if args.tree and res.tree is not None:
        lines.append(res.tree.render())
        data["tree"] = res.tree.to_dict()
    _emit(args, data, lines)
    return EXIT_OK


def cmd_multivariable(args) -> int:
    d = _diagram(args.input)
    p = fox.alexander_multi(d)
    _emit(args, {"diagram": d.to_pd(), "poly": p.to_json(), "text": str(p)}, [str(p)])
    return EXIT_OK


def cmd_axioms(args) -> int:
    d = _diagram(args.input)
    results = []
    results.append(("fox row identity", fox.row_check(d) if d.crossings else True))
    if d.n_components == 1:
        results.append(("skein agrees with fox", fox.knot_crosscheck(d)))
    else:
        results.append(("torres reduction", fox.torres_crosscheck(d)))
    ref = fox.alexander_multi(d)
    if d.crossings and not ref.is_zero():
        w = fox.wirtinger(d)
        cols = all(fox.alexander_multi(d, c) == ref for c in range(w.n_generators))
        results.append(("independent of dropped column", cols))
    for k in range(d.n_crossings):
        results.append((f"conway axiom at crossing {k + 1}", fox.conway_axiom_check(d, k)))
    if d.n_components >= 2:
        for j in range(d.n_components):
            results.append((f"doubling axiom on component {j + 1}", fox.doubling_axiom_check(d, j)))
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in results]
    _emit(args, {"diagram": d.to_pd(), "results": [{"check": n, "ok": ok} for n, ok in results]}, lines)
    return EXIT_OK if all(ok for _, ok in results) else EXIT_IDENTITY


def cmd_script(args) -> int:
    text = _read_input(args.input)
    lines, records, _ = run_script(text)
    _emit(args, {"records": records}, lines)
    return EXIT_OK


def cmd_families(args) -> int:
    d = family(args.name, args.k)
    _emit(args, {"diagram": d.to_pd(), "family": args.name, "k": args.k}, [d.to_pd()])
    return EXIT_OK


def random_braid_diagram(rng: random.Random, max_strands=4, max_len=10) -> LinkDiagram:
    """Closure of a random braid that uses every generator (so it is connected)."""
    n = rng.randint(2, max_strands)
    length = rng.randint(n - 1, max_len)
    word = [rng.randint(1, n - 1) * rng.choice((1, -1)) for _ in range(length)]
    slots = rng.sample(range(length), n - 1)
    for g, slot in zip(range(1, n), slots):
        word[slot] = g * rng.choice((1, -1))
    return braid_closure(n, word)


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    lines = []
    for i in range(args.count):
        d = random_braid_diagram(rng)
        ok = fox.knot_crosscheck(d) if d.n_components == 1 else fox.torres_crosscheck(d)
        if not ok:
            failures += 1
            lines.append(f"mismatch: {d.to_pd()}")
    lines.append(f"{args.count - failures}/{args.count} random diagrams agree (seed {args.seed})")
    _emit(args, {"seed": args.seed, "count": args.count, "failures": failures}, lines)
    return EXIT_OK if not failures else EXIT_IDENTITY


# -- entry point ----------------------------------------------------------------


def _env_int(name, default):
    val = os.environ.get(name)
    return int(val) if val not in (None, "") else default


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the options with suppressed defaults so either position works
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"),
                        default=dflt(os.environ.get("KNOTSW_FORMAT", "text")))
    common.add_argument("--tree", action="store_true",
                        default=dflt(os.environ.get("KNOTSW_TREE", "") not in ("", "0")))
    common.add_argument("--seed", type=int, default=dflt(_env_int("KNOTSW_SEED", 0)))
    common.add_argument("--jobs", type=int, default=dflt(_env_int("KNOTSW_JOBS", 1)))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    p = argparse.ArgumentParser(prog="knotsw", description="Alexander polynomials and SW calculus.", parents=[_common(False)])
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, fn, helptext in (
        ("alexander", cmd_alexander, "one-variable polynomial by skein resolution"),
        ("multivariable", cmd_multivariable, "multivariable polynomial by Fox calculus"),
        ("axioms", cmd_axioms, "identity report for a diagram"),
    ):
        sp = sub.add_parser(verb, help=helptext, parents=[common])
        sp.add_argument("input", help="diagram text, a file, or - for stdin")
        sp.set_defaults(func=fn)
    for verb in ("surgery", "bplus1"):
        sp = sub.add_parser(verb, help="run a construction script", parents=[common])
        sp.add_argument("input", help="script file or - for stdin")
        sp.set_defaults(func=cmd_script)
    sp = sub.add_parser("families", help="print a family member as PD", parents=[common])
    sp.add_argument("name", choices=("twist", "whitehead"))
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_families)
    sp = sub.add_parser("selftest", help="random skein/fox agreement", parents=[common])
    sp.add_argument("--count", type=int, default=50)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (IdentityViolation, InexactDivision, fox.FoxError, skein.SkeinError) as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (DiagramError, LaurentError, SWError, ScriptError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
