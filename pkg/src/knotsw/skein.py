"""Alexander polynomial by resolution trees.

Each step picks the first bad crossing of the diagram and applies

    value(d) = value(change) + sign * (s - 1/s) * value(resolve)

where ``sign`` is the sign of that crossing in ``d``.  Split diagrams are
0, descending diagrams are 1 (one component) or 0 (an unlink).  The raw
value is the Conway polynomial written in ``s`` with ``z = s - 1/s``, so it
is a genuine invariant and safe to memoise on a canonical diagram code.
Normalisation happens once, at the root.
"""
from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .diagram import LinkDiagram
from .laurent import LaurentError, LaurentPoly, canonical_rep

__all__ = [
    "SkeinError",
    "SkeinResult",
    "TreeNode",
    "Z",
    "alexander",
    "raw_alexander",
    "normalize",
    "conway",
    "to_z",
]

S = ("s",)
ONE = LaurentPoly.const(1, S)
ZERO = LaurentPoly.zero(S)
Z = LaurentPoly.var("s") - LaurentPoly.var("s", power=-1)


class SkeinError(RuntimeError):
    pass


@dataclass
class TreeNode:
    diagram: LinkDiagram
    complexity: tuple
    kind: str  # 'split', 'descending', 'cached' or 'branch'
    crossing: int | None = None
    sign: int | None = None
    change: "TreeNode | None" = None
    resolve: "TreeNode | None" = None
    value: LaurentPoly | None = None

    def edges(self):
        """Yield (parent, child, move) for every edge below this node."""
        stack = [self]
        while stack:
            node = stack.pop()
            for move, child in (("change", node.change), ("resolve", node.resolve)):
                if child is not None:
                    yield node, child, move
                    stack.append(child)

    def size(self) -> int:
        return 1 + sum(1 for _ in self.edges())

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.kind} c={self.complexity[0]} b={self.complexity[1]}"
        if self.crossing is not None:
            head += f" x={self.crossing + 1} sign={'+' if self.sign > 0 else '-'}"
        head += f" value={self.value}"
        lines = [head]
        for move, child in (("change", self.change), ("resolve", self.resolve)):
            if child is not None:
                lines.append(f"{pad}  [{move}]")
                lines.append(child.render(indent + 2))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "complexity": list(self.complexity),
            "diagram": self.diagram.to_pd(),
            "value": self.value.to_json() if self.value is not None else None,
        }
        if self.crossing is not None:
            out["crossing"] = self.crossing + 1
            out["sign"] = self.sign
            out["change"] = self.change.to_dict() if self.change else None
            out["resolve"] = self.resolve.to_dict() if self.resolve else None
        return out


@dataclass
class SkeinResult:
    poly: LaurentPoly
    raw: LaurentPoly
    tree: TreeNode | None = None
    stats: dict = field(default_factory=dict)


class _Engine:
    def __init__(self, keep_tree=False, cache=None):
        self.cache = {} if cache is None else cache
        self.keep_tree = keep_tree
        self.nodes = 0
        self.hits = 0
        self.max_depth = 0

    def run(self, d: LinkDiagram, depth_limit: int):
        old = sys.getrecursionlimit()
        need = 4 * depth_limit + 200
        if need > old:
            sys.setrecursionlimit(need)
        try:
            return self._eval(d, 0, depth_limit)
        finally:
            sys.setrecursionlimit(old)

    def _eval(self, d, depth, limit):
        if depth > limit:
            raise SkeinError(f"resolution tree deeper than {limit}: complexity is not descending")
        self.max_depth = max(self.max_depth, depth)
        self.nodes += 1
        cx = d.complexity()
        if d.is_split():
            return ZERO, self._node(d, cx, "split", value=ZERO)
        k = d.first_bad_crossing()
        if k is None:
            v = ONE if d.n_components == 1 else ZERO
            return v, self._node(d, cx, "descending", value=v)
        key = d.canonical_code()
        hit = self.cache.get(key)
        if hit is not None:
            self.hits += 1
            return hit, self._node(d, cx, "cached", value=hit)
        change, resolve, sign = d.crossing_change(k), d.resolve(k), d.signs[k]
        for child in (change, resolve):
            if not child.complexity() < cx:
                raise SkeinError(f"complexity did not drop: {cx} -> {child.complexity()}")
        vc, nc = self._eval(change, depth + 1, limit)
        vr, nr = self._eval(resolve, depth + 1, limit)
        v = vc + Z * vr if sign > 0 else vc - Z * vr
        self.cache[key] = v
        node = self._node(d, cx, "branch", value=v)
        if node is not None:
            node.crossing, node.sign, node.change, node.resolve = k, sign, nc, nr
        return v, node

    def _node(self, d, cx, kind, value):
        if not self.keep_tree:
            return None
        return TreeNode(d, cx, kind, value=value)


def _depth_limit(d: LinkDiagram) -> int:
    c = d.n_crossings
    # each change lowers b (at most c of them) before a resolve lowers c
    return (c + 1) * (c + 2) // 2


def _raw_worker(d: LinkDiagram) -> LaurentPoly:
    return _Engine().run(d, _depth_limit(d))[0]


def _frontier(d: LinkDiagram, width: int):
    """Expand the top of the tree breadth-first into about ``width`` leaves.

    Returns the leaves and a combiner that rebuilds the root value from
    their values.  Expansion is deterministic, so results do not depend on
    scheduling.
    """
    leaves = []
    plan = []  # (node id, kind, payload)

    def expand(diag):
        # node record: ('leaf', index) or ('branch', sign, change_id, resolve_id)
        idx = len(plan)
        plan.append(None)
        queue.append((idx, diag))
        return idx

    queue = []
    expand(d)
    pos = 0
    while pos < len(queue):
        idx, diag = queue[pos]
        pos += 1
        k = None
        if not diag.is_split():
            k = diag.first_bad_crossing()
        if k is None or len(leaves) + (len(queue) - pos) >= width:
            plan[idx] = ("leaf", len(leaves))
            leaves.append(diag)
            continue
        sign = diag.signs[k]
        ci = expand(diag.crossing_change(k))
        ri = expand(diag.resolve(k))
        plan[idx] = ("branch", sign, ci, ri)

    def combine(values):
        def val(i):
            rec = plan[i]
            if rec[0] == "leaf":
                return values[rec[1]]
            _, sign, ci, ri = rec
            return val(ci) + sign * (Z * val(ri))
        return val(0)

    return leaves, combine


def raw_alexander(d: LinkDiagram, cache=None) -> LaurentPoly:
    """Unnormalised value (the Conway polynomial in ``s``)."""
    return _Engine(cache=cache).run(d, _depth_limit(d))[0]


def normalize(raw: LaurentPoly) -> LaurentPoly:
    """Root normalisation: canonical representative with positive leading coefficient."""
    if raw.is_zero():
        return ZERO
    return canonical_rep(raw)


def alexander(d: LinkDiagram, tree: bool = False, jobs: int = 1) -> SkeinResult:
    """Symmetrised Alexander polynomial of ``d`` in ``s`` (``s**2 = t``)."""
    limit = _depth_limit(d)
    if jobs and jobs > 1 and not tree and d.n_crossings >= 8:
        leaves, combine = _frontier(d, 4 * jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_raw_worker, leaves))
        raw = combine(values)
        stats = {"nodes": None, "cache_hits": None, "max_depth": None, "parallel_leaves": len(leaves)}
        return SkeinResult(normalize(raw), raw, None, stats)
    eng = _Engine(keep_tree=tree)
    raw, root = eng.run(d, limit)
    stats = {"nodes": eng.nodes, "cache_hits": eng.hits, "max_depth": eng.max_depth}
    return SkeinResult(normalize(raw), raw, root, stats)


def to_z(poly: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in ``s`` as a polynomial in ``z = s - 1/s``."""
    if poly.vars != S and not poly.is_zero():
        poly = poly.restrict_vars(S)
    rem = poly
    out = LaurentPoly.zero(("z",))
    zvar = LaurentPoly.var("z")
    while not rem.is_zero():
        lo, hi = rem.span("s")
        if lo != -hi or hi % 2:
            raise LaurentError(f"{poly} is not a polynomial in s - 1/s")
        deg = hi // 2
        c = rem.coeff((hi,))
        if deg < 0:
            raise LaurentError(f"{poly} is not a polynomial in s - 1/s")
        out = out + c * zvar ** deg
        rem = rem - c * Z ** deg
    return out


def conway(d: LinkDiagram) -> LaurentPoly:
    """Conway polynomial of ``d`` in the variable ``z``."""
    return to_z(raw_alexander(d))
