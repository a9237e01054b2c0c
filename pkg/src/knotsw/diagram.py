"""Oriented link diagrams in PD form, skein moves, cabling and named families.

Crossing convention
-------------------
``X(a, b, c, d)`` lists the four edge ends clockwise, starting from the
incoming under-strand: the under-strand runs ``a -> c``.  The over-strand
occupies ``b`` and ``d``; the crossing is positive (right-handed) exactly
when the over-strand runs ``b -> d``.  With this rule
``PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]`` is a right-handed trefoil of
writhe +3.  ``POSITIVE_OVER_SLOT`` is the single place that fixes it.

Edges are relabelled ``1..2n`` in traversal order: components appear in
order, each starting at its basepoint (its least label).  Components with
no crossings are kept as free loops, stored as empty tuples.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "LinkDiagram",
    "POSITIVE_OVER_SLOT",
    "parse",
    "braid_closure",
    "plat_closure",
    "unknot",
    "unlink",
    "twist",
    "whitehead",
    "family",
    "FAMILIES",
]

# slot (within a, b, c, d) where the over-strand enters on a positive crossing
POSITIVE_OVER_SLOT = 1


class DiagramError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx
        return rx


def _over_slots(sign: int) -> tuple[int, int]:
    """(in slot, out slot) of the over-strand."""
    i = POSITIVE_OVER_SLOT if sign > 0 else (POSITIVE_OVER_SLOT + 2) % 4
    return i, (i + 2) % 4


def _build(raw, signs, free=(), order=None) -> "LinkDiagram":
    """Assemble a diagram from crossings over arbitrary orderable edge keys.

    ``free`` is a count or a sequence of keys for crossingless loops; keys
    position the loops in the component order.  ``order`` optionally
    permutes the components (0-based indices into the default order).
    """
    raw = [tuple(x) for x in raw]
    signs = [int(s) for s in signs]
    if len(raw) != len(signs):
        raise DiagramError("one sign per crossing required")
    head, tail = {}, {}
    for x, q in enumerate(raw):
        if len(q) != 4:
            raise DiagramError(f"crossing {x + 1} does not have four slots")
        if signs[x] not in (1, -1):
            raise DiagramError(f"crossing {x + 1} has sign {signs[x]}")
        oi, oo = _over_slots(signs[x])
        for slot, where in ((0, head), (2, tail), (oi, head), (oo, tail)):
            key = q[slot]
            if key in where:
                raise DiagramError(f"edge {key!r} appears more than twice or with inconsistent orientation")
            where[key] = (x, slot)
    if set(head) != set(tail):
        bad = sorted(set(head) ^ set(tail), key=repr)
        raise DiagramError(f"edges without a consistent head and tail: {bad[:5]}")
    succ = {}
    for key, (x, slot) in head.items():
        succ[key] = raw[x][(slot + 2) % 4]
    seen = set()
    comps = []
    for key in sorted(head):
        if key in seen:
            continue
        cyc = [key]
        seen.add(key)
        nxt = succ[key]
        while nxt != key:
            if nxt in seen:
                raise DiagramError("successor relation is not a union of cycles")
            seen.add(nxt)
            cyc.append(nxt)
            nxt = succ[nxt]
        comps.append((key, cyc))
    if isinstance(free, int):
        free_entries = [(None, i) for i in range(free)]
    else:
        free_entries = [(k, None) for k in free]
    entries = [(k, cyc) for k, cyc in comps]
    if free_entries and free_entries[0][0] is not None:
        entries += [(k, []) for k, _ in free_entries]
        entries.sort(key=lambda kc: kc[0])
    else:
        entries += [(None, []) for _ in free_entries]
    if order is not None:
        order = list(order)
        if sorted(order) != list(range(len(entries))):
            raise DiagramError(f"component order {order} is not a permutation of {len(entries)} components")
        entries = [entries[i] for i in order]
    label = {}
    components = []
    nxt_label = 1
    for _, cyc in entries:
        comp = []
        for key in cyc:
            label[key] = nxt_label
            comp.append(nxt_label)
            nxt_label += 1
        components.append(tuple(comp))
    crossings = tuple(tuple(label[k] for k in q) for q in raw)
    return LinkDiagram(crossings, tuple(signs), tuple(components))


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    signs: tuple
    components: tuple

    # -- structure ----------------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    @property
    def n_free_loops(self) -> int:
        return sum(1 for c in self.components if not c)

    @cached_property
    def edge_component(self) -> dict:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    @cached_property
    def _ends(self):
        head, tail = {}, {}
        for x, q in enumerate(self.crossings):
            oi, oo = _over_slots(self.signs[x])
            head[q[0]] = (x, 0)
            tail[q[2]] = (x, 2)
            head[q[oi]] = (x, oi)
            tail[q[oo]] = (x, oo)
        return head, tail

    def head(self, e):
        """(crossing, slot) where edge ``e`` ends."""
        return self._ends[0][e]

    def tail(self, e):
        return self._ends[1][e]

    def over_in(self, x: int) -> int:
        return self.crossings[x][_over_slots(self.signs[x])[0]]

    def over_out(self, x: int) -> int:
        return self.crossings[x][_over_slots(self.signs[x])[1]]

    def under_component(self, x: int) -> int:
        return self.edge_component[self.crossings[x][0]]

    def over_component(self, x: int) -> int:
        return self.edge_component[self.over_in(x)]

    def is_inter(self, x: int) -> bool:
        return self.under_component(x) != self.over_component(x)

    # -- validation ---------------------------------------------------------
    def validate(self) -> None:
        """Check edge multiplicity, successor cycles and the face-count Euler test."""
        labels = [e for q in self.crossings for e in q]
        n = len(self.crossings)
        if sorted(set(labels)) != list(range(1, 2 * n + 1)):
            raise DiagramError("edge labels are not 1..2n")
        counts = {}
        for e in labels:
            counts[e] = counts.get(e, 0) + 1
        if any(v != 2 for v in counts.values()):
            raise DiagramError("every edge must appear exactly twice")
        rebuilt = _build(self.crossings, self.signs, self.n_free_loops)
        if rebuilt.crossings != self.crossings:
            raise DiagramError("labels are not in traversal order")
        v, e, f = self.euler_counts()
        pieces = self._pieces()
        if v - e + f != 2 * pieces:
            raise DiagramError(f"Euler check failed: V - E + F = {v - e + f}, expected {2 * pieces}")

    def euler_counts(self) -> tuple[int, int, int]:
        """(V, E, F) of the projection graph, crossingless loops excluded."""
        ends = {}
        for x, q in enumerate(self.crossings):
            for p, e in enumerate(q):
                ends.setdefault(e, []).append((x, p))
        seen = set()
        faces = 0
        for x in range(len(self.crossings)):
            for p in range(4):
                if (x, p) in seen:
                    continue
                faces += 1
                cur = (x, p)
                while cur not in seen:
                    seen.add(cur)
                    cx, cp = cur
                    a, b = ends[self.crossings[cx][cp]]
                    y, q = b if a == cur else a
                    cur = (y, (q + 1) % 4)
        return len(self.crossings), 2 * len(self.crossings), faces

    def _pieces(self) -> int:
        uf = _UnionFind()
        for x, q in enumerate(self.crossings):
            uf.find(("x", x))
            for e in q:
                uf.union(("x", x), ("e", e))
        return len({uf.find(("x", x)) for x in range(len(self.crossings))})

    # -- counters -----------------------------------------------------------
    def writhe(self) -> int:
        return sum(self.signs)

    def self_writhe(self, j: int) -> int:
        self._check_component(j)
        return sum(
            s for x, s in enumerate(self.signs)
            if self.under_component(x) == j and self.over_component(x) == j
        )

    def linking_number(self, i: int, j: int) -> int:
        self._check_component(i)
        self._check_component(j)
        if i == j:
            raise DiagramError("linking number needs two distinct components; use writhe")
        total = sum(
            s for x, s in enumerate(self.signs)
            if {self.under_component(x), self.over_component(x)} == {i, j}
        )
        return total // 2

    def total_linking(self, j: int) -> int:
        self._check_component(j)
        return sum(self.linking_number(j, i) for i in range(self.n_components) if i != j)

    def linking_matrix(self) -> list[list[int]]:
        n = self.n_components
        return [[0 if i == j else self.linking_number(i, j) for j in range(n)] for i in range(n)]

    def _check_component(self, j):
        if not 0 <= j < self.n_components:
            raise DiagramError(f"component index {j} out of range")

    def _check_crossing(self, k):
        if not 0 <= k < len(self.crossings):
            raise DiagramError(f"crossing index {k} out of range")

    def bad_mode(self) -> str:
        """'all' for knots and 3+ component links, 'inter' for 2-component links."""
        return "inter" if self.n_components == 2 else "all"

    def _bad_crossings(self, mode="auto"):
        if mode == "auto":
            mode = self.bad_mode()
        out = []
        for x, q in enumerate(self.crossings):
            if mode == "inter" and not self.is_inter(x):
                continue
            # first met as an undercrossing: the under in-edge comes first in traversal
            if q[0] < self.over_in(x):
                out.append((q[0], x))
        out.sort()
        return [x for _, x in out]

    def complexity(self, mode="auto") -> tuple[int, int]:
        return len(self.crossings), len(self._bad_crossings(mode))

    def first_bad_crossing(self, mode="auto"):
        bad = self._bad_crossings(mode)
        return bad[0] if bad else None

    def is_descending(self, mode="auto") -> bool:
        return not self._bad_crossings(mode)

    def is_split(self) -> bool:
        n = self.n_components
        if n < 2:
            return False
        uf = _UnionFind()
        for i in range(n):
            uf.find(i)
        for x in range(len(self.crossings)):
            uf.union(self.under_component(x), self.over_component(x))
        return len({uf.find(i) for i in range(n)}) > 1

    # -- moves --------------------------------------------------------------
    def _free_keys(self):
        # free loops keep their position in the component order
        keys = []
        for i, comp in enumerate(self.components):
            if not comp:
                prev = [e for c in self.components[:i] for e in c]
                keys.append((max(prev) if prev else 0) + 0.5)
        return keys

    def _rebuild(self, raw, signs, extra_free=()):
        free = sorted(list(self._free_keys()) + list(extra_free))
        return _build(raw, signs, free)

    def crossing_change(self, k: int) -> "LinkDiagram":
        self._check_crossing(k)
        raw = list(self.crossings)
        signs = list(self.signs)
        a, b, c, d = raw[k]
        raw[k] = (b, c, d, a) if signs[k] > 0 else (d, a, b, c)
        signs[k] = -signs[k]
        return self._rebuild(raw, signs)

    def resolve(self, k: int) -> "LinkDiagram":
        """Oriented smoothing of crossing ``k``."""
        self._check_crossing(k)
        q = self.crossings[k]
        oi, oo = _over_slots(self.signs[k])
        uf = _UnionFind()
        uf.union(q[0], q[oo])
        uf.union(q[oi], q[2])
        raw = []
        signs = []
        for x, r in enumerate(self.crossings):
            if x == k:
                continue
            raw.append(tuple(uf.find(e) for e in r))
            signs.append(self.signs[x])
        used = {e for r in raw for e in r}
        extra = sorted({uf.find(e) for e in q} - used)
        return self._rebuild(raw, signs, extra)

    def mirror(self) -> "LinkDiagram":
        d = self
        for k in range(len(self.crossings)):
            d = d.crossing_change(k)
        return d

    def reverse(self) -> "LinkDiagram":
        """Reverse the orientation of every component."""
        raw = [(c, d, a, b) for a, b, c, d in self.crossings]
        return self._rebuild(raw, self.signs)

    def reorder(self, order: Sequence[int]) -> "LinkDiagram":
        """Permute components: new component i is old component ``order[i]``."""
        if sorted(order) != list(range(self.n_components)):
            raise DiagramError(f"{order} is not a permutation of the components")
        free_pos = [i for i, c in enumerate(self.components) if not c]
        if free_pos:
            # keys for loops are ranks in the new order
            rank = {old: new for new, old in enumerate(order)}
            comp_rank = {e: rank[self.edge_component[e]] for e in self.edge_component}
            raw = [tuple((comp_rank[e], e) for e in q) for q in self.crossings]
            free = [(rank[i], 0) for i in free_pos]
            return _build(raw, self.signs, free)
        default = list(range(self.n_components))
        return _build(self.crossings, self.signs, 0, order=[default[i] for i in order])

    def rebase(self, j: int, edge: int) -> "LinkDiagram":
        """Move component ``j``'s basepoint to ``edge`` (a label on that component)."""
        self._check_component(j)
        comp = self.components[j]
        if edge not in comp:
            raise DiagramError(f"edge {edge} is not on component {j}")
        pos = comp.index(edge)
        key = {}
        for i, c in enumerate(self.components):
            for p, e in enumerate(c):
                key[e] = (i, (p - pos) % len(c) if i == j else p)
        raw = [tuple(key[e] for e in q) for q in self.crossings]
        free = [(i, -1) for i, c in enumerate(self.components) if not c]
        return _build(raw, self.signs, free)

    # -- cabling ------------------------------------------------------------
    def cable_2_1(self, j: int) -> "LinkDiagram":
        """Replace component ``j`` by its (2,1)-cable.

        Blackboard 2-parallel, then ``-w`` full twists (``w`` the self-writhe)
        to reach the 0-framed parallel, then one positive half twist joining
        the two parallels into one component.
        """
        self._check_component(j)
        BIG = 10 ** 9
        comp_of = self.edge_component
        comp = self.components[j]
        w = self.self_writhe(j)
        # keys start with the component index so the component order survives
        def key(e, side=0, *rest):
            return (comp_of[e], e, side) + rest

        m = min(comp) if comp else None

        def head_key(e, side):
            return key(e, side, 1) if e == m else key(e, side)

        raw, signs = [], []
        for x, q in enumerate(self.crossings):
            s = self.signs[x]
            a, c = q[0], q[2]
            oi, oo = self.over_in(x), self.over_out(x)
            uc, oc = comp_of[a], comp_of[oi]
            if uc == j:
                U = [(head_key(a, 0), key(c, 0)), (head_key(a, 1), key(c, 1))]
            else:
                U = [(key(a), key(c))]
            if oc == j:
                sides = (1, 0) if s > 0 else (0, 1)
                O = [(head_key(oi, side), key(oo, side)) for side in sides]
            else:
                O = [(key(oi), key(oo))]
            nu, no = len(U), len(O)
            cols = list(range(nu)) if s > 0 else list(range(nu))[::-1]
            for i in range(nu):
                for k in range(no):
                    south = U[i][0] if k == 0 else (uc, BIG + x, 0, i, k)
                    north = U[i][1] if k == no - 1 else (uc, BIG + x, 0, i, k + 1)
                    step = cols.index(i)
                    hin = O[k][0] if step == 0 else (oc, BIG + x, 1, k, step)
                    hout = O[k][1] if step == nu - 1 else (oc, BIG + x, 1, k, step + 1)
                    west, east = (hin, hout) if s > 0 else (hout, hin)
                    raw.append((south, west, north, east))
                    signs.append(s)
        # twist box on the basepoint edge: positions 0 (left) and 1 (right)
        if comp:
            pos = [key(m, 0), key(m, 1)]
            ends = [head_key(m, 0), head_key(m, 1)]
        else:
            pos = [(j, 0, 0), (j, 0, 1)]
            ends = list(pos)
        word = [-1] * (2 * w) if w >= 0 else [1] * (-2 * w)
        word.append(1)
        for step, eps in enumerate(word):
            if step == len(word) - 1:
                out0, out1 = ends
            else:
                out0, out1 = (j, 2 * BIG, step, 0), (j, 2 * BIG, step, 1)
            if eps > 0:
                raw.append((pos[1], pos[0], out0, out1))
            else:
                raw.append((pos[0], out0, out1, pos[1]))
            signs.append(eps)
            pos = [out0, out1]
        free = [(i,) for i, c in enumerate(self.components) if not c and i != j]
        return _build(raw, signs, free)

    # -- sums ---------------------------------------------------------------
    def connected_sum(self, other: "LinkDiagram") -> "LinkDiagram":
        """Band the first components of two diagrams together at their basepoints.

        The merged component comes first, then the remaining components of
        ``self`` and then those of ``other``.
        """
        if not self.components[0]:
            rest = LinkDiagram(self.crossings, self.signs, self.components[1:])
            return other.disjoint_union(rest) if rest.components else other
        if not other.components[0]:
            rest = LinkDiagram(other.crossings, other.signs, other.components[1:])
            return self.disjoint_union(rest) if rest.components else self
        e1 = self.components[0][0]
        e2 = other.components[0][0]
        h1 = self.head(e1)
        h2 = other.head(e2)
        shift = self.n_components - 1
        rank = [lambda i: i, lambda i: 0 if i == 0 else i + shift]
        raw = []
        for side, d, h, cut in ((0, self, h1, (0, 1, e2)), (1, other, h2, (0, 0, e1))):
            for x, q in enumerate(d.crossings):
                raw.append(tuple(
                    cut if (x, p) == h else (rank[side](d.edge_component[e]), side, e)
                    for p, e in enumerate(q)
                ))
        free = []
        for side, d in ((0, self), (1, other)):
            for i, c in enumerate(d.components):
                if not c:
                    free.append((rank[side](i), side, -1))
        return _build(raw, list(self.signs) + list(other.signs), free)

    def disjoint_union(self, other: "LinkDiagram") -> "LinkDiagram":
        raw = [tuple((0, e) for e in q) for q in self.crossings]
        raw += [tuple((1, e) for e in q) for q in other.crossings]
        free = []
        for side, d in ((0, self), (1, other)):
            for i, c in enumerate(d.components):
                if not c:
                    prev = [e for cc in d.components[:i] for e in cc]
                    free.append((side, (max(prev) if prev else 0) + 0.5))
        return _build(raw, list(self.signs) + list(other.signs), free)

    # -- canonical forms and text -------------------------------------------
    def canonical_code(self):
        """Relabelling-invariant key: least traversal relabelling over all start edges."""
        n = len(self.crossings)
        if n == 0:
            return ("free", self.n_components)
        if self.n_free_loops or self._pieces() > 1:
            return ("raw", self.crossings, self.signs, tuple(len(c) for c in self.components))
        succ = {}
        for comp in self.components:
            for i, e in enumerate(comp):
                succ[e] = comp[(i + 1) % len(comp)]
        head = self._ends[0]
        best = None
        for start in range(1, 2 * n + 1):
            new = {}
            order = []
            lengths = []

            def take(e):
                cnt = 0
                f = e
                while True:
                    new[f] = len(order) + 1
                    order.append(f)
                    cnt += 1
                    f = succ[f]
                    if f == e:
                        break
                lengths.append(cnt)

            take(start)
            idx = 0
            while len(order) < 2 * n:
                f = order[idx]
                x, slot = head[f]
                other = (slot + 1) % 4
                q = self.crossings[x]
                # out-edge of the other strand at this crossing
                cand = q[(other + 2) % 4] if self._is_in(x, other) else q[other]
                if cand not in new:
                    take(cand)
                idx += 1
            code = (
                tuple(lengths),
                tuple(sorted(tuple(new[e] for e in q) + (s,) for q, s in zip(self.crossings, self.signs))),
            )
            if best is None or code < best:
                best = code
        return best

    def _is_in(self, x, slot):
        if slot == 0:
            return True
        if slot == 2:
            return False
        return slot == _over_slots(self.signs[x])[0]

    def to_pd(self) -> str:
        body = ",".join("X({},{},{},{})".format(*q) for q in self.crossings)
        text = f"PD[{body}]"
        nf = self.n_free_loops
        if nf and self.crossings:
            text += f" FREE({nf})"
        elif nf > 1:
            text += f" FREE({nf - 1})"
        if self.n_components > 1:
            text += " ORD({})".format(",".join(str(i + 1) for i in range(self.n_components)))
        return text

    def gauss_code(self) -> str:
        parts = []
        for comp in self.components:
            toks = []
            for e in comp:
                x, slot = self.head(e)
                kind = "U" if slot == 0 else "O"
                toks.append(f"{kind}{x + 1}{'+' if self.signs[x] > 0 else '-'}")
            parts.append(",".join(toks))
        return "GC[" + ";".join(parts) + "]"

    def __str__(self):
        return self.to_pd()


# ---------------------------------------------------------------------------
# constructors


def unknot() -> LinkDiagram:
    return LinkDiagram((), (), ((),))


def unlink(n: int) -> LinkDiagram:
    return LinkDiagram((), (), ((),) * n)


def braid_closure(n: int, word: Iterable[int]) -> LinkDiagram:
    """Closure of a braid on ``n`` strands; generator ``i`` written ``±i``."""
    word = list(word)
    if n < 1:
        raise DiagramError("braid needs at least one strand")
    start = list(range(n))
    pos = list(start)
    counter = n
    raw, signs = [], []
    for g in word:
        i = abs(g) - 1
        if g == 0 or i >= n - 1:
            raise DiagramError(f"generator {g} invalid on {n} strands")
        o0, o1 = counter, counter + 1
        counter += 2
        if g > 0:
            raw.append((pos[i + 1], pos[i], o0, o1))
            signs.append(1)
        else:
            raw.append((pos[i], o0, o1, pos[i + 1]))
            signs.append(-1)
        pos[i], pos[i + 1] = o0, o1
    rename = {pos[p]: start[p] for p in range(n) if pos[p] != start[p]}
    raw = [tuple(rename.get(k, k) for k in q) for q in raw]
    free = [p for p in range(n) if pos[p] == start[p]]
    return _build(raw, signs, free)


def plat_closure(word: Iterable[tuple[int, int]], strands: int = 4, flip=()) -> LinkDiagram:
    """Plat closure of a geometric braid word.

    ``word`` holds ``(i, e)``: strands at positions ``i`` and ``i + 1``
    cross, with the lower-left to upper-right strand over when ``e = +1``
    and under when ``e = -1``.  Cups join positions (0,1), (2,3), ... at the
    bottom and caps do the same at the top.  Components are oriented by
    tracing; ``flip`` lists component indices to reverse afterwards.
    """
    if strands % 2:
        raise DiagramError("plat closure needs an even number of strands")
    uf = _UnionFind()
    ports = []
    seg = 0
    for _ in range(strands // 2):
        ports += [seg, seg]
        uf.find(seg)
        seg += 1
    xings = []  # (slots SW, NW, NE, SE as segment ids, over pair)
    for i, e in word:
        if not 0 <= i < strands - 1:
            raise DiagramError(f"position {i} invalid on {strands} strands")
        nw, ne = seg, seg + 1
        seg += 2
        uf.find(nw)
        uf.find(ne)
        xings.append(((ports[i], nw, ne, ports[i + 1]), (0, 2) if e > 0 else (1, 3)))
        ports[i], ports[i + 1] = nw, ne
    for p in range(0, strands, 2):
        uf.union(ports[p], ports[p + 1])
    slots = [tuple(uf.find(s) for s in q) for q, _ in xings]
    occ = {}
    for x, q in enumerate(slots):
        for p, s in enumerate(q):
            occ.setdefault(s, []).append((x, p))
    direction = {}  # (x, slot) -> 'in' / 'out'
    edge_tail = {}
    ncomp = 0
    comp_of = {}
    for x in range(len(slots)):
        for p in range(4):
            if (x, p) in direction:
                continue
            cur = (x, p)
            while cur not in direction:
                cx, cp = cur
                direction[cur] = "out"
                s = slots[cx][cp]
                a, b = occ[s]
                nxt = b if a == cur else a
                if a == b:
                    nxt = a
                direction[nxt] = "in"
                comp_of[s] = ncomp
                edge_tail[s] = cur
                cur = (nxt[0], (nxt[1] + 2) % 4)
            ncomp += 1
    flips = set(flip)
    raw, signs = [], []
    for x, (q, over) in enumerate(xings):
        dirs = {}
        for p in range(4):
            d = direction[(x, p)]
            if comp_of[slots[x][p]] in flips:
                d = "in" if d == "out" else "out"
            dirs[p] = d
        under = (1, 3) if over == (0, 2) else (0, 2)
        u = under[0] if dirs[under[0]] == "in" else under[1]
        order = [(u + r) % 4 for r in range(4)]
        raw.append(tuple(slots[x][p] for p in order))
        o_in = over[0] if dirs[over[0]] == "in" else over[1]
        signs.append(1 if o_in == order[POSITIVE_OVER_SLOT] else -1)
    used = {s for q in slots for s in q}
    free = sorted({uf.find(s) for s in range(seg)} - used)
    return _build(raw, signs, free)


def _fraction_word(terms: Sequence[int]) -> list[tuple[int, int]]:
    """4-plat word for the continued fraction ``[a1, ..., am]`` (m odd)."""
    if len(terms) % 2 == 0:
        terms = list(terms[:-1]) + [terms[-1] - 1, 1]
    word = []
    for idx, a in enumerate(terms):
        pos = 1 if idx % 2 == 0 else 0
        e = 1 if idx % 2 == 0 else -1
        if a < 0:
            e, a = -e, -a
        word += [(pos, e)] * a
    return word


def rational(terms: Sequence[int]) -> LinkDiagram:
    """Two-bridge knot or link with Conway notation ``C(a1, ..., am)``."""
    return plat_closure(_fraction_word(terms), 4)


def twist(k: int) -> LinkDiagram:
    """Twist knot: a clasp plus ``k`` full twists; ``twist(1)`` is the figure-eight."""
    return rational([2 * k, 2])


def whitehead(k: int) -> LinkDiagram:
    """Twisted Whitehead link; linking number 0 and ``whitehead(1)`` is the Whitehead link."""
    return rational([2, 2 * k - 1, 2])


FAMILIES = {"twist": twist, "whitehead": whitehead}


def family(name: str, k: int) -> LinkDiagram:
    try:
        return FAMILIES[name](int(k))
    except KeyError:
        raise DiagramError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None


# ---------------------------------------------------------------------------
# parsing

_PD_RE = re.compile(r"^\s*PD\s*\[(.*)\]\s*(.*)$", re.S)
_X_RE = re.compile(r"X\s*\(\s*([^)]*)\)")
_BR_RE = re.compile(r"^\s*BR\s*\(\s*(\d+)\s*;\s*([-+\d\s,]*)\)\s*$")
_GC_RE = re.compile(r"^\s*GC\s*\[(.*)\]\s*(.*)$", re.S)
_ANN_RE = re.compile(r"(FREE|ORD)\s*\(([^)]*)\)")


def _annotations(text: str):
    free = 0
    order = None
    rest = _ANN_RE.sub("", text).strip()
    if rest:
        raise DiagramError(f"unexpected trailing text {rest!r}")
    for kind, body in _ANN_RE.findall(text):
        vals = [int(v) for v in re.split(r"[,\s]+", body.strip()) if v]
        if kind == "FREE":
            if len(vals) != 1 or vals[0] < 0:
                raise DiagramError("FREE takes one nonnegative count")
            free = vals[0]
        else:
            order = [v - 1 for v in vals]
    return free, order


def _infer_pd_signs(quads):
    """Over-strand directions from head/tail bookkeeping of each edge."""
    n = len(quads)
    occ = {}
    for x, q in enumerate(quads):
        for p, e in enumerate(q):
            occ.setdefault(e, []).append((x, p))
    for e, lst in occ.items():
        if len(lst) != 2:
            raise DiagramError(f"edge {e} appears {len(lst)} times (expected 2)")
    # role[(x, p)] = 'in' / 'out'; slots 0 and 2 are fixed
    sign = [None] * n
    role = {}
    for x in range(n):
        role[(x, 0)] = "in"
        role[(x, 2)] = "out"

    def set_sign(x, s, stack):
        if sign[x] is not None:
            if sign[x] != s:
                raise DiagramError(f"inconsistent orientation at crossing {x + 1}")
            return
        sign[x] = s
        oi, oo = _over_slots(s)
        role[(x, oi)] = "in"
        role[(x, oo)] = "out"
        stack.append(x)

    def propagate(stack):
        while stack:
            x = stack.pop()
            for p in range(4):
                e = quads[x][p]
                for y, q in occ[e]:
                    if (y, q) == (x, p):
                        continue
                    want = "out" if role[(x, p)] == "in" else "in"
                    if q in (0, 2):
                        if role[(y, q)] != want:
                            raise DiagramError(f"edge {e} has inconsistent orientation")
                    else:
                        s = 1 if (q == POSITIVE_OVER_SLOT) == (want == "in") else -1
                        set_sign(y, s, stack)
                # an edge may return to the same crossing at its own pair slot
    stack = []
    for x, q in enumerate(quads):
        for p in (0, 2):
            e = q[p]
            for y, r in occ[e]:
                if (y, r) == (x, p) or r in (0, 2):
                    continue
                want = "out" if role[(x, p)] == "in" else "in"
                s = 1 if (r == POSITIVE_OVER_SLOT) == (want == "in") else -1
                set_sign(y, s, stack)
    propagate(stack)
    for x in range(n):
        if sign[x] is None:
            # whole over-only component: follow label order as a tie-break
            b, d = quads[x][1], quads[x][3]
            s = 1 if (d - b == 1 or (b - d > 1)) else -1
            set_sign(x, s, stack)
            propagate(stack)
    return sign


def parse_pd(text: str) -> LinkDiagram:
    m = _PD_RE.match(text)
    if not m:
        raise DiagramError(f"not PD notation: {text!r}")
    body, tail = m.groups()
    free, order = _annotations(tail)
    quads = []
    for inner in _X_RE.findall(body):
        try:
            vals = tuple(int(v) for v in inner.split(","))
        except ValueError:
            raise DiagramError(f"bad crossing X({inner})") from None
        if len(vals) != 4:
            raise DiagramError(f"crossing X({inner}) needs four labels")
        quads.append(vals)
    leftover = _X_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise DiagramError(f"unexpected text in PD body: {leftover!r}")
    if not quads:
        d = unlink(1 + free)
    else:
        signs = _infer_pd_signs(quads)
        d = _build(quads, signs, free)
    if order is not None:
        d = d.reorder(order)
    d.validate()
    return d


def parse_braid(text: str) -> LinkDiagram:
    m = _BR_RE.match(text)
    if not m:
        raise DiagramError(f"not braid notation: {text!r}")
    n = int(m.group(1))
    word = [int(w) for w in re.split(r"[,\s]+", m.group(2).strip()) if w]
    d = braid_closure(n, word)
    d.validate()
    return d


_GC_TOKEN = re.compile(r"^([OU])(\d+)([+-])?$")


def parse_gc(text: str) -> LinkDiagram:
    m = _GC_RE.match(text)
    if not m:
        raise DiagramError(f"not Gauss-code notation: {text!r}")
    body, tail = m.groups()
    free_ann, order = _annotations(tail)
    sign_part = None
    if "|" in body:
        body, sign_part = body.split("|", 1)
    comps = []
    signs = {}
    for part in body.split(";"):
        toks = [t for t in re.split(r"[,\s]+", part.strip()) if t]
        visits = []
        for tok in toks:
            tm = _GC_TOKEN.match(tok)
            if tm:
                kind, num, sg = tm.groups()
                k = int(num)
                if sg:
                    s = 1 if sg == "+" else -1
                    if signs.setdefault(k, s) != s:
                        raise DiagramError(f"crossing {k} given two signs")
                visits.append((k, kind == "O"))
            else:
                try:
                    v = int(tok)
                except ValueError:
                    raise DiagramError(f"bad Gauss-code token {tok!r}") from None
                if v == 0:
                    raise DiagramError("crossing 0 is not allowed")
                visits.append((abs(v), v > 0))
        comps.append(visits)
    ids = sorted({k for c in comps for k, _ in c})
    if sign_part is not None:
        entries = [t for t in re.split(r"[,\s]+", sign_part.strip()) if t]
        if entries and all(":" in t for t in entries):
            for t in entries:
                k, s = t.split(":")
                signs[int(k)] = 1 if s.strip() == "+" else -1
        elif len(entries) == len(ids):
            for k, s in zip(ids, entries):
                signs[k] = 1 if s in ("+", "+1", "1") else -1
        else:
            raise DiagramError("sign list must give one sign per crossing")
    where = {}
    for ci, c in enumerate(comps):
        for p, (k, over) in enumerate(c):
            where.setdefault(k, {})
            if over in where[k]:
                raise DiagramError(f"crossing {k} visited twice as {'over' if over else 'under'}")
            where[k][over] = (ci, p)
    raw, sg = [], []
    for k in ids:
        if len(where[k]) != 2:
            raise DiagramError(f"crossing {k} must be visited once over and once under")
        if k not in signs:
            raise DiagramError(f"crossing {k} has no sign")
        (uc, up), (oc, op) = where[k][False], where[k][True]
        ulen, olen = len(comps[uc]), len(comps[oc])
        # edge (c, p) is the one arriving at visit p
        uin, uout = (uc, up), (uc, (up + 1) % ulen)
        oin, oout = (oc, op), (oc, (op + 1) % olen)
        if signs[k] > 0:
            raw.append((uin, oin, uout, oout))
        else:
            raw.append((uin, oout, uout, oin))
        sg.append(signs[k])
    free = [(ci, -1) for ci, c in enumerate(comps) if not c]
    free += [(len(comps) + i, -1) for i in range(free_ann)]
    d = _build(raw, sg, free)
    if order is not None:
        d = d.reorder(order)
    d.validate()
    return d


def parse(text: str) -> LinkDiagram:
    """Parse PD, Gauss-code or braid notation, or a family name like ``twist 3``."""
    s = text.strip()
    if s.startswith("PD"):
        return parse_pd(s)
    if s.startswith("BR"):
        return parse_braid(s)
    if s.startswith("GC"):
        return parse_gc(s)
    parts = s.split()
    if len(parts) == 2 and parts[0] in FAMILIES:
        try:
            return family(parts[0], int(parts[1]))
        except ValueError:
            pass
    raise DiagramError(f"unrecognised diagram notation: {text!r}")
