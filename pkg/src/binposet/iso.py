"""Rank-respecting isomorphism tests and canonical certificates.

The certificate is the lexicographically least adjacency encoding over
all labelings reachable by color refinement plus backtracking, so equal
certificates mean isomorphic diagrams and conversely.  Levels in these
posets are tiny, which keeps the backtracking tree small; a node cap
guards against pathological inputs and is reported, never silently hit.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .core import GradedPoset, PosetError

__all__ = [
    "CanonicalizationCapError",
    "canonical_form",
    "are_isomorphic",
    "isomorphism",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 200_000


class CanonicalizationCapError(PosetError):
    """The canonical-labeling backtracking exceeded its node budget."""


def _refine(
    colors: list[int], up: Sequence[Sequence[int]], down: Sequence[Sequence[int]]
) -> list[int]:
    """Iterated neighbor-multiset refinement to a fixed point."""
    n = len(colors)
    while True:
        keys = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in up[i])),
                tuple(sorted(colors[j] for j in down[i])),
            )
            for i in range(n)
        ]
        palette = {k: c for c, k in enumerate(sorted(set(keys)))}
        new = [palette[k] for k in keys]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def _encode(p: GradedPoset, order: list[int], pins: list[int]) -> bytes:
    """Adjacency encoding of the diagram under the given element order.

    ``order`` lists element indices level by level; the encoding is the
    width header, the pinned colors in order, and one packed cover
    bit-matrix per level pair.  Levels and degrees need no row of their
    own: the header and the matrices already determine them."""
    pos_in_level: dict[int, int] = {}
    offsets: list[int] = []
    off = 0
    for w in p.widths:
        offsets.append(off)
        off += w
    for pos, el in enumerate(order):
        r = p._level_of[el]
        pos_in_level[el] = pos - offsets[r]
    parts = [
        ",".join(str(w) for w in p.widths).encode(),
        ",".join(str(pins[el]) for el in order).encode(),
    ]
    up = p._up
    for r in range(p.height):
        w_lo, w_hi = p.widths[r], p.widths[r + 1]
        bits = 0
        for el in order[offsets[r] : offsets[r] + w_lo]:
            row = 0
            for nb in up[el]:
                row |= 1 << (w_hi - 1 - pos_in_level[nb])
            bits = (bits << w_hi) | row
        parts.append(bits.to_bytes((w_lo * w_hi + 7) // 8, "big"))
    return b"|".join(parts)


class _Canonicalizer:
    def __init__(self, p: GradedPoset, node_cap: int, extra: Mapping[str, int] | None):
        self.p = p
        self.cap = node_cap
        self.nodes = 0
        self.best: bytes | None = None
        self.best_order: list[int] | None = None
        up, down = p._adjacency
        self.up, self.down = up, down
        idx = p._index
        seed = [
            (p._level_of[i], len(up[i]), len(down[i]), 0)
            for i in range(len(p.elements))
        ]
        self.pins = [0] * len(p.elements)
        if extra:
            for x, c in extra.items():
                seed[idx[x]] = seed[idx[x]][:3] + (c,)
                self.pins[idx[x]] = c
        palette = {k: c for c, k in enumerate(sorted(set(seed)))}
        self.seed = [palette[k] for k in seed]
        # Automorphisms discovered at leaves, used to prune sibling branches.
        # The first leaf is kept as a stable reference: comparing against it
        # keeps yielding generators even after better leaves replace best.
        self.first: bytes | None = None
        self.first_order: list[int] | None = None
        self.gens: list[list[int]] = []
        self.path: list[int] = []

    def run(self) -> tuple[bytes, list[int]]:
        self._walk(self.seed)
        assert self.best is not None and self.best_order is not None
        return self.best, self.best_order

    def _walk(self, colors: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise CanonicalizationCapError(
                f"canonical labeling exceeded {self.cap} nodes"
            )
        colors = _refine(colors, self.up, self.down)
        cells: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        target = None
        for c in sorted(cells):
            cell = cells[c]
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = sorted(range(len(colors)), key=lambda i: (self.p._level_of[i], colors[i]))
            enc = _encode(self.p, order, self.pins)
            if self.first is None:
                self.first, self.first_order = enc, order
            elif enc == self.first:
                self._record_automorphism(self.first_order, order)
            if self.best is None or enc < self.best:
                self.best, self.best_order = enc, order
            elif enc == self.best and enc != self.first:
                self._record_automorphism(self.best_order, order)
            return
        fresh = max(colors) + 1
        done: list[int] = []
        orbit: list[int] | None = None
        built_with = -1
        for member in target:
            if done:
                if built_with != len(self.gens):
                    orbit = self._node_orbits()
                    built_with = len(self.gens)
                if orbit is not None:
                    m = orbit[member]
                    if any(orbit[w] == m for w in done):
                        continue
            branch = list(colors)
            branch[member] = fresh
            self.path.append(member)
            self._walk(branch)
            self.path.pop()
            done.append(member)

    def _record_automorphism(self, ref: list[int] | None, order: list[int]) -> None:
        # Equal encodings pin levels, degrees, and extra colors, so mapping
        # the reference order onto this one position by position is a
        # color-preserving automorphism of the diagram.
        if len(self.gens) >= 256:
            return
        assert ref is not None
        perm = list(range(len(order)))
        trivial = True
        for a, b in zip(ref, order):
            perm[a] = b
            if a != b:
                trivial = False
        if not trivial:
            self.gens.append(perm)

    def _node_orbits(self) -> list[int] | None:
        # Only automorphisms fixing every element individualized on the
        # current path map this node's subtrees onto each other, so the
        # orbit structure is computed from those alone.
        fixing = [g for g in self.gens if all(g[v] == v for v in self.path)]
        if not fixing:
            return None
        parent = list(range(len(self.seed)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in fixing:
            for a, b in enumerate(g):
                if a != b:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
        return [find(x) for x in range(len(parent))]


def _canonical(
    p: GradedPoset,
    node_cap: int = DEFAULT_NODE_CAP,
    extra_colors: Mapping[str, int] | None = None,
) -> tuple[bytes, list[int]]:
    return _Canonicalizer(p, node_cap, extra_colors).run()


def canonical_form(
    p: GradedPoset,
    node_cap: int = DEFAULT_NODE_CAP,
    extra_colors: Mapping[str, int] | None = None,
) -> bytes:
    """Canonical certificate: equal bytes iff rank-preserving isomorphic.

    ``extra_colors`` optionally pins an integer color to some element ids;
    two diagrams then compare as colored diagrams.  Render with ``.hex()``
    for display."""
    return _canonical(p, node_cap, extra_colors)[0]


def are_isomorphic(p: GradedPoset, q: GradedPoset, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """Rank-preserving isomorphism test."""
    if p.widths != q.widths or len(p.covers) != len(q.covers):
        return False
    return canonical_form(p, node_cap) == canonical_form(q, node_cap)


def isomorphism(
    p: GradedPoset, q: GradedPoset, node_cap: int = DEFAULT_NODE_CAP
) -> dict[str, str] | None:
    """A rank-preserving isomorphism as an id map, or None.

    Deterministic: composes the two canonical labelings."""
    if p.widths != q.widths or len(p.covers) != len(q.covers):
        return None
    cert_p, order_p = _canonical(p, node_cap)
    cert_q, order_q = _canonical(q, node_cap)
    if cert_p != cert_q:
        return None
    els_p, els_q = p.elements, q.elements
    return {els_p[a]: els_q[b] for a, b in zip(order_p, order_q)}
