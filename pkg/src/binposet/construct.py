"""Constructions of binomial poset truncations.

Every builder returns a :class:`~binposet.core.GradedPoset` with uniform
"rank:index" element ids.  Ids are for debugging only; nothing downstream
depends on them.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Sequence

from .classify import validate_string
from .core import AtomicSequence, GradedPoset, PosetError, build_poset, grid_ids

__all__ = [
    "poset_from_string",
    "debruijn_poset",
    "stripped_boolean_interval",
    "m_interval",
    "divisible_poset",
]

# The three 2+2 partitions of positions {0,1,2,3}, in lexicographic order.
_PARTS = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


def poset_from_string(word: str, height: int | None = None) -> GradedPoset:
    """The type-(1,1,2,2,...) truncation whose section word is ``word``.

    Levels have widths 1, 2, 4, 4, ...; the poset has height
    ``len(word) + 2`` (one section per letter, plus the two bottom
    sections forced by widths 1, 2, 4).

    Wiring invariant: after each level is attached, ``forbidden`` holds
    the 2+2 position partitions of the new top level that are induced
    from below (as upper-cover sets of the previous level).  A letter 1
    glues two 4-cycles along the lexicographically least partition not in
    that set; a letter 2 threads an 8-cycle alternating across the unique
    forbidden partition.  Avoiding the forbidden set is exactly what
    keeps every section count correct, so the measured word of the result
    equals ``word``.
    """
    if not validate_string(word):
        raise PosetError(f"invalid section word {word!r}: adjacent 2s")
    want = len(word) + 2
    if height is None:
        height = want
    if height != want:
        raise PosetError(f"word of length {len(word)} forces height {want}, got {height}")
    widths = (1, 2) + (4,) * (height - 1)
    levels = grid_ids(widths)
    covers: list[tuple[str, str]] = [("0:0", "1:0"), ("0:0", "1:1")]
    # Width 2 -> 4: each bottom-level element gets both elements of one
    # parity class, making the up-sets {0,2} and {1,3}.
    for mu in range(4):
        covers.append((f"1:{mu % 2}", f"2:{mu}"))
    forbidden = {_PARTS[1]}
    for j, letter in enumerate(word):
        lo = [f"{j + 2}:{t}" for t in range(4)]
        hi = [f"{j + 3}:{t}" for t in range(4)]
        if letter == "1":
            part = next(pp for pp in _PARTS if pp not in forbidden)
            (a0, a1), (b0, b1) = part
            for t, (u, v) in enumerate(((a0, a1), (a0, a1), (b0, b1), (b0, b1))):
                covers.append((lo[u], hi[t]))
                covers.append((lo[v], hi[t]))
            forbidden = {_PARTS[0]}
        else:
            if len(forbidden) != 1:
                raise PosetError("adjacent 2s slipped through validation")
            ((p0, q0), (r0, s0)) = next(iter(forbidden))
            cycle = (p0, r0, q0, s0)
            for t in range(4):
                covers.append((lo[cycle[t]], hi[t]))
                covers.append((lo[cycle[(t + 1) % 4]], hi[t]))
            forbidden = {_PARTS[0], _PARTS[2]}
    return build_poset(levels, covers)


def debruijn_poset(m: int, n: int, height: int) -> GradedPoset:
    """Shift-register poset over an n-letter alphabet with window m.

    Rank-i elements are the words in [n]^min(i, m); a word covers another
    when dropping its last letter leaves a suffix of the lower word.
    Realizes the atom sequence (1^m, n, n, ...)."""
    if m < 0 or n < 1 or height < 0:
        raise PosetError("need m >= 0, n >= 1, height >= 0")
    level_words = [
        sorted(product(range(n), repeat=min(i, m))) for i in range(height + 1)
    ]
    ids = [
        {w: f"{i}:{k}" for k, w in enumerate(words)}
        for i, words in enumerate(level_words)
    ]
    covers: list[tuple[str, str]] = []
    for i in range(height):
        for s in level_words[i]:
            for t in level_words[i + 1]:
                head = t[:-1] if t else ()
                if not head or s[len(s) - len(head):] == head:
                    covers.append((ids[i][s], ids[i + 1][t]))
    levels = tuple(tuple(ids[i][w] for w in level_words[i]) for i in range(height + 1))
    return build_poset(levels, covers)


def stripped_boolean_interval(n: int, k: int) -> GradedPoset:
    """k copies of the subset lattice on n atoms, glued at bottom and top.

    The proper part of each copy is kept disjoint; a fresh bottom sits
    under every copy's atoms and a fresh top over every copy's
    coatoms.  Realizes the atom sequence (1, 2, ..., n-1, kn)."""
    if n < 2 or k < 1:
        raise PosetError("need n >= 2, k >= 1")
    subsets = [list(combinations(range(n), j)) for j in range(n + 1)]
    widths = [1] + [k * comb(n, j) for j in range(1, n)] + [1]
    levels = grid_ids(widths)

    def sid(copy: int, j: int, s: tuple[int, ...]) -> str:
        return f"{j}:{copy * len(subsets[j]) + subsets[j].index(s)}"

    covers: list[tuple[str, str]] = []
    for copy in range(k):
        for s in subsets[1]:
            covers.append(("0:0", sid(copy, 1, s)))
        for j in range(1, n - 1):
            for s in subsets[j]:
                for extra in range(n):
                    if extra not in s:
                        t = tuple(sorted(s + (extra,)))
                        covers.append((sid(copy, j, s), sid(copy, j + 1, t)))
        for s in subsets[n - 1]:
            covers.append((sid(copy, n - 1, s), f"{n}:0"))
    return build_poset(levels, covers)


def m_interval(m: int) -> GradedPoset:
    """The length-3 interval with atom sequence (1, m, m+1).

    Two middle levels of m+1 elements each, with x_i below y_j exactly
    when i != j."""
    if m < 1:
        raise PosetError("need m >= 1")
    levels = grid_ids((1, m + 1, m + 1, 1))
    covers: list[tuple[str, str]] = []
    for i in range(m + 1):
        covers.append(("0:0", f"1:{i}"))
        covers.append((f"2:{i}", "3:0"))
        for jj in range(m + 1):
            if i != jj:
                covers.append((f"1:{i}", f"2:{jj}"))
    return build_poset(levels, covers)


def divisible_poset(seq: AtomicSequence | Sequence[int], height: int) -> GradedPoset:
    """Mixed-modulus shift register realizing a divisible atom sequence.

    Requires a_i | a_(i+1) along the sequence (a finite head is extended
    by its last value up to ``height``).  With a = a_height and
    r_j = a / a_j, a rank-i element is a tuple (x_1, ..., x_i) with
    x_j in range(r_j); its upper covers are the tuples
    (y, x_1 mod r_2, ..., x_i mod r_(i+1)) for y in range(r_1).
    """
    if height < 0:
        raise PosetError("need height >= 0")
    if not isinstance(seq, AtomicSequence):
        seq = AtomicSequence(tuple(seq))
    if height == 0:
        return build_poset((("0:0",),), ())
    if not seq.head and seq.tail is None:
        raise PosetError("empty sequence")
    vals = [seq.a(i) if i <= len(seq.head) or seq.tail is not None else seq.a(len(seq.head))
            for i in range(1, height + 1)]
    for i in range(len(vals) - 1):
        if vals[i + 1] % vals[i]:
            raise PosetError(
                f"a_{i + 2} = {vals[i + 1]} is not a multiple of a_{i + 1} = {vals[i]}"
            )
    a = vals[-1]
    radii = [a // v for v in vals]
    level_words = [sorted(product(*(range(r) for r in radii[:i]))) for i in range(height + 1)]
    ids = [
        {w: f"{i}:{k}" for k, w in enumerate(words)}
        for i, words in enumerate(level_words)
    ]
    covers: list[tuple[str, str]] = []
    for i in range(height):
        for x in level_words[i]:
            shifted = tuple(x[j] % radii[j + 1] for j in range(i))
            for y in range(radii[0]):
                covers.append((ids[i][x], ids[i + 1][(y,) + shifted]))
    levels = tuple(tuple(ids[i][w] for w in level_words[i]) for i in range(height + 1))
    return build_poset(levels, covers)
