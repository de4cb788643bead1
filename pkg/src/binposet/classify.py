"""Section analysis of type-(1,1,2,2,...) poset truncations.

Between two adjacent width-4 levels the cover relation is a 2-regular
bipartite graph on 4+4 vertices, hence an 8-cycle or two 4-cycles.  The
word of section types (2 for the 8-cycle, 1 for the pair of 4-cycles) is
a complete isomorphism invariant for these truncations; this module
measures it, enumerates the words it can take, and classifies intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import GradedPoset, Interval, PosetError, interval, verify_binomial, _chain_rows
from .iso import canonical_form

__all__ = [
    "SectionGraph",
    "section_graph",
    "section_type",
    "phi",
    "cover_partitions",
    "co_cover_partitions",
    "AvoidanceReport",
    "check_partition_avoidance",
    "validate_string",
    "valid_words",
    "count_valid_words",
    "versal_string",
    "IntervalClass",
    "IntervalClassification",
    "enumerate_interval_classes",
]


@dataclass(frozen=True)
class SectionGraph:
    """The induced cover graph between two consecutive width-4 levels."""

    lower: tuple[str, str, str, str]
    upper: tuple[str, str, str, str]
    edges: tuple[tuple[str, str], ...]


def section_graph(p: GradedPoset, i: int) -> SectionGraph:
    """Section between levels i+1 and i+2 (the i-th section, 1-indexed)."""
    if i < 0 or i + 2 > p.height:
        raise PosetError(f"section {i} needs levels {i + 1} and {i + 2}")
    lo, hi = p.levels[i + 1], p.levels[i + 2]
    if len(lo) != 4 or len(hi) != 4:
        raise PosetError(
            f"section needs width 4 at levels {i + 1} and {i + 2}, "
            f"got {len(lo)} and {len(hi)}"
        )
    los = set(lo)
    edges = tuple(sorted((a, b) for a, b in p.covers if a in los and p.rank(b) == i + 2))
    return SectionGraph(tuple(lo), tuple(hi), edges)


def section_type(g: SectionGraph) -> int:
    """2 for a connected section (8-cycle), 1 for two 4-cycles."""
    verts = list(g.lower) + list(g.upper)
    if len(set(verts)) != 8:
        raise PosetError("section must have 4+4 distinct vertices")
    deg: dict[str, list[str]] = {v: [] for v in verts}
    for a, b in g.edges:
        if a not in deg or b not in deg:
            raise PosetError(f"section edge ({a!r}, {b!r}) leaves the section")
        deg[a].append(b)
        deg[b].append(a)
    if any(len(nbrs) != 2 for nbrs in deg.values()):
        raise PosetError("section must be 2-regular")
    seen = {verts[0]}
    frontier = [verts[0]]
    while frontier:
        v = frontier.pop()
        for w in deg[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    components = 1 if len(seen) == 8 else 2
    return 3 - components


def phi(p: GradedPoset) -> str:
    """The word of section types, one letter per adjacent width-4 level pair.

    Verifies first that the truncation is binomial with atom sequence
    (1, 1, 2, ..., 2); the word then determines the poset up to
    isomorphism."""
    if p.height < 3:
        raise PosetError("phi needs height at least 3")
    rep = verify_binomial(p)
    if not rep.ok:
        raise PosetError(f"not binomial: {rep.detail}")
    assert rep.atoms is not None
    expected = (1, 1) + (2,) * (p.height - 2)
    if rep.atoms.head != expected:
        raise PosetError(
            f"phi needs atom sequence (1,1,2,...,2), got {rep.atoms.format()}"
        )
    return "".join(str(section_type(section_graph(p, i))) for i in range(1, p.height - 1))


# ---------------------------------------------------------------------------
# cover / co-cover partitions

Partition = frozenset[frozenset[str]]


def _partitions_from_blocks(level: tuple[str, ...], blocks: set[frozenset[str]]) -> set[Partition]:
    """2+2 partitions of the level whose blocks both occur in ``blocks``."""
    full = frozenset(level)
    out: set[Partition] = set()
    for b in blocks:
        rest = full - b
        if len(b) == 2 and rest in blocks:
            out.add(frozenset({b, rest}))
    return out


def cover_partitions(p: GradedPoset, i: int) -> set[Partition]:
    """Partitions of level i+1 whose blocks are lower-cover sets of
    level-(i+2) elements (induced from above)."""
    if i + 2 > p.height:
        raise PosetError(f"cover partitions at level {i + 1} need level {i + 2}")
    level = p.levels[i + 1]
    if len(level) != 4:
        raise PosetError(f"level {i + 1} must have width 4, got {len(level)}")
    blocks = {frozenset(p.lower_covers(u)) for u in p.levels[i + 2]}
    return _partitions_from_blocks(level, blocks)


def co_cover_partitions(p: GradedPoset, i: int) -> set[Partition]:
    """Partitions of level i+1 whose blocks are upper-cover sets of
    level-i elements (induced from below)."""
    if i < 0 or i + 1 > p.height:
        raise PosetError(f"co-cover partitions at level {i + 1} need level {i}")
    level = p.levels[i + 1]
    if len(level) != 4:
        raise PosetError(f"level {i + 1} must have width 4, got {len(level)}")
    blocks = {frozenset(p.upper_covers(x)) for x in p.levels[i]}
    return _partitions_from_blocks(level, blocks)


@dataclass(frozen=True)
class AvoidanceReport:
    """PASS iff no 2+2 partition of a width-4 level is induced both as a
    cover partition and as a co-cover partition."""

    ok: bool
    level: int | None = None
    partition: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    detail: str = ""


def check_partition_avoidance(p: GradedPoset) -> AvoidanceReport:
    for r, w in enumerate(p.widths):
        want = 1 if r == 0 else 2 if r == 1 else 4
        if w != want:
            raise PosetError(f"level {r} has width {w}, want {want} for this check")
    for level in range(2, p.height):
        shared = cover_partitions(p, level - 1) & co_cover_partitions(p, level - 1)
        if shared:
            blocks = min(
                tuple(sorted(tuple(sorted(b)) for b in part)) for part in shared
            )
            return AvoidanceReport(
                ok=False,
                level=level,
                partition=blocks,
                detail=f"partition {blocks} of level {level} is induced from both sides",
            )
    return AvoidanceReport(ok=True)


# ---------------------------------------------------------------------------
# the word language


def validate_string(word: str) -> bool:
    """True iff the word is over {1,2} with no two adjacent 2s."""
    if any(ch not in "12" for ch in word):
        raise PosetError(f"bad section word {word!r}: letters must be 1 or 2")
    return "22" not in word


def valid_words(length: int) -> Iterator[str]:
    """All valid words of the given length, lexicographically."""
    if length < 0:
        raise PosetError("length must be non-negative")
    if length == 0:
        yield ""
        return
    def rec(prefix: str) -> Iterator[str]:
        if len(prefix) == length:
            yield prefix
            return
        yield from rec(prefix + "1")
        if not prefix.endswith("2"):
            yield from rec(prefix + "2")
    yield from rec("")


def count_valid_words(length: int) -> int:
    """Number of valid words of the given length: c(L) = c(L-1) + c(L-2)."""
    if length < 0:
        raise PosetError("length must be non-negative")
    a, b = 1, 2  # c(0), c(1)
    for _ in range(length):
        a, b = b, a + b
    return a


def versal_string(max_length: int) -> str:
    """A valid word containing every valid word of length <= max_length as
    a contiguous substring: the words in (length, lex) order, joined by 1s."""
    if max_length < 1:
        raise PosetError("max_length must be at least 1")
    words = [w for n in range(1, max_length + 1) for w in valid_words(n)]
    return "1".join(words)


# ---------------------------------------------------------------------------
# interval classification


@dataclass(frozen=True)
class IntervalClass:
    certificate: bytes
    bottom: str
    top: str
    size: int


@dataclass(frozen=True)
class IntervalClassification:
    length: int
    classes: tuple[IntervalClass, ...]

    @property
    def count(self) -> int:
        return len(self.classes)


def enumerate_interval_classes(p: GradedPoset, n: int) -> IntervalClassification:
    """Group all length-n intervals by canonical certificate.

    Returns one representative (bottom, top) pair per class: the first in
    level order."""
    if not 0 <= n <= p.height:
        raise PosetError(f"interval length {n} out of range 0..{p.height}")
    els = p.elements
    lv = p._level_of
    pairs: list[tuple[str, str]] = []
    for s in range(len(els)):
        for t, _c in _chain_rows(p._up, s):
            if lv[t] - lv[s] == n:
                pairs.append((els[s], els[t]))
    found: dict[bytes, list[tuple[str, str]]] = {}
    for bottom, top in pairs:
        sub = interval(p, bottom, top).poset
        cert = canonical_form(sub)
        found.setdefault(cert, []).append((bottom, top))
    classes = tuple(
        IntervalClass(cert, members[0][0], members[0][1], len(members))
        for cert, members in sorted(found.items())
    )
    return IntervalClassification(length=n, classes=classes)
