"""Shared fixtures and independent oracles.

The oracles here recompute facts by brute force, with no reliance on the
library's own algorithms, so the fast implementations are tested against
something slower but obviously correct.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import pytest
from hypothesis import settings

from binposet.core import GradedPoset, build_poset

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")

# one line per end-to-end criterion, echoed after the run summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def brute_chain_count(levels, covers, src, dst) -> int:
    """Number of saturated chains from src to dst, by memoized DFS."""
    up: dict[str, list[str]] = {}
    for a, b in covers:
        up.setdefault(a, []).append(b)

    @lru_cache(maxsize=None)
    def walk(x: str) -> int:
        if x == dst:
            return 1
        return sum(walk(y) for y in up.get(x, ()))

    return walk(src)


def brute_isomorphic(p: GradedPoset, q: GradedPoset) -> bool:
    """Exhaustive rank-preserving isomorphism test.

    Tries every per-level bijection, so keep inputs tiny (about a dozen
    elements)."""
    if p.widths != q.widths or len(p.covers) != len(q.covers):
        return False
    q_covers = set(q.covers)
    pools = [list(itertools.permutations(lv_q)) for lv_q in q.levels]
    for assignment in itertools.product(*pools):
        mapping = {}
        for lv_p, lv_q in zip(p.levels, assignment):
            mapping.update(zip(lv_p, lv_q))
        if all((mapping[a], mapping[b]) in q_covers for a, b in p.covers):
            return True
    return False


def brute_ratio_ok(values: list[int], i: int, j: int) -> bool:
    """Whether the product over the first i+j values splits integrally."""
    total = math.prod(values[: i + j])
    return total % (math.prod(values[:i]) * math.prod(values[:j])) == 0


@pytest.fixture
def chain3() -> GradedPoset:
    return build_poset([["a"], ["b"], ["c"]], [("a", "b"), ("b", "c")])


@pytest.fixture
def diamond() -> GradedPoset:
    return build_poset(
        [["0"], ["x", "y"], ["1"]],
        [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
    )


@pytest.fixture
def butterfly() -> GradedPoset:
    """Two atoms, two coatoms, full bipartite middle: atoms (1, 2, 2)."""
    return build_poset(
        [["0"], ["x", "y"], ["u", "v"], ["1"]],
        [
            ("0", "x"),
            ("0", "y"),
            ("x", "u"),
            ("x", "v"),
            ("y", "u"),
            ("y", "v"),
            ("u", "1"),
            ("v", "1"),
        ],
    )


@pytest.fixture
def cube() -> GradedPoset:
    """Subset lattice on three points."""
    singles = ["a", "b", "c"]
    pairs = ["ab", "ac", "bc"]
    levels = [["e"], singles, pairs, ["abc"]]
    covers = [("e", s) for s in singles]
    covers += [(s, d) for s in singles for d in pairs if s in d]
    covers += [(d, "abc") for d in pairs]
    return build_poset(levels, covers)


@pytest.fixture
def not_binomial() -> GradedPoset:
    """Graded and bounded, but one coatom covers only one middle element."""
    return build_poset(
        [["0"], ["x", "y"], ["u", "v"], ["1"]],
        [
            ("0", "x"),
            ("0", "y"),
            ("x", "u"),
            ("x", "v"),
            ("y", "u"),
            ("u", "1"),
            ("v", "1"),
        ],
    )
