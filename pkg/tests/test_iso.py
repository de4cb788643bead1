import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binposet.core import GradedPoset, build_poset, dual
from binposet.iso import (
    CanonicalizationCapError,
    are_isomorphic,
    canonical_form,
    isomorphism,
)
from conftest import brute_isomorphic


def relabel(p: GradedPoset, rng: random.Random) -> GradedPoset:
    names = {el: f"n{rng.randrange(10**9)}" for el in p.elements}
    levels = []
    for lv in p.levels:
        row = [names[e] for e in lv]
        rng.shuffle(row)
        levels.append(tuple(row))
    covers = frozenset((names[a], names[b]) for a, b in p.covers)
    return GradedPoset(tuple(levels), covers)


def two_level(edges: list[tuple[int, int]]) -> GradedPoset:
    """Raw bipartite diagram on 4 + 4 vertices."""
    return GradedPoset(
        (tuple(f"x{i}" for i in range(4)), tuple(f"y{i}" for i in range(4))),
        frozenset((f"x{a}", f"y{b}") for a, b in edges),
    )


@pytest.fixture
def eight_cycle() -> GradedPoset:
    return two_level([(i, i) for i in range(4)] + [(i, (i + 1) % 4) for i in range(4)])


@pytest.fixture
def two_squares() -> GradedPoset:
    return two_level(
        [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
    )


class TestCanonicalForm:
    def test_stable_under_relabeling(self, cube, butterfly, not_binomial):
        rng = random.Random(11)
        for p in (cube, butterfly, not_binomial):
            want = canonical_form(p)
            for _ in range(8):
                assert canonical_form(relabel(p, rng)) == want

    def test_separates_regular_section_shapes(self, eight_cycle, two_squares):
        # same widths, same degrees everywhere: only the global cycle
        # structure differs
        assert canonical_form(eight_cycle) != canonical_form(two_squares)
        rng = random.Random(3)
        assert canonical_form(relabel(eight_cycle, rng)) == canonical_form(eight_cycle)

    def test_node_cap(self, cube):
        with pytest.raises(CanonicalizationCapError):
            canonical_form(cube, node_cap=2)

    def test_extra_colors_split_twins(self, diamond):
        plain = canonical_form(diamond)
        pinned = canonical_form(diamond, extra_colors={"x": 1})
        assert plain != pinned
        # pinning the other twin gives the same colored class
        assert pinned == canonical_form(diamond, extra_colors={"y": 1})
        assert pinned != canonical_form(diamond, extra_colors={"y": 2})


class TestAreIsomorphic:
    def test_matches_brute_force_on_small_pool(
        self, chain3, diamond, butterfly, cube, not_binomial, eight_cycle, two_squares
    ):
        pool = [chain3, diamond, butterfly, cube, not_binomial, eight_cycle, two_squares]
        rng = random.Random(5)
        pool += [relabel(p, rng) for p in pool]
        for p, q in itertools.combinations(pool, 2):
            assert are_isomorphic(p, q) == brute_isomorphic(p, q)

    def test_dual_of_chain(self, chain3):
        assert are_isomorphic(chain3, dual(chain3))

    def test_width_mismatch_is_cheap(self, chain3, diamond):
        assert not are_isomorphic(chain3, diamond)


class TestIsomorphism:
    def test_map_preserves_covers(self, cube):
        rng = random.Random(9)
        q = relabel(cube, rng)
        m = isomorphism(cube, q)
        assert m is not None
        assert {(m[a], m[b]) for a, b in cube.covers} == set(q.covers)
        assert sorted(m.values()) == sorted(q.elements)

    def test_none_for_distinct_diagrams(self, eight_cycle, two_squares):
        assert isomorphism(eight_cycle, two_squares) is None


widths_strategy = st.lists(st.integers(1, 4), min_size=1, max_size=3)


@st.composite
def raw_diagrams(draw):
    widths = draw(widths_strategy)
    levels = tuple(
        tuple(f"{r}:{i}" for i in range(w)) for r, w in enumerate(widths)
    )
    covers = set()
    for r in range(len(widths) - 1):
        for i in range(widths[r]):
            for j in range(widths[r + 1]):
                if draw(st.booleans()):
                    covers.add((f"{r}:{i}", f"{r + 1}:{j}"))
    return GradedPoset(levels, frozenset(covers))


@given(raw_diagrams(), st.integers(0, 2**32 - 1))
def test_certificate_is_an_invariant(p, seed):
    rng = random.Random(seed)
    assert canonical_form(relabel(p, rng)) == canonical_form(p)


@given(raw_diagrams(), raw_diagrams())
def test_certificate_equality_matches_brute_force(p, q):
    assert (canonical_form(p) == canonical_form(q)) == brute_isomorphic(p, q)
