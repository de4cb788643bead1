"""Exhaustive search for bounded binomial posets with prescribed atom counts.

Two strategies, both complete (they enumerate every isomorphism class
unless a resource cap interrupts):

* levelwise: build the diagram one rank at a time, one element at a
  time.  Cover sets are generated in non-decreasing order within a
  level; every new element must have the exact chain count and the exact
  per-rank census toward each element below it, and up-degrees are
  tracked against their forced values.  Completed partial diagrams are
  deduplicated by canonical certificate.

* rank-4 assembly: enumerate rank-3 classes first, then choose which
  rank-3 interval sits under each coatom (an atom set plus a wiring
  pattern), and finally match the rank-2 rows of those blocks to
  concrete mid-level elements.  This tames the very wide middle level
  that defeats the levelwise order at rank 4.

A search reports "exhausted" only when no branch was cut by a cap.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations, product

from .core import (
    AtomicSequence,
    FactorialProfile,
    GradedPoset,
    PosetError,
    verify_binomial,
)
from .iso import CanonicalizationCapError, canonical_form

__all__ = [
    "SearchLimits",
    "SearchResult",
    "enumerate_intervals",
    "extension_search",
]


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int = 2_000_000
    max_seconds: float | None = None


@dataclass(frozen=True)
class SearchResult:
    """verdict is "found", "exhausted", or "capped".  classes holds one
    representative per isomorphism class, sorted by certificate; on
    "capped" it holds whatever was classified before the cap."""

    verdict: str
    classes: tuple[GradedPoset, ...] = ()
    nodes: int = 0
    detail: str = ""

    @property
    def witness(self) -> GradedPoset | None:
        return self.classes[0] if self.classes else None


class _Capped(Exception):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class _Budget:
    __slots__ = ("max_nodes", "deadline", "nodes")

    def __init__(self, limits: SearchLimits):
        self.max_nodes = limits.max_nodes
        self.deadline = (
            None if limits.max_seconds is None else time.monotonic() + limits.max_seconds
        )
        self.nodes = 0

    def spend(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Capped(f"node budget of {self.max_nodes} exhausted")
        if self.deadline is not None and not self.nodes % 256:
            if time.monotonic() > self.deadline:
                raise _Capped("time budget exhausted")


def _check_widths(seq: AtomicSequence, rank: int) -> str | None:
    """None if every sub-interval rank census is integral, else why not."""
    prof = FactorialProfile(seq)
    try:
        for d in range(rank + 1):
            for r in range(d + 1):
                prof.W(d, r)
    except PosetError as exc:
        return str(exc)
    return None


# ---------------------------------------------------------------------------
# levelwise strategy


class _Levelwise:
    def __init__(
        self,
        seq: AtomicSequence,
        budget: _Budget,
        anchor: tuple[bytes, int] | None,
        use_dedup: bool,
        out: dict[bytes, GradedPoset],
    ):
        self.seq = seq
        self.N = len(seq.head)
        self.budget = budget
        self.anchor = anchor
        self.use_dedup = use_dedup
        self.out = out
        prof = FactorialProfile(seq)
        self.Wtab = [[prof.W(d, r) for r in range(d + 1)] for d in range(self.N + 1)]
        self.Bval = [prof.B(d) for d in range(self.N + 1)]
        # element state, indexed in creation order; index 0 is the bottom
        self.level_of = [0]
        self.down_mask = [1]
        self.up_mask = [0]
        self.covers_of: list[tuple[int, ...]] = [()]
        self.chains: list[dict[int, int]] = [{0: 1}]
        self.updeg = [0]
        self.level_members: list[list[int]] = [[0]]
        self.level_mask = [1]
        self.seen: dict[int, set[bytes]] = {}

    def run(self) -> None:
        self._fill(1)

    def _fill(self, j: int) -> None:
        if j > self.N:
            self._emit()
            return
        prev = self.level_members[j - 1]
        cands = list(combinations(range(len(prev)), self.seq.a(j)))
        self.level_members.append([])
        self.level_mask.append(0)
        self._slots(j, 0, 0, cands, prev)
        self.level_members.pop()
        self.level_mask.pop()

    def _slots(self, j: int, s: int, min_ci: int, cands, prev) -> None:
        width = self.Wtab[self.N][j]
        if s == width:
            self._level_done(j)
            return
        cap = self.seq.a(self.N - j + 1)  # forced up-degree at rank j-1
        rem = width - s - 1
        updeg = self.updeg
        for ci in range(min_ci, len(cands)):
            local = cands[ci]
            C = tuple(prev[t] for t in local)
            if any(updeg[u] >= cap for u in C):
                continue
            # every rank-(j-1) element must still be able to reach its cap
            short = False
            for t, u in enumerate(prev):
                need = cap - updeg[u] - (1 if t in local else 0)
                if need > rem:
                    short = True
                    break
            if short:
                continue
            self.budget.spend()
            e = self._create(j, C)
            if e is not None:
                self._slots(j, s + 1, ci, cands, prev)
                self._destroy(e, C)

    def _create(self, j: int, C: tuple[int, ...]) -> int | None:
        e = len(self.level_of)
        mask = 1 << e
        down = mask
        ch: dict[int, int] = {}
        for c in C:
            down |= self.down_mask[c]
            for x, cnt in self.chains[c].items():
                ch[x] = ch.get(x, 0) + cnt
        level_of = self.level_of
        for x, cnt in ch.items():
            d = j - level_of[x]
            if cnt != self.Bval[d]:
                return None
            if d >= 2:
                between = self.up_mask[x] & down
                for r in range(1, d):
                    got = (between & self.level_mask[level_of[x] + r]).bit_count()
                    if got != self.Wtab[d][r]:
                        return None
        ch[e] = 1
        level_of.append(j)
        self.down_mask.append(down)
        self.up_mask.append(0)
        self.covers_of.append(C)
        self.chains.append(ch)
        self.updeg.append(0)
        for u in C:
            self.updeg[u] += 1
        for x in ch:
            if x != e:
                self.up_mask[x] |= mask
        self.level_members[j].append(e)
        self.level_mask[j] |= mask
        if self.anchor is not None and j == self.anchor[1]:
            if not self._anchored(e):
                self._destroy(e, C)
                return None
        return e

    def _anchored(self, e: int) -> bool:
        """Is the lower set of ``e`` isomorphic to the anchor interval?"""
        sub = self._down_poset(e)
        try:
            cert = canonical_form(sub)
        except CanonicalizationCapError as exc:
            raise _Capped(f"anchor check hit the canonicalization cap: {exc}") from None
        return cert == self.anchor[0]

    def _destroy(self, e: int, C: tuple[int, ...]) -> None:
        mask = 1 << e
        j = self.level_of[e]
        for u in C:
            self.updeg[u] -= 1
        for x in self.chains[e]:
            if x != e:
                self.up_mask[x] &= ~mask
        self.level_of.pop()
        self.down_mask.pop()
        self.up_mask.pop()
        self.covers_of.pop()
        self.chains.pop()
        self.updeg.pop()
        self.level_members[j].pop()
        self.level_mask[j] &= ~mask

    def _level_done(self, j: int) -> None:
        if j == self.N:
            self._emit()
            return
        if self.use_dedup:
            cert = None
            try:
                cert = canonical_form(self._partial_poset(j))
            except CanonicalizationCapError:
                pass  # cannot dedup this one; searching on is still sound
            if cert is not None:
                seen = self.seen.setdefault(j, set())
                if cert in seen:
                    return
                seen.add(cert)
        self._fill(j + 1)

    def _partial_poset(self, top: int) -> GradedPoset:
        names: dict[int, str] = {}
        levels = []
        for r in range(top + 1):
            row = self.level_members[r]
            levels.append(tuple(f"{r}:{i}" for i in range(len(row))))
            for i, g in enumerate(row):
                names[g] = f"{r}:{i}"
        covers = frozenset(
            (names[c], names[e]) for e in names for c in self.covers_of[e]
        )
        return GradedPoset(tuple(levels), covers)

    def _down_poset(self, e: int) -> GradedPoset:
        keep = sorted(self.chains[e])
        lo = 0
        names: dict[int, str] = {}
        rows: dict[int, list[int]] = {}
        for g in keep:
            rows.setdefault(self.level_of[g] - lo, []).append(g)
        levels = []
        for r in range(len(rows)):
            row = rows[r]
            levels.append(tuple(f"{r}:{i}" for i in range(len(row))))
            for i, g in enumerate(row):
                names[g] = f"{r}:{i}"
        covers = frozenset(
            (names[c], names[g]) for g in keep for c in self.covers_of[g]
        )
        return GradedPoset(tuple(levels), covers)

    def _emit(self) -> None:
        p = self._partial_poset(self.N)
        rep = verify_binomial(p, workers=1)
        if not rep.ok or rep.atoms is None or rep.atoms.head != self.seq.head:
            return  # construction invariants should prevent this
        try:
            cert = canonical_form(p)
        except CanonicalizationCapError as exc:
            raise _Capped(f"classifying a candidate hit the canonicalization cap: {exc}") from None
        self.out.setdefault(cert, p)


# ---------------------------------------------------------------------------
# rank-4 assembly strategy


def _row_patterns(rep: GradedPoset, a3: int) -> set[tuple[tuple[int, ...], ...]]:
    """All atom-relabelings of a rank-3 interval's mid-level row multiset."""
    atoms = rep.levels[1]
    idx = {x: i for i, x in enumerate(atoms)}
    rows = [tuple(sorted(idx[x] for x in rep.lower_covers(y))) for y in rep.levels[2]]
    pats = set()
    for perm in permutations(range(a3)):
        pats.add(tuple(sorted(tuple(sorted(perm[i] for i in row)) for row in rows)))
    return pats


class _Assembly:
    def __init__(
        self,
        seq: AtomicSequence,
        budget: _Budget,
        anchor: tuple[bytes, int] | None,
        use_dedup: bool,
        out: dict[bytes, GradedPoset],
    ):
        if len(seq.head) != 4:
            raise PosetError("assembly strategy handles rank 4 only")
        if anchor is not None and anchor[1] != 3:
            raise PosetError("assembly strategy anchors at rank 3 only")
        self.seq = seq
        self.budget = budget
        self.anchor = anchor
        self.use_dedup = use_dedup
        self.out = out
        self.a2, self.a3, self.a4 = seq.a(2), seq.a(3), seq.a(4)
        self.W2 = FactorialProfile(seq).W(4, 2)
        self.seen: set[bytes] = set()

    def run(self) -> None:
        catalog: dict[bytes, GradedPoset] = {}
        _Levelwise(
            AtomicSequence(self.seq.head[:3]), self.budget, None, self.use_dedup, catalog
        ).run()
        wanted = None if self.anchor is None else self.anchor[0]
        reps = [p for c, p in sorted(catalog.items()) if wanted is None or c == wanted]
        patterns: set[tuple[tuple[int, ...], ...]] = set()
        for rep in reps:
            patterns |= _row_patterns(rep, self.a3)
        # a placement is an atom subset plus a row pattern on its positions
        self.placements: list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]] = []
        for S in combinations(range(self.a4), self.a3):
            for pat in sorted(patterns):
                rows = tuple(tuple(S[i] for i in row) for row in pat)
                self.placements.append((S, rows))
        self.count = [0] * self.a4
        self.demand: dict[tuple[int, ...], int] = {}
        self.distinct_through = [0] * self.a4
        self.chosen: list[int] = []
        self._slots(0)

    def _slots(self, min_pl: int) -> None:
        if len(self.chosen) == self.a4:
            self._match()
            return
        rem = self.a4 - len(self.chosen) - 1
        cap = self.a3
        for pl in range(min_pl, len(self.placements)):
            S, rows = self.placements[pl]
            if any(self.count[x] >= cap for x in S):
                continue
            short = False
            for x in range(self.a4):
                # each later block passes over x at most once
                need = cap - self.count[x] - (1 if x in S else 0)
                if need > rem:
                    short = True
                    break
            if short:
                continue
            # every row with positive demand becomes a mid atom-set in the
            # finished diagram, so the distinct rows are capped globally by
            # the mid count and per atom by the atom's upper degree
            fresh = {row for row in rows if not self.demand.get(row)}
            if len(self.demand) + len(fresh) > self.W2:
                continue
            if any(
                self.distinct_through[x] + sum(1 for row in fresh if x in row)
                > self.a3
                for x in S
            ):
                continue
            self.budget.spend()
            for x in S:
                self.count[x] += 1
            for row in rows:
                was = self.demand.get(row, 0)
                self.demand[row] = was + 1
                if not was:
                    for x in row:
                        self.distinct_through[x] += 1
            self.chosen.append(pl)
            stuck = any(
                d % self.a2 and any(self.count[x] >= cap for x in T)
                for T, d in self.demand.items()
            )
            if not stuck and not self._seen_state():
                self._slots(pl)
            self.chosen.pop()
            for row in rows:
                self.demand[row] -= 1
                if not self.demand[row]:
                    del self.demand[row]
                    for x in row:
                        self.distinct_through[x] -= 1
            for x in S:
                self.count[x] -= 1

    def _seen_state(self) -> bool:
        if not self.use_dedup:
            return False
        levels = [tuple(f"0:{x}" for x in range(self.a4))]
        covers: list[tuple[str, str]] = []
        mid: list[str] = []
        for k, pl in enumerate(self.chosen):
            _S, rows = self.placements[pl]
            for r, row in enumerate(rows):
                rid = f"1:{len(mid)}"
                mid.append(rid)
                covers.extend((f"0:{x}", rid) for x in row)
                covers.append((rid, f"2:{k}"))
        levels.append(tuple(mid))
        levels.append(tuple(f"2:{k}" for k in range(len(self.chosen))))
        try:
            cert = canonical_form(GradedPoset(tuple(levels), frozenset(covers)))
        except CanonicalizationCapError:
            return False  # cannot dedup; treat as new
        if cert in self.seen:
            return True
        self.seen.add(cert)
        return False

    def _match(self) -> None:
        if any(c != self.a3 for c in self.count):
            return
        mu: dict[tuple[int, ...], int] = {}
        for T, d in self.demand.items():
            if d % self.a2:
                return
            mu[T] = d // self.a2
        if sum(mu.values()) != self.W2:
            return
        rows_T = sorted(mu)
        options: list[list[tuple[tuple[int, int], ...]]] = []
        for T in rows_T:
            occs: list[int] = []  # block slots, one entry per occurrence of row T
            for k, pl in enumerate(self.chosen):
                occs.extend(k for row in self.placements[pl][1] if row == T)
            opts = self._assign(occs, mu[T])
            if not opts:
                return
            options.append(opts)
        for combo in product(*options):
            self.budget.spend()
            self._emit(rows_T, mu, combo)

    def _assign(self, occs: list[int], copies: int) -> list[tuple[tuple[int, int], ...]]:
        """All ways to spread row occurrences over interchangeable copies.

        Each copy takes exactly a2 occurrences; occurrences from the same
        block go to distinct copies.  Copies are claimed in first-use
        order and same-block occurrences get increasing copy ids, so each
        symmetry class appears once."""
        a2 = self.a2
        load = [0] * copies
        res: list[tuple[tuple[int, int], ...]] = []
        cur: list[tuple[int, int]] = []

        def rec(i: int, used: int) -> None:
            if i == len(occs):
                if all(ld == a2 for ld in load):
                    res.append(tuple(cur))
                return
            self.budget.spend()
            floor = cur[-1][1] + 1 if cur and cur[-1][0] == occs[i] else 0
            for c in range(floor, min(used + 1, copies)):
                if load[c] >= a2:
                    continue
                load[c] += 1
                cur.append((occs[i], c))
                rec(i + 1, max(used, c + 1))
                cur.pop()
                load[c] -= 1

        rec(0, 0)
        return res

    def _emit(
        self,
        rows_T: list[tuple[int, ...]],
        mu: dict[tuple[int, ...], int],
        combo: tuple[tuple[tuple[int, int], ...], ...],
    ) -> None:
        base = {}
        total = 0
        for T in rows_T:
            base[T] = total
            total += mu[T]
        levels = (
            ("0:0",),
            tuple(f"1:{x}" for x in range(self.a4)),
            tuple(f"2:{y}" for y in range(total)),
            tuple(f"3:{k}" for k in range(self.a4)),
            ("4:0",),
        )
        covers: set[tuple[str, str]] = set()
        for x in range(self.a4):
            covers.add(("0:0", f"1:{x}"))
        for k in range(self.a4):
            covers.add((f"3:{k}", "4:0"))
        for T, assignment in zip(rows_T, combo):
            for c in range(mu[T]):
                yid = f"2:{base[T] + c}"
                for x in T:
                    covers.add((f"1:{x}", yid))
            for k, c in assignment:
                covers.add((f"2:{base[T] + c}", f"3:{k}"))
        p = GradedPoset(levels, frozenset(covers))
        rep = verify_binomial(p, workers=1)
        if not rep.ok or rep.atoms is None or rep.atoms.head != self.seq.head:
            return
        try:
            cert = canonical_form(p)
        except CanonicalizationCapError as exc:
            raise _Capped(f"classifying a candidate hit the canonicalization cap: {exc}") from None
        self.out.setdefault(cert, p)


# ---------------------------------------------------------------------------
# public entry points


def _run(
    seq: AtomicSequence,
    budget: _Budget,
    anchor: tuple[bytes, int] | None,
    use_dedup: bool,
    strategy: str,
    out: dict[bytes, GradedPoset],
) -> None:
    if strategy == "auto":
        fits = len(seq.head) == 4 and (anchor is None or anchor[1] == 3)
        strategy = "assembly" if fits else "levelwise"
    if strategy == "assembly":
        _Assembly(seq, budget, anchor, use_dedup, out).run()
    elif strategy == "levelwise":
        _Levelwise(seq, budget, anchor, use_dedup, out).run()
    else:
        raise PosetError(f"unknown strategy {strategy!r}")


def _classes(out: dict[bytes, GradedPoset]) -> tuple[GradedPoset, ...]:
    return tuple(p for _, p in sorted(out.items()))


def _as_finite_sequence(atoms) -> AtomicSequence:
    seq = atoms if isinstance(atoms, AtomicSequence) else AtomicSequence(tuple(atoms))
    if not seq.finite:
        raise PosetError("need a finite atom tuple, not a tailed sequence")
    if not seq.head:
        raise PosetError("need at least one atom value")
    return seq


def enumerate_intervals(
    atoms,
    *,
    base: GradedPoset | None = None,
    limits: SearchLimits | None = None,
    use_iso_dedup: bool = True,
    strategy: str = "auto",
) -> SearchResult:
    """Every isomorphism class of bounded poset passing verify_binomial
    with exactly the given atom counts.

    With ``base``, only posets all of whose rank-``base.height`` lower
    intervals are isomorphic to ``base`` are enumerated."""
    seq = _as_finite_sequence(atoms)
    rank = len(seq.head)
    bad = _check_widths(seq, rank)
    if bad is not None:
        return SearchResult("exhausted", (), 0, f"impossible level census: {bad}")
    anchor = None
    if base is not None:
        if base.widths[0] != 1 or base.widths[-1] != 1:
            raise PosetError("base must be a bounded interval")
        if not 0 < base.height < rank:
            raise PosetError("base height must be strictly between 0 and the rank")
        anchor = (canonical_form(base), base.height)
    budget = _Budget(limits or SearchLimits())
    out: dict[bytes, GradedPoset] = {}
    try:
        _run(seq, budget, anchor, use_iso_dedup, strategy, out)
    except _Capped as capped:
        return SearchResult("capped", _classes(out), budget.nodes, capped.detail)
    classes = _classes(out)
    verdict = "found" if classes else "exhausted"
    return SearchResult(verdict, classes, budget.nodes)


def extension_search(
    base: GradedPoset,
    target,
    extra_ranks: int = 1,
    limits: SearchLimits | None = None,
    use_iso_dedup: bool = True,
) -> SearchResult:
    """Search for bounded binomial posets extending ``base`` upward by
    ``extra_ranks`` ranks along the ``target`` atom sequence.

    The base is anchored: every rank-``base.height`` lower interval of a
    candidate must be isomorphic to it.  "exhausted" means no such
    extension exists; "capped" means a resource limit cut the search."""
    if extra_ranks < 1:
        raise PosetError("extra_ranks must be at least 1")
    if isinstance(target, str):
        target = AtomicSequence.parse(target)
    elif not isinstance(target, AtomicSequence):
        target = AtomicSequence(tuple(target))
    rep = verify_binomial(base)
    if not rep.ok:
        raise PosetError(f"base fails the chain-count check: {rep.detail}")
    assert rep.atoms is not None
    if base.widths[0] != 1 or base.widths[-1] != 1:
        raise PosetError("base must be a bounded interval")
    rank = base.height + extra_ranks
    try:
        head = target.prefix(rank)
    except IndexError:
        raise PosetError(
            f"target {target.format()} does not define {rank} atom values"
        ) from None
    if rep.atoms.head != head[: base.height]:
        raise PosetError(
            f"base atoms {rep.atoms.format()} do not match the target prefix"
        )
    return enumerate_intervals(
        AtomicSequence(head),
        base=base,
        limits=limits,
        use_iso_dedup=use_iso_dedup,
    )
