#!/usr/bin/env python3
"""Exhaustively enumerate binomial posets with prescribed atom counts.

The searches are complete: "exhausted" means no poset exists, "found"
lists one representative per isomorphism class, and "capped" is the
only inconclusive verdict (a node or time budget ran out).
"""

from binposet import (
    canonical_form,
    enumerate_intervals,
    extension_search,
    m_interval,
    stripped_boolean_interval,
)

# small atom prescriptions, fully classified
for atoms in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
    res = enumerate_intervals(atoms)
    print(f"atoms {atoms}: {res.verdict}, {len(res.classes)} class(es), "
          f"{res.nodes} nodes")

# (1, 3, 4) is realized by exactly one poset: the two-level interval
# whose middle is a complete bipartite graph minus a perfect matching
res = enumerate_intervals((1, 3, 4))
assert len(res.classes) == 1
same = canonical_form(res.classes[0]) == canonical_form(m_interval(3))
print(f"\nunique (1, 3, 4) interval matches m_interval(3): {same}")

# extension searches anchor every lower interval of the base's length
# to the base itself.  (1, 2, 3, 4, 4) passes the growth condition but
# no rank-5 poset extends the 4-atom subset lattice that way:
res = extension_search(stripped_boolean_interval(4, 1), (1, 2, 3, 4, 4))
print(f"\nextend the subset lattice along (1,2,3,4,4): {res.verdict} "
      f"after {res.nodes} nodes")

# the (1, 3, 4) interval extends to no rank-4 poset at all; the growth
# condition alone leaves a_4 in {6, 9, 12}, and search rules each out
for a4 in (6, 9, 12):
    res = extension_search(m_interval(3), (1, 3, 4, a4))
    print(f"extend m_interval(3) by a_4 = {a4}: {res.verdict} "
          f"after {res.nodes} nodes")
