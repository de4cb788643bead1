#!/usr/bin/env python3
"""Decide which atom-count sequences a binomial poset can have.

A sequence (a_1, a_2, ...) must be non-decreasing with a_1 = 1 and all
generalized binomial coefficients B(i+j)/(B(i)B(j)) integral.  That is
necessary but not sufficient; the library also recognizes families with
known constructions and families with known obstructions.
"""

from binposet import (
    AtomicSequence,
    check_compatibility,
    check_R_equivalence,
    decide_family,
    lcm_extension,
    stripped_boolean_interval,
    verify_binomial,
)

print("growth condition")
for seq in ((1, 2, 6), (1, 2, 3, 3), (1, 3, 2), "1,1,2..."):
    rep = check_compatibility(seq)
    if rep.ok:
        print(f"  {seq!r}: ok")
    else:
        print(f"  {seq!r}: fails, {rep.detail}")

# a finite admissible head always extends: pad with the lcm forever
ext = lcm_extension((1, 2, 3))
print(f"\nlcm extension of (1, 2, 3): {ext.format()}")
assert check_compatibility(ext).ok

print("\nfamily decisions")
for seq in (
    (1, 2, 3, 4),     # subset lattice
    (1, 2, 6),        # glued stripped lattices
    (1, 3, 4),        # complete minus a matching
    "1,1,2...",       # shift register
    (1, 2, 4),        # mixed-modulus register
    (1, 2, 3, 6),     # counting-up prefix, 4 does not divide 6
    (1, 3, 4, 12),    # nothing extends (1, 3, 4)
    (1, 2, 5),        # outside every recognized family
):
    d = decide_family(seq)
    line = f"  {seq!r}: {d.verdict}"
    if d.recipe:
        line += f" via {d.recipe}"
    print(line)
    if d.witness is not None:
        assert verify_binomial(d.witness).ok

# behind the counting-up obstruction: over a counting-up prefix the
# atoms of an interval split into classes of size n, so n | a_n
p = stripped_boolean_interval(4, 2)
r = check_R_equivalence(p)
print(f"\natom classes of two glued 4-atom lattices: {r.classes}")
print(f"equivalence with classes of size 4? {r.ok} (k = {r.k})")
