"""Schreier combinatorics: special convex combinations, plegma families
and the measure-extraction lemmas.

Run:  python3 demos/combinatorics_walkthrough.py
"""

from fractions import Fraction

from bspace import (DictTree, NodeMeasure, extract_incomparable, max_mass,
                    plegma_check, plegma_generate, repeated_average,
                    schreier_member, verify_scc)

print("Schreier membership: S_1 sets F satisfy |F| <= min F")
for F in [(1,), (2, 3), (3, 10, 20), (2, 3, 4)]:
    print("  %s in S_1: %s" % (F, schreier_member(F, 1)))

print("\nrepeated averages (the canonical scc construction):")
for order in (0, 1, 2):
    x = repeated_average(order, range(4, 64))
    masses = [max_mass(x.coeffs, m) for m in range(order)]
    eps = (max(masses) + Fraction(1, 100)) if masses else Fraction(1, 100)
    print("  order %d: support %d..%d (%d points), verify_scc(eps=%s): %s"
          % (order, min(x.support), max(x.support), len(x.support),
             eps, verify_scc(x, order, eps)))

print("\nplegma families of 2 rows in [1..6]^2 (interleaved columns):")
fams = list(plegma_generate(2, 2, range(1, 7)))
print("  %d families; first: %s; all re-check: %s"
      % (len(fams), fams[0], all(plegma_check(f) for f in fams)))

print("\nextracting incomparably-supported measures from a small tree:")
tree = DictTree({2: 1, 3: 1, 4: 2, 5: 2, 6: 3, 7: 3})
mu1 = NodeMeasure(tree, {4: Fraction(1, 2), 6: Fraction(1, 2)})
mu2 = NodeMeasure(tree, {5: Fraction(1, 4), 7: Fraction(3, 4)})
L, G = extract_incomparable([mu1, mu2], Fraction(1, 2), 2)
print("  kept measures %s with node sets %s" % (L, G))
for ja, ka in zip(L, G):
    for jb, kb in zip(L, G):
        if ja < jb:
            assert all(not tree.comparable(a, b) for a in ka for b in kb)
print("  cross-incomparability re-verified")
