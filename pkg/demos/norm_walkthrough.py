"""Walk through the norm engines on a small truncation.

Run:  python3 demos/norm_walkthrough.py
"""

from fractions import Fraction

from bspace import (FinVec, G0, G2, TreeSpec, build_tree, essinc_norm,
                    ground_norm, jt_norm, tinc_norm, toy_params, wg_norm)
from bspace.esstree import EssUniverse
from bspace.oracles import oracle_jt, oracle_tinc

tree = build_tree(TreeSpec(xi=1, n_max=120))
print("truncation: %d nodes, roots %s" % (len(tree.nodes()),
                                          sorted(tree.roots)))
print("the chain from root 32 runs to 63:", tree.max_chain_from(32)[-1] == 63)
print()

# a vector living on two incomparable chains plus an isolated point
x = FinVec({4: Fraction(1), 5: Fraction(-1, 2),
            33: Fraction(3, 4), 34: Fraction(1, 2),
            17: Fraction(1, 4)})
print("x =", dict(x.coords))
for label, value in [
        ("ground G0 (sup)        ", ground_norm(x, G0, tree)[0]),
        ("ground G2 (segment l2) ", ground_norm(x, G2, tree)[0]),
        ("tinc (incomparable l2) ", tinc_norm(x, tree).value),
        ("W_{G2} (Tsirelson ext.)", wg_norm(x, G2, tree)),
        ("jt r=1 p=2             ", jt_norm(x, tree, r=1, p=2).value),
        ("jt r=1 p=1             ", jt_norm(x, tree, r=1, p=1).value)]:
    print("  %s = %-22r ~ %.6f" % (label, value, float(value)))

res = tinc_norm(x, tree)
print("\nthe tinc witness functional attains the value exactly:",
      res.witness.evaluate(x) == res.value)
print("engine values agree with full enumeration:",
      res.value == oracle_tinc(x, tree) and
      jt_norm(x, tree, r=1, p=2).value == oracle_jt(x, tree, r=1, p=2))

# the chain isometry: averages over a segment behave like l2^n
print("\nchain isometry on segments of root 32:")
for n in (1, 2, 4, 9):
    avg = FinVec({t: Fraction(1, n) for t in range(32, 32 + n)})
    v = tinc_norm(avg, tree).value
    print("  n=%d: tinc(avg) = %r (= n^{-1/2}: %s)"
          % (n, v, v * v == Fraction(1, n)))

# the weighted constrained norm on toy parameters
params = toy_params(6)
EssUniverse(params, 1, 6, max_depth=2)  # pins the weight registry
y = FinVec({2: Fraction(1), 3: Fraction(1, 2), 5: Fraction(-1, 3)})
res = essinc_norm(y, params)
print("\nessinc norm of %s = %r" % (dict(y.coords), res.value))
