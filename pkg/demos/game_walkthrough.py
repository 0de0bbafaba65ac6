"""The n-turn subspace-vs-vector game and the obstruction it produces.

Run:  python3 demos/game_walkthrough.py
"""

from bspace import TreeSpec, TruncationTooSmall, build_tree, simulate_game

tree = build_tree(TreeSpec(xi=1, n_max=600))

print("T_inc variant: S plays tail subspaces, V follows a segment.")
print("The average of V's vectors has norm n^{-1/2}, so no constant C")
print("can witness l1^n-equivalence once sqrt(n) > C.\n")
for n in (1, 4, 9, 16):
    t = simulate_game(n, tree=tree)
    print("  n=%2d: segment %s..%s, ||avg|| = %r, required C >= %r"
          % (n, t.final_nodes[0], t.final_nodes[-1],
             t.stats["avg_norm"], t.required_C))

print("\nJT variant with p=2 (so q=2): the scaled sum has norm n^{1/2}.")
for n in (4, 9, 25):
    t = simulate_game(n, p=2, tree=tree)
    print("  n=%2d: scaled norm = %r, C=3 sufficient: %s"
          % (n, t.stats["scaled_norm"],
             simulate_game(n, p=2, C=3, tree=tree).c_sufficient))

print("\nA truncation can be too small to host the game:")
small = build_tree(TreeSpec(xi=1, n_max=120))
try:
    simulate_game(40, tree=small)
except TruncationTooSmall as exc:
    print("  n=40 on n_max=120:", exc)
    big = build_tree(TreeSpec(xi=1, n_max=exc.required_n_max))
    t = simulate_game(40, tree=big)
    print("  rebuilt at n_max=%d: segment verified = %s"
          % (exc.required_n_max, t.segment_verified))
