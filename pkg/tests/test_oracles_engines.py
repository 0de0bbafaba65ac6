import random
from fractions import Fraction

from bspace.esstree import EssUniverse, toy_params
from bspace.experiments import build_corpus, tree_pool
from bspace.norms import (FinVec, G0, G2, essinc_norm, jt_norm, tinc_norm,
                          wg_norm)
from bspace.oracles import (enumerate_w_structures, min_height_profiles,
                            oracle_essinc, oracle_jt, oracle_tinc, oracle_wg,
                            shape_max, shape_value, shapes, structure_profile)
from bspace.trees import TreeSpec, build_tree

FAST_SIZES = [1] * 4 + [2] * 6 + [3] * 6 + [4] * 5 + [5] * 4 + [6] * 3


def test_shape_max_matches_explicit_shapes():
    # the interval recursion must agree with brute enumeration of every
    # combination-tree shape
    rng = random.Random(19)
    for _ in range(300):
        n = rng.randint(1, 6)
        vals = [Fraction(rng.randint(0, 8), rng.randint(1, 4))
                for _ in range(n)]
        minsupps = sorted(rng.randint(1, 7) for _ in range(n))
        best = None
        for shape in shapes(minsupps, 0, n - 1):
            v = shape_value(shape, vals)
            if best is None or v > best:
                best = v
        got = shape_max(vals, minsupps)
        if best is None:
            assert got is None
        else:
            assert got == best


def test_engines_match_oracles_fast():
    tree = build_tree(TreeSpec(xi=1, n_max=120))
    corpus = build_corpus(tree_pool(tree), 101, FAST_SIZES)
    for x in corpus:
        assert tinc_norm(x, tree).value == oracle_tinc(x, tree)
        assert jt_norm(x, tree, r=1, p=2).value == oracle_jt(x, tree, r=1, p=2)
    for x in corpus[:12]:
        assert jt_norm(x, tree, r=2, p=2).value == oracle_jt(x, tree, r=2, p=2)
        assert jt_norm(x, tree, r=1, p=2, signed=False).value == \
            oracle_jt(x, tree, r=1, p=2, signed=False)
        assert wg_norm(x, G2, tree) == oracle_wg(x, tree, "G2")
        assert wg_norm(x, G0, tree) == oracle_wg(x, tree, "G0")


def test_essinc_engine_matches_oracle_fast():
    eparams = toy_params(6)
    EssUniverse(eparams, 1, 6, max_depth=2)
    corpus = build_corpus(list(range(1, 15)), 102, FAST_SIZES)
    for x in corpus:
        assert essinc_norm(x, eparams).value == oracle_essinc(x, eparams)


def test_min_height_profiles_cover_enumeration():
    eparams = toy_params(5)
    window = list(range(1, 6))
    EssUniverse(eparams, 1, 5, max_depth=2)
    dp = min_height_profiles(window, eparams)
    for shape, leaves in enumerate_w_structures(window, eparams):
        supp, h, weights, _ = structure_profile(shape, leaves, eparams)
        w = max(weights) if weights else 0
        assert (supp, w) in dp
        assert dp[(supp, w)] <= h
