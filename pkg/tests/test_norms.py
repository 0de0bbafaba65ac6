import random
from fractions import Fraction

import pytest

from bspace.esstree import EssUniverse, toy_params
from bspace.exactval import RadSum, ONE, ZERO
from bspace.norms import (FinVec, G0, G1_SIGNS, G2, GSUM, Gp, GroundKind,
                          essinc_norm, ground_norm, jt_norm, tinc_norm,
                          wg_norm)
from bspace.trees import TreeSpec, build_tree


def rand_vec(rng, pool, kmax=5):
    supp = rng.sample(pool, rng.randint(1, kmax))
    return FinVec({t: Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 4))
                   for t in supp})


@pytest.fixture(scope="module")
def tree():
    return build_tree(TreeSpec(xi=1, n_max=120))


def test_finvec_basics():
    x = FinVec({3: Fraction(1, 2), 5: Fraction(0)})
    assert x.support() == [3]
    with pytest.raises(ValueError):
        FinVec({0: Fraction(1)})
    y = FinVec.from_json(x.to_json())
    assert y.coords == x.coords


def test_ground_norms_by_hand(tree):
    x = FinVec({33: Fraction(3, 4), 34: Fraction(-1), 40: Fraction(1, 2)})
    assert ground_norm(x, G0, tree)[0] == ONE
    # best l2 segment: 33..40 on one chain
    assert ground_norm(x, G2, tree)[0] == \
        RadSum.sqrt(Fraction(9, 16) + 1 + Fraction(1, 4))
    # plain sums cancel: best segment is the singleton {34}
    assert ground_norm(x, GSUM, tree)[0] == ONE
    assert ground_norm(x, Gp(2), tree)[0] == ground_norm(x, G2, tree)[0]
    # signed sums pick up all the absolute mass on 33..40
    assert ground_norm(x, G1_SIGNS, tree)[0] == \
        RadSum.from_rational(Fraction(9, 4))
    with pytest.raises(ValueError):
        GroundKind("nope")
    with pytest.raises(ValueError):
        Gp(1)


def test_ground_witness_attains_value(tree):
    rng = random.Random(11)
    pool = list(range(32, 64)) + [4, 5, 6, 7, 9, 17]
    for _ in range(40):
        x = rand_vec(rng, pool)
        for kind in (G0, G2, GSUM):
            value, leaf = ground_norm(x, kind, tree)
            assert leaf.evaluate(x) == value


def test_chain_isometry_small(tree):
    for n in (1, 2, 3, 5, 8):
        seg = tuple(range(32, 32 + n))
        avg = FinVec({t: Fraction(1, n) for t in seg})
        assert tinc_norm(avg, tree).value == RadSum.sqrt(Fraction(1, n))


def test_norm_axioms_and_witnesses(tree):
    rng = random.Random(13)
    pool = list(range(32, 64)) + [4, 5, 6, 7, 9, 17, 70]
    for _ in range(25):
        x = rand_vec(rng, pool)
        for norm in (lambda v: tinc_norm(v, tree),
                     lambda v: jt_norm(v, tree, r=1, p=2)):
            res = norm(x)
            # witness functional attains the reported value
            assert res.witness.evaluate(x) == res.value
            # homogeneity
            assert norm(x.scale(Fraction(-3, 2))).value == \
                res.value.scale(Fraction(3, 2))
            # 1-unconditionality
            flipped = FinVec({t: -c if t % 2 else c
                              for t, c in x.coords.items()})
            assert norm(flipped).value == res.value
            # triangle inequality against a second vector
            y = rand_vec(rng, pool)
            assert norm(FinVec({t: x[t] + y[t]
                                for t in set(x.support()) | set(y.support())
                                })).value <= res.value + norm(y).value


def test_norming_set_sandwich(tree):
    rng = random.Random(17)
    pool = list(range(32, 64)) + [4, 5, 6, 7]
    for _ in range(25):
        x = rand_vec(rng, pool)
        g0 = ground_norm(x, G0, tree)[0]
        g2 = ground_norm(x, G2, tree)[0]
        ti = tinc_norm(x, tree).value
        assert g0 <= g2 <= ti <= wg_norm(x, G2, tree)
        assert ti <= jt_norm(x, tree, r=2, p=2).value


def test_wg_family_may_skip_leading_support(tree):
    # regression: an admissible family may ignore early support points,
    # raising min E_1 and allowing more parts
    x = FinVec({4: Fraction(-1), 17: Fraction(3, 4), 33: Fraction(-4, 3),
                39: Fraction(1, 2), 47: Fraction(1), 60: Fraction(3, 4)})
    assert wg_norm(x, G0, tree) == RadSum.from_rational(Fraction(13, 6))


def test_jt_handcomputed(tree):
    x = FinVec({33: Fraction(1), 34: Fraction(-1), 36: Fraction(1)})
    # r=1, p=1: one segment 33..36 takes all absolute mass
    assert jt_norm(x, tree, r=1, p=1).value == RadSum.from_rational(3)
    # r=1, p=2: split into {33}, {34}, {36} gives sqrt(3); one segment
    # gives 3; two segments {33,34},{36} gives sqrt(5); max is 3
    assert jt_norm(x, tree, r=1, p=2).value == RadSum.from_rational(3)
    # unsigned: signs cancel inside one segment
    assert jt_norm(x, tree, r=1, p=2, signed=False).value == \
        RadSum.sqrt(3)
    with pytest.raises(ValueError):
        jt_norm(x, tree, r=2, p=1)
    with pytest.raises(ValueError):
        jt_norm(x, tree, r=2, p=2, signed=False)


def test_jt_deep_chain_regression():
    # supports deep on a 512-node chain must not blow the recursion
    tree = build_tree(TreeSpec(xi=1, n_max=16500))
    x = FinVec({512: Fraction(1), 1023: Fraction(1)})
    assert jt_norm(x, tree, r=1, p=2).value == RadSum.from_rational(2)
    y = FinVec({t: Fraction(1, 512) for t in range(512, 1024)})
    assert jt_norm(y, tree, r=1, p=1).value == ONE


def test_essinc_norm_basics():
    params = toy_params(6)
    EssUniverse(params, 1, 6, max_depth=2)
    x = FinVec({2: Fraction(1), 3: Fraction(1, 2), 5: Fraction(-1, 3)})
    res = essinc_norm(x, params)
    assert res.value >= ONE  # the G0 singleton at 2 is in the set
    assert res.witness.evaluate(x) == res.value
    # symmetry under global sign flip
    res2 = essinc_norm(x.scale(-1), params)
    assert res2.value == res.value


def test_zero_vectors(tree):
    z = FinVec({})
    assert tinc_norm(z, tree).value == ZERO
    assert jt_norm(z, tree).value == ZERO
    assert ground_norm(z, G2, tree) == (ZERO, None)
    assert wg_norm(z, G2, tree) == ZERO
