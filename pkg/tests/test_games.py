from fractions import Fraction

import pytest

from bspace.exactval import RadSum, ONE
from bspace.games import (TruncationTooSmall, block_family_report,
                          check_block_family, simulate_game)
from bspace.norms import FinVec
from bspace.trees import TreeSpec, build_tree


TREE = build_tree(TreeSpec(xi=1, n_max=600))


def test_game_tinc_values():
    for n in (1, 4, 9):
        t = simulate_game(n, tree=TREE)
        assert t.segment_verified
        assert len(t.turns) == n
        assert t.stats["avg_norm"] == RadSum.sqrt(Fraction(1, n))
        assert t.required_C == RadSum.sqrt(n)
        # transcript respects the tail subspaces
        for (cutoff, v) in t.turns:
            assert min(v.support()) >= cutoff


def test_game_jt_values():
    for n, p in ((9, 2), (25, 2), (4, 1)):
        t = simulate_game(n, p=p, tree=TREE)
        assert t.segment_verified
        target = RadSum.sqrt(n) if p == 2 else ONE
        assert t.stats["scaled_norm"] == target


def test_game_c_sufficiency():
    t = simulate_game(4, C=2, tree=TREE)
    assert t.c_sufficient is True
    t = simulate_game(9, C=2, tree=TREE)
    assert t.c_sufficient is False
    data = t.to_json()
    assert data["c_sufficient"] is False and data["n"] == 9


def test_game_validation():
    with pytest.raises(ValueError):
        simulate_game(0, tree=TREE)
    with pytest.raises(ValueError):
        simulate_game(2, strategy_S="psychic", tree=TREE)
    with pytest.raises(ValueError):
        simulate_game(2, p=3, tree=TREE)
    with pytest.raises(ValueError):
        simulate_game(2)


def test_truncation_too_small():
    small = build_tree(TreeSpec(xi=1, n_max=120))
    with pytest.raises(TruncationTooSmall) as ei:
        simulate_game(40, tree=small)
    assert ei.value.required_n_max == 551
    # and the reported size is actually sufficient
    big = build_tree(TreeSpec(xi=1, n_max=551))
    assert simulate_game(40, tree=big).segment_verified


def unit_block(seg):
    n = len(seg)
    return FinVec({t: Fraction(1, n) for t in seg})


def test_block_family_report():
    blocks = [[unit_block(range(32, 34))], [unit_block(range(40, 42))]]
    eps_seq = [Fraction(1, 4000), Fraction(1, 8000)]
    rep = block_family_report(blocks, Fraction(1, 10), eps_seq, TREE)
    assert rep["hyp_i"] and rep["hyp_ii"]
    assert rep["lhs_ii"] < rep["eps"]
    assert check_block_family(blocks, Fraction(1, 10), eps_seq, TREE)
    # a huge eps_j forces two later hits on one chain: hypothesis (i)
    # fails when both later blocks sit on the same branch
    blocks3 = [[unit_block(range(32, 34))], [unit_block(range(40, 42))],
               [unit_block(range(50, 52))]]
    fat = [Fraction(1, 10)] * 3
    rep = block_family_report(blocks3, Fraction(100), fat, TREE)
    assert not rep["hyp_i"]


def test_block_family_validation():
    blocks = [[unit_block(range(32, 34))]]
    with pytest.raises(ValueError):
        check_block_family(blocks, Fraction(1, 10), [], TREE)
    with pytest.raises(ValueError):
        check_block_family(blocks, Fraction(1, 10),
                           [Fraction(1, 8), Fraction(1, 4)], TREE)  # increasing
    with pytest.raises(ValueError):
        # non-normalized vector
        check_block_family([[FinVec({33: Fraction(1, 2)})]],
                           Fraction(1, 10), [Fraction(1, 100)], TREE)
    with pytest.raises(ValueError):
        # not successive
        check_block_family([[unit_block(range(40, 42))],
                            [unit_block(range(32, 34))]],
                           Fraction(1, 10),
                           [Fraction(1, 100), Fraction(1, 200)], TREE)
    assert check_block_family([], Fraction(1, 10), [], TREE)
