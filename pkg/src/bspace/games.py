"""The n-turn subspace-vs-vector game and the block-family hypotheses.

simulate_game plays the game G(n, p, C) with the built-in strategy pair:
the subspace player only ever chooses tail subspaces (cutoffs), and the
vector player first picks a root carrying a maximal segment of length n
and then always answers with the immediate successor on that segment.
The resulting unit vectors sit on a single segment, so their average has
tinc norm exactly n^{-1/2} (and the JT-scaled sum has norm n^{1/q}),
which is the obstruction to asymptotic-l1 / asymptotic-lp behaviour.

check_block_family verifies, on a finite truncation, the two hypotheses
under which a normalized block family admits the (2^{1/q} + eps) upper
l2 estimate: (i) a per-segment one-hit condition and (ii) a weighted
tail-sum bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactval import RadSum, ONE
from .norms import FinVec, jt_norm, tinc_norm
from .schreier import schreier_member
from .trees import TreeXi, cantor_pair


class TruncationTooSmall(Exception):
    """V cannot complete an n-segment inside the truncation."""

    def __init__(self, msg, required_n_max):
        super().__init__(msg)
        self.required_n_max = required_n_max


STRATEGIES_S = ("tail-subspace",)
STRATEGIES_V = ("segment-follower",)


@dataclass
class GameTranscript:
    n: int
    p: Fraction | None
    C: Fraction | None
    strategy_S: str
    strategy_V: str
    turns: list[tuple[int, FinVec]]
    final_nodes: tuple[int, ...]
    segment_verified: bool
    stats: dict[str, RadSum]
    required_C: RadSum
    c_sufficient: bool | None = field(default=None)

    def to_json(self):
        return {
            "n": self.n,
            "p": None if self.p is None else str(self.p),
            "C": None if self.C is None else str(self.C),
            "strategy_S": self.strategy_S,
            "strategy_V": self.strategy_V,
            "turns": [{"cutoff": c, "vector": v.to_json()}
                      for c, v in self.turns],
            "final_nodes": list(self.final_nodes),
            "segment_verified": self.segment_verified,
            "stats": {k: v.to_json() for k, v in self.stats.items()},
            "required_C": self.required_C.to_json(),
            "c_sufficient": self.c_sufficient,
        }


def _required_root(n: int, xi: int) -> int:
    """Smallest root whose consecutive run can carry an n-chain."""
    b = 0
    while True:
        r = 1 << cantor_pair(0, b)
        # the run r, r+1, ..., r+n-1 stays below the next power of two
        # and must be a Schreier set
        if r + n - 1 < 2 * r and schreier_member(tuple(range(r, r + n)), xi):
            return r
        b += 1


def simulate_game(n, p=None, C=None, strategy_S="tail-subspace",
                  strategy_V="segment-follower",
                  tree: TreeXi = None) -> GameTranscript:
    """Play G(n, p, C) with the built-in strategies.  p None means the
    T_inc variant (average of the chosen vectors); otherwise the JT
    variant with that p (scaled sum n^{-1/p} * sum)."""
    if strategy_S not in STRATEGIES_S:
        raise ValueError("unknown S strategy %r" % (strategy_S,))
    if strategy_V not in STRATEGIES_V:
        raise ValueError("unknown V strategy %r" % (strategy_V,))
    if tree is None:
        raise ValueError("a built tree is required")
    if n < 1:
        raise ValueError("the game has at least one turn")
    if p is not None:
        p = Fraction(p)
        if p not in (1, 2):
            raise ValueError("JT variant supports p in {1, 2}")

    # V's opening plan: the least root carrying a maximal segment of
    # length >= n
    root = None
    for r in sorted(tree.roots):
        if len(tree.max_chain_from(r, limit=n)) >= n:
            root = r
            break
    if root is None:
        req = _required_root(n, tree.spec.xi)
        raise TruncationTooSmall(
            "no root carries an n=%d segment; need n_max >= %d"
            % (n, req + n - 1), required_n_max=req + n - 1)
    chain = tree.max_chain_from(root, limit=n)

    turns: list[tuple[int, FinVec]] = []
    cutoff = 1
    for k in range(n):
        node = chain[k]
        assert node >= cutoff, "V's move violates S's tail subspace"
        turns.append((cutoff, FinVec({node: Fraction(1)})))
        cutoff = node + 1  # S answers with the tail past V's choice

    nodes = tuple(chain)
    verified = tree.segment(nodes[0], nodes[-1]) == nodes

    total = FinVec({t: Fraction(1) for t in nodes})
    stats: dict[str, RadSum] = {}
    if p is None:
        avg = total.scale(Fraction(1, n))
        stats["avg_norm"] = tinc_norm(avg, tree).value
        required = RadSum.sqrt(n)  # 1 / ||avg|| = 1 / n^{-1/2}
    else:
        res = jt_norm(total, tree, r=1, p=p)
        stats["sum_norm"] = res.value
        if p == 1:
            scaled = res.value.scale(Fraction(1, n))
        else:
            scaled = RadSum.sqrt(Fraction(1, n)) * res.value
        stats["scaled_norm"] = scaled
        required = scaled  # n^{1/q} lower bound on any equivalence C
    suff = None
    if C is not None:
        suff = bool(RadSum.from_rational(Fraction(C)) >= required)
    return GameTranscript(n=n, p=p, C=None if C is None else Fraction(C),
                          strategy_S=strategy_S, strategy_V=strategy_V,
                          turns=turns, final_nodes=nodes,
                          segment_verified=verified, stats=stats,
                          required_C=required, c_sufficient=suff)


# -- block families ----------------------------------------------------


def _maximal_chains(tree: TreeXi, touching):
    """Root-to-leaf chains of the truncation meeting `touching`."""
    touching = set(touching)
    out = []
    for m in tree.nodes():
        if not tree.children.get(m):  # leaf
            chain = tree.chain_set(m)
            if touching & set(chain):
                out.append(chain)
    return out


def check_block_family(blocks, eps, eps_seq, tree: TreeXi, p=2) -> bool:
    """True iff both hypotheses hold; see block_family_report."""
    rep = block_family_report(blocks, eps, eps_seq, tree, p=p)
    return rep["hyp_i"] and rep["hyp_ii"]


def block_family_report(blocks, eps, eps_seq, tree: TreeXi, p=2) -> dict:
    """Hypotheses (i)/(ii) of the upper-l2 estimate for a normalized
    block family; blocks is a list of finite lists of FinVec.

    (i) is checked by exhaustive segment scan.  Only maximal segments
    (full root-to-leaf chains) need scanning: restricting to a
    sub-segment can only lower each |f(x)| and raise min S.  Because the
    blocks occupy disjoint ranges, the sign pattern of f on one block is
    independent of its pattern on another, so the best |f(x)| over f
    supported on S is the absolute mass of x on S.
    """
    if not blocks:
        return {"hyp_i": True, "hyp_ii": True, "lhs_ii": Fraction(0),
                "eps": Fraction(eps)}
    eps = Fraction(eps)
    eps_seq = [Fraction(e) for e in eps_seq]
    J = len(blocks)
    if len(eps_seq) < J:
        raise ValueError("need an eps_j for every block")
    if any(e <= 0 for e in eps_seq) or any(
            a < b for a, b in zip(eps_seq, eps_seq[1:])):
        raise ValueError("eps_seq must be positive and non-increasing")

    M = [0]
    for j, F in enumerate(blocks, start=1):
        if not F:
            raise ValueError("block %d is empty" % j)
        for x in F:
            if not x.coords:
                raise ValueError("zero vector in block %d" % j)
            if min(x.support()) <= M[-1]:
                raise ValueError("blocks must be successive (block %d)" % j)
            if jt_norm(x, tree, r=1, p=p).value != ONE:
                raise ValueError("non-normalized vector in block %d" % j)
        M.append(max(max(x.support()) for x in F))

    # (i): per maximal chain, at most one later block is eps_j-hit
    hyp_i = True
    touching = {t for F in blocks for x in F for t in x.support()}
    for chain in _maximal_chains(tree, touching):
        nodes = set(chain)
        mass = []  # best absolute mass on the chain, per block
        for F in blocks:
            mass.append(max(
                sum((abs(x[t]) for t in x.support() if t in nodes),
                    Fraction(0))
                for x in F))
        for j in range(1, J + 1):
            if chain[0] > M[j]:
                continue  # min S exceeds M(F_j): segment out of scope
            hits = sum(1 for j2 in range(j + 1, J + 1)
                       if mass[j2 - 1] >= eps_seq[j - 1])
            if hits > 1:
                hyp_i = False

    # (ii): finite truncation of the double sum
    total = Fraction(0)
    for j in range(1, J + 1):
        r_j = M[j] - M[j - 1]
        total += r_j * sum((i + 1) * eps_seq[i - 1] for i in range(j, J + 1))
    return {"hyp_i": hyp_i, "hyp_ii": total < eps, "lhs_ii": total,
            "eps": eps}
