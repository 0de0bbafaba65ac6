"""Weighted coded trees with sigma-coded weights and essential incomparability.

Nodes are finite sequences ((g_1, m_{j_1}), ..., (g_k, m_{j_k})) of sign
functions paired with weights.  The weight of every non-root entry is
dictated by an injection sigma applied to the preceding entries, so a
node is determined by its last (g, weight) pair and each weight value
determines its entire weight history.  sigma is realized as a registry:
a canonical serialization of the history is mapped, on first use, to the
smallest unused weight index larger than the history's last index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .schreier import finset, schreier_member

Sign = tuple[tuple[int, int], ...]  # ((index, +-1), ...) sorted by index


def sign_fn(entries: Iterable[tuple[int, int]]) -> Sign:
    out = tuple(sorted(entries))
    if len({i for i, _ in out}) != len(out):
        raise ValueError("duplicate index in sign function")
    for i, s in out:
        if i < 1 or s not in (-1, 1):
            raise ValueError("sign function entries must be (index>=1, +-1)")
    return out


def sign_support(g: Sign) -> tuple[int, ...]:
    return tuple(i for i, _ in g)


class PrefixExhausted(Exception):
    """The stored (m_j) prefix has no admissible index left."""


@dataclass
class EssParams:
    m: tuple[int, ...]
    n: tuple[int, ...]
    sigma_id: str = "registry-smallest-unused-v1"
    toy: bool = False

    def __post_init__(self):
        self.m = tuple(self.m)
        self.n = tuple(self.n)
        if len(self.m) < 2 or len(self.n) < 2 or len(self.m) != len(self.n):
            raise ValueError("need aligned (m, n) prefixes of length >= 2")
        if any(b <= a for a, b in zip(self.m, self.m[1:])):
            raise ValueError("m must be strictly increasing")
        if any(b <= a for a, b in zip(self.n, self.n[1:])):
            raise ValueError("n must be strictly increasing")
        if not self.toy:
            if self.m[0] != 2 or self.m[1] != 4:
                raise ValueError("m must start 2, 4 (or set toy=True)")
            if any(self.m[j] < self.m[j - 1] ** 2 for j in range(2, len(self.m))):
                raise ValueError("need m_j >= m_{j-1}^2 (or toy=True)")
            if self.n[0] != 1 or self.n[1] != 6:
                raise ValueError("n must start 1, 6 (or set toy=True)")
            if any(self.n[j] <= math.log2(self.m[j] ** 2) + self.n[j - 1]
                   for j in range(2, len(self.n))):
                raise ValueError("need n_j > log2(m_j^2) + n_{j-1} (or toy=True)")
        # mutable sigma registry; externally synchronized, deterministic
        # given insertion order
        self._sigma: dict[tuple, int] = {}
        self._sigma_inv: dict[int, tuple] = {}

    def weight(self, j: int) -> int:
        if not 0 <= j < len(self.m):
            raise PrefixExhausted("weight index %d beyond stored prefix" % j)
        return self.m[j]


def full_params(depth: int = 4) -> EssParams:
    m = [2, 4]
    n = [1, 6]
    for _ in range(depth - 2):
        m.append(m[-1] ** 2)
        n.append(int(math.log2(m[-1] ** 2)) + n[-1] + 1)
    return EssParams(tuple(m), tuple(n))


def toy_params(length: int = 24) -> EssParams:
    return EssParams(tuple(range(2, 2 + length)), tuple(range(1, 1 + length)),
                     toy=True)


def _history_key(history: Sequence[tuple[Sign, int]]) -> tuple:
    return tuple((g, j) for g, j in history)


def sigma_index(history: Sequence[tuple[Sign, int]], params: EssParams) -> int:
    """Weight index assigned to a history; assigns on first use."""
    if not history:
        raise ValueError("sigma needs a nonempty history")
    js = [j for _, j in history]
    if any(b <= a for a, b in zip(js, js[1:])):
        raise ValueError("history weights must be strictly increasing")
    key = _history_key(history)
    if key in self_reg(params):
        return self_reg(params)[key]
    used = set(self_reg(params).values())
    j = js[-1] + 1
    while j in used:
        j += 1
    if j >= len(params.m):
        raise PrefixExhausted(
            "parameter prefix exhausted: next free index %d, stored %d"
            % (j, len(params.m)))
    self_reg(params)[key] = j
    params._sigma_inv[j] = key
    return j


def self_reg(params: EssParams) -> dict:
    return params._sigma


def sigma(history: Sequence[tuple[Sign, int]], params: EssParams) -> int:
    """The weight m_j the injection assigns to `history`."""
    return params.weight(sigma_index(history, params))


def sigma_history(j: int, params: EssParams):
    """Inverse lookup: the history assigned to weight index j, if any."""
    return params._sigma_inv.get(j)


@dataclass(frozen=True)
class EssNode:
    """A node of the weighted tree: its full (g, weight-index) sequence."""

    seq: tuple[tuple[Sign, int], ...]

    @property
    def g(self) -> Sign:
        return self.seq[-1][0]

    @property
    def weight_index(self) -> int:
        return self.seq[-1][1]

    @property
    def history(self) -> tuple[tuple[Sign, int], ...]:
        return self.seq[:-1]

    @property
    def weight_seq(self) -> tuple[int, ...]:
        return tuple(j for _, j in self.seq)

    def min_support(self) -> int:
        return self.g[0][0]

    def to_json(self):
        return {"g": [list(p) for p in self.g],
                "weights": list(self.weight_seq)}


def node_from_history(history, g: Sign, j: int) -> EssNode:
    return EssNode(tuple(history) + ((g, j),))


def ess_node_valid(node: EssNode, params: EssParams, xi: int) -> bool:
    """Check the four defining conditions of the weighted tree."""
    seq = node.seq
    if not seq:
        return False
    supports = [sign_support(g) for g, _ in seq]
    if any(not s for s in supports):
        return False
    # (i) successive supports
    for a, b in zip(supports, supports[1:]):
        if a[-1] >= b[0]:
            return False
    # (ii) supp g_i in S_{n_{j_i}} with the n-indices increasing from n_1
    for (g, j), supp in zip(seq, supports):
        if not 0 <= j < len(params.n):
            return False
        if not schreier_member(finset(supp), params.n[j]):
            return False
    # (iii) weights follow the sigma coding
    if seq[0][1] != 1:
        return False
    for i in range(1, len(seq)):
        try:
            if seq[i][1] != sigma_index(seq[:i], params):
                return False
        except PrefixExhausted:
            return False
    # (iv) the set of minimal support points lies in S_xi
    mins = finset(s[0] for s in supports)
    return schreier_member(mins, xi)


def weight_comparable(t1: EssNode, t2: EssNode) -> bool:
    """Comparability of the weight nodes (weight-sequence prefix order)."""
    w1, w2 = t1.weight_seq, t2.weight_seq
    k = min(len(w1), len(w2))
    return w1[:k] == w2[:k]


def weight_lt(t1: EssNode, t2: EssNode) -> bool:
    w1, w2 = t1.weight_seq, t2.weight_seq
    return len(w1) < len(w2) and w2[:len(w1)] == w1


def essentially_incomparable(nodes: Iterable[EssNode], params: EssParams) -> bool:
    """Whenever two nodes have comparable weights, the connecting sign
    function's support must lie entirely before the lower node's support."""
    ns = list(nodes)
    for t1 in ns:
        for t2 in ns:
            if t1 is t2:
                continue
            if weight_lt(t1, t2):
                g, _ = t2.seq[len(t1.weight_seq) - 1]
                supp = sign_support(g)
                if supp and supp[-1] >= t1.min_support():
                    return False
    return True


class EssUniverse:
    """All valid nodes with supports inside {1..n_points} (toy scale).

    Generation order is deterministic, which pins the sigma registry
    assignments for a fresh params object.
    """

    def __init__(self, params: EssParams, xi: int, n_points: int,
                 max_depth: int = 3):
        self.params = params
        self.xi = xi
        self.n_points = n_points
        self.nodes: list[EssNode] = []
        frontier: list[EssNode] = []
        for supp in _schreier_subsets(n_points, params.n[1]):
            for g in _sign_patterns(supp):
                node = EssNode(((g, 1),))
                if ess_node_valid(node, params, xi):
                    self.nodes.append(node)
                    frontier.append(node)
        depth = 1
        while frontier and depth < max_depth:
            nxt = []
            for node in frontier:
                try:
                    j = sigma_index(node.seq, self.params)
                except PrefixExhausted:
                    continue
                if j >= len(params.n):
                    continue
                lo = sign_support(node.g)[-1] + 1
                for supp in _schreier_subsets(n_points, params.n[j], lo):
                    for g in _sign_patterns(supp):
                        child = node_from_history(node.seq, g, j)
                        if ess_node_valid(child, params, xi):
                            self.nodes.append(child)
                            nxt.append(child)
            frontier = nxt
            depth += 1
        self._index = {n: i for i, n in enumerate(self.nodes)}

    def parent(self, node: EssNode):
        if len(node.seq) == 1:
            return None
        return EssNode(node.seq[:-1])

    def children(self, node: EssNode) -> list[EssNode]:
        return [c for c in self.nodes
                if len(c.seq) == len(node.seq) + 1 and c.seq[:-1] == node.seq]

    def comparable(self, a: EssNode, b: EssNode) -> bool:
        k = min(len(a.seq), len(b.seq))
        return a.seq[:k] == b.seq[:k]


def _schreier_subsets(n_points: int, rank: int, lo: int = 1):
    """All nonempty subsets of {lo..n_points} in S_rank, deterministic order."""
    base = list(range(lo, n_points + 1))
    out = []
    for mask in range(1, 1 << len(base)):
        supp = tuple(base[i] for i in range(len(base)) if mask >> i & 1)
        if schreier_member(supp, rank):
            out.append(supp)
    return sorted(out)


def _sign_patterns(supp: tuple[int, ...]):
    for mask in range(1 << len(supp)):
        yield sign_fn((supp[i], 1 if mask >> i & 1 else -1)
                      for i in range(len(supp)))
