"""Finite truncations of the coded well-founded tree order on the naturals.

The partial order is generated by forced chains: a partition of N into
infinite classes N_j plus an injection phi on finite sets decide, for
every integer m, the unique chain it can extend.  Concretely:

* partition "successor-dense-v1": a power of two 2^k joins class a,
  where (a, b) is the Cantor unpairing of k; every other m >= 2 joins
  class 2(m-1).  Each class is infinite (class j owns the powers
  2^pair(j,b) for every b) and the roots are the class-0 elements
  1, 4, 32, 512, 16384, ...
* phi "chain-end-double": the coded chain ending at r (which is unique,
  because the class of an element pins down its whole history) maps to
  2r; all other finite sets map to odd values 2*bitcode(s)+1.  Only even
  phi-values are ever realized by coded chains, so the injection is
  total and the two ranges never interact.

A number m with class 2r therefore attaches below r whenever the chain
of r is valid and the extended chain set stays in the Schreier family
S_xi.  Because class(m) = 2(m-1) off the powers of two, chains advance
by +1 through runs of non-powers: the root 2^k carries the consecutive
chain 2^k, 2^k+1, ..., 2^{k+1}-1, so even depth-25 chains fit inside
n_max ~ 60 (root 32).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .schreier import finset, schreier_member

PARTITION_ID = "successor-dense-v1"
PHI_ID = "chain-end-double"

Segment = tuple[int, ...]


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def node_class(m: int) -> int:
    """Index j of the partition class N_j containing m."""
    if m < 1:
        raise ValueError("nodes are positive integers")
    if m & (m - 1) == 0:  # power of two, including 1 = 2^0
        a, _ = cantor_unpair(m.bit_length() - 1)
        return a
    return 2 * (m - 1)


def class_members(j: int, n_max: int) -> list[int]:
    """Elements of N_j inside {1..n_max}."""
    out = []
    if j % 2 == 0:
        m = j // 2 + 1
        if m >= 2 and m & (m - 1) != 0 and m <= n_max:
            out.append(m)
    b = 0
    while True:
        m = 1 << cantor_pair(j, b)
        if m > n_max:
            break
        out.append(m)
        b += 1
    return sorted(out)


def phi(s: Iterable[int], xi: int) -> int:
    """Total injection on finite sets; coded chains go to even values."""
    t = finset(s)
    if t and _is_coded_chain(t, xi):
        return 2 * t[-1]
    return 2 * sum(1 << (e - 1) for e in t) + 1


def _is_coded_chain(t: tuple[int, ...], xi: int) -> bool:
    if node_class(t[0]) != 0:
        return False
    for prev, cur in zip(t, t[1:]):
        if node_class(cur) != 2 * prev:
            return False
    return schreier_member(t, xi)


@dataclass(frozen=True)
class TreeSpec:
    xi: int
    n_max: int
    partition_id: str = PARTITION_ID
    phi_id: str = PHI_ID

    def __post_init__(self):
        if self.xi < 0:
            raise ValueError("xi must be a finite rank >= 0")
        if self.n_max < 1:
            raise ValueError("n_max must be positive")
        if self.partition_id != PARTITION_ID or self.phi_id != PHI_ID:
            raise ValueError("unknown partition/phi identifiers")


class TreeXi:
    """Restriction of the coded order to {1..n_max}; immutable after build."""

    def __init__(self, spec: TreeSpec):
        self.spec = spec
        self.n_max = spec.n_max
        self.parent: dict[int, int] = {}
        self._chain: dict[int, tuple[int, ...]] = {}
        self._build()
        self.children: dict[int, list[int]] = {m: [] for m in self.nodes()}
        for c, p in self.parent.items():
            self.children[p].append(c)
        for kids in self.children.values():
            kids.sort()
        self.roots = [m for m in self.nodes() if node_class(m) == 0]

    def _build(self):
        xi = self.spec.xi
        valid: set[int] = set()
        for m in range(1, self.n_max + 1):
            j = node_class(m)
            if j == 0:
                self._chain[m] = (m,)
                valid.add(m)
                continue
            r = j // 2
            if j % 2 == 0 and r >= 1 and r in valid:
                ext = self._chain[r] + (m,)
                if schreier_member(ext, xi):
                    self._chain[m] = ext
                    self.parent[m] = r
                    valid.add(m)
                    continue
            self._chain[m] = (m,)  # no valid coded history: isolated node

    # -- queries ------------------------------------------------------

    def nodes(self) -> range:
        return range(1, self.n_max + 1)

    def _check(self, a: int):
        if not 1 <= a <= self.n_max:
            raise KeyError("unknown node %r" % (a,))

    def chain_set(self, m: int) -> tuple[int, ...]:
        """All predecessors of m (inclusive), bottom-up order."""
        self._check(m)
        return self._chain[m]

    def comparable(self, a: int, b: int) -> bool:
        self._check(a)
        self._check(b)
        return a == b or a in self._chain[b] or b in self._chain[a]

    def precedes(self, a: int, b: int) -> bool:
        self._check(a)
        self._check(b)
        return a in self._chain[b]

    def depth(self, m: int) -> int:
        return len(self._chain[m])

    def segment(self, a: int, b: int) -> Segment:
        """The consecutive chain piece from a to b (a must precede b)."""
        if not self.precedes(a, b):
            raise ValueError("%d does not precede %d" % (a, b))
        chain = self._chain[b]
        return chain[chain.index(a):]

    def max_chain_from(self, root: int, limit: int | None = None) -> list[int]:
        """Greedy longest chain starting at `root` taking least children."""
        out = [root]
        while limit is None or len(out) < limit:
            kids = self.children.get(out[-1], [])
            if not kids:
                break
            out.append(kids[0])
        return out


def build_tree(spec: TreeSpec) -> TreeXi:
    return TreeXi(spec)


# -- segments ---------------------------------------------------------

def enumerate_segments(tree: TreeXi, within: Iterable[int]) -> list[Segment]:
    """All segments whose node set is contained in `within`.

    A segment is a consecutive chain piece; consecutiveness is taken in
    the full tree, so nodes of `within` separated by a gap on a branch do
    not form one segment.  Deterministic order: by (min, length).
    """
    nodes = sorted(set(within))
    for m in nodes:
        tree._check(m)
    inset = set(nodes)
    out: list[Segment] = []

    def extend(seg: list[int]):
        out.append(tuple(seg))
        for c in tree.children.get(seg[-1], []):
            if c in inset:
                extend(seg + [c])

    for start in nodes:
        extend([start])
    return sorted(out, key=lambda s: (s[0], len(s), s))


def segments_incomparable(tree: TreeXi, s1: Segment, s2: Segment) -> bool:
    """True iff every node of s1 is incomparable to every node of s2."""
    for a in s1:
        for b in s2:
            if tree.comparable(a, b):
                return False
    return True


# -- serialization ----------------------------------------------------

def tree_to_json(tree: TreeXi) -> dict:
    return {
        "spec": {
            "xi": tree.spec.xi,
            "n_max": tree.spec.n_max,
            "partition_id": tree.spec.partition_id,
            "phi_id": tree.spec.phi_id,
        },
        "edges": sorted([p, c] for c, p in tree.parent.items()),
        "roots": sorted(tree.roots),
    }


def tree_from_json(data: dict) -> TreeXi:
    spec = TreeSpec(**data["spec"])
    tree = TreeXi(spec)
    if tree_to_json(tree) != {**data, "edges": sorted(map(list, data["edges"])),
                              "roots": sorted(data["roots"])}:
        raise ValueError("serialized tree does not match its spec rebuild")
    return tree


def save_tree(tree: TreeXi, path: str):
    with open(path, "w") as fh:
        json.dump(tree_to_json(tree), fh)


def load_tree(path: str) -> TreeXi:
    with open(path) as fh:
        return tree_from_json(json.load(fh))
