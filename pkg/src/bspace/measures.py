"""Finitely supported rational measures on tree nodes, plus the finite
algorithmic cores of the incomparable-support extraction and the
successor splitting.

Works against any tree-like object exposing `children` (dict or method)
and `comparable(a, b)`; both TreeXi and EssUniverse qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .esstree import EssNode, EssParams, essentially_incomparable, weight_comparable

EXHAUSTIVE_CUTOFF = 12


class InfeasibleError(Exception):
    def __init__(self, msg: str, proven: bool):
        super().__init__(msg)
        self.proven = proven  # True iff exhaustive search ruled everything out


def _children(tree, t):
    ch = tree.children
    if callable(ch):
        return ch(t)
    return ch.get(t, [])


def _key(t):
    return t.seq if isinstance(t, EssNode) else t


class DictTree:
    """Small explicit tree given by a child->parent map; roots are the
    nodes that never appear as children.  Handy for synthetic measure
    families where the coded truncations are too chain-like."""

    def __init__(self, parent: Mapping):
        self.parent = dict(parent)
        nodes = set(self.parent) | set(self.parent.values())
        self.children = {t: [] for t in nodes}
        for c, p in self.parent.items():
            self.children[p].append(c)
        for kids in self.children.values():
            kids.sort()
        self.roots = sorted(t for t in nodes if t not in self.parent)

    def _chain(self, t):
        out = [t]
        while out[-1] in self.parent:
            out.append(self.parent[out[-1]])
        return out

    def precedes(self, a, b):
        return a in self._chain(b)

    def comparable(self, a, b):
        return self.precedes(a, b) or self.precedes(b, a)


@dataclass
class NodeMeasure:
    tree: object
    mass: dict

    def __post_init__(self):
        self.mass = {t: Fraction(m) for t, m in self.mass.items()}
        if any(m <= 0 for m in self.mass.values()):
            raise ValueError("masses must be positive")

    def support(self):
        return sorted(self.mass, key=_key)

    def total(self) -> Fraction:
        return sum(self.mass.values(), Fraction(0))

    def mass_of(self, nodes: Iterable) -> Fraction:
        return sum((self.mass[t] for t in set(nodes) & set(self.mass)),
                   Fraction(0))

    def to_json(self, tree_ref: str = ""):
        items = [[t.to_json() if isinstance(t, EssNode) else t, str(m)]
                 for t, m in sorted(self.mass.items(), key=lambda kv: _key(kv[0]))]
        return {"tree_ref": tree_ref, "mass": items}


def _check_disjoint(measures: Sequence[NodeMeasure]):
    seen = set()
    for mu in measures:
        s = set(mu.mass)
        if s & seen:
            raise ValueError("supports must be pairwise disjoint")
        seen |= s


def _cross_incomparable(tree, groups: Sequence[Iterable]) -> bool:
    for ga, gb in combinations(groups, 2):
        for a in ga:
            for b in gb:
                if tree.comparable(a, b):
                    return False
    return True


def extract_incomparable(measures: Sequence[NodeMeasure], eps: Fraction,
                         target_count: int):
    """Keep >= target_count measures, trimming each support by at most eps
    so that retained nodes of distinct measures are pairwise incomparable.

    Exhaustive (provably optimal) below combined support size 12;
    greedy in index order above, where each measure keeps everything not
    comparable to previously retained nodes.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    _check_disjoint(measures)
    if not measures:
        raise ValueError("need at least one measure")
    tree = measures[0].tree
    combined = sorted({t for mu in measures for t in mu.mass}, key=_key)

    if len(combined) <= EXHAUSTIVE_CUTOFF:
        best = None  # (n_kept, kept_mass, L, G)
        for mask in range(1 << len(combined)):
            keep = {combined[i] for i in range(len(combined)) if mask >> i & 1}
            G = [sorted(keep & set(mu.mass), key=_key) for mu in measures]
            L = [j for j, mu in enumerate(measures)
                 if mu.total() - mu.mass_of(G[j]) <= eps]
            if len(L) < target_count:
                continue
            if not _cross_incomparable(tree, [G[j] for j in L]):
                continue
            kept = sum(measures[j].mass_of(G[j]) for j in L)
            cand = (len(L), kept)
            if best is None or cand > best[:2]:
                best = (len(L), kept, L, [G[j] for j in L])
        if best is None:
            raise InfeasibleError(
                "infeasible at requested count/eps: no selection keeps %d "
                "measures within loss %s" % (target_count, eps), proven=True)
        return best[2], best[3]

    retained: list = []
    L, G = [], []
    for j, mu in enumerate(measures):
        keep = [t for t in mu.support()
                if not any(tree.comparable(t, s) for s in retained)]
        if mu.total() - mu.mass_of(keep) <= eps:
            L.append(j)
            G.append(keep)
            retained.extend(keep)
    if len(L) < target_count:
        raise InfeasibleError(
            "greedy selection kept only %d of the requested %d measures"
            % (len(L), target_count), proven=False)
    return L, G


def succ_split(measures: Sequence[NodeMeasure], enumeration: Sequence):
    """Split each support along the enumeration: A_i collects the support
    nodes that are immediate successors of s_1..s_i, B_i the rest."""
    if not measures:
        return []
    tree = measures[0].tree
    pos = {s: n for n, s in enumerate(enumeration, start=1)}
    out = []
    for i, mu in enumerate(measures, start=1):
        A, B = [], []
        for t in mu.support():
            parent = _parent_of(tree, t)
            if parent is None:
                raise ValueError("support contains a root node: %r" % (t,))
            if parent not in pos:
                raise ValueError("enumeration misses predecessor %r" % (parent,))
            (A if pos[parent] <= i else B).append(t)
        out.append((A, B))
    return out


def _parent_of(tree, t):
    p = getattr(tree, "parent", None)
    if callable(p):
        return p(t)
    if isinstance(p, dict):
        return p.get(t)
    raise TypeError("tree has no parent accessor")


def succ_mass(measure: NodeMeasure, t) -> Fraction:
    """Total mass sitting on the immediate successors of t."""
    return measure.mass_of(_children(measure.tree, t))


def _precedes(tree, a, b):
    p = getattr(tree, "precedes", None)
    if callable(p):
        return p(a, b)
    # EssUniverse-style trees: sequence prefix order
    return len(a.seq) <= len(b.seq) and b.seq[:len(a.seq)] == a.seq


def _cone_mass(mu: NodeMeasure, t) -> Fraction:
    """Mass of the full cone {s : t <= s} (the basic clopen set V_t)."""
    tree = mu.tree
    return sum((m for s, m in mu.mass.items() if s == t or _precedes(tree, t, s)),
               Fraction(0))


def stable_value(values: Sequence, min_tail: int = 2):
    """Final value of a finite sequence, required to be attained on a
    tail of length >= min_tail (the finite surrogate for a limit)."""
    if len(values) < min_tail:
        raise ValueError("need at least %d values to stabilize" % min_tail)
    v = values[-1]
    if any(u != v for u in values[-min_tail:]):
        raise ValueError("sequence does not stabilize: tail %r"
                         % (values[-min_tail:],))
    return v


def w_succ_identity(measures: Sequence[NodeMeasure], t, enumeration=None,
                    min_tail: int = 2):
    """Finite form of the identity relating the pointwise (w*) limit at a
    node to the successor limit plus a strictly-below remainder:

        mu({t}) = nu({t}) + lim_j lim_i mu_i( U_{k>=j} (V_{t_k} \\ {t_k}) )

    with (t_k) enumerating the immediate successors of t and every limit
    replaced by the stable tail value of the finite family.  The last
    min_tail enumeration positions are truncation artifacts (the finite
    family stands in for an infinite pattern continuing past them) and
    are excluded from the j-range.  Returns a dict with the three exact
    rational terms and whether they balance.
    """
    if not measures:
        raise ValueError("need at least one measure")
    tree = measures[0].tree
    if enumeration is None:
        enumeration = sorted(_children(tree, t), key=_key)
    j_range = range(max(1, len(enumeration) - min_tail + 1))
    # mu({t}) through clopen sets: V_t minus the first j successor cones
    mu_rows = []
    for j in j_range:
        col = []
        for mu in measures:
            v = _cone_mass(mu, t)
            for tk in enumeration[:j]:
                v -= _cone_mass(mu, tk)
            col.append(v)
        mu_rows.append(stable_value(col, min_tail))
    mu_t = stable_value(mu_rows, min_tail)
    nu_t = stable_value([succ_mass(mu, t) for mu in measures], min_tail)
    dbl_rows = []
    for j in j_range:
        col = [sum((_cone_mass(mu, tk) - mu.mass.get(tk, Fraction(0))
                    for tk in enumeration[j:]), Fraction(0))
               for mu in measures]
        dbl_rows.append(stable_value(col, min_tail))
    dbl = stable_value(dbl_rows, min_tail)
    return {"mu": mu_t, "nu": nu_t, "double_limit": dbl,
            "holds": mu_t == nu_t + dbl}


def ess_split(measures: Sequence[NodeMeasure], eps: Fraction,
              params: EssParams, target_count: int | None = None):
    """Partition each trimmed support into G1 (jointly essentially
    incomparable across all kept measures) and G2 (weight-nodes pairwise
    incomparable across distinct kept measures), losing at most eps per
    kept measure.  Exhaustive 3-way assignment below the cutoff, greedy
    node-by-node above; both outputs are re-verified before returning.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if target_count is None:
        target_count = len(measures)
    sig_supports = [frozenset(i for t in mu.mass for g, _ in t.seq
                              for i, _ in g) for mu in measures]
    for a, b in combinations(sig_supports, 2):
        if a & b:
            raise ValueError("combined sign-function supports must be "
                             "pairwise disjoint across measures")
    combined = sorted({t for mu in measures for t in mu.mass}, key=_key)
    owner = {t: j for j, mu in enumerate(measures) for t in mu.mass}

    def evaluate(assign):
        G1 = [[t for t in mu.support() if assign.get(t) == 1]
              for mu in measures]
        G2 = [[t for t in mu.support() if assign.get(t) == 2]
              for mu in measures]
        L = [j for j, mu in enumerate(measures)
             if mu.total() - mu.mass_of(G1[j]) - mu.mass_of(G2[j]) <= eps]
        if len(L) < target_count:
            return None
        if not essentially_incomparable(
                [t for j in L for t in G1[j]], params):
            return None
        for ja, jb in combinations(L, 2):
            for a in G2[ja]:
                for b in G2[jb]:
                    if weight_comparable(a, b):
                        return None
        kept = sum(measures[j].mass_of(G1[j]) + measures[j].mass_of(G2[j])
                   for j in L)
        return len(L), kept, L, [(G1[j], G2[j]) for j in L]

    if len(combined) <= EXHAUSTIVE_CUTOFF:
        best = None
        assign: dict = {}

        def rec(i):
            nonlocal best
            if i == len(combined):
                res = evaluate(assign)
                if res is not None and (best is None or res[:2] > best[:2]):
                    best = res
                return
            t = combined[i]
            for tag in (2, 1, 0):  # prefer the weight-incomparable side
                assign[t] = tag
                rec(i + 1)
            del assign[t]

        rec(0)
        if best is None:
            raise InfeasibleError(
                "infeasible at requested count/eps: no (G1, G2) assignment "
                "keeps %d measures within loss %s" % (target_count, eps),
                proven=True)
        return best[2], best[3]

    assign = {}
    g1_all: list = []
    g2_by_measure: dict[int, list] = {}
    for t in combined:
        j = owner[t]
        clash = any(weight_comparable(t, s)
                    for jo, ss in g2_by_measure.items() if jo != j for s in ss)
        if not clash:
            assign[t] = 2
            g2_by_measure.setdefault(j, []).append(t)
        elif essentially_incomparable(g1_all + [t], params):
            assign[t] = 1
            g1_all.append(t)
        else:
            assign[t] = 0
    res = evaluate(assign)
    if res is None:
        raise InfeasibleError(
            "greedy (G1, G2) assignment exceeds the loss budget", proven=False)
    return res[2], res[3]
