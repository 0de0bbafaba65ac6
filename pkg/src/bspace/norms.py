"""Exact norm engines: ground norms, the Tsirelson extension, the two
constrained tree norms and the James-tree style norms, each with a
witness functional.

All vectors live on c00 of the positive integers.  Values are exact
elements of the Q-span of square roots (RadSum); general exponents fall
back to floats with a stated tolerance.

The constrained engines share one shape: enumerate candidate ground
leaves (with their constraint tags), run a DFS over leaf families with
pairwise-disjoint ranges satisfying the constraint, and evaluate each
family by a dynamic program over the admissible (S,1/2)-combination
trees above it.  A family of k leaves combines only when enough
admissibility is available (each combination of n blocks needs
n <= min supp of its first block), so some families have no value.
"""

from __future__ import annotations

import math
import sys
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exactval import RadSum, ZERO
from .esstree import EssParams, sigma_history
from .schreier import max_mass, schreier_member
from .trees import TreeXi, segments_incomparable

FLOAT_TOL = 1e-9


@dataclass
class FinVec:
    coords: dict[int, Fraction]

    def __post_init__(self):
        self.coords = {t: Fraction(c) for t, c in self.coords.items()
                       if Fraction(c) != 0}
        if any(t < 1 for t in self.coords):
            raise ValueError("coordinates are indexed by positive integers")

    def support(self) -> list[int]:
        return sorted(self.coords)

    def __getitem__(self, t: int) -> Fraction:
        return self.coords.get(t, Fraction(0))

    def restrict(self, nodes: Iterable[int]) -> "FinVec":
        keep = set(nodes)
        return FinVec({t: c for t, c in self.coords.items() if t in keep})

    def scale(self, q) -> "FinVec":
        q = Fraction(q)
        return FinVec({t: c * q for t, c in self.coords.items()})

    def l1(self) -> Fraction:
        return sum((abs(c) for c in self.coords.values()), Fraction(0))

    def to_json(self):
        return {"coords": [[t, str(self.coords[t])] for t in self.support()]}

    @classmethod
    def from_json(cls, data) -> "FinVec":
        return cls({int(t): Fraction(c) for t, c in data["coords"]})


@dataclass(frozen=True)
class GroundKind:
    tag: str
    q: Fraction | None = None
    params: EssParams | None = None

    def __post_init__(self):
        if self.tag not in ("G0", "G1_signs", "G2", "Gp", "Gsum", "G1_weighted"):
            raise ValueError("unknown ground kind %r" % (self.tag,))
        if self.tag == "Gp" and (self.q is None or Fraction(self.q) <= 1):
            raise ValueError("Gp needs q > 1")
        if self.tag == "G1_weighted" and self.params is None:
            raise ValueError("G1_weighted needs parameters")


G0 = GroundKind("G0")
G1_SIGNS = GroundKind("G1_signs")
G2 = GroundKind("G2")
GSUM = GroundKind("Gsum")


def Gp(q) -> GroundKind:
    return GroundKind("Gp", q=Fraction(q))


def G1_weighted(params: EssParams) -> GroundKind:
    return GroundKind("G1_weighted", params=params)


# -- functionals and certificates -------------------------------------

@dataclass
class Leaf:
    """A ground functional: explicit coefficients plus membership data."""
    kind: str                    # g0 | g2 | gp | gsigns | gsum | gweighted
    coeffs: dict[int, RadSum]
    meta: dict = field(default_factory=dict)  # segment, weight index j, ...

    def support(self):
        return sorted(t for t, c in self.coeffs.items() if not c.is_zero)

    def evaluate(self, x: FinVec) -> RadSum:
        out = ZERO
        for t, c in self.coeffs.items():
            out = out + c.scale(x[t])
        return out

    def weight(self):
        if self.kind == "gweighted":
            return self.meta["params"].m[self.meta["j"]]
        return None

    def to_json(self):
        return {"kind": self.kind,
                "coeffs": [[t, self.coeffs[t].to_json()]
                           for t in sorted(self.coeffs)],
                "meta": {k: v for k, v in self.meta.items() if k != "params"}}


@dataclass
class Analysis:
    """Tree analysis node: either a ground leaf or a (S,1/2)-operation."""
    leaf: Leaf | None = None
    children: list["Analysis"] = field(default_factory=list)

    def is_leaf(self):
        return self.leaf is not None

    def support(self):
        if self.is_leaf():
            return self.leaf.support()
        out = []
        for c in self.children:
            out.extend(c.support())
        return sorted(out)

    def evaluate(self, x: FinVec) -> RadSum:
        if self.is_leaf():
            return self.leaf.evaluate(x)
        total = ZERO
        for c in self.children:
            total = total + c.evaluate(x)
        return total.scale(Fraction(1, 2))

    def leaves_with_depth(self, depth=0):
        if self.is_leaf():
            return [(self.leaf, depth)]
        out = []
        for c in self.children:
            out.extend(c.leaves_with_depth(depth + 1))
        return out

    def height(self):
        return max(d for _, d in self.leaves_with_depth())

    def to_json(self):
        if self.is_leaf():
            return {"leaf": self.leaf.to_json()}
        return {"op": [c.to_json() for c in self.children]}


@dataclass
class Functional:
    analysis: Analysis
    # JT-style combination: weights attached to top-level leaves instead
    jt_weights: list[RadSum] | None = None

    def evaluate(self, x: FinVec) -> RadSum:
        if self.jt_weights is not None:
            total = ZERO
            for b, child in zip(self.jt_weights, self.analysis.children):
                total = total + b * child.evaluate(x)
            return total
        return self.analysis.evaluate(x)

    def to_json(self):
        out = {"analysis": self.analysis.to_json()}
        if self.jt_weights is not None:
            out["b"] = [b.to_json() for b in self.jt_weights]
        return out


@dataclass
class NormResult:
    value: RadSum | float
    witness: Functional | None
    stats: dict = field(default_factory=dict)
    tolerance: float | None = None  # set on the certified-float path

    def to_json(self):
        if isinstance(self.value, RadSum):
            val = {"exact": self.value.to_json()}
        else:
            val = {"interval": [self.value - (self.tolerance or FLOAT_TOL),
                                self.value + (self.tolerance or FLOAT_TOL)]}
        return {"value": val,
                "witness": self.witness.to_json() if self.witness else None,
                "stats": self.stats}


# -- ground norms -----------------------------------------------------

def _chain_candidates(x: FinVec, tree: TreeXi):
    """All (a, b, nodeset) with a preceding b in the tree, both in supp x,
    nodeset = supp x within the segment [a, b]."""
    supp = x.support()
    out = []
    for b in supp:
        chain = tree.chain_set(b)
        for a in chain:
            if a in x.coords:
                seg = tree.segment(a, b)
                nodeset = tuple(t for t in seg if t in x.coords)
                out.append((a, b, nodeset))
    return sorted(out)


def _sqrt_ssq(x: FinVec, nodes) -> RadSum:
    return RadSum.sqrt(sum((x[t] ** 2 for t in nodes), Fraction(0)))


def _seg_leaf_g2(x: FinVec, tree: TreeXi, a, b, nodeset) -> Leaf:
    ssq = sum((x[s] ** 2 for s in nodeset), Fraction(0))
    # a_t / ||x|E||_2, exact: (a_t/ssq) * sqrt(ssq)
    coeffs = {t: RadSum.sqrt(ssq).scale(x[t] / ssq) for t in nodeset}
    return Leaf("g2", coeffs, {"segment": (a, b)})


def _seg_leaf_signs(x: FinVec, tree: TreeXi, a, b, signed=True) -> Leaf:
    seg = tree.segment(a, b)
    coeffs = {}
    for t in seg:
        if signed:
            s = 1 if x[t] >= 0 else -1
        else:
            s = 1
        coeffs[t] = RadSum.from_rational(s)
    return Leaf("gsigns" if signed else "gsum", coeffs, {"segment": (a, b)})


def ground_norm(x: FinVec, kind: GroundKind, tree: TreeXi | None = None):
    """Exact sup over the ground set; returns (value, witness Leaf)."""
    if not x.coords:
        return ZERO, None
    if kind.tag == "G0":
        t = max(x.support(), key=lambda t: (abs(x[t]), -t))
        s = 1 if x[t] >= 0 else -1
        return RadSum.from_rational(abs(x[t])), \
            Leaf("g0", {t: RadSum.from_rational(s)})
    if kind.tag == "G1_weighted":
        params = kind.params
        t0 = max(x.support(), key=lambda t: (abs(x[t]), -t))
        best = RadSum.from_rational(abs(x[t0]))
        wit = Leaf("g0", {t0: RadSum.from_rational(1 if x[t0] >= 0 else -1)})
        weights = {t: abs(c) for t, c in x.coords.items()}
        for j in range(len(params.m)):
            mass = max_mass(weights, params.n[j])
            cand = RadSum.from_rational(Fraction(mass, params.m[j]))
            if cand > best:
                # rebuild an optimal D by greedy subset confirmation
                D = _argmax_schreier_subset(weights, params.n[j], mass)
                coeffs = {t: RadSum.from_rational(
                    Fraction(1 if x[t] >= 0 else -1, params.m[j])) for t in D}
                best = cand
                wit = Leaf("gweighted", coeffs, {"j": j, "params": params})
        return best, wit
    if tree is None:
        raise ValueError("segment ground kinds need the tree")
    best, wit = None, None
    for a, b, nodeset in _chain_candidates(x, tree):
        if kind.tag == "G2":
            v = _sqrt_ssq(x, nodeset)
        elif kind.tag == "G1_signs":
            v = RadSum.from_rational(
                sum((abs(x[t]) for t in nodeset), Fraction(0)))
        elif kind.tag == "Gsum":
            v = RadSum.from_rational(
                abs(sum((x[t] for t in nodeset), Fraction(0))))
        elif kind.tag == "Gp":
            p = _dual(kind.q)
            if p == 2:
                v = _sqrt_ssq(x, nodeset)
            else:
                v = sum(abs(float(x[t])) ** float(p) for t in nodeset) \
                    ** (1 / float(p))
        if best is None or _gt(v, best):
            best, wit = v, (a, b, nodeset)
    a, b, nodeset = wit
    if kind.tag == "G2" or (kind.tag == "Gp" and _dual(kind.q) == 2):
        leaf = _seg_leaf_g2(x, tree, a, b, nodeset)
    elif kind.tag == "G1_signs":
        leaf = _seg_leaf_signs(x, tree, a, b)
    elif kind.tag == "Gsum":
        leaf = _seg_leaf_signs(x, tree, a, b, signed=False)
        if sum((x[t] for t in nodeset), Fraction(0)) < 0:
            leaf.coeffs = {t: c.scale(-1) for t, c in leaf.coeffs.items()}
    else:
        leaf = None  # certified-float path has no exact witness
    return best, leaf


def _dual(q: Fraction) -> Fraction:
    if q == 2:
        return Fraction(2)
    return q / (q - 1)


def _gt(a, b) -> bool:
    if isinstance(a, RadSum) and isinstance(b, RadSum):
        return a > b
    return float(a) > float(b)


def _argmax_schreier_subset(weights, rank, target):
    """Some subset of the support in S_rank achieving mass `target`."""
    supp = sorted(t for t, w in weights.items() if w != 0)

    def rec(chosen, rest):
        mass = sum((weights[t] for t in chosen), Fraction(0))
        if mass == target and schreier_member(tuple(chosen), rank):
            return list(chosen)
        if not rest:
            return None
        upper = mass + sum((weights[t] for t in rest), Fraction(0))
        if upper < target:
            return None
        with_first = rec(chosen + [rest[0]], rest[1:])
        if with_first is not None and schreier_member(tuple(with_first), rank):
            return with_first
        return rec(chosen, rest[1:])

    out = rec([], supp)
    if out is None:  # pragma: no cover - max_mass guarantees existence
        raise RuntimeError("no subset achieves the claimed maximum")
    return out


# -- Tsirelson extension ----------------------------------------------

def wg_norm(x: FinVec, ground: GroundKind, tree: TreeXi | None = None) -> RadSum:
    """Norm of the Tsirelson extension W_G via the implicit equation,
    memoized over support intervals."""
    supp = x.support()
    if not supp:
        return ZERO
    cache: dict[tuple[int, int], RadSum] = {}

    def nrm(i, j):
        key = (i, j)
        if key in cache:
            return cache[key]
        sub = x.restrict(supp[i:j + 1])
        best = ground_norm(sub, ground, tree)[0]
        kmax = min(supp[i], j - i + 1)
        for k in range(2, kmax + 1):
            v = parts(i, j, k)
            if v is not None:
                v = v.scale(Fraction(1, 2))
                if v > best:
                    best = v
        if i < j:
            # an admissible family may skip leading support points,
            # which raises min E_1 and can allow more parts
            v = nrm(i + 1, j)
            if v > best:
                best = v
        cache[key] = best
        return best

    pcache: dict[tuple[int, int, int], RadSum | None] = {}

    def parts(i, j, k):
        key = (i, j, k)
        if key in pcache:
            return pcache[key]
        if k == 1:
            out = nrm(i, j)
        else:
            out = None
            for m in range(i, j - k + 2):
                rest = parts(m + 1, j, k - 1)
                if rest is None:
                    continue
                cand = nrm(i, m) + rest
                if out is None or cand > out:
                    out = cand
        pcache[key] = out
        return out

    return nrm(0, len(supp) - 1)


# -- shared leaf-family machinery -------------------------------------

@dataclass
class _Cand:
    lo: int               # min of the leaf's range (and of its support)
    hi: int
    value: RadSum
    leaf: Leaf
    tag: object = None    # constraint payload


def _combine(leaves: list[_Cand]):
    """Best value of an admissible combination tree over the ordered
    leaves; returns (value, structure) or (None, None) if no tree exists."""
    n = len(leaves)
    vcache: dict = {}
    pcache: dict = {}

    def V(l, r):
        if (l, r) in vcache:
            return vcache[(l, r)]
        if l == r:
            out = (leaves[l].value, ("leaf", l))
        else:
            out = (None, None)
            kmax = min(leaves[l].lo, r - l + 1)
            for k in range(2, kmax + 1):
                got = parts(l, r, k)
                if got is None:
                    continue
                v, struct = got
                v = v.scale(Fraction(1, 2))
                if out[0] is None or v > out[0]:
                    out = (v, ("op", struct))
        vcache[(l, r)] = out
        return out

    def parts(l, r, k):
        key = (l, r, k)
        if key in pcache:
            return pcache[key]
        if k == 1:
            v, s = V(l, r)
            out = None if v is None else (v, (s,))
        else:
            out = None
            for m in range(l, r - k + 2):
                head, hs = V(l, m)
                if head is None:
                    continue
                rest = parts(m + 1, r, k - 1)
                if rest is None:
                    continue
                cand = head + rest[0]
                if out is None or cand > out[0]:
                    out = (cand, (hs,) + rest[1])
        pcache[key] = out
        return out

    return V(0, n - 1)


def _struct_to_analysis(struct, leaves):
    if struct[0] == "leaf":
        return Analysis(leaf=leaves[struct[1]].leaf)
    return Analysis(children=[_struct_to_analysis(s, leaves)
                              for s in struct[1]])


def _search_families(x: FinVec, cands: list[_Cand], allowed):
    """DFS over families of candidates with disjoint, increasing ranges
    satisfying the pairwise predicate; returns (value, Functional, stats)."""
    cands = sorted(cands, key=lambda c: (c.lo, c.hi))
    n = len(cands)
    lows = [c.lo for c in cands]
    # suffix[i]: best sum of values over any increasing disjoint chain of
    # candidates from index i on (constraints ignored) -- pruning bound
    nxt = [bisect_right(lows, cands[i].hi) for i in range(n)]
    suffix = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        take = cands[i].value + suffix[nxt[i]]
        suffix[i] = take if take > suffix[i + 1] else suffix[i + 1]

    best = [ZERO, None]
    stats = {"families": 0}
    half = Fraction(1, 2)

    def dfs(start, chosen, chosen_sum):
        if chosen:
            stats["families"] += 1
            v, struct = _combine(chosen)
            if v is not None and v > best[0]:
                best[0] = v
                best[1] = _struct_to_analysis(struct, chosen)
        for i in range(start, len(cands)):
            c = cands[i]
            if chosen and c.lo <= chosen[-1].hi:
                continue
            if any(not allowed(p, c) for p in chosen):
                continue
            new_sum = chosen_sum + c.value
            # a family of >= 2 leaves is worth at most half its value sum
            bound = (new_sum + suffix[nxt[i]]).scale(half)
            if not (bound > best[0] or c.value > best[0]):
                continue
            dfs(i + 1, chosen + [c], new_sum)

    dfs(0, [], ZERO)
    return best[0], best[1], stats


# -- T^xi_inc ----------------------------------------------------------

def tinc_norm(x: FinVec, tree: TreeXi) -> NormResult:
    """Sup over functionals whose leaves are segment-l2 functionals lying
    in pairwise incomparable segments."""
    if not x.coords:
        return NormResult(ZERO, None)
    cands = []
    seg_nodes = {}
    for a, b, nodeset in _chain_candidates(x, tree):
        leaf = _seg_leaf_g2(x, tree, a, b, nodeset)
        cands.append(_Cand(a, b, _sqrt_ssq(x, nodeset), leaf, tag=(a, b)))
        seg_nodes[(a, b)] = tree.segment(a, b)

    def allowed(c1, c2):
        return segments_incomparable(tree, seg_nodes[c1.tag], seg_nodes[c2.tag])

    value, analysis, stats = _search_families(x, cands, allowed)
    wit = Functional(analysis) if analysis else None
    return NormResult(value, wit, stats)


# -- T^xi_ess-inc ------------------------------------------------------

def _weight_seq(j: int, params: EssParams):
    """Weight-index sequence of m_j in the (registry-backed) weight tree,
    or None when the weight is not a registered node."""
    if j == 1:
        return (1,)
    hist = sigma_history(j, params)
    if hist is None:
        return None
    return tuple(jj for _, jj in hist) + (j,)


def _ess_allowed(tag1, tag2, params: EssParams) -> bool:
    """Essential incomparability for a pair of weighted-leaf tags
    (j, min supp); sign patterns are irrelevant to the constraint."""
    for (ja, loa), (jb, lob) in ((tag1, tag2), (tag2, tag1)):
        wa, wb = _weight_seq(ja, params), _weight_seq(jb, params)
        if wa is None or wb is None:
            continue
        if len(wa) < len(wb) and wb[:len(wa)] == wa:
            hist = sigma_history(jb, params)
            g = hist[len(wa) - 1][0]
            if g and g[-1][0] >= loa:
                return False
    return True


def essinc_norm(x: FinVec, params: EssParams, universe=None) -> NormResult:
    """Sup over the constrained extension of G0 and the weighted sign
    functionals; weighted leaves must form an essentially incomparable
    set, decided against the current sigma registry (read-only here)."""
    if not x.coords:
        return NormResult(ZERO, None)
    supp = x.support()
    weights = {t: abs(c) for t, c in x.coords.items()}
    cands = [_Cand(t, t, RadSum.from_rational(abs(x[t])),
                   Leaf("g0", {t: RadSum.from_rational(
                       1 if x[t] >= 0 else -1)}), tag=None)
             for t in supp]
    registered = {1} | set(params._sigma_inv)
    n_sets = len(supp)
    by_window: dict[tuple[int, int, int], Fraction] = {}
    for mask in range(1, 1 << n_sets):
        D = tuple(supp[i] for i in range(n_sets) if mask >> i & 1)
        mass = sum((weights[t] for t in D), Fraction(0))
        for j in range(len(params.m)):
            if not schreier_member(D, params.n[j]):
                continue
            key = (D[0], D[-1], j)
            if by_window.get(key, (None,))[0] is None or \
               mass > by_window[key][0]:
                by_window[key] = (mass, D)
    # unregistered weights carry no constraint: keep only the best value
    # per window among them; a registered weight beaten by the
    # unconstrained option on its window can never help either
    best_unreg: dict[tuple[int, int], tuple] = {}
    best_reg: dict[tuple[int, int], list] = {}
    for (lo, hi, j), (mass, D) in sorted(by_window.items()):
        val = Fraction(mass, params.m[j])
        if val == 0:
            continue
        if j in registered:
            best_reg.setdefault((lo, hi), []).append((val, j, D))
        else:
            cur = best_unreg.get((lo, hi))
            if cur is None or val > cur[0]:
                best_unreg[(lo, hi)] = (val, j, D)
    def add_weighted(lo, hi, val, j, D):
        leaf = Leaf("gweighted",
                    {t: RadSum.from_rational(
                        Fraction(1 if x[t] >= 0 else -1, params.m[j]))
                     for t in D},
                    {"j": j, "params": params})
        cands.append(_Cand(lo, hi, RadSum.from_rational(val), leaf,
                           tag=(j, lo)))

    for (lo, hi), (val, j, D) in sorted(best_unreg.items()):
        add_weighted(lo, hi, val, j, D)
    for (lo, hi), opts in sorted(best_reg.items()):
        cap = best_unreg.get((lo, hi), (Fraction(0),))[0]
        for val, j, D in opts:
            if val > cap:
                add_weighted(lo, hi, val, j, D)

    def allowed(c1, c2):
        if c1.tag is None or c2.tag is None:
            return True
        return _ess_allowed(c1.tag, c2.tag, params)

    value, analysis, stats = _search_families(x, cands, allowed)
    wit = Functional(analysis) if analysis else None
    return NormResult(value, wit, stats)


# -- JT norms ----------------------------------------------------------

def jt_norm(x: FinVec, tree: TreeXi, r=1, p=2, signed=True) -> NormResult:
    """Best (sum_i ||x restricted to S_i||_r^p)^{1/p} over families of
    pairwise disjoint segments, by a Pareto DP over the induced forest.
    signed=False gives the conditional (plain-sum) variant, which uses
    r = 1.  Exact for r in {1, 2} and p in {1, 2}; certified floats
    otherwise."""
    r, p = Fraction(r), Fraction(p)
    if r < 1 or p < r:
        raise ValueError("need 1 <= r <= p")
    if not signed and r != 1:
        raise ValueError("the conditional variant uses r = 1")
    if not x.coords:
        return NormResult(ZERO, None)
    exact = r in (1, 2) and p in (1, 2)

    if exact:
        def atom(t):
            c = x[t]
            return c if not signed else abs(c) ** int(r)

        def close_open(v):
            # ||.||_r^r accumulation -> contribution ||.||_r^p
            base = abs(v) if not signed else v
            e = p / r
            if e.denominator == 1:
                return RadSum.from_rational(base ** e.numerator)
            return RadSum.sqrt(base ** e.numerator)  # e = k/2

        zero_c = ZERO
    else:
        def atom(t):
            c = float(x[t])
            return c if not signed else abs(c) ** float(r)

        def close_open(v):
            base = abs(v) if not signed else v
            return base ** (float(p) / float(r))

        zero_c = 0.0

    # nodes above the first support node on a chain only lengthen
    # segments by zero-mass prefixes, so the forest starts at support
    forest: set[int] = set()
    for t in x.support():
        chain = tree.chain_set(t)
        idx = next(i for i, s in enumerate(chain) if s in x.coords)
        forest.update(chain[idx:])
    children = {t: [c for c in tree.children.get(t, []) if c in forest]
                for t in forest}
    roots = sorted(t for t in forest
                   if tree.parent.get(t) not in forest)
    stats = {"nodes": len(forest), "states": 0}
    depth = max(len(tree.chain_set(t)) for t in x.support())
    if sys.getrecursionlimit() < 4 * depth + 200:
        sys.setrecursionlimit(4 * depth + 200)

    def solve(t):
        """Returns (best fully-closed (value, segs), open states).
        An open state (open, closed, segs, open_seg) carries a segment
        ending at t that may still extend through t's parent."""
        kids = [solve(c) for c in children[t]]
        base = zero_c
        base_segs = ()
        for (cv, csegs), _ in kids:
            base = base + cv
            base_segs = base_segs + csegs
        at = atom(t)
        opens = [(at, base, base_segs, (t,))]
        for idx, (_, kid_opens) in enumerate(kids):
            others = zero_c
            osegs = ()
            for i, ((cv, csegs), _) in enumerate(kids):
                if i != idx:
                    others = others + cv
                    osegs = osegs + csegs
            for ov, oc, osg, oseg in kid_opens:
                opens.append((ov + at, oc + others, osg + osegs, oseg + (t,)))
        # prune: among opens, (open, closed) dominance (valid since both
        # enter monotonically); first-come wins on ties for determinism
        kept = []
        for s in opens:
            if signed and any(k[0] >= s[0] and k[1] >= s[1] for k in kept):
                continue
            if not signed and any(k[0] == s[0] and k[1] >= s[1] for k in kept):
                continue
            kept.append(s)
        stats["states"] += len(kept)
        best_closed = (base, base_segs)
        for ov, oc, osg, oseg in kept:
            cand = oc + close_open(ov)
            if cand > best_closed[0]:
                best_closed = (cand, osg + (oseg,))
        return best_closed, kept

    total = zero_c
    all_segs = []
    for root in roots:
        (cv, csegs), _ = solve(root)
        total = total + cv
        all_segs.extend(csegs)
    all_segs = [seg for seg in all_segs if any(t in x.coords for t in seg)]
    if not exact:
        return NormResult(float(total) ** (1 / float(p)), None,
                          {**stats, "mode": "float"}, tolerance=FLOAT_TOL)
    if p == 1:
        value = total if isinstance(total, RadSum) \
            else RadSum.from_rational(total)
    else:
        value = RadSum.sqrt(total.as_rational() if isinstance(total, RadSum)
                            else total)
    wit = _jt_witness(x, tree, all_segs, r, p, signed, value)
    return NormResult(value, wit, stats)


def _seg_value(x, seg, r, signed):
    if not signed:
        return RadSum.from_rational(
            abs(sum((x[t] for t in seg), Fraction(0))))
    if r == 1:
        return RadSum.from_rational(
            sum((abs(x[t]) for t in seg), Fraction(0)))
    return RadSum.sqrt(sum((x[t] ** 2 for t in seg), Fraction(0)))


def _jt_witness(x, tree, segs, r, p, signed, value):
    if not segs:
        return None
    leaves, weights = [], []
    for seg in segs:
        a, b = min(seg), max(seg)  # opens accumulate bottom-up
        leaf = _seg_leaf_signs(x, tree, a, b, signed=signed)
        if not signed and sum((x[t] for t in seg), Fraction(0)) < 0:
            leaf.coeffs = {t: c.scale(-1) for t, c in leaf.coeffs.items()}
        s = _seg_value(x, seg, r, signed)
        leaves.append(Analysis(leaf=leaf))
        if p == 1:
            weights.append(RadSum.from_rational(1))
        else:  # p == 2: b_i = s_i / value
            weights.append(_div(s, value))
    return Functional(Analysis(children=leaves), jt_weights=weights)


def _div(a: RadSum, b: RadSum) -> RadSum:
    """a / b for b a single-term RadSum: 1/(c sqrt(d)) = sqrt(d)/(c d)."""
    [(d, c)] = b.terms.items()
    return a * RadSum({d: Fraction(1) / (c * d)})


# -- verification ------------------------------------------------------

def verify_functional(f: Functional, setspec: dict):
    """Full certificate check; returns (ok, list of violations)."""
    report = []
    kind = setspec["set"]
    tree = setspec.get("tree")
    params = setspec.get("params")

    def check_leaf(leaf: Leaf):
        supp = leaf.support()
        if not supp:
            return
        if leaf.kind == "g0":
            if len(leaf.coeffs) != 1 or abs(next(
                    iter(leaf.coeffs.values())).as_rational()) != 1:
                report.append("g0 leaf is not a signed unit functional")
        elif leaf.kind in ("g2", "gp"):
            a, b = leaf.meta["segment"]
            if not tree.precedes(a, b) and a != b:
                report.append("leaf hull (%s,%s) is not a segment" % (a, b))
            seg = set(tree.segment(a, b)) if tree.precedes(a, b) or a == b \
                else set()
            if not set(supp) <= seg:
                report.append("leaf support escapes its segment")
            if leaf.kind == "g2":
                ssq = sum((c * c for c in leaf.coeffs.values()), ZERO)
                if not ssq <= RadSum.from_rational(1):
                    report.append("g2 leaf has sum of squares > 1")
        elif leaf.kind in ("gsigns", "gsum"):
            a, b = leaf.meta["segment"]
            seg = tree.segment(a, b)
            if sorted(leaf.coeffs) != sorted(seg):
                report.append("sign leaf must cover its whole segment")
            vals = {c.as_rational() for c in leaf.coeffs.values()}
            if leaf.kind == "gsigns" and not vals <= {1, -1}:
                report.append("gsigns leaf has non-sign coefficient")
            if leaf.kind == "gsum" and len(vals) != 1:
                report.append("gsum leaf must be a constant sign")
        elif leaf.kind == "gweighted":
            j = leaf.meta["j"]
            pp = leaf.meta["params"]
            D = tuple(supp)
            if not schreier_member(D, pp.n[j]):
                report.append("weighted leaf support not in S_{n_j}")
            ok_vals = {Fraction(1, pp.m[j]), Fraction(-1, pp.m[j])}
            if not {c.as_rational() for c in leaf.coeffs.values()} <= ok_vals:
                report.append("weighted leaf coefficients not +-1/m_j")

    def check_analysis(a: Analysis):
        if a.is_leaf():
            check_leaf(a.leaf)
            return
        supports = [c.support() for c in a.children]
        if any(not s for s in supports):
            report.append("empty child in combination")
            return
        for s1, s2 in zip(supports, supports[1:]):
            if s1[-1] >= s2[0]:
                report.append("sibling ranges not successive")
        if len(a.children) > supports[0][0]:
            report.append("admissibility violated: %d blocks, min supp %d"
                          % (len(a.children), supports[0][0]))
        for c in a.children:
            check_analysis(c)

    if kind == "jt":
        q = Fraction(setspec.get("q", 2))
        supports = [c.support() for c in f.analysis.children]
        flat = [t for s in supports for t in s]
        if len(flat) != len(set(flat)):
            report.append("jt leaf supports not pairwise disjoint")
        for c in f.analysis.children:
            if not c.is_leaf():
                report.append("jt functional children must be ground leaves")
            else:
                check_leaf(c.leaf)
        if f.jt_weights is None:
            report.append("jt functional lacks weights")
        elif q == 2:
            sq = sum((b * b for b in f.jt_weights), ZERO)
            if not sq <= RadSum.from_rational(1):
                report.append("jt weights exceed the l_q ball")
        return (not report), report

    check_analysis(f.analysis)
    leaves = f.analysis.leaves_with_depth()
    if kind == "tinc":
        hulls = []
        for leaf, _ in leaves:
            supp = leaf.support()
            if leaf.kind not in ("g2",):
                report.append("tinc leaves must be segment-l2 functionals")
                continue
            hulls.append(tree.segment(supp[0], supp[-1]))
        for i in range(len(hulls)):
            for j in range(i + 1, len(hulls)):
                if not segments_incomparable(tree, hulls[i], hulls[j]):
                    report.append("leaf segments %r and %r comparable"
                                  % (hulls[i][0], hulls[j][0]))
    elif kind == "essinc":
        tags = [( leaf.meta["j"], leaf.support()[0])
                for leaf, _ in leaves if leaf.kind == "gweighted"]
        for i in range(len(tags)):
            for j in range(i + 1, len(tags)):
                if not _ess_allowed(tags[i], tags[j], params):
                    report.append("weighted leaves %r, %r not essentially "
                                  "incomparable" % (tags[i], tags[j]))
        for leaf, _ in leaves:
            if leaf.kind not in ("g0", "gweighted"):
                report.append("essinc leaves must be in G0 or G1")
    elif kind == "wg":
        pass  # ground membership and admissibility already checked
    else:
        report.append("unknown norming set %r" % (kind,))
    return (not report), report


def functional_height_weight(f: Functional):
    if f.analysis is None:
        raise ValueError("no certificate attached")
    leaves = f.analysis.leaves_with_depth()
    h = max(d for _, d in leaves) if not f.analysis.is_leaf() else 0
    return h, [leaf.weight() for leaf, _ in leaves]
