"""Covers by left translates and the two derived size invariants.

A subset X of a finite group is k-generic when some k left translates of X
cover the group, and k-large when every k left translates of X intersect.
The two notions are complementary: X is k-large exactly when the complement
of X is not k-generic.  Everything here works on int bitmasks, one bit per
element, and the cover search is an exact branch and bound that always
branches on the lowest uncovered element, which keeps results deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import BudgetExceeded, EmptySubset
from .group import Subset

__all__ = [
    "SearchBudget",
    "CoverCertificate",
    "LargenessReport",
    "UNBOUNDED",
    "INFINITE",
    "at_least",
    "left_translate",
    "cover_number",
    "is_k_generic",
    "is_k_large",
    "genericity_number",
    "largeness_number",
    "largeness_report",
    "naive_is_k_large",
    "restrict_largeness",
]


@dataclass(frozen=True)
class SearchBudget:
    node_cap: int = 10_000_000


DEFAULT_BUDGET = SearchBudget()


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


UNBOUNDED = _Sentinel("UNBOUNDED")
INFINITE = _Sentinel("INFINITE")


def at_least(value, k):
    """Compare a possibly-sentinel invariant against an integer bound."""
    if value is UNBOUNDED or value is INFINITE:
        return True
    return value >= k


@dataclass(frozen=True)
class CoverCertificate:
    translators: tuple
    covered: bool


@dataclass(frozen=True)
class LargenessReport:
    group_label: str
    group_order: int
    subset_size: int
    genericity_number: object
    largeness_number: object
    genericity_certificate: CoverCertificate | None
    largeness_certificate: CoverCertificate | None
    elapsed: float


def left_translate(G, X, g):
    bits = 0
    for y in X.indices():
        bits |= 1 << G.mul(g, y)
    return Subset(X.parent, bits)


class _CoverSearch:
    """Minimum number of left translates g*Y covering all of G.

    Distinct translators can give the same translate when Y is a union of
    right cosets, so candidate lists are deduplicated by translate mask.
    A greedy packing of pairwise non-coverable elements gives the lower
    bound; branch and bound closes the gap to the greedy cover.
    """

    def __init__(self, G, Y, budget):
        self.G = G
        self.ybits = Y.bits
        self.ylist = list(Y.indices())
        self.full = (1 << G.order) - 1
        self.budget = budget
        self.nodes = 0
        self.mask_cache = {}
        self.union_cache = {}
        self.best = None
        self.best_sel = None
        self.found = None

    def translate_mask(self, g):
        m = self.mask_cache.get(g)
        if m is None:
            mul = self.G.mul
            m = 0
            for y in self.ylist:
                m |= 1 << mul(g, y)
            self.mask_cache[g] = m
        return m

    def candidates(self, uncovered):
        """Unique translates containing the lowest uncovered element, as
        (translator, mask) pairs sorted by descending fresh coverage with
        the translator index breaking ties."""
        e = (uncovered & -uncovered).bit_length() - 1
        inv = self.G.inv
        mul = self.G.mul
        tmask = self.translate_mask
        seen = set()
        out = []
        for y in self.ylist:
            g = mul(e, inv(y))
            m = tmask(g)
            if m not in seen:
                seen.add(m)
                out.append((g, m))
        out.sort(key=lambda gm: (-(gm[1] & uncovered).bit_count(), gm[0]))
        return out

    def element_union(self, e):
        """Union of all translates containing element e."""
        u = self.union_cache.get(e)
        if u is None:
            inv = self.G.inv
            mul = self.G.mul
            tmask = self.translate_mask
            u = 0
            for y in self.ylist:
                u |= tmask(mul(e, inv(y)))
            self.union_cache[e] = u
        return u

    def packing_bound(self, uncovered, limit):
        """Greedily pick elements no single translate covers twice; their
        count bounds the cover size from below.  Stops past limit."""
        count = 0
        rem = uncovered
        while rem:
            e = (rem & -rem).bit_length() - 1
            count += 1
            if count > limit:
                return count
            rem &= ~self.element_union(e)
        return count

    def greedy(self):
        uncovered = self.full
        chosen = []
        while uncovered:
            g, m = self.candidates(uncovered)[0]
            chosen.append(g)
            uncovered &= ~m
        return chosen

    def run(self):
        greedy_sel = self.greedy()
        lb = -(-self.G.order // len(self.ylist))
        if len(greedy_sel) > lb:
            lb = max(lb, self.packing_bound(self.full, len(greedy_sel)))
        if len(greedy_sel) == lb:
            return len(greedy_sel), tuple(greedy_sel)
        self.best = len(greedy_sel)
        self.best_sel = list(greedy_sel)
        self.dfs(self.full, [])
        return self.best, tuple(self.best_sel)

    def dfs(self, uncovered, chosen):
        if not uncovered:
            if len(chosen) < self.best:
                self.best = len(chosen)
                self.best_sel = list(chosen)
            return
        need = -(-uncovered.bit_count() // len(self.ylist))
        if len(chosen) + need >= self.best:
            return
        self.nodes += 1
        if self.nodes > self.budget.node_cap:
            raise BudgetExceeded(
                f"cover search passed {self.budget.node_cap} nodes")
        for g, m in self.candidates(uncovered):
            chosen.append(g)
            self.dfs(uncovered & ~m, chosen)
            chosen.pop()

    def decide(self, k):
        """A cover with at most k translators, or None when impossible."""
        lb = -(-self.G.order // len(self.ylist))
        if lb > k:
            return None
        greedy_sel = self.greedy()
        if len(greedy_sel) <= k:
            return greedy_sel
        if self.packing_bound(self.full, k) > k:
            return None
        self.found = None
        self._decide_dfs(self.full, [], k)
        return self.found

    def _decide_dfs(self, uncovered, chosen, k):
        if not uncovered:
            self.found = list(chosen)
            return
        need = -(-uncovered.bit_count() // len(self.ylist))
        if len(chosen) + need > k:
            return
        self.nodes += 1
        if self.nodes > self.budget.node_cap:
            raise BudgetExceeded(
                f"cover search passed {self.budget.node_cap} nodes")
        for g, m in self.candidates(uncovered):
            chosen.append(g)
            self._decide_dfs(uncovered & ~m, chosen, k)
            chosen.pop()
            if self.found is not None:
                return


def cover_number(G, Y, budget=DEFAULT_BUDGET):
    """Least k with k left translates of Y covering G, with translators.

    Raises EmptySubset for the empty set, which covers nothing.
    """
    if Y.size == 0:
        raise EmptySubset("the empty set admits no cover")
    if Y.size == G.order:
        return 1, (G.identity,)
    k, sel = _CoverSearch(G, Y, budget).run()
    return k, sel


def is_k_generic(G, X, k, budget=DEFAULT_BUDGET):
    if X.size == 0:
        return False, None
    if X.size == G.order:
        return True, CoverCertificate((G.identity,), True)
    sel = _CoverSearch(G, X, budget).decide(k)
    if sel is not None:
        return True, CoverCertificate(tuple(sel), True)
    return False, None


def is_k_large(G, X, k, budget=DEFAULT_BUDGET):
    """Whether every k left translates of X meet; on failure the witness
    translators give k translates of the complement that cover G, i.e.
    translates of X with empty intersection after inverting."""
    comp = X.complement()
    if comp.size == 0:
        return True, None
    if X.size == 0:
        return False, CoverCertificate((G.identity,) * k, True)
    sel = _CoverSearch(G, comp, budget).decide(k)
    if sel is None:
        return True, None
    sel = tuple(sel) + (sel[-1],) * (k - len(sel))
    return False, CoverCertificate(sel, True)


def genericity_number(G, X, budget=DEFAULT_BUDGET):
    """Least k such that X is k-generic; INFINITE for the empty set."""
    if X.size == 0:
        return INFINITE, None
    n, sel = cover_number(G, X, budget)
    return n, CoverCertificate(sel, True)


def largeness_number(G, X, budget=DEFAULT_BUDGET):
    """Greatest k such that X is k-large; UNBOUNDED for the full group."""
    comp = X.complement()
    if comp.size == 0:
        return UNBOUNDED, None
    if X.size == 0:
        return 0, None
    n, sel = cover_number(G, comp, budget)
    return n - 1, CoverCertificate(sel, True)


def largeness_report(G, X, budget=DEFAULT_BUDGET):
    t0 = time.perf_counter()
    gen, gen_cert = genericity_number(G, X, budget)
    lar, lar_cert = largeness_number(G, X, budget)
    return LargenessReport(
        group_label=G.label,
        group_order=G.order,
        subset_size=X.size,
        genericity_number=gen,
        largeness_number=lar,
        genericity_certificate=gen_cert,
        largeness_certificate=lar_cert,
        elapsed=time.perf_counter() - t0,
    )


def naive_is_k_large(G, X, k, budget=10 ** 6):
    """Definition-chasing check that every k left translates of X meet.

    Fixing the first translator to the identity is harmless: translating
    all k sets on the left preserves whether they intersect.  Cost is
    order**(k-1) intersection tests.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if G.order ** (k - 1) > budget:
        raise BudgetExceeded(f"{G.order}**{k - 1} exceeds {budget}")
    masks = [0] * G.order
    for g in range(G.order):
        m = 0
        for y in X.indices():
            m |= 1 << G.mul(g, y)
        masks[g] = m

    def rec(depth, inter):
        if not inter:
            return False
        if depth == k - 1:
            return True
        return all(rec(depth + 1, inter & masks[g]) for g in range(G.order))

    return rec(0, masks[G.identity])


def restrict_largeness(G, X, H, budget=DEFAULT_BUDGET):
    """Largeness of X cap H inside the subgroup H of G.

    H is given as a Subset forming a subgroup; returns the largeness number
    of the intersection measured in the subgroup.
    """
    from .group import subgroup_as_group

    Hgrp, elems = subgroup_as_group(G, H)
    pos = {g: i for i, g in enumerate(elems)}
    bits = 0
    for g in X.indices():
        if g in pos:
            bits |= 1 << pos[g]
    return largeness_number(Hgrp, Subset(Hgrp, bits), budget)
