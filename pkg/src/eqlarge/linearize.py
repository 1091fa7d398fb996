"""Splitting a supercommutator evaluated at products into commutator factors.

For a supercommutator v and designated variables xbar with fresh partners
ybar, substituting y*x for each designated x satisfies

    v(y1*x1, ..., z) = v(x, z) * v(y, z) * product(Phi)

where every factor of Phi is again a supercommutator, contains all the
undesignated variables of v, contains x_i or y_i whenever x_i occurs in v,
and mentions at least one x and at least one y.  The construction is exact:
it rewrites [AB, CD]-style products by conjugation-absorption, so the
identity holds in every group and is spot-checked by evaluation in tests.

The product form does the same for a product of supercommutators without
ever commuting two plain-x parts or two plain-y parts past each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    NoXVariable,
    NotASupercommutator,
    PreconditionViolated,
)
from .words import (
    Comm,
    Const,
    Inv,
    Var,
    evaluate,
    evaluate_product,
    expand_engel,
    is_supercommutator,
    to_text,
    word_variables,
)

__all__ = [
    "LinearizeBudget",
    "linearize",
    "linearize_product",
    "check_factor_condition",
    "linearization_identity_holds",
    "product_identity_holds",
    "enumerate_sweep_shapes",
]


@dataclass(frozen=True)
class LinearizeBudget:
    max_factors: int = 100_000


DEFAULT_BUDGET = LinearizeBudget()


class _Expander:
    def __init__(self, xmap, budget):
        self.xmap = xmap
        self.budget = budget
        self.created = 0
        self._ysub_cache = {}
        self._phi_cache = {}

    def mk(self, a, b):
        self.created += 1
        if self.created > self.budget.max_factors:
            raise BudgetExceeded(
                f"linearization exceeds {self.budget.max_factors} factors")
        return Comm(a, b)

    def ysub(self, w):
        got = self._ysub_cache.get(id(w))
        if got is not None:
            return got
        if isinstance(w, Var):
            out = Var(self.xmap[w.index]) if w.index in self.xmap else w
        elif isinstance(w, Const):
            out = w
        elif isinstance(w, Inv):
            out = Inv(self.ysub(w.body))
        elif isinstance(w, Comm):
            out = Comm(self.ysub(w.left), self.ysub(w.right))
        else:
            raise NotASupercommutator(f"unexpected node {w!r}")
        self._ysub_cache[id(w)] = out
        return out

    def var_x(self, w):
        return sum(1 for i in word_variables(w) if i in self.xmap)

    def absorb(self, items, u):
        out = []
        for t in items:
            out.append(t)
            out.append(self.mk(t, u))
        return out

    def cps(self, j, items):
        acc = []
        for k in items:
            acc = [self.mk(j, k)] + self.absorb(acc, k)
        return acc

    def cp(self, j_items, k_items):
        acc = []
        for j in j_items:
            acc = self.absorb(acc, j) + self.cps(j, k_items)
        return acc

    def _pull(self, items, start, node):
        """Move the first occurrence of node at or after start to position
        start, conjugating the skipped prefix by it."""
        idx = None
        for i in range(start, len(items)):
            if items[i] is node:
                idx = i
                break
        if idx is None:
            raise AssertionError("expected factor missing from expansion")
        return (items[:start] + [node]
                + self.absorb(items[start:idx], node) + items[idx + 1:])

    def expand(self, v):
        """Factor list phi with subst(v) = v * ysub(v) * product(phi)."""
        got = self._phi_cache.get(id(v))
        if got is not None:
            return got
        phi = self._expand(v)
        self._phi_cache[id(v)] = phi
        return phi

    def _expand(self, v):
        if isinstance(v, Var):
            return [self.mk(self.ysub(v), v)]
        if isinstance(v, Inv):
            if isinstance(v.body, Var):
                return []
            phi_u = self.expand(v.body)
            b = self.ysub(v)
            inner = [Inv(t) for t in reversed(phi_u)]
            out = self.absorb(self.absorb(inner, v), b)
            out.append(self.mk(b, v))
            return out
        if isinstance(v, Comm):
            left, right = v.left, v.right
            j_items = [left]
            if self.var_x(left) > 0:
                j_items = [left, self.ysub(left)] + self.expand(left)
            k_items = [right]
            if self.var_x(right) > 0:
                k_items = [right, self.ysub(right)] + self.expand(right)
            raw = self.cp(j_items, k_items)
            ja, ka = j_items[0], k_items[0]
            jb = j_items[1] if len(j_items) > 1 else j_items[0]
            kb = k_items[1] if len(k_items) > 1 else k_items[0]
            pure_a = self._find_pair(raw, ja, ka)
            raw = self._pull(raw, 0, pure_a)
            pure_b = self._find_pair(raw, jb, kb)
            raw = self._pull(raw, 1, pure_b)
            return raw[2:]
        raise NotASupercommutator(f"cannot expand {to_text(v)}")

    @staticmethod
    def _find_pair(items, left, right):
        for f in items:
            if isinstance(f, Comm) and f.left is left and f.right is right:
                return f
        raise AssertionError("expected base pair missing from expansion")


def _prepare(v, xbar, ybar):
    v = expand_engel(v)
    if not is_supercommutator(v):
        raise NotASupercommutator(f"{to_text(v)} has a non-commutator node")
    xbar = tuple(xbar)
    ybar = tuple(ybar)
    if len(xbar) != len(ybar):
        raise PreconditionViolated("xbar and ybar must pair up")
    if len(set(xbar)) != len(xbar) or len(set(ybar)) != len(ybar):
        raise PreconditionViolated("designated variables must be distinct")
    if set(xbar) & set(ybar):
        raise PreconditionViolated("xbar and ybar overlap")
    return v, xbar, ybar


def check_factor_condition(w, v, xbar, ybar, zbar=None):
    """The structural condition every emitted factor must satisfy: same
    undesignated variables as v, x_i or its partner wherever v uses x_i,
    and at least one x and one y present."""
    vw = word_variables(w)
    vv = word_variables(v)
    if zbar is None:
        zbar = tuple(sorted(vv - set(xbar)))
    zset = set(zbar)
    if (vw & zset) != (vv & zset):
        return False
    partner = dict(zip(xbar, ybar))
    for x in vv & set(xbar):
        if x not in vw and partner[x] not in vw:
            return False
    if not any(x in vw for x in xbar):
        return False
    if not any(y in vw for y in ybar):
        return False
    return True


def linearize(v, xbar, ybar, zbar=None, budget=DEFAULT_BUDGET):
    """Factor list phi with v(..., y_i*x_i, ...) = v(x) * v(y) * prod(phi).

    Every returned factor passes check_factor_condition against (v, xbar,
    ybar); a violation would be a construction bug and raises.
    """
    v, xbar, ybar = _prepare(v, xbar, ybar)
    vars_v = word_variables(v)
    if set(ybar) & vars_v:
        raise PreconditionViolated("ybar must be fresh for v")
    if not (vars_v & set(xbar)):
        raise NoXVariable(f"{to_text(v)} uses none of the designated "
                          "variables")
    if zbar is None:
        zbar = tuple(sorted(vars_v - set(xbar)))
    exp = _Expander(dict(zip(xbar, ybar)), budget)
    phi = exp.expand(v)
    for w in phi:
        if not check_factor_condition(w, v, xbar, ybar, zbar):
            raise AssertionError(
                f"construction emitted a bad factor for {to_text(v)}")
    return phi


def linearize_product(factors, xbar, ybar, n=None, budget=DEFAULT_BUDGET):
    """Same splitting for a product of supercommutators.

    Every input factor must use a designated variable and at least n others;
    every output factor then uses a designated variable and more than n
    others.  Returns (phi, prefix) where prefix lists the plain-x parts
    followed by the plain-y parts, so that substituting y*x into the
    product equals prod(prefix) * prod(phi).
    """
    prepared = []
    for w in factors:
        w2, xbar, ybar = _prepare(w, xbar, ybar)
        prepared.append(w2)
    if not prepared:
        raise PreconditionViolated("empty product")
    xset = set(xbar)
    counts = []
    for w in prepared:
        vw = word_variables(w)
        if set(ybar) & vw:
            raise PreconditionViolated("ybar must be fresh for every factor")
        if not (vw & xset):
            raise PreconditionViolated(
                f"factor {to_text(w)} uses no designated variable")
        counts.append(len(vw - xset))
    if n is None:
        n = min(counts)
    if any(c < n for c in counts):
        raise PreconditionViolated(
            f"every factor needs at least {n} undesignated variables")
    exp = _Expander(dict(zip(xbar, ybar)), budget)
    items = []
    for w in prepared:
        items.extend([w, exp.ysub(w)] + exp.expand(w))
    pos = 0
    for w in prepared:
        items = exp._pull(items, pos, w)
        pos += 1
    for w in prepared:
        items = exp._pull(items, pos, exp.ysub(w))
        pos += 1
    prefix, phi = items[:pos], items[pos:]
    for w in phi:
        vw = word_variables(w)
        if not (vw & xset) or len(vw - xset) <= n:
            raise AssertionError("product construction emitted a bad factor")
    return phi, prefix


def linearization_identity_holds(G, v, xbar, ybar, phi, samples=100, seed=0,
                                 constants=None):
    """Spot-check the splitting identity by evaluation."""
    v = expand_engel(v)
    rng = random.Random(seed)
    top = max([i for i in (*xbar, *ybar, *word_variables(v))], default=-1)
    names = [c for c in _word_constants_sorted(v) if not c.startswith("#")]
    for _ in range(samples):
        consts = dict(constants or {})
        for name in names:
            consts.setdefault(name, rng.randrange(G.order))
        base = [rng.randrange(G.order) for _ in range(top + 1)]
        shifted = list(base)
        for xi, yi in zip(xbar, ybar):
            shifted[xi] = G.mul(base[yi], base[xi])
        ysubbed = list(base)
        for xi, yi in zip(xbar, ybar):
            ysubbed[xi] = base[yi]
        lhs = evaluate(G, v, tuple(shifted), consts)
        rhs = G.mul(evaluate(G, v, tuple(base), consts),
                    evaluate(G, v, tuple(ysubbed), consts))
        rhs = G.mul(rhs, evaluate_product(G, phi, tuple(base), consts))
        if lhs != rhs:
            return False
    return True


def product_identity_holds(G, factors, xbar, ybar, phi, prefix, samples=50,
                           seed=0, constants=None):
    factors = [expand_engel(w) for w in factors]
    rng = random.Random(seed)
    all_vars = set()
    for w in factors:
        all_vars |= word_variables(w)
    top = max([i for i in (*xbar, *ybar, *all_vars)], default=-1)
    names = set()
    for w in factors:
        names |= {c for c in _word_constants_sorted(w)
                  if not c.startswith("#")}
    for _ in range(samples):
        consts = dict(constants or {})
        for name in sorted(names):
            consts.setdefault(name, rng.randrange(G.order))
        base = [rng.randrange(G.order) for _ in range(top + 1)]
        shifted = list(base)
        for xi, yi in zip(xbar, ybar):
            shifted[xi] = G.mul(base[yi], base[xi])
        lhs = evaluate_product(G, factors, tuple(shifted), consts)
        rhs = G.mul(evaluate_product(G, prefix, tuple(base), consts),
                    evaluate_product(G, phi, tuple(base), consts))
        if lhs != rhs:
            return False
    return True


def _word_constants_sorted(w):
    from .words import word_constants
    return sorted(word_constants(w))


def enumerate_sweep_shapes():
    """Deterministic supercommutator shapes for the linearization sweep:
    commutator depth up to 3 over at most 3 variables plus one symbolic
    constant, with inverse decorations on the leaves, each paired with a
    workable designation split.  Partner variables use the next free
    indices."""
    x1, x2, x3 = Var(0), Var(1), Var(2)
    g = Const("g")

    def decs(leaf):
        return [leaf, Inv(leaf), Inv(Inv(leaf))]

    shapes = []

    def add(v, xbar):
        ybar = tuple(3 + k for k in range(len(xbar)))
        shapes.append((to_text(v), v, tuple(xbar), ybar))

    pairs = [(x1, x2), (x2, x1), (x1, g), (g, x1), (x1, x1), (x1, x3),
             (x2, x3)]
    for a, b in pairs:
        for da in decs(a):
            for db in decs(b):
                v = Comm(da, db)
                vs = sorted(word_variables(v))
                add(v, (vs[0],))
                if len(vs) > 1:
                    add(v, tuple(vs))
    deep = [
        (Comm(Comm(x1, x2), x3), (2,)),
        (Comm(Comm(x1, x2), x3), (0,)),
        (Comm(x1, Comm(x2, x3)), (0,)),
        (Comm(x1, Comm(x2, x3)), (1,)),
        (Comm(Comm(x1, x2), Comm(x1, x3)), (1,)),
        (Comm(Comm(x1, x2), Comm(x2, x3)), (0,)),
        (Comm(Comm(x1, g), x2), (1,)),
        (Comm(Comm(x1, g), x2), (0,)),
        (Comm(Inv(Comm(x1, x2)), x3), (2,)),
        (Comm(x3, Inv(Comm(x1, x2))), (2,)),
        (Comm(Comm(Inv(x1), x2), x3), (2,)),
        (Comm(g, Comm(x1, x2)), (0,)),
    ]
    for v, xbar in deep:
        add(v, xbar)
    return shapes
