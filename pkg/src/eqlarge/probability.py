"""Solution sets of word equations and the fractions they occupy.

Equations are evaluated over all assignments of a finite group to their
variables; the solution set lives in the corresponding direct power, as a
bitmask indexed the same way the power group indexes tuples (leftmost
variable most significant).  All fractions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ActionNotClosed, ArityMismatch, IndexBound
from .group import (
    Group,
    Subset,
    class_count,
    direct_product,
    is_subgroup,
    power,
)
from .words import (
    Equation,
    evaluate,
    parse_equation,
    resolve_constant,
    word_arity,
)

__all__ = [
    "EnumLimits",
    "SolutionSet",
    "solution_set",
    "solution_set_json",
    "solution_sets_by_value",
    "probability",
    "commuting_probability",
    "equation_largeness",
    "fixed_subgroup",
    "AcReport",
    "autocommutativity_degree",
]


@dataclass(frozen=True)
class EnumLimits:
    arity_cap: int = 4
    index_cap: int = 1 << 26


DEFAULT_LIMITS = EnumLimits()


@dataclass(frozen=True)
class SolutionSet:
    group: Group
    arity: int
    bits: int
    count: int

    def fraction(self):
        return Fraction(self.count, self.group.order ** self.arity)

    def as_subset(self):
        """The solution set inside the direct power of the group."""
        P = power(self.group, self.arity)
        return Subset(P, self.bits)

    def indices(self):
        m = self.bits
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low


def solution_set_json(sols, index_threshold=1 << 16):
    """Interchange dict; indices are dropped past the threshold."""
    out = {"group": sols.group.label, "arity": sols.arity,
           "count": sols.count}
    if sols.count <= index_threshold:
        out["indices"] = list(sols.indices())
    return out


def _check_limits(G, arity, limits):
    if arity > limits.arity_cap:
        raise ArityMismatch(
            f"arity {arity} exceeds the enumeration cap {limits.arity_cap}")
    if G.order ** max(arity, 1) > limits.index_cap:
        raise IndexBound(
            f"{G.order}**{arity} assignments exceed {limits.index_cap}")


def _assignments(G, arity):
    """Tuples in power-group index order: index = sum a_i * n**(arity-1-i)."""
    n = G.order
    if arity == 0:
        yield 0, ()
        return
    total = n ** arity
    for idx in range(total):
        rest = idx
        tup = [0] * arity
        for pos in range(arity - 1, -1, -1):
            tup[pos] = rest % n
            rest //= n
        yield idx, tuple(tup)


def solution_set(G, equation, constants=None, limits=DEFAULT_LIMITS):
    """All assignments satisfying the equation, as bits over the power."""
    if isinstance(equation, str):
        equation = parse_equation(equation)
    arity = equation.arity
    _check_limits(G, arity, limits)
    rhs_const = not (set(range(arity))
                     & _equation_side_vars(equation.rhs))
    rhs_val = None
    if rhs_const:
        rhs_val = evaluate(G, equation.rhs, (0,) * arity, constants)
    bits = 0
    count = 0
    for idx, tup in _assignments(G, arity):
        lv = evaluate(G, equation.lhs, tup, constants)
        rv = rhs_val if rhs_const else evaluate(G, equation.rhs, tup,
                                                constants)
        if lv == rv:
            bits |= 1 << idx
            count += 1
    return SolutionSet(G, arity, bits, count)


def _equation_side_vars(word):
    from .words import word_variables
    return word_variables(word)


def solution_sets_by_value(G, word, constants=None, limits=DEFAULT_LIMITS):
    """Bucket all assignments of word by its value, in one enumeration.

    Returns a dict from the value index to a SolutionSet of the equation
    word = value.  Much cheaper than one solution_set call per value.
    """
    from .words import parse_word

    if isinstance(word, str):
        word = parse_word(word)
    arity = word_arity(word)
    _check_limits(G, arity, limits)
    bits = {}
    counts = {}
    for idx, tup in _assignments(G, arity):
        v = evaluate(G, word, tup, constants)
        bits[v] = bits.get(v, 0) | (1 << idx)
        counts[v] = counts.get(v, 0) + 1
    return {v: SolutionSet(G, arity, bits[v], counts[v])
            for v in sorted(bits)}


def probability(G, equation, constants=None, limits=DEFAULT_LIMITS):
    """Fraction of assignments satisfying the equation."""
    return solution_set(G, equation, constants, limits).fraction()


def commuting_probability(G):
    """Fraction of commuting ordered pairs, which equals the number of
    conjugacy classes over the order."""
    return Fraction(class_count(G), G.order)


def equation_largeness(G, equation, constants=None, limits=DEFAULT_LIMITS,
                       budget=None):
    """Largeness report for the solution set inside the direct power."""
    from .largeness import DEFAULT_BUDGET, largeness_report

    sols = solution_set(G, equation, constants, limits)
    return largeness_report(power(G, sols.arity), sols.as_subset(),
                            budget or DEFAULT_BUDGET)


def fixed_subgroup(G, sigma):
    """Elements fixed by a permutation of G given as a tuple; checked to
    form a subgroup."""
    bits = 0
    for g in range(G.order):
        if sigma[g] == g:
            bits |= 1 << g
    sub = Subset(G, bits)
    if not is_subgroup(G, sub):
        raise ActionNotClosed("fixed points do not form a subgroup; "
                              "the map is not an automorphism")
    return sub


@dataclass(frozen=True)
class AcReport:
    degree: Fraction
    fixed_pairs: Subset
    sigma_order: int
    subset_size: int


def autocommutativity_degree(G, H, action_pair, limits=DEFAULT_LIMITS):
    """Fraction of pairs (sigma, h) with sigma in the acting group and h in
    the subset H that satisfy sigma(h) = h, together with the set of such
    pairs inside the product of the acting group with G.

    action_pair is (A, action) where action[i] is the permutation of G
    performed by element i of A; rows are checked to be automorphisms.
    """
    A, action = action_pair
    if len(action) != A.order:
        raise ActionNotClosed("action table size mismatch")
    for row in action:
        if sorted(row) != list(range(G.order)):
            raise ActionNotClosed("action row is not a permutation")
        for a in range(G.order):
            for b in range(G.order):
                if row[G.mul(a, b)] != G.mul(row[a], row[b]):
                    raise ActionNotClosed(
                        "action row is not multiplicative")
    if A.order * G.order > limits.index_cap:
        raise IndexBound("pair space too large")
    P = direct_product(A, G, label=f"{A.label}x{G.label}")
    bits = 0
    count = 0
    for s in range(A.order):
        row = action[s]
        for h in H.indices():
            if row[h] == h:
                bits |= 1 << (s * G.order + h)
                count += 1
    total = A.order * H.size
    return AcReport(
        degree=Fraction(count, total) if total else Fraction(0, 1),
        fixed_pairs=Subset(P, bits),
        sigma_order=A.order,
        subset_size=H.size,
    )


def resolve_all(G, names, constants=None):
    """Convenience: resolve a list of constant names to element indices."""
    return tuple(resolve_constant(G, n, constants) for n in names)
