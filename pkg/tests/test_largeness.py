import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eqlarge.catalog import catalog
from eqlarge.errors import BudgetExceeded, EmptySubset
from eqlarge.group import (
    Subset,
    center,
    image_subset,
    power,
    preimage_subset,
    projections,
    quotient,
    subgroup_generated,
)
from eqlarge.largeness import (
    INFINITE,
    UNBOUNDED,
    SearchBudget,
    at_least,
    cover_number,
    genericity_number,
    is_k_generic,
    is_k_large,
    largeness_number,
    largeness_report,
    left_translate,
    naive_is_k_large,
    restrict_largeness,
)

C3 = catalog("C3")
C4 = catalog("C4")
S3 = catalog("S3")
D4 = catalog("D4")


def subset(G, indices):
    return Subset.from_indices(G, indices)


def test_left_translate():
    X = subset(C4, [0, 1])
    assert sorted(left_translate(C4, X, 1).indices()) == [1, 2]
    assert sorted(left_translate(C4, X, 3).indices()) == [0, 3]
    assert left_translate(C4, X, 0) == X


def test_cover_number_half_of_c4():
    n, translators = cover_number(C4, subset(C4, [0, 1]))
    assert n == 2
    assert translators == (0, 2)


def test_cover_number_empty_raises():
    with pytest.raises(EmptySubset):
        cover_number(C4, subset(C4, []))


def test_subgroup_cover_number_is_the_index():
    A3 = subgroup_generated(S3, [next(
        g for g in range(6) if S3.name(g) == "(1 2 3)")])
    assert A3.size == 3
    assert cover_number(S3, A3)[0] == 2
    rot = subgroup_generated(D4, [1])
    assert cover_number(D4, rot)[0] == 2
    assert cover_number(D4, center(D4))[0] == 4


def test_singleton_genericity():
    e = subset(C3, [0])
    ok2, cert2 = is_k_generic(C3, e, 2)
    assert not ok2 and cert2 is None
    ok3, cert3 = is_k_generic(C3, e, 3)
    assert ok3
    union = 0
    for g in cert3.translators:
        union |= left_translate(C3, e, g).bits
    assert union == (1 << C3.order) - 1


def test_index_two_subgroup_is_exactly_1_large():
    rot = subgroup_generated(D4, [1])
    assert is_k_large(D4, rot, 1)[0]
    ok, cert = is_k_large(D4, rot, 2)
    assert not ok
    # the certificate names two translates of the subgroup with empty
    # intersection
    a, b = cert.translators
    inter = left_translate(D4, rot, a).bits & left_translate(D4, rot, b).bits
    assert inter == 0
    assert largeness_number(D4, rot)[0] == 1


def test_edge_subsets():
    empty = subset(S3, [])
    full = Subset.full(S3)
    assert genericity_number(S3, empty)[0] is INFINITE
    assert largeness_number(S3, full)[0] is UNBOUNDED
    assert is_k_large(S3, empty, 2) == (False, None) or \
        not is_k_large(S3, empty, 2)[0]
    assert is_k_generic(S3, full, 1)[0]
    assert largeness_number(S3, empty)[0] == 0
    assert genericity_number(S3, full)[0] == 1


def test_at_least_handles_sentinels():
    assert at_least(UNBOUNDED, 100)
    assert at_least(INFINITE, 100)
    assert at_least(3, 3)
    assert not at_least(2, 3)


def test_size_bounds_on_all_c4_subsets():
    n = C4.order
    for bits in range(1, 2 ** n - 1):
        X = Subset(C4, bits)
        m = X.size
        gnum = genericity_number(C4, X)[0]
        lnum = largeness_number(C4, X)[0]
        assert gnum <= n - m + 1
        assert lnum <= m
        # duality against an independent brute-force check
        for k in (1, 2, 3):
            fast = is_k_large(C4, X, k)[0]
            assert fast == naive_is_k_large(C4, X, k)
            assert fast == (not is_k_generic(C4, X.complement(), k)[0])


def test_naive_agreement_on_random_s3_subsets():
    import random
    rng = random.Random(7)
    for _ in range(500):
        bits = rng.randrange(1, 2 ** 6 - 1)
        X = Subset(S3, bits)
        k = rng.randrange(1, 4)
        assert is_k_large(S3, X, k)[0] == naive_is_k_large(S3, X, k)


bits_d4 = st.integers(min_value=1, max_value=2 ** 8 - 2)


@given(bits_d4, st.integers(min_value=1, max_value=4))
@settings(max_examples=60, deadline=None)
def test_largeness_monotone_in_k(bits, k):
    X = Subset(D4, bits)
    if is_k_large(D4, X, k + 1)[0]:
        assert is_k_large(D4, X, k)[0]
    if is_k_generic(D4, X, k)[0]:
        assert is_k_generic(D4, X, k + 1)[0]


@given(bits_d4, st.integers(min_value=0, max_value=7))
@settings(max_examples=60, deadline=None)
def test_numbers_are_translate_invariant(bits, g):
    X = Subset(D4, bits)
    Y = left_translate(D4, X, g)
    assert largeness_number(D4, X)[0] == largeness_number(D4, Y)[0]
    assert genericity_number(D4, X)[0] == genericity_number(D4, Y)[0]


@given(bits_d4)
@settings(max_examples=40, deadline=None)
def test_measure_implications(bits):
    X = Subset(D4, bits)
    n = D4.order
    for k in (2, 3, 4):
        if X.size * k > (k - 1) * n:
            assert is_k_large(D4, X, k)[0]
        if is_k_generic(D4, X, k)[0]:
            assert X.size * k >= n


def test_certificates_check_out():
    X = subset(S3, [0, 1, 5])
    gnum, cert = genericity_number(S3, X)
    if cert is not None:
        union = 0
        for g in cert.translators:
            union |= left_translate(S3, X, g).bits
        assert union == (1 << S3.order) - 1
        assert len(cert.translators) == gnum
    lnum, lcert = largeness_number(S3, X)
    comp = X.complement()
    if lcert is not None:
        union = 0
        for g in lcert.translators:
            union |= left_translate(S3, comp, g).bits
        assert union == (1 << S3.order) - 1
        assert len(lcert.translators) == lnum + 1


def test_restriction_to_a_subgroup():
    rot = subgroup_generated(D4, [1])
    # X = rot itself: X meets H in all of H
    assert restrict_largeness(D4, rot, rot)[0] is UNBOUNDED
    # X misses H entirely
    refl = rot.complement()
    assert restrict_largeness(D4, refl, rot)[0] == 0
    # a half of the rotation subgroup is a half of H: 1-large there
    X = subset(D4, [0, 2, 4, 5])
    num = restrict_largeness(D4, X, rot)[0]
    assert num == 1


def test_quotient_image_preserves_2_largeness():
    Q, pi = quotient(D4, center(D4))
    X = subset(D4, [0, 1, 2, 4, 5])
    if is_k_large(D4, X, 2)[0]:
        assert is_k_large(Q, image_subset(pi, X), 2)[0]
    # and for every subset of D4 this direction holds
    import random
    rng = random.Random(3)
    for _ in range(80):
        X = Subset(D4, rng.randrange(1, 255))
        if is_k_large(D4, X, 2)[0]:
            assert is_k_large(Q, image_subset(pi, X), 2)[0]


def test_product_subsets():
    sq = power(C4, 2)
    X = subset(C4, [0, 1])
    first = projections(sq)[0]
    lifted = preimage_subset(first, X)
    assert lifted.size == X.size * C4.order
    assert largeness_number(sq, lifted)[0] == largeness_number(C4, X)[0]
    assert genericity_number(sq, lifted)[0] == genericity_number(C4, X)[0]


def test_budget_cap_is_honored():
    G = power(C4, 3)
    X = Subset(G, (1 << 40) - 1)
    with pytest.raises(BudgetExceeded):
        largeness_number(G, X, budget=SearchBudget(node_cap=3))


def test_report_bundle():
    rep = largeness_report(S3, subset(S3, [0, 1]))
    assert rep.group_label == "S3"
    assert rep.group_order == 6
    assert rep.subset_size == 2
    assert rep.elapsed >= 0
    assert rep.genericity_number == 3
    assert rep.largeness_number == 1
