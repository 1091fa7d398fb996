import pytest

from eqlarge.catalog import catalog
from eqlarge.errors import (
    BudgetExceeded,
    NoXVariable,
    NotASupercommutator,
    PreconditionViolated,
)
from eqlarge.linearize import (
    LinearizeBudget,
    check_factor_condition,
    enumerate_sweep_shapes,
    linearization_identity_holds,
    linearize,
    linearize_product,
    product_identity_holds,
)
from eqlarge.words import (
    Comm,
    Var,
    evaluate,
    parse_word,
    to_text,
    word_variables,
)

S3 = catalog("S3")
D4 = catalog("D4")
H3 = catalog("H3")


def test_single_variable_base_case():
    phi = linearize(parse_word("x1"), (0,), (1,))
    assert phi == [Comm(Var(1), Var(0))]


def test_inverted_variable_emits_nothing():
    assert linearize(parse_word("x1^-1"), (0,), (1,)) == []


def test_commutator_split_by_direct_evaluation():
    v = parse_word("[x1,x2]")
    phi = linearize(v, (0,), (2,))
    assert phi
    for x in range(D4.order):
        for y in range(D4.order):
            for z in range(D4.order):
                lhs = evaluate(D4, v, (D4.mul(y, x), z))
                rhs = D4.mul(evaluate(D4, v, (x, z)),
                             evaluate(D4, v, (y, z, y)))
                for f in phi:
                    rhs = D4.mul(rhs, evaluate(D4, f, (x, z, y)))
                assert lhs == rhs


def test_identity_checker_agrees():
    v = parse_word("[x1,x2]")
    phi = linearize(v, (0,), (2,))
    assert linearization_identity_holds(S3, v, (0,), (2,), phi, samples=200)
    assert linearization_identity_holds(D4, v, (0,), (2,), phi, samples=200)
    # without the correction factors the identity must break somewhere in
    # S3 (in class-2 groups they all vanish, so D4 is no witness here)
    assert not linearization_identity_holds(S3, v, (0,), (2,), [],
                                            samples=200)


def test_factor_condition():
    v = parse_word("[x1,x2]")
    phi = linearize(v, (0,), (2,))
    for f in phi:
        assert check_factor_condition(f, v, (0,), (2,))
    # a factor with no designated variable fails
    assert not check_factor_condition(parse_word("x2"), v, (0,), (2,))
    # a factor missing the undesignated variable of v fails
    assert not check_factor_condition(parse_word("[x3,x1]"), v, (0,), (2,))
    # v itself has no y variable, so it fails the condition too
    assert not check_factor_condition(v, v, (0,), (2,))


def test_sweep_catalog_is_large_and_well_formed():
    shapes = enumerate_sweep_shapes()
    assert len(shapes) >= 50
    seen = set()
    for text, word, xbar, ybar in shapes:
        assert parse_word(text) == word
        seen.add((text, xbar))
        vars_w = word_variables(word)
        assert set(xbar) & vars_w
        assert not (set(ybar) & vars_w)
    assert len(seen) == len(shapes)


def test_sweep_shapes_split_correctly_in_s3():
    for text, word, xbar, ybar in enumerate_sweep_shapes():
        phi = linearize(word, xbar, ybar)
        for f in phi:
            assert check_factor_condition(f, word, xbar, ybar), \
                f"bad factor {to_text(f)} for {text}"
        assert linearization_identity_holds(S3, word, xbar, ybar, phi,
                                            samples=4, seed=11), text


def test_product_split():
    factors = [parse_word("[x1,x3]"), parse_word("[x2,x3]")]
    phi, prefix = linearize_product(factors, (0, 1), (3, 4), n=1)
    assert [to_text(w) for w in prefix] == \
        ["[x1,x3]", "[x2,x3]", "[x4,x3]", "[x5,x3]"]
    for f in phi:
        vw = word_variables(f)
        assert vw & {0, 1, 3, 4}
        assert len(vw - {0, 1}) > 1
    assert product_identity_holds(H3, factors, (0, 1), (3, 4), phi, prefix,
                                  samples=40)


def test_product_split_single_factor_matches_linearize():
    v = parse_word("[[x1,x2],x3]")
    phi, prefix = linearize_product([v], (0,), (3,))
    assert [to_text(w) for w in prefix][0] == "[[x1,x2],x3]"
    assert product_identity_holds(H3, [v], (0,), (3,), phi, prefix,
                                  samples=30)


def test_error_cases():
    with pytest.raises(NoXVariable):
        linearize(parse_word("[x2,x3]"), (0,), (4,))
    with pytest.raises(PreconditionViolated):
        linearize(parse_word("[x1,x2]"), (0,), (0,))
    with pytest.raises(PreconditionViolated):
        # ybar collides with a variable v already uses
        linearize(parse_word("[x1,x2]"), (0,), (1,))
    with pytest.raises(NotASupercommutator):
        linearize(parse_word("x1*x2"), (0,), (2,))
    with pytest.raises(PreconditionViolated):
        linearize_product([], (0,), (1,))
    with pytest.raises(PreconditionViolated):
        linearize_product([parse_word("[x2,x3]")], (0,), (4,))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        linearize(parse_word("[[x1,x2],x3]"), (0,), (3,),
                  budget=LinearizeBudget(max_factors=4))
