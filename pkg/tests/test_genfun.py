
import pytest

from krlab_genfun import (
    SHIFT_IDENTITIES,
    RecipeError,
    build_conjecture_product,
    build_sum_series,
    check_conjecture,
    check_conjecture_counts,
    check_distinct_odd,
    check_erratum,
    check_identity,
    check_shift_identity,
    check_theorem,
    load_recipes,
    series_equal,
    table_series,
)
from krlab_partitions import THEOREM_VARIANTS, enumerate_variant


def test_every_theorem_variant_has_a_recipe(book):
    for v in THEOREM_VARIANTS:
        assert book.for_variant(v).family == v.value


def test_kr1_series_at_nine(book):
    s = build_sum_series(book.recipe("kr1"), 9, 9)
    assert [s.coefficient(9, m) for m in range(4)] == [0, 1, 4, 2]
    assert s.at_x1().coefficient(9) == 7


@pytest.mark.parametrize("variant", [v.value for v in THEOREM_VARIANTS])
def test_theorem_series_match_enumeration(book, variant):
    r = check_theorem(variant, 18, book)
    assert r.ok, r.detail


def test_kr5_series_equals_count_table(book):
    s = build_sum_series(book.recipe("kr5"), 20, 20)
    v = series_equal(s, table_series(enumerate_variant("kr5", 20), 20), 20)
    assert v.equal, v.describe()


@pytest.mark.parametrize("index", range(3))
def test_printed_forms_differ_where_documented(book, index):
    r = check_erratum(book.errata[index], book)
    assert r.ok, r.detail


def test_kr3_1_printed_misses_the_witness(book):
    printed = build_sum_series(book.recipe("kr3-1-printed"), 23, 4)
    fixed = build_sum_series(book.recipe("kr3-1"), 23, 4)
    assert printed.coefficient(23, 4) == 0
    assert fixed.coefficient(23, 4) == enumerate_variant("kr3-1", 23).entry(23, 4)
    assert fixed.coefficient(23, 4) >= 1


def test_remark_printed_counts_one_twice(book):
    s = build_sum_series(book.recipe("krb1-1-remark-printed"), 1, 1)
    assert s.coefficient(1, 1) == 2


@pytest.mark.parametrize("suite", ["theorems", "section5"])
def test_identities(book, suite):
    for ident in book.identities:
        if ident.suite == suite:
            r = check_identity(ident, 16, book)
            assert r.ok, r.detail


@pytest.mark.parametrize("pid", range(1, 7))
def test_conjectures_to_thirty(book, pid):
    assert check_conjecture(pid, 30, book).ok
    assert check_conjecture_counts(pid, 16, book).ok


def test_product_lookup(book):
    s = build_conjecture_product(1, 9, book)
    assert s.coefficient(9) == 7
    assert book.product("conj1") == book.product(1)
    with pytest.raises(RecipeError):
        book.product(7)


def test_distinct_odd_parts():
    r = check_distinct_odd(8, 40)
    assert r.ok, r.detail


@pytest.mark.parametrize("child,parent,delta", SHIFT_IDENTITIES)
def test_shift_identities(child, parent, delta):
    r = check_shift_identity(child, parent, delta, 14)
    assert r.ok, r.detail


def test_wrong_shift_direction_is_caught():
    r = check_shift_identity("krb1", "kr2", 1, 10)
    assert not r.ok
    assert r.counterexample is not None


def test_verdict_reports_first_difference(book):
    a = build_sum_series(book.recipe("kr1"), 10, 10)
    b = build_sum_series(book.recipe("kr2"), 10, 10)
    v = series_equal(a, b, 10)
    assert not v.equal
    assert v.first == (1, 1, 1, 0)
    assert v.describe() == "differ at q^1 x^1: 1 != 0"


def test_missing_field_is_named(recipe_file):
    p = recipe_file(
        """
        series:
          broken:
            terms:
              - ranges: {n: 0}
                x_degree: {n: 1}
        """,
    )
    with pytest.raises(RecipeError, match="exponent"):
        load_recipes(p)


def test_unbounded_variable_rejected(recipe_file):
    p = recipe_file(
        """
        series:
          flat:
            terms:
              - ranges: {n: 0}
                exponent: [[1, n]]
                x_degree: {n: 1}
        """,
    )
    with pytest.raises(RecipeError, match="square"):
        load_recipes(p)


def test_half_integer_exponent_rejected_at_evaluation(recipe_file):
    p = recipe_file(
        """
        series:
          half:
            terms:
              - ranges: {n: 0}
                exponent: [["1/2", n, n]]
                x_degree: {n: 1}
        """,
    )
    book = load_recipes(p)
    with pytest.raises(RecipeError, match="not an integer"):
        build_sum_series(book.recipe("half"), 4, 4)


def test_small_custom_recipe(recipe_file):
    # Σ q^(n^2) x^n / (q;q)_n: partitions with difference at least 2
    p = recipe_file(
        """
        series:
          rr:
            terms:
              - ranges: {n: 0}
                exponent: [[1, n, n]]
                x_degree: {n: 1}
                denominator: [{base: 1, step: 1, count: n}]
        """,
    )
    s = build_sum_series(load_recipes(p).recipe("rr"), 10, 10).at_x1()
    # 1/((q;q^5)(q^4;q^5)) coefficients
    assert [s.coefficient(k) for k in range(11)] == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]


@pytest.mark.parametrize(
    "child,parent,delta,name",
    [
        ("kr4", "kr1", 1, "shift kr4(n, m) = kr1(n-m, m)"),
        ("krb1", "kr2", -1, "shift krb1(n, m) = kr2(n+m, m)"),
        ("krb4-2", "kr3-1", -2, "shift krb4-2(n, m) = kr3-1(n+2m, m)"),
    ],
)
def test_shift_check_names(child, parent, delta, name):
    assert check_shift_identity(child, parent, delta, 4).name == name
