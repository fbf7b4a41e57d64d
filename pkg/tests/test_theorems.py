"""Verdict machinery: single-prime checks, closed forms, range reports."""

import pytest
from conftest import oracle_primes

from etaquad import (
    FALSIFIED,
    HOLDS,
    NOT_APPLICABLE,
    LambdaParams,
    TableCache,
    case_ids,
    closed_form,
    find_rep,
    gauss_doubling,
    jacobsthal,
    lambda_table,
    make_case,
    range_report,
    verify_construction,
    verify_product,
    verify_thm53,
)


def test_case_registry():
    ids = case_ids()
    assert "T3.1" in ids and "E1.6" in ids and "T4.2" in ids and "T5.3" in ids
    with pytest.raises(ValueError):
        make_case("T9.9")
    with pytest.raises(ValueError):
        make_case("T3.1", 1)  # needs both parameters
    with pytest.raises(ValueError):
        make_case("T3.1", 2, 3)  # a must be odd
    with pytest.raises(ValueError):
        make_case("E1.6", 1, 7)  # fixed-parameter case
    with pytest.raises(ValueError):
        make_case("T3.2i", 3, 9)  # not coprime
    with pytest.raises(ValueError):
        make_case("T3.2ii", 3, 8)  # 8 | b
    with pytest.raises(ValueError):
        make_case("T4.2", 1, 1)  # degenerate unit weight
    with pytest.raises(ValueError):
        make_case("T4.3", 1, 3)  # ab = 3
    with pytest.raises(ValueError):
        make_case("T4.3", 3, 5)  # a + b not 4 mod 8


def test_verify_construction_examples():
    v = verify_construction(make_case("T3.1", 1, 3), 7)
    assert v.status == HOLDS and v.index == 4 and v.lhs == v.rhs == 2
    assert v.witness == (2, 1)

    v = verify_construction(make_case("E1.6"), 11)
    assert v.status == HOLDS and v.index == 11 and v.lhs == v.rhs == -6

    v = verify_construction(make_case("C3.1"), 5)
    assert v.status == HOLDS and v.index == 2 and v.lhs == v.rhs == -6
    assert v.witness == (1, 2)

    v = verify_construction(make_case("E3.5"), 11)
    assert v.status == HOLDS and v.index == 10 and v.lhs == v.rhs == -10


def test_verify_construction_rejects_bad_primes():
    with pytest.raises(ValueError):
        verify_construction(make_case("E1.6"), 15)
    with pytest.raises(ValueError):
        verify_construction(make_case("E1.6"), 2)
    with pytest.raises(ValueError):
        verify_construction(make_case("T4.1", 1, 2), 11)  # product case


def test_not_applicable_reasons():
    v = verify_construction(make_case("E1.6"), 5)
    assert v.status == NOT_APPLICABLE and "mod 7" in v.reason

    v = verify_construction(make_case("T3.1", 1, 3), 3)
    assert v.status == NOT_APPLICABLE and v.reason == "p equals b"

    v = verify_construction(make_case("C3.1"), 7)
    assert v.status == NOT_APPLICABLE and "mod 4" in v.reason

    v = verify_construction(make_case("T3.2ii", 1, 2), 5)
    assert v.status == NOT_APPLICABLE and "mod 8" in v.reason

    v = verify_construction(make_case("T3.1", 3, 5), 3)
    assert v.status == NOT_APPLICABLE and v.reason == "p equals a"

    v = verify_construction(make_case("T3.1", 1, 5), 3)
    assert v.status == NOT_APPLICABLE and v.reason == "p divides a*b + 1"

    v = verify_construction(make_case("T3.1", 1, 3), 5)
    assert v.status == NOT_APPLICABLE and "no representation" in v.reason

    v = verify_product(make_case("T4.1", 1, 2), 7)
    assert v.status == NOT_APPLICABLE  # 7 != 3 (mod 8)

    v = verify_product(make_case("T4.3", 1, 11), 11)
    assert v.status == NOT_APPLICABLE and v.reason == "p divides a*b"


def test_every_representation_is_checked():
    # primes with several essentially different representations must agree
    # on the evaluated side; sweep a case where swaps occur (a = b = 1)
    for p in (5, 13, 17, 29, 37, 41):
        v = verify_construction(make_case("T3.1", 1, 1), p)
        assert v.status == HOLDS


def test_falsification_is_reported_not_raised():
    class WrongCache(TableCache):
        def value(self, a, b, index):
            return super().value(a, b, index) + 1

    v = verify_construction(make_case("E1.6"), 11, cache=WrongCache())
    assert v.status == FALSIFIED
    assert v.lhs == -6 and v.rhs == -5

    report = range_report("E1.6", 30, cache=WrongCache())
    assert len(report.falsified) == report.checked > 0
    assert not report.ok


def test_verify_product_examples():
    v = verify_product(make_case("T4.1", 1, 2), 11)
    assert v.status == HOLDS and v.witness == (-3, 1) and v.lhs == v.rhs == -3

    v = verify_product(make_case("T4.2", 1, 5), 7)
    assert v.status == HOLDS and v.witness == (-3, 1) and v.lhs == v.rhs == -3

    v = verify_product(make_case("T4.3", 1, 11), 5)
    assert v.status == HOLDS and v.witness == (-3, 1) and v.lhs == v.rhs == -3


def test_product_no_normalized_rep_is_skipped():
    # 31 = 7 (mod 8) but is not represented by 2x^2 + 5y^2 at all
    v = verify_product(make_case("T4.1", 2, 5), 31)
    assert v.status == NOT_APPLICABLE and "no representation" in v.reason
    # residue failure comes first
    v = verify_product(make_case("T4.1", 1, 10), 13)
    assert v.status == NOT_APPLICABLE and "mod 8" in v.reason


@pytest.mark.parametrize(
    "family,n,expected",
    [("L13", 1, -3), ("L17", 6, 0), ("KF", 1, -6), ("L35", 2, 0)],
)
def test_closed_form_examples(family, n, expected):
    assert closed_form(family, n) == expected


def test_closed_form_validation():
    with pytest.raises(ValueError):
        closed_form("L99", 1)
    with pytest.raises(ValueError):
        closed_form("L13", -1)
    with pytest.raises(ValueError):
        closed_form("LEMMA51", 1)  # needs a, b
    with pytest.raises(ValueError):
        closed_form("LEMMA51", 1, 1, 5)  # ab != 3 mod 4


def test_closed_forms_match_tables():
    t13 = lambda_table(LambdaParams(1, 3), 301)
    t17 = lambda_table(LambdaParams(1, 7), 601)
    t35 = lambda_table(LambdaParams(3, 5), 601)
    t115 = lambda_table(LambdaParams(1, 15), 1201)
    t11 = lambda_table(LambdaParams(1, 1), 301)
    for n in range(300):
        assert closed_form("L13", n) == t13.value(n + 1)
        assert closed_form("L17", n) == t17.value(2 * n + 1)
        assert closed_form("L35", n) == t35.value(2 * n + 1)
        assert closed_form("L115", n) == t115.value(4 * n + 1)
        assert closed_form("KF", n) == t11.value(n + 1)


@pytest.mark.parametrize("a,b", [(1, 3), (1, 7), (1, 11), (1, 15), (3, 5)])
def test_half_sum_identity_two_sided(a, b):
    # the identity is asserted inside closed_form; a raise here is a failure
    for n in range(0, 1001):
        closed_form("LEMMA51", n, a, b)


def test_thm53_examples():
    v = verify_thm53(19)
    assert v.status == HOLDS
    assert v.details == ((19, -22, -22), (38, 0, 0), (57, 0, 0), (95, 0, 0))

    v = verify_thm53(17)
    assert v.status == HOLDS
    assert v.details == ((17, 0, 0), (34, -14, -14), (51, 42, 42), (85, -70, -70))

    v = verify_thm53(7)
    assert v.status == HOLDS
    assert v.details == ((7, 0, 0), (14, 0, 0), (21, 0, 0), (35, 0, 0))

    with pytest.raises(ValueError):
        verify_thm53(5)
    with pytest.raises(ValueError):
        verify_thm53(9)


def test_sign_is_representation_independent():
    # recomputing each verdict from every sign variant of its witness
    # must give the same left side
    cases = [
        (make_case("T3.1", 3, 5), lambda x, y, p: (-1) ** ((4 * x + 3) % 2) * (12 * x * x - 2 * p)),
    ]
    for case, lhs in cases:
        for p in oracle_primes(300):
            if p == 2:
                continue
            v = verify_construction(case, p)
            if v.status != HOLDS:
                continue
            x, y = v.witness
            vals = {lhs(sx * x, sy * y, p) for sx in (1, -1) for sy in (1, -1)}
            assert vals == {v.lhs}


def test_consistency_chain():
    # the x found by the representation search agrees with both classical
    # constructions once normalized to x = 1 (mod 4)
    for p in oracle_primes(500):
        if p % 4 != 1:
            continue
        x, y = find_rep(1, 1, p)
        if x % 2 == 0:
            x, y = y, x
        if x % 4 != 1:
            x = -x
        assert (2 * x) % p == gauss_doubling(p)
        assert jacobsthal(p) == -2 * x


@pytest.mark.parametrize(
    "a,b",
    [(1, 3), (1, 5), (3, 5), (5, 7), (7, 9), (1, 9)],
)
def test_table_equalities_direct(a, b):
    # C3.3 without the sign identities, straight from two tables
    cache = TableCache()
    for p in oracle_primes(1000):
        if p == 2:
            continue
        v = verify_construction(make_case("C3.3", a, b), p, cache=cache)
        assert v.status in (HOLDS, NOT_APPLICABLE)
        if v.status == HOLDS:
            assert v.lhs == v.rhs


@pytest.mark.parametrize("a,b", [(1, 2), (1, 6), (3, 2), (5, 4), (7, 6), (9, 10)])
def test_table_equalities_even_direct(a, b):
    cache = TableCache()
    for p in oracle_primes(1000):
        if p == 2:
            continue
        v = verify_construction(make_case("C3.5", a, b), p, cache=cache)
        assert v.status in (HOLDS, NOT_APPLICABLE)


def test_range_report_examples():
    r = range_report("E1.6", 100)
    assert (r.checked, r.skipped, len(r.falsified)) == (9, 15, 0)
    assert r.scanned == 24  # odd primes up to 100

    r = range_report("T3.1", 200, grid=[(a, b) for a in (1, 3, 5) for b in (1, 3, 5)])
    assert len(r.falsified) == 0 and r.checked > 0

    r = range_report("E1.6", 2)
    assert (r.checked, r.skipped) == (0, 0)


def test_range_report_validation():
    with pytest.raises(ValueError):
        range_report("bogus", 100)
    with pytest.raises(ValueError):
        range_report("T3.1", 100)  # grid required
    with pytest.raises(ValueError):
        range_report("E1.6", 100, grid=[(1, 7)])  # no parameters allowed
    with pytest.raises(ValueError):
        range_report("C3.4", 100, grid=[(1, 2)])  # single-parameter case


def test_range_report_deterministic_and_grid_counts():
    grid = [(1, 3), (3, 1), (1, 5)]
    r1 = range_report("T3.1", 150, grid=grid)
    r2 = range_report("T3.1", 150, grid=list(reversed(grid)))
    assert r1 == r2
    n_primes = len([p for p in oracle_primes(150) if p > 2])
    assert r1.scanned == 3 * n_primes


def test_thm53_range_skips_tiny_primes():
    r = range_report("T5.3", 20)
    # p = 3, 5 skipped; 7, 11, 13, 17, 19 checked
    assert r.checked == 5 and r.skipped == 2 and not r.falsified


def test_table_cache_growth_and_reuse():
    cache = TableCache()
    t1 = cache.get(1, 7, 50)
    t2 = cache.get(7, 1, 30)
    assert t2 is t1  # symmetric key, no rebuild for smaller limits
    t3 = cache.get(1, 7, 200)
    assert t3.limit >= 200
    assert cache.get(1, 7, 100) is t3
