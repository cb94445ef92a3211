import pytest

from qunimodal import (
    EXCEPTION_PAIRS,
    PairClass,
    check_strict,
    classify,
    gaussian,
    scan,
)

NINE = sorted(
    [(5, 6), (5, 10), (5, 14), (6, 6), (6, 7), (6, 9), (6, 11), (6, 13), (7, 10)]
)


def test_exception_constant_matches_frozen_list():
    assert sorted(EXCEPTION_PAIRS) == NINE


def test_strict_small_case():
    rep = check_strict(2, 2)
    assert rep.strict
    assert rep.plateaus == ()
    assert rep.first_violation is None


def test_five_six_report():
    rep = check_strict(5, 6)
    assert not rep.strict
    assert rep.n == 30
    assert rep.plateaus == ((14, 16),)
    assert rep.first_violation == 15


def test_six_six_report():
    # the one exceptional pair whose equalities flank a strictly larger centre
    rep = check_strict(6, 6)
    assert not rep.strict
    assert rep.plateaus == ((16, 17), (19, 20))
    assert rep.first_violation == 17
    coeffs = gaussian(6, 6).coeffs
    assert coeffs[16] == coeffs[17] == 55
    assert coeffs[18] == 58
    assert coeffs[19] == coeffs[20] == 55


def test_other_exceptions_fail_at_middle_three():
    for ell, m in NINE:
        if (ell, m) == (6, 6):
            continue
        rep = check_strict(ell, m)
        half = rep.n // 2
        assert not rep.strict
        assert rep.plateaus == ((half - 1, half + 1),)
        assert rep.first_violation == half


def test_odd_degree_middle_equality_is_required_not_flagged():
    # for odd n the equality p_{(n-1)/2} = p_{(n+1)/2} is forced by symmetry
    rep = check_strict(5, 5)
    assert rep.n == 25
    assert rep.strict
    assert rep.plateaus == ((12, 13),)
    assert rep.first_violation is None


def test_report_matches_raw_coefficients():
    for ell, m in [(3, 7), (4, 4), (6, 8), (2, 9)]:
        rep = check_strict(ell, m)
        coeffs = gaussian(ell, m).coeffs
        n = ell * m
        rising = all(coeffs[k - 1] < coeffs[k] for k in range(2, n // 2 + 1))
        falling = all(coeffs[k - 1] > coeffs[k] for k in range(n // 2 + 1 + (n % 2), n))
        middle = n % 2 == 0 or coeffs[n // 2] == coeffs[n // 2 + 1]
        assert rep.strict == (rising and falling and middle)


def test_plateaus_are_real_equal_runs():
    for ell, m in [(3, 5), (4, 7), (6, 6)]:
        rep = check_strict(ell, m)
        coeffs = gaussian(ell, m).coeffs
        for a, b in rep.plateaus:
            assert b > a
            assert len({coeffs[k] for k in range(a, b + 1)}) == 1
            # maximal: neighbours outside the run differ
            if a > 1:
                assert coeffs[a - 1] != coeffs[a]
            if b < ell * m - 1:
                assert coeffs[b + 1] != coeffs[b]


def test_min_one_is_vacuously_strict_for_tiny_boxes():
    # ell = 1 gives the all-ones vector; the chain between index 1 and
    # n-1 is empty for n <= 3, so the predicate holds vacuously
    assert check_strict(1, 2).strict
    assert check_strict(1, 3).strict
    assert not check_strict(1, 4).strict


def test_classify_small_families():
    assert classify(1, 17) is PairClass.Trivial
    assert classify(17, 1) is PairClass.Trivial
    assert classify(2, 2) is PairClass.StrictSmall
    assert classify(2, 11) is PairClass.EllTwo
    assert classify(11, 2) is PairClass.EllTwo
    assert classify(3, 19) is PairClass.EllThreeFour
    assert classify(4, 4) is PairClass.EllThreeFour


def test_classify_exceptions_and_strict():
    for ell, m in NINE:
        assert classify(ell, m) is PairClass.Exception
        assert classify(m, ell) is PairClass.Exception
    for ell, m in [(5, 5), (5, 7), (8, 8), (7, 20), (25, 25)]:
        assert classify(ell, m) is PairClass.Strict


def test_classify_large_pair_via_certificate():
    # beyond the direct-computation bound the answer comes from a
    # verified certificate; it must agree with the direct computation
    assert classify(61, 61) is PairClass.Strict
    assert check_strict(61, 61).strict


def test_classify_rejects_nonpositive():
    with pytest.raises(ValueError):
        classify(0, 5)
    with pytest.raises(ValueError):
        check_strict(3, 0)


def test_ell_two_even_odd_pairing():
    for m in range(2, 21):
        poly = gaussian(2, m)
        n = 2 * m
        for i in range(n // 4 + 1):
            if 4 * i >= n:
                break
            assert poly.coefficient(2 * i) == poly.coefficient(2 * i + 1)


def test_scan_normalises_and_sorts():
    rows = scan(range(5, 8), range(5, 8))
    pairs = [(l, m) for l, m, _ in rows]
    assert pairs == sorted(set(pairs))
    assert all(l <= m for l, m in pairs)
    as_map = dict(((l, m), cls) for l, m, cls in rows)
    assert as_map[(5, 6)] is PairClass.Exception
    assert as_map[(5, 7)] is PairClass.Strict


def test_scan_rejects_empty_range():
    with pytest.raises(ValueError):
        scan(range(5, 5), range(1, 3))
