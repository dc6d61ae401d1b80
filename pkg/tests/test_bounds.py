import itertools
import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_bounds import bounds as B
from ramsey_bounds.bigcomb import e0_scaled
from ramsey_bounds.errors import (
    EmptyInput,
    EntryBelowThree,
    EntryBelowTwo,
    FewerThanTwoEntries,
    KTooSmall,
    RTooSmall,
    SignatureTooShort,
)


def signatures(min_len, max_len, lo=3, hi=6):
    for length in range(min_len, max_len + 1):
        for ks in itertools.combinations_with_replacement(range(hi, lo - 1, -1), length):
            yield B.canonicalize(ks)


GRID = list(signatures(2, 5))


# -- canonicalization --------------------------------------------------------

def test_canonicalize_examples():
    assert B.canonicalize([4, 2, 4, 4, 2]).targets == (4, 4, 4)
    s = B.canonicalize([2, 2])
    assert s.targets == () and s.originally_all_twos
    assert B.canonicalize([3, 5, 4]).targets == (5, 4, 3)
    assert not B.canonicalize([3, 2]).originally_all_twos


def test_canonicalize_errors():
    with pytest.raises(EmptyInput):
        B.canonicalize([])
    with pytest.raises(EntryBelowTwo):
        B.canonicalize([3, 1])


# -- M, w, php ---------------------------------------------------------------

def test_M_examples():
    assert B.M([4, 4, 4]) == 288
    assert B.M([5, 5, 5, 5]) == 1182720
    assert B.M([3, 3, 3]) == 3 * math.comb(4, 2) == 18


def test_w_examples():
    assert B.w([4, 4, 4]) == 16
    assert B.w([4, 4, 4, 4]) == 554
    for k1, k2 in itertools.product(range(2, 9), repeat=2):
        assert B.w([k1, k2]) == 0


def test_degenerate_signatures():
    assert B.M_and_w([2, 2, 2]) == (2, 0)
    assert B.php_bound([2]) == 2
    assert B.M_and_w([7]) == (7, 0)
    assert B.php_bound([7, 2, 2]) == 7
    assert B.M([5, 2]) == math.comb(5, 1)


def test_php_examples():
    assert B.php_bound([4, 4, 4]) == 272
    assert B.php_bound([3, 3]) == 6
    assert B.php_bound([3, 3, 3]) == e0_scaled(3) + 1 == 17


def test_example_expansion_by_hand():
    # 18 R(3,3) + 12 R(4,3) + 3 R(4,4) - 16 with the two-color binomials
    assert 18 * 6 + 12 * 10 + 3 * 20 - 16 == B.php_bound([4, 4, 4])


def test_two_color_is_binomial():
    for k1, k2 in itertools.product(range(2, 10), repeat=2):
        assert B.M([k1, k2]) == B.php_bound([k1, k2]) == math.comb(k1 + k2 - 2, k1 - 1)


@pytest.mark.parametrize("sig", GRID, ids=str)
def test_formula_equivalence(sig):
    assert B.M_formula(sig) == B.M(sig)


def test_M_formula_examples_and_errors():
    assert B.M_formula([4, 4, 4]) == 288
    assert B.M_formula([6, 6, 6]) == 115500
    assert B.M_formula([5, 4, 3]) == B.M([5, 4, 3])
    with pytest.raises(SignatureTooShort):
        B.M_formula([5])
    with pytest.raises(EntryBelowThree):
        B.M_formula([5, 2])


def test_decomposition_on_grid_and_with_twos():
    for sig in GRID:
        assert B.M(sig) - B.w(sig) == B.php_bound(sig)
    for ks in itertools.product(range(2, 6), repeat=4):
        assert B.M(ks) - B.w(ks) == B.php_bound(ks)


# -- closed forms ------------------------------------------------------------

def test_M_upper_examples():
    assert B.M_upper([4, 4, 4]) == 300
    assert B.M_upper([5, 5, 5, 5]) == 1293600
    assert B.M_upper([4, 4]) == math.comb(6, 3) == B.M([4, 4])
    assert isinstance(B.M_upper([5, 4, 3]), Fraction)


def test_M_upper_diagonal_coefficient():
    for r, k in itertools.product(range(2, 6), range(3, 7)):
        expected = (4 - Fraction(2, k - 1)) * Fraction(
            math.factorial(r * (k - 2)), math.factorial(k - 2) ** r
        )
        assert B.M_upper(B.diag(r, k)) == expected


def test_M_lower_examples():
    assert B.M_lower([4, 4, 4]) == 270
    assert B.M_lower([3, 3, 3]) == 18 == B.M([3, 3, 3])
    assert B.M_lower([3, 3]) == 6 == B.M([3, 3])


def test_sandwich_on_grid():
    for sig in GRID:
        assert B.M_lower(sig) <= B.M(sig) <= B.M_upper(sig)


def test_w3_exact():
    assert B.w3_exact(2) == 0
    assert B.w3_exact(3) == 18 - 16 - 1 == B.w([3, 3, 3])
    assert B.w3_exact(4) == 72 - 65 - 1 == B.w([3, 3, 3, 3])
    for r in range(2, 9):
        assert B.w(B.diag(r, 3)) == B.w3_exact(r) == 3 * math.factorial(r) - e0_scaled(r) - 1
    with pytest.raises(RTooSmall):
        B.w3_exact(1)


def waste_lower_oracle(r, k):
    """Waste lower bound written directly with rationals: e_r as a Fraction,
    the geometric factor as a quotient, multinomials from factorials."""
    fact = math.factorial
    e_r = sum(Fraction(1, fact(n)) for n in range(r + 1))

    def w3(m):
        return (3 - sum(Fraction(1, fact(n)) for n in range(m + 1))) * fact(m) - 1

    if k == 3:
        return w3(r)
    rf = fact(r)
    total = (r - 2) * rf * ((e_r - 1) * Fraction(rf ** (k - 3) - 1, rf - 1) - rf ** (k - 4))
    for j in range(r - 2):
        top = fact(r * (k - 3) + j - 1)
        bottom = fact(k - 2) ** j * fact(k - 3) ** (r - j - 1) * fact(k - 4)
        total += math.comb(r, j) * Fraction(top, bottom) * (r - j) * (r - j - 2 + w3(r - j))
    assert total.denominator == 1
    return total.numerator


def test_waste_lower_hand_values():
    # (3,4): 1*(10 - 6) + 1*2*3*(1 + 1) = 16
    assert B.w_lower_diag(3, 4) == 16
    # (4,4): 2*(41 - 24) + 6*4*(2 + 6) + 4*12*3*(1 + 1) = 514
    assert B.w_lower_diag(4, 4) == 514
    assert B.w_lower_diag(5, 4) == 24978
    assert B.w_lower_diag(3, 5) == 214


@pytest.mark.parametrize("r,k", list(itertools.product(range(2, 7), range(3, 8))))
def test_waste_lower_matches_rational_oracle(r, k):
    assert B.w_lower_diag(r, k) == waste_lower_oracle(r, k)


def test_waste_lower_frozen_values():
    # values of the printed formula; the comparison table lists 60694 and 4644
    assert B.w_lower_diag(4, 5) == 61378
    assert B.w_lower_diag(3, 6) == 3574


def test_waste_lower_bound_holds():
    for r, k in itertools.product(range(2, 6), range(3, 7)):
        assert B.w_lower_diag(r, k) <= B.w(B.diag(r, k))
    assert B.w_lower_diag(3, 4) == B.w(B.diag(3, 4))
    for r in range(2, 9):
        assert B.w_lower_diag(r, 3) == B.w(B.diag(r, 3))
    with pytest.raises(KTooSmall):
        B.w_lower_diag(3, 2)
    with pytest.raises(RTooSmall):
        B.w_lower_diag(1, 4)


def test_classical_bound():
    assert B.classical_bound([4, 4, 4]) == 1680
    assert B.classical_bound([6, 6, 6]) == 756756
    for k in range(2, 9):
        assert B.classical_bound([k, 2]) == math.comb(k, k - 1) == k
    with pytest.raises(EntryBelowTwo):
        B.classical_bound([1, 4])


def test_teravainen_bound():
    assert B.teravainen_bound([4, 4, 4]) == 560
    assert B.teravainen_bound([5, 5, 5, 5]) == 4204200
    for k1, k2 in itertools.product(range(2, 8), repeat=2):
        assert B.teravainen_bound([k1, k2]) == math.comb(k1 + k2 - 2, k1 - 1)
    with pytest.raises(FewerThanTwoEntries):
        B.teravainen_bound([4])


def test_grid_ordering_on_table_rows():
    for r, k in [(3, 4), (4, 4), (5, 4), (3, 5), (4, 5), (3, 6)]:
        ks = [k] * r
        assert B.php_bound(ks) <= B.teravainen_bound(ks) <= B.classical_bound(ks)


# -- asymptotics -------------------------------------------------------------

def test_asympt_ratio_examples():
    for r in range(2, 8):
        assert B.asympt_ratio(r, 3) == 3
    assert B.asympt_ratio(3, 4) == Fraction(288, 90) == Fraction(16, 5)
    assert B.asympt_ratio(5, 4) == Fraction(352800, 113400)


def test_ratio_bracket():
    for r, k in itertools.product(range(3, 7), range(3, 7)):
        assert 3 <= B.asympt_ratio(r, k) <= B.ratio_bracket(r)
    assert B.ratio_bracket(3) == Fraction(13, 2)


def test_asympt_constants():
    c = B.asympt_constants(4)
    assert str(c.main) == "2.859140914230"
    assert str(c.waste) == "0.140859085770"
    assert str(c.improved) == "2.775807580896"
    c0 = B.asympt_constants(0)
    assert c0.improved == c0.main
    assert B.asympt_constants(17).waste == c.waste


def test_asympt_constants_against_float():
    c = B.asympt_constants(4)
    assert abs(float(c.main) - (3 + math.e) / 2) < 1e-12
    assert abs(float(c.improved) - ((3 + math.e) / 2 - 4 / 48)) < 1e-12


# -- structural properties ---------------------------------------------------

def f_direct(x, y):
    return (x + y) * (x + y - 1) / (x * y)


def test_lemma_monotonicity_rule():
    quarter = [Fraction(n, 4) for n in range(5, 41)]
    for x, y in itertools.product(quarter, repeat=2):
        assert B.lemma_f(x, y) == f_direct(x, y)
        assert (B.lemma_f(x - 1, y) <= B.lemma_f(x, y)) == (x >= y)


def test_lemma_identity():
    from ramsey_bounds.bigcomb import multinomial

    for n1, n2 in itertools.product(range(2, 7), repeat=2):
        for rest in itertools.product(range(3), repeat=2):
            a = multinomial([n1 - 2, n2 - 1, *rest])
            b = multinomial([n1 - 1, n2 - 2, *rest])
            lhs = B.lemma_f(n1 - 1, n2) * a + B.lemma_f(n1, n2 - 1) * b
            assert lhs == B.lemma_f(n1, n2) * (a + b)


@settings(max_examples=200)
@given(
    st.lists(st.integers(2, 6), min_size=1, max_size=4),
    st.integers(0, 3),
    st.randoms(),
)
def test_canonical_invariance(ks, twos, rnd):
    mixed = list(ks) + [2] * twos
    rnd.shuffle(mixed)
    assert B.M(mixed) == B.M(ks)
    assert B.w(mixed) == B.w(ks)
    assert B.php_bound(mixed) == B.php_bound(ks)


def test_monotonicity():
    for sig in signatures(1, 4, lo=3, hi=6):
        ks = list(sig.targets)
        for i in range(len(ks)):
            bigger = ks[:i] + [ks[i] + 1] + ks[i + 1:]
            assert B.M(bigger) >= B.M(ks)
            assert B.php_bound(bigger) >= B.php_bound(ks)


def test_memo_entries_consistent():
    B.M(B.diag(5, 5))
    for key, (m, waste) in list(B._MW_MEMO.items()):
        assert m >= waste


def test_deep_signature_has_no_recursion_limit():
    # about 300 levels of decrements, past what call-stack recursion would take lightly
    sig = [160, 150]
    assert B.M(sig) == math.comb(308, 159)
    assert B.php_bound([60, 60, 60]) == B.M([60, 60, 60]) - B.w([60, 60, 60])


def test_concurrent_fill_is_deterministic():
    B.clear_caches()
    sigs = [B.diag(r, k) for r in range(3, 6) for k in range(3, 7)]
    results = {}

    def worker(tid):
        results[tid] = [(B.M(s), B.w(s), B.php_bound(s)) for s in sigs]

    threads = [threading.Thread(target=worker, args=(t,)) for t in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    first = results[0]
    assert all(r == first for r in results.values())
    assert all(m - w == p for m, w, p in first)


def test_bound_report_columns():
    rep = B.bound_report([4, 4, 4])
    assert (rep.M_upper, rep.M, rep.w_lower, rep.w, rep.T, rep.C, rep.php) == (
        300, 288, 16, 16, 560, 1680, 272)
    rep = B.bound_report([5, 4, 3])
    assert rep.w_lower is None and rep.k == (5, 4, 3)
    assert rep.M_formula == rep.M
