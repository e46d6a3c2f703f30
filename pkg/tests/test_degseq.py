import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from degsym.degseq import (
    BadConstants,
    DegreeSequenceError,
    NotGraphical,
    OddSum,
    ZeroDegree,
    diagnostics,
    falling_factorial,
    format_degree_text,
    is_graphical,
    parse_degree_text,
    statistics,
    validate,
)
from degsym.oracle import enumerate_realizations


class TestValidate:
    def test_triangle_sequence_valid(self):
        d = validate([2, 2, 2])
        assert d.degrees == (2, 2, 2)

    def test_odd_sum_rejected(self):
        with pytest.raises(OddSum):
            validate([3, 1, 1])

    def test_non_graphical_rejected(self):
        # no simple graph on 4 vertices has degrees (3,3,1,1): brute-force
        # enumeration over all 2^6 edge subsets finds none
        with pytest.raises(NotGraphical):
            validate([3, 3, 1, 1])

    def test_zero_degree_rejected(self):
        with pytest.raises(ZeroDegree):
            validate([0, 2, 2])

    def test_empty_rejected(self):
        with pytest.raises(DegreeSequenceError):
            validate([])

    def test_matches_enumeration_support(self):
        # accept iff at least one realization exists, for all positive
        # sequences with total degree <= 12
        from itertools import combinations_with_replacement

        for n in range(2, 6):
            for degs in combinations_with_replacement(range(1, 5), n):
                if sum(degs) % 2 or sum(degs) > 12:
                    continue
                try:
                    d = validate(degs)
                    ok = True
                except NotGraphical:
                    ok = False
                if ok:
                    assert enumerate_realizations(d).count >= 1
                else:
                    assert not is_graphical(degs)


class TestStatistics:
    def test_small_sequence(self):
        s = statistics(validate([1, 1, 2]))
        assert s["n1"] == 2
        assert s["m1"] == 4
        assert s["m2"] == 2
        assert s["max_degree"] == 2

    def test_regular(self):
        s = statistics(validate([3, 3, 3, 3]))
        assert s["n1"] == 0
        assert (s["m1"], s["m2"], s["m3"], s["m4"]) == (12, 24, 24, 0)

    def test_star_tail(self):
        s = statistics(validate([1, 1, 1, 1, 4]))
        assert (s["m2"], s["m3"], s["m4"]) == (12, 24, 24)

    def test_avg_degree_is_exact_rational(self):
        assert validate([1, 1, 2]).avg_degree == Fraction(4, 3)


@st.composite
def graphical_sequences(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    degs = draw(
        st.lists(
            st.integers(min_value=1, max_value=n - 1), min_size=n, max_size=n
        )
    )
    if sum(degs) % 2:
        # bump the smallest entry to restore parity without exceeding n-1
        i = degs.index(min(degs))
        if degs[i] >= n - 1:
            degs[i] -= 1
            if degs[i] == 0:
                degs[i] = 2 if n > 2 else 1
        else:
            degs[i] += 1
    if sum(degs) % 2 or not is_graphical(degs):
        return None
    return degs


@given(graphical_sequences())
def test_moment_identities(degs):
    if degs is None:
        return
    d = validate(degs)
    from collections import Counter

    counts = Counter(degs)
    assert sum(j * c for j, c in counts.items()) == d.m1
    assert sum(counts.values()) == d.n
    for lo, hi in ((d.m2, d.m1), (d.m3, d.m2), (d.m4, d.m3)):
        assert lo <= d.max_degree * hi


@given(st.integers(min_value=0, max_value=50), st.integers(min_value=0, max_value=5))
def test_falling_factorial_matches_math(x, i):
    expected = math.perm(x, i) if x >= i else falling_factorial(x, i)
    if x >= i:
        assert falling_factorial(x, i) == expected


class TestDiagnostics:
    def test_alpha_values_at_r10(self):
        diag = diagnostics(validate([1, 1, 2, 2, 3, 3]), 10.0, 10.0, 0.5)
        assert diag.alpha_2 == pytest.approx(1 / 14)
        assert diag.alpha_1 == pytest.approx((13 / 14) / 14)

    def test_regular_sequence_zero_ratios(self):
        diag = diagnostics(validate([3] * 10), 10.0, 10.0, 0.5)
        assert diag.r_bounded_1 == 0.0
        assert diag.r_bounded_2 == 0.0

    def test_all_ones_degenerate_m2(self):
        diag = diagnostics(validate([1] * 100), 10.0, 10.0, 0.5)
        assert diag.r_super_1 == 0.0
        assert "DegenerateM2" in diag.flags

    def test_bad_constants(self):
        # 1/6 - 1/(2*r1) - 1/r2 <= 0 at r1=r2=3
        with pytest.raises(BadConstants):
            diagnostics(validate([2, 2, 2]), 3.0, 3.0, 0.5)

    def test_ratios_positive_and_finite(self):
        diag = diagnostics(validate([1, 1, 2, 2, 3, 3]), 10.0, 10.0, 0.5)
        for r in (diag.r_bounded_1, diag.r_bounded_2, diag.r_super_1, diag.r_super_2):
            assert 0 < r < math.inf


class TestTextFormat:
    def test_parse_plain(self):
        assert parse_degree_text("1\n2\n3\n") == [1, 2, 3]

    def test_parse_compact(self):
        assert parse_degree_text("200 x 1\n2 x 5\n") == [1] * 200 + [5, 5]

    def test_parse_mixed_and_comments(self):
        assert parse_degree_text("3 x 2  # filler\n7\n") == [2, 2, 2, 7]

    def test_bad_line(self):
        with pytest.raises(DegreeSequenceError):
            parse_degree_text("2\nnope\n")

    @given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=40))
    def test_round_trip(self, degs):
        assert parse_degree_text(format_degree_text(degs)) == degs
