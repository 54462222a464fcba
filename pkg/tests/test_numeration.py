import itertools

import pytest
from hypothesis import given, strategies as st

from fibwang.numeration import (
    NumerationError,
    ZWord2,
    canonical_words,
    decompose_z,
    decompose_z2,
    fib,
    h_decode,
    h_recode,
    h_recode2,
    h_recode_word,
    is_canonical,
    level_interval,
    level_of,
    level_of2,
    pad,
    rep_f,
    rep_f2,
    val_f,
    val_f2,
    zeckendorf_rep,
)


def brute_val(w):
    digits = [int(c) for c in reversed(w)]
    body = sum(d * fib(i) for i, d in enumerate(digits[:-1], start=1))
    return body - digits[-1] * fib(len(w) - 1)


@pytest.mark.parametrize("i, expected", [(0, 1), (1, 1), (2, 2), (9, 55), (16, 1597)])
def test_fib(i, expected):
    assert fib(i) == expected


def test_fib_negative_index():
    with pytest.raises(NumerationError):
        fib(-1)


def test_fib_is_exact_for_large_indices():
    assert fib(200) == fib(199) + fib(198)


@pytest.mark.parametrize("n, expected", [(0, ""), (1, "1"), (7, "1010"), (12, "10101")])
def test_zeckendorf(n, expected):
    assert zeckendorf_rep(n) == expected


def test_zeckendorf_matches_greedy_oracle():
    for n in range(1, 500):
        w = zeckendorf_rep(n)
        assert "11" not in w and w[0] == "1"
        assert sum(fib(i) for i, d in enumerate(reversed(w), start=1) if d == "1") == n


@pytest.mark.parametrize("w, n", [("0", 0), ("1", -1), ("0101001", 19), ("1000100", -10), ("110", 0)])
def test_val_examples(w, n):
    assert val_f(w) == n


@pytest.mark.parametrize("w", ["", "01", "0a1", "1111"])
def test_val_rejects_bad_words(w):
    with pytest.raises(NumerationError):
        val_f(w)


@pytest.mark.parametrize("n, w", [(7, "01010"), (-13, "1000000"), (0, "0"), (-1, "1"), (-2, "100")])
def test_rep_examples(n, w):
    assert rep_f(n) == w


@given(st.integers(min_value=-10**6, max_value=10**6))
def test_round_trip(n):
    w = rep_f(n)
    assert is_canonical(w)
    assert val_f(w) == n
    assert brute_val(w) == n


def test_sign_is_leading_digit():
    for n in range(-300, 300):
        assert rep_f(n)[0] == ("1" if n < 0 else "0")


def test_canonical_words_cover_a_level_exactly_once():
    k = 6
    words = [w for w in canonical_words(2 * k + 1)]
    values = [val_f(w) for w in words]
    assert len(values) == len(set(values))
    interval = level_interval(k)
    assert sorted(values) == list(range(interval.lo, interval.hi))
    assert all(rep_f(val_f(w)) == w for w in words)


@pytest.mark.parametrize("w, ok", [("01010", True), ("000", False), ("011", False), ("101", False),
                                   ("1", True), ("0", True), ("0100", False)])
def test_is_canonical(w, ok):
    assert is_canonical(w) is ok


@pytest.mark.parametrize("w, t, expected", [("100", 7, "1010100"), ("010", 7, "0000010"), ("01010", 5, "01010")])
def test_pad(w, t, expected):
    assert pad(w, t) == expected


def test_pad_preserves_value():
    for n in range(-100, 100):
        w = rep_f(n)
        for t in range(len(w), len(w) + 7, 2):
            assert val_f(pad(w, t)) == n


@pytest.mark.parametrize("w, t", [("100", 4), ("100", 1), ("01", 5)])
def test_pad_rejects_bad_length(w, t):
    with pytest.raises(NumerationError):
        pad(w, t)


@pytest.mark.parametrize("n, rows", [
    ((-2, 9), ("1010100", "0010001")),
    ((14, 2), ("0100001", "0000010")),
    ((0, 0), ("0", "0")),
    ((-1, 6), ("10101", "01001")),
])
def test_rep_f2_examples(n, rows):
    w = rep_f2(n)
    assert (w.top, w.bottom) == rows
    assert val_f2(w) == n


def test_val_f2_accepts_plain_pairs_and_parses():
    assert val_f2(("10101", "01001")) == (-1, 6)
    assert ZWord2.parse("10101/01001") == ZWord2("10101", "01001")
    assert str(ZWord2("0", "1")) == "0/1"


def test_zword2_columns_round_trip():
    w = rep_f2((-2, 9))
    assert ZWord2.from_columns(w.columns()) == w
    assert w.columns()[0] == (1, 0)


def test_rep_f2_round_trip_on_a_box():
    for n in itertools.product(range(-40, 60), range(-25, 30)):
        w = rep_f2(n)
        assert len(w.top) == len(w.bottom)
        assert val_f2(w) == n


def test_val_f2_rejects_uneven_rows():
    with pytest.raises(NumerationError):
        val_f2(("010", "0"))


def test_level_interval_bounds():
    assert len(level_interval(-1)) == 0
    assert (level_interval(0).lo, level_interval(0).hi) == (-1, 1)
    assert (level_interval(3).lo, level_interval(3).hi) == (-13, 21)
    assert 20 in level_interval(3) and 21 not in level_interval(3)


def test_levels_partition_the_integers():
    for k in range(0, 9):
        inner, outer = level_interval(k - 1), level_interval(k)
        for n in range(outer.lo, outer.hi):
            if n not in inner:
                assert level_of(n) == k
                assert len(rep_f(n)) == 2 * k + 1
        assert len(outer) == fib(2 * k) + fib(2 * k + 1)


@pytest.mark.parametrize("n, k", [(-1, 0), (0, 0), (-13, 3), (21, 4)])
def test_level_of(n, k):
    assert level_of(n) == k


def test_level_of2():
    assert level_of2((-1, 6)) == 2
    assert level_of2((0, 0)) == 0


def test_h_recoding():
    assert [h_recode(d) for d in range(3)] == ["00", "01", "10"]
    assert h_recode_word([2, 0, 1]) == "100001"
    assert h_recode2((2, 0)).columns() == [(1, 0), (0, 0)]
    assert [h_decode(h_recode(d)) for d in range(3)] == [0, 1, 2]
    with pytest.raises(NumerationError):
        h_recode(3)
    with pytest.raises(NumerationError):
        h_decode("11")


@pytest.mark.parametrize("n, expected", [(-2, (-1, 0)), (7, (2, 2)), (19, (7, 1))])
def test_decompose_z_examples(n, expected):
    assert decompose_z(n) == expected


def test_decompose_z_rejects_level_zero():
    for n in (-1, 0):
        with pytest.raises(NumerationError):
            decompose_z(n)


def test_decompose_z_consistency():
    for n in range(-fib(16), fib(17)):
        if n in (-1, 0):
            continue
        m, ell = decompose_z(n)
        w = rep_f(n)
        assert pad(rep_f(m), len(w) - 2) + h_recode(ell) == w
        assert level_of(m) < level_of(n)


@pytest.mark.parametrize("n, expected", [
    ((-1, 6), ((-1, 2), (1, 1))),
    ((0, -2), ((0, -1), (0, 0))),
    ((-2, 9), ((-1, 3), (0, 1))),
])
def test_decompose_z2_examples(n, expected):
    assert decompose_z2(n) == expected


def test_decompose_z2_matches_rowwise_oracle():
    for n in itertools.product(range(-30, 40), repeat=2):
        if n in {(0, 0), (-1, 0), (0, -1), (-1, -1)}:
            continue
        (m1, m2), (l1, l2) = decompose_z2(n)
        w = rep_f2(n)
        assert val_f(w.top[:-2]) == m1 and val_f(w.bottom[:-2]) == m2
        assert h_recode(l1) == w.top[-2:] and h_recode(l2) == w.bottom[-2:]
