from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from treemeet.codec import (
    LabelError,
    activity_code,
    binary_rep,
    distinguishing_offset,
    manchester,
    manchester_code,
    padded_code,
    prefix_free_code,
    repeating_bit,
    width_for_bound,
)

labels = st.integers(min_value=1, max_value=4096)


def test_binary_rep_examples():
    assert binary_rep(1) == "1"
    assert binary_rep(5) == "101"
    assert binary_rep(8) == "1000"


def test_binary_rep_rejects_nonpositive():
    with pytest.raises(LabelError):
        binary_rep(0)
    with pytest.raises(LabelError):
        binary_rep(-3)


def test_activity_code_examples():
    assert activity_code(1) == "010101"
    assert activity_code(2) == "010101101010"
    assert activity_code(5) == "010101101010010101"


@given(labels)
def test_activity_code_shape(label):
    code = activity_code(label)
    assert len(code) == 6 * len(binary_rep(label))
    assert "000" not in code
    assert code.startswith("01")
    assert code[-2:].count("1") == 1


def test_activity_code_equal_lengths_iff_equal_bit_lengths():
    for a in range(1, 65):
        for b in range(1, 65):
            same = len(binary_rep(a)) == len(binary_rep(b))
            assert (len(activity_code(a)) == len(activity_code(b))) == same


def test_prefix_free_examples():
    assert prefix_free_code(1) == "1011"
    assert prefix_free_code(2) == "100111"
    assert prefix_free_code(3) == "101011"


def test_prefix_freeness_small_range():
    codes = {l: prefix_free_code(l) for l in range(1, 65)}
    for a, b in combinations(codes, 2):
        assert not codes[a].startswith(codes[b])
        assert not codes[b].startswith(codes[a])


def test_manchester_code_examples():
    assert manchester_code(1) == "10011010"
    assert manchester_code(2) == "100101101010"
    assert len(manchester_code(5)) == 24  # 4s + 4 with s = 3


@given(labels)
def test_manchester_code_is_doubled_prefix_free(label):
    assert manchester_code(label) == manchester(prefix_free_code(label))
    assert len(manchester_code(label)) == 4 * len(binary_rep(label)) + 4


def test_padded_code_examples():
    assert width_for_bound(4) == 3
    assert padded_code(1, 4) == "010110"
    assert padded_code(4, 4) == "100101"
    assert padded_code(3, 4) == "011010"


def test_padded_code_rejects_oversized_label():
    # width_for_bound(4) reserves 3 bits; 8 needs 4.
    with pytest.raises(LabelError):
        padded_code(8, 4)


@given(st.integers(min_value=1, max_value=256))
def test_padded_code_fixed_width(label):
    assert len(padded_code(label, 256)) == 2 * width_for_bound(256)


def test_padded_code_distinguishing_index_both_orders():
    bound = 64
    for a, b in combinations(range(1, bound + 1), 2):
        for l1, l2 in ((a, b), (b, a)):
            c1, c2 = padded_code(l1, bound), padded_code(l2, bound)
            assert any(
                x == "1" and y == "0" for x, y in zip(c1, c2)
            ), (l1, l2)


def test_repeating_bit_examples():
    assert repeating_bit(1, 1) == 1
    assert repeating_bit(1, 8) == 0
    assert repeating_bit(1, 9) == 1  # wraps to the first bit of the next copy


def test_repeating_bit_rejects_bad_index():
    with pytest.raises(LabelError):
        repeating_bit(1, 0)


@given(st.integers(1, 64), st.integers(1, 200))
def test_repeating_bit_matches_materialized_prefix(label, j):
    code = manchester_code(label)
    prefix = code * (j // len(code) + 1)
    assert repeating_bit(label, j) == int(prefix[j - 1])


def _offset_oracle(l1, l2, j):
    # Independent scan over explicitly materialized repetitions.
    c1, c2 = manchester_code(l1), manchester_code(l2)
    reps = (j + len(c1) * len(c2)) // min(len(c1), len(c2)) + 2
    s1, s2 = c1 * reps, c2 * reps
    y = 0
    while not (s1[j - 1 + y] == "1" and s2[j - 1 + y] == "0"):
        y += 1
    return y


def test_distinguishing_offset_examples():
    assert distinguishing_offset(1, 2, 4) == _offset_oracle(1, 2, 4)
    assert distinguishing_offset(1, 2, 4) <= 4  # 4 * log2(2)
    # symmetric roles also terminate
    assert distinguishing_offset(2, 1, 4) == _offset_oracle(2, 1, 4)


@given(st.integers(1, 64), st.integers(1, 64), st.integers(4, 100))
@settings(max_examples=200)
def test_distinguishing_offset_matches_oracle(l1, l2, j):
    if l1 == l2:
        with pytest.raises(LabelError):
            distinguishing_offset(l1, l2, j)
    else:
        assert distinguishing_offset(l1, l2, j) == _offset_oracle(l1, l2, j)
