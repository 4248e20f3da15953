"""One-hot encode/decode and the rendered conversion table."""

import pytest

from isoquant.encoding import (
    OneHotViolationError,
    OneHotWord,
    binary_label,
    conversion_table,
    one_hot_decode,
    one_hot_encode,
)

# every (binary, one-hot) pair of the width-8 scheme
WIDTH8_TABLE = [
    ("000", "00000000"),
    ("001", "00000001"),
    ("010", "00000010"),
    ("011", "00000100"),
    ("100", "00001000"),
    ("101", "00010000"),
    ("110", "00100000"),
    ("111", "01000000"),
    ("1000", "10000000"),
]


def test_width8_table_reproduced_exactly():
    assert conversion_table(8) == WIDTH8_TABLE


def test_level3_width8():
    assert str(one_hot_encode(3, 8)) == "00000100"


def test_level0_is_all_zeros():
    assert str(one_hot_encode(0, 8)) == "00000000"


def test_top_level_is_msb():
    assert str(one_hot_encode(8, 8)) == "10000000"


def test_level_out_of_range_rejected():
    with pytest.raises(ValueError):
        one_hot_encode(9, 8)
    with pytest.raises(ValueError):
        one_hot_encode(-1, 8)


def test_decode_examples():
    assert one_hot_decode(OneHotWord(0b00000100, 8)) == 3
    assert one_hot_decode(OneHotWord(0, 8)) == 0


def test_decoding_two_set_bits_is_a_violation():
    malformed = OneHotWord(0b00000011, 8)
    assert not malformed.is_one_hot
    with pytest.raises(OneHotViolationError):
        one_hot_decode(malformed)


@pytest.mark.parametrize("width", [1, 3, 8, 16])
def test_round_trip_all_levels(width):
    for level in range(width + 1):
        assert one_hot_decode(one_hot_encode(level, width)) == level


@pytest.mark.parametrize("width", [1, 3, 8, 16])
def test_encode_map_produces_distinct_words(width):
    words = {one_hot_encode(level, width).bits for level in range(width + 1)}
    assert len(words) == width + 1


@pytest.mark.parametrize("width", [1, 3, 8, 16])
def test_population_count_at_most_one(width):
    for level in range(width + 1):
        assert one_hot_encode(level, width).bits.bit_count() <= 1


def test_word_renders_msb_first():
    word = one_hot_encode(1, 8)
    assert str(word) == "00000001"
    assert len(str(word)) == 8


def test_binary_label_width_one():
    assert binary_label(0, 1) == "0"
    assert binary_label(1, 1) == "1"


def test_word_bits_must_fit_width():
    with pytest.raises(ValueError):
        OneHotWord(1 << 8, 8)
