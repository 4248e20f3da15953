"""One-hot encode/decode between a quantization level and an N-bit word.

Level 0 is deliberately the all-zeros word, so an N-bit word distinguishes
N + 1 levels. Bit 0 (least significant) belongs to the lowest channel.
Words render MSB-first as ASCII bit strings.
"""

from __future__ import annotations

from dataclasses import dataclass


class OneHotViolationError(ValueError):
    """A word (or a ladder state) has more than one active bit/channel."""


@dataclass(frozen=True)
class OneHotWord:
    """A fixed-width bit word, nominally with at most one bit set.

    Construction only checks that the bits fit the width: a word read off
    the wire during a channel overlap can carry two set bits, and it is
    :func:`one_hot_decode` that rejects it.
    """

    bits: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be at least 1")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits 0x{self.bits:x} do not fit in {self.width} bits")

    @property
    def is_one_hot(self) -> bool:
        return self.bits.bit_count() <= 1

    def __str__(self) -> str:
        return format(self.bits, f"0{self.width}b")


def one_hot_encode(level: int, width: int) -> OneHotWord:
    """Encode a level in 0..width as a one-hot word; level 0 is all zeros."""
    if width < 1:
        raise ValueError("width must be at least 1")
    if not 0 <= level <= width:
        raise ValueError(f"level {level} out of range 0..{width}")
    return OneHotWord(0 if level == 0 else 1 << (level - 1), width)


def one_hot_decode(word: OneHotWord) -> int:
    """Recover the level from a one-hot word.

    Raises OneHotViolationError when more than one bit is set, which is what
    a momentary channel overlap would look like on the wire.
    """
    if not word.is_one_hot:
        raise OneHotViolationError(f"word {word} is not one-hot")
    # a single bit at position k means level k + 1, which is its bit length
    return word.bits.bit_length()


def binary_label(level: int, width: int) -> str:
    """Plain binary rendering of a level, zero-padded to cover 0..width-1.

    The top level needs one extra digit, exactly as a width-N scheme counts
    from all-zeros up to a carry into a new bit.
    """
    digits = max(1, (width - 1).bit_length())
    return format(level, f"0{digits}b")


def conversion_table(width: int):
    """(binary, one-hot) string pairs for every level 0..width."""
    return [
        (binary_label(level, width), str(one_hot_encode(level, width)))
        for level in range(width + 1)
    ]
