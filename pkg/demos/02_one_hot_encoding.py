"""One-hot coding of quantizer levels.

Eight channels encode nine values: all-zeros stands for "nothing conducts",
and each higher level sets exactly one bit. Decoding a word with two bits
set fails loudly, because on the real device that pattern only exists for a
moment while one channel hands off to another.
"""

from isoquant import OneHotWord, one_hot_decode, one_hot_encode
from isoquant.encoding import OneHotViolationError, conversion_table

print("binary -> one-hot (width 8)")
for binary, onehot in conversion_table(8):
    print(f"{binary:>6} -> {onehot}")

print()
word = one_hot_encode(6, 8)
print(f"level 6 encodes as {word}, decodes back to {one_hot_decode(word)}")

overlap = OneHotWord(0b01100000, 8)  # what a channel hand-off looks like
try:
    one_hot_decode(overlap)
except OneHotViolationError as exc:
    print(f"decoding {overlap} raises: {exc}")

print()
print("round trip over widths 1, 3, 8, 16:")
for width in (1, 3, 8, 16):
    ok = all(
        one_hot_decode(one_hot_encode(level, width)) == level
        for level in range(width + 1)
    )
    print(f"  width {width:>2}: {width + 1} levels, round-trip ok: {ok}")
