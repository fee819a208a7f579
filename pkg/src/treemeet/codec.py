"""Label encodings used by the rendezvous programs.

All four encodings turn an integer label into a bit string whose structure
breaks the symmetry between two agents running the same algorithm:

* ``activity_code``    -- 6x expansion gating act/pass cycles; never contains
                          three consecutive zeros and always starts with 01.
* ``prefix_free_code`` -- Manchester expansion plus a ``11`` terminator; no
                          code word is a prefix of another.
* ``manchester_code``  -- Manchester re-expansion of the prefix-free code;
                          any two distinct labels disagree with a (1, 0)
                          pattern at some shared index.
* ``padded_code``      -- fixed-width Manchester code relative to a known
                          bound on the label space; same (1, 0) property at
                          an index within the common width.

Bit strings are plain ``str`` over ``{'0', '1'}``; public indexing is
1-based to match the conventions of the round accounting elsewhere.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


class LabelError(ValueError):
    """Raised for labels outside the supported range."""


def _check_label(label: int) -> None:
    if label < 1:
        raise LabelError(f"labels must be >= 1, got {label}")


def binary_rep(label: int) -> str:
    """Binary representation of ``label``, most significant bit first.

    No leading zeros, so the first bit is always 1 and the length is
    ``floor(log2(label)) + 1``.
    """
    _check_label(label)
    return format(label, "b")


def manchester(bits: str) -> str:
    """Expand each bit: 1 -> 10, 0 -> 01 (Manchester convention)."""
    return "".join("10" if b == "1" else "01" for b in bits)


@lru_cache(maxsize=None)
def activity_code(label: int) -> str:
    """Six-fold expansion of the binary label: 1 -> 010101, 0 -> 101010.

    The result has length ``6 * len(binary_rep(label))``, contains no
    substring ``000``, starts with ``01``, and exactly one of its last two
    bits is 1.
    """
    return "".join(
        "010101" if b == "1" else "101010" for b in binary_rep(label)
    )


@lru_cache(maxsize=None)
def prefix_free_code(label: int) -> str:
    """Manchester expansion of the binary label with ``11`` appended.

    Length ``2s + 2`` for an ``s``-bit label; for distinct labels neither
    code is a prefix of the other.
    """
    return manchester(binary_rep(label)) + "11"


@lru_cache(maxsize=None)
def manchester_code(label: int) -> str:
    """Manchester re-expansion of the prefix-free code (length ``4s + 4``).

    Distinct labels always admit an index ``j`` where this code has bit 1
    for one label and bit 0 for the other, in either role order.
    """
    return manchester(prefix_free_code(label))


def width_for_bound(space_bound: int) -> int:
    """Bit width reserved for labels up to ``space_bound``:
    ``ceil(log2(space_bound)) + 1``."""
    if space_bound < 2:
        raise LabelError(f"label space bound must be >= 2, got {space_bound}")
    return (space_bound - 1).bit_length() + 1


def padded_code(label: int, space_bound: int) -> str:
    """Fixed-width Manchester code for a label space bounded by ``space_bound``.

    The binary representation is left-padded with zeros to the reserved
    width, then Manchester-expanded, so every label's code has the same
    length ``2 * width_for_bound(space_bound)`` and two distinct labels
    disagree with a (1, 0) pattern at some index within that length.
    """
    width = width_for_bound(space_bound)
    bits = binary_rep(label)
    if len(bits) > width:
        raise LabelError(
            f"label {label} needs {len(bits)} bits, exceeding the reserved "
            f"width {width} for bound {space_bound}"
        )
    return manchester(bits.rjust(width, "0"))


def repeating_bit(label: int, j: int) -> int:
    """Bit ``j`` (1-based) of the infinite repetition of ``manchester_code``.

    Never materializes the infinite sequence; wraps modulo the code length.
    """
    if j < 1:
        raise LabelError(f"bit index must be >= 1, got {j}")
    code = manchester_code(label)
    return int(code[(j - 1) % len(code)])


def distinguishing_offset(label1: int, label2: int, j: int) -> int:
    """Smallest ``y >= 0`` such that bit ``j + y`` of the repeating code is
    1 for ``label1`` and 0 for ``label2``.

    Exists for any pair of distinct labels; a missing offset within the
    joint period would mean the two repeating codes coincide, which the
    prefix-free construction rules out.
    """
    if label1 == label2:
        raise LabelError("labels must be distinct")
    c1 = manchester_code(label1)
    c2 = manchester_code(label2)
    n1, n2 = len(c1), len(c2)
    # One full joint period is enough to see every alignment of the codes.
    limit = n1 * n2 // gcd(n1, n2)
    for y in range(limit):
        k = j + y - 1
        if c1[k % n1] == "1" and c2[k % n2] == "0":
            return y
    raise AssertionError(
        f"no distinguishing index for labels {label1}/{label2} at j={j}"
    )
