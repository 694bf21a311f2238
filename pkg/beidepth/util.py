from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from beidepth._types import StrOrBytes


def ascii_text(data: StrOrBytes) -> str:
    """Graph input as ``str``. Both graph formats are pure ASCII, so any
    other character raises :exc:`ValueError` with its offset.

    >>> from beidepth.util import ascii_text
    >>> ascii_text(b"3 2")
    '3 2'
    >>> ascii_text("2 \\u00e9")
    Traceback (most recent call last):
    ...
    ValueError: non-ASCII character '\\xe9' at offset 2
    """
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ValueError(
                f"non-ASCII byte {data[exc.start]:#04x} at offset {exc.start}"
            ) from exc
    if not isinstance(data, str):
        raise TypeError(f"expected str or bytes, got {type(data).__name__}")
    if not data.isascii():
        offset = next(i for i, char in enumerate(data) if not char.isascii())
        raise ValueError(f"non-ASCII character {ascii(data[offset])} at offset {offset}")
    return data


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of `mask`, lowest first.

    >>> from beidepth.util import iter_bits
    >>> list(iter_bits(0b10110))
    [1, 2, 4]
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(positions: Iterable[int]) -> int:
    """Inverse of :func:`iter_bits`.

    >>> from beidepth.util import to_mask
    >>> to_mask([1, 2, 4])
    22
    """
    mask = 0
    for position in positions:
        mask |= 1 << position
    return mask
