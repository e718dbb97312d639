"""Shared enumeration helpers: restricted growth strings and set partitions."""

from __future__ import annotations

from typing import Iterator, Sequence


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Yield all restricted growth strings of length n in lexicographic order.

    A restricted growth string a satisfies a[0] = 0 and
    a[i] <= 1 + max(a[0..i-1]); they biject with set partitions of [1..n].
    """
    if n == 0:
        yield ()
        return
    word = [0] * n

    def extend(i: int, ceiling: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(word)
            return
        for digit in range(ceiling + 1):
            word[i] = digit
            yield from extend(i + 1, max(ceiling, digit + 1))

    yield from extend(1, 1)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Yield every set partition of ``items`` as a list of blocks.

    Blocks follow the order of first appearance, so the output order is the
    lexicographic order of the underlying restricted growth strings.  The
    empty sequence has exactly one partition: the empty list of blocks.
    """
    items = list(items)
    for rgs in restricted_growth_strings(len(items)):
        nblocks = max(rgs) + 1 if rgs else 0
        blocks: list[list] = [[] for _ in range(nblocks)]
        for item, digit in zip(items, rgs):
            blocks[digit].append(item)
        yield blocks
