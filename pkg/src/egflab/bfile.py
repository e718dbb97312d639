"""Offline comparison of integer sequences against OEIS-style b-files.

A b-file is ASCII lines "n a(n)"; comment lines start with '#'.
Comparison runs over the overlapping index range only, and reports the
first mismatching index.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import BFileFormatError

MATCH = "MATCH"
MISMATCH = "MISMATCH"
NO_OVERLAP = "NO_OVERLAP"


def read_bfile(path) -> dict[int, int]:
    values: dict[int, int] = {}
    with open(Path(path), "r", encoding="ascii") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise BFileFormatError(f"expected 'n value', got {line!r}", lineno)
            try:
                index, value = int(parts[0]), int(parts[1])
            except ValueError:
                raise BFileFormatError(f"non-integer field in {line!r}", lineno) from None
            if index in values:
                raise BFileFormatError(f"duplicate index {index}", lineno)
            values[index] = value
    return values


@dataclass
class BFileComparison:
    status: str
    overlap: tuple[int, int] | None = None
    compared: int = 0
    first_mismatch: tuple[int, int, int] | None = None  # (n, generated, bfile)

    def to_dict(self) -> dict:
        data = {"status": self.status, "compared": self.compared}
        if self.overlap is not None:
            data["overlap"] = list(self.overlap)
        if self.first_mismatch is not None:
            n, got, expected = self.first_mismatch
            data["first_mismatch"] = {"n": n, "generated": got, "bfile": expected}
        return data

    def __str__(self):
        if self.status == NO_OVERLAP:
            return "NO_OVERLAP: the index ranges do not intersect"
        if self.status == MATCH:
            lo, hi = self.overlap
            return f"MATCH over [{lo}..{hi}] ({self.compared} values)"
        n, got, expected = self.first_mismatch
        return f"MISMATCH at n={n}: generated {got}, b-file has {expected}"


def compare_with_bfile(
    generated: Mapping[int, int], bfile: Mapping[int, int]
) -> BFileComparison:
    common = sorted(set(generated) & set(bfile))
    if not common:
        return BFileComparison(NO_OVERLAP)
    compared = 0
    for n in common:
        compared += 1
        if generated[n] != bfile[n]:
            return BFileComparison(
                MISMATCH,
                overlap=(common[0], common[-1]),
                compared=compared,
                first_mismatch=(n, generated[n], bfile[n]),
            )
    return BFileComparison(MATCH, overlap=(common[0], common[-1]), compared=compared)
