"""
k-coloured partitions in canonical order and the brute-force enumeration oracle.

A partition is written with sizes weakly decreasing and, within equal sizes,
colours weakly decreasing: 4_2+2_3+2_3+2_1+1_2+1_1.
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

from backend.counts import EMPTY_PROFILE, ConstraintProfile
from backend.exceptions import InvalidPartError

logger = logging.getLogger(__name__)

EMPTY_TEXT = "()"
PART_PATTERN = re.compile(r"^\s*(\d+)_(\d+)\s*$")


class ColoredPart(NamedTuple):
    size: int
    color: int

    def __str__(self) -> str:
        return f"{self.size}_{self.color}"


@dataclass(frozen=True)
class ColoredPartition:
    parts: tuple = ()

    @property
    def weight(self) -> int:
        return sum(part.size for part in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return EMPTY_TEXT
        return "+".join(str(part) for part in self.parts)

    def sizes(self) -> tuple:
        return tuple(part.size for part in self.parts)

    def unit_count(self, color: int) -> int:
        return sum(1 for part in self.parts if part.size == 1 and part.color == color)


EMPTY_PARTITION = ColoredPartition()


def _check_part(part: ColoredPart, k: Optional[int]) -> ColoredPart:
    size, color = part
    if size < 1:
        raise InvalidPartError(f"part {size}_{color} has size < 1")
    if color < 1 or (k is not None and color > k):
        raise InvalidPartError(f"part {size}_{color} has colour outside 1..{k}")
    return ColoredPart(int(size), int(color))


def canonicalize(parts: Iterable, k: Optional[int] = None) -> ColoredPartition:
    """Sort parts into canonical order; accepts ColoredPart or (size, color) pairs."""
    checked = [_check_part(ColoredPart(*part), k) for part in parts]
    checked.sort(reverse=True)
    return ColoredPartition(tuple(checked))


def partition(*parts, k: Optional[int] = None) -> ColoredPartition:
    """Shorthand: partition((2, 2), (2, 1)) or partition("2_2", "2_1")."""
    return canonicalize(
        (_parse_part(part) if isinstance(part, str) else part for part in parts), k
    )


def _parse_part(text: str) -> ColoredPart:
    match = PART_PATTERN.match(text)
    if not match:
        raise InvalidPartError(f"cannot parse part {text!r}")
    return ColoredPart(int(match.group(1)), int(match.group(2)))


def parse_partition(text: str, k: Optional[int] = None) -> ColoredPartition:
    """Inverse of str(ColoredPartition); "()" and "" are the empty partition."""
    text = text.strip()
    if text in ("", EMPTY_TEXT):
        return EMPTY_PARTITION
    return canonicalize((_parse_part(tok) for tok in text.split("+")), k)


def satisfies(partition: ColoredPartition, profile: ConstraintProfile) -> bool:
    for color in profile.forbidden_units:
        if partition.unit_count(color):
            return False
    for color in profile.required_units:
        if not partition.unit_count(color):
            return False
    return True


# ── Enumeration ────────────────────────────────────────────────────────────────

def enumerate_partitions(
    k: int, n: int, profile: ConstraintProfile = EMPTY_PROFILE
) -> Iterator[ColoredPartition]:
    """
    Every k-coloured partition of n satisfying profile, each exactly once,
    in descending lexicographic order of the canonical part lists.
    """
    profile.validate_for(k)
    forbidden = profile.forbidden_units
    required = profile.required_units
    prefix: list = []

    def walk(remaining: int, bound: ColoredPart) -> Iterator[ColoredPartition]:
        if remaining == 0:
            if required and not all(ColoredPart(1, c) in prefix for c in required):
                return
            yield ColoredPartition(tuple(prefix))
            return
        for size in range(min(remaining, bound.size), 0, -1):
            top = bound.color if size == bound.size else k
            for color in range(top, 0, -1):
                if size == 1 and color in forbidden:
                    continue
                part = ColoredPart(size, color)
                prefix.append(part)
                yield from walk(remaining - size, part)
                prefix.pop()

    yield from walk(n, ColoredPart(n, k))


def oracle_count(k: int, n: int, profile: ConstraintProfile = EMPTY_PROFILE) -> int:
    return sum(1 for _ in enumerate_partitions(k, n, profile))


def size_multisets(n: int, bound: Optional[int] = None) -> Iterator[tuple]:
    """Uncoloured partitions of n as weakly decreasing tuples, descending lexicographic."""
    bound = n if bound is None else bound
    if n == 0:
        yield ()
        return
    for first in range(min(n, bound), 0, -1):
        for rest in size_multisets(n - first, first):
            yield (first,) + rest
