"""
Exact counts of ordinary and k-coloured partitions.

p(n) comes from Euler's pentagonal recurrence. p_{-k}(n) is the (k-1)-fold
convolution of the p table with itself; each step multiplies the previous
series by sum p(n) q^n, carried out through the pentagonal form of its
reciprocal so a new coefficient only needs O(sqrt n) earlier ones.
Unit-part constraints are resolved by inclusion-exclusion over the colours.

Tables are memoized per (k, profile) and only ever grow.
"""

import logging
import threading
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Optional

from backend import config
from backend.exceptions import CapacityError, InvalidProfileError, PreconditionError

logger = logging.getLogger(__name__)


# ── Constraint profiles ────────────────────────────────────────────────────────

def _colors(values: Iterable[int]) -> frozenset:
    return frozenset(int(c) for c in values)


@dataclass(frozen=True)
class ConstraintProfile:
    """Forbidden and required unit parts 1_c."""

    forbidden_units: frozenset = frozenset()
    required_units: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "forbidden_units", _colors(self.forbidden_units))
        object.__setattr__(self, "required_units", _colors(self.required_units))
        overlap = self.forbidden_units & self.required_units
        if overlap:
            raise InvalidProfileError(
                f"colours {sorted(overlap)} are both forbidden and required"
            )
        bad = [c for c in self.forbidden_units | self.required_units if c < 1]
        if bad:
            raise InvalidProfileError(f"colours must be >= 1, got {sorted(bad)}")

    @classmethod
    def forbid(cls, *colors: int) -> "ConstraintProfile":
        return cls(forbidden_units=frozenset(colors))

    @classmethod
    def require(cls, *colors: int) -> "ConstraintProfile":
        return cls(required_units=frozenset(colors))

    @classmethod
    def parse(cls, forbid: Optional[str] = None, require: Optional[str] = None) -> "ConstraintProfile":
        """Build a profile from comma separated colour lists such as "1,2"."""

        def split(text):
            if not text:
                return frozenset()
            try:
                return frozenset(int(tok) for tok in text.split(",") if tok.strip())
            except ValueError as e:
                raise InvalidProfileError(f"bad colour list {text!r}") from e

        return cls(forbidden_units=split(forbid), required_units=split(require))

    @property
    def is_empty(self) -> bool:
        return not self.forbidden_units and not self.required_units

    def validate_for(self, k: int) -> "ConstraintProfile":
        out_of_range = [c for c in self.forbidden_units | self.required_units if c > k]
        if out_of_range:
            raise InvalidProfileError(
                f"colours {sorted(out_of_range)} out of range for k={k}"
            )
        return self

    def describe(self) -> str:
        conditions = [f"no 1_{c}'s" for c in sorted(self.forbidden_units)]
        conditions += [f"at least one 1_{c}'s" for c in sorted(self.required_units)]
        return " and ".join(conditions) if conditions else "no condition"

    def as_dict(self) -> dict:
        return {
            "forbidden_units": sorted(self.forbidden_units),
            "required_units": sorted(self.required_units),
        }


EMPTY_PROFILE = ConstraintProfile()


# ── Recurrence helpers ─────────────────────────────────────────────────────────

def _pentagonal_offsets(n: int) -> Iterator[tuple[int, int]]:
    """(j(3j-1)/2, sign) and (j(3j+1)/2, sign) for j >= 1, offsets <= n."""
    j = 1
    while True:
        first = j * (3 * j - 1) // 2
        if first > n:
            return
        sign = 1 if j % 2 else -1
        yield first, sign
        if first + j <= n:
            yield first + j, sign
        j += 1


def _inclusion_exclusion(colored: "CountTable", n: int, forbidden: int, required: int) -> int:
    total = 0
    for t in range(required + 1):
        removed = forbidden + t
        inner = 0
        for j in range(min(removed, n) + 1):
            term = comb(removed, j) * colored[n - j]
            inner += -term if j % 2 else term
        total += (-1) ** t * comb(required, t) * inner
    return total


# ── Count tables ───────────────────────────────────────────────────────────────

class CountTable:
    """
    Memoized exact counts for one (k, profile) pair, index n from 0 upward.

    A single writer extends the table under a lock; published entries are
    never rewritten, so readers of indexes <= limit need no lock.
    """

    def __init__(
        self,
        k: int,
        profile: ConstraintProfile = EMPTY_PROFILE,
        values: Optional[Iterable[int]] = None,
        capacity: Optional[int] = None,
    ):
        self.k = k
        self.profile = profile.validate_for(k) if k > 0 else profile
        self._values: list = list(values or [])
        self._capacity = capacity
        self._lock = threading.RLock()

    @property
    def capacity(self) -> int:
        return self._capacity if self._capacity is not None else config.CAPACITY

    @property
    def limit(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> tuple:
        return tuple(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.limit:
            self.extend(n)
        return self._values[n]

    def __repr__(self) -> str:
        return f"CountTable(k={self.k}, profile={self.profile.describe()!r}, limit={self.limit})"

    def extend(self, limit: int) -> "CountTable":
        if limit <= self.limit:
            return self
        if limit > self.capacity:
            raise CapacityError(
                f"n={limit} exceeds capacity {self.capacity} for k={self.k}"
            )
        with self._lock:
            start = len(self._values)
            for n in range(start, limit + 1):
                self._values.append(self._next_value(n))
        logger.debug("extended %r from %d to %d", self, start, limit)
        return self

    def _next_value(self, n: int) -> int:
        if self.k == 0:
            return 1 if n == 0 else 0
        if not self.profile.is_empty:
            return _inclusion_exclusion(
                _table(self.k),
                n,
                len(self.profile.forbidden_units),
                len(self.profile.required_units),
            )
        # a_k * (q;q)_inf = a_{k-1}
        total = _table(self.k - 1)[n]
        values = self._values
        for offset, sign in _pentagonal_offsets(n):
            total += sign * values[n - offset]
        return total


_tables: dict = {}
_registry_lock = threading.Lock()


def _table(k: int, profile: ConstraintProfile = EMPTY_PROFILE) -> CountTable:
    key = (k, profile)
    table = _tables.get(key)
    if table is None:
        with _registry_lock:
            table = _tables.setdefault(key, CountTable(k, profile))
    return table


def install_table(table: CountTable) -> CountTable:
    """Seed the memo with a prebuilt table, e.g. one loaded from a cache file."""
    with _registry_lock:
        current = _tables.get((table.k, table.profile))
        if current is not None and current.limit >= table.limit:
            return current
        _tables[(table.k, table.profile)] = table
    logger.info("installed %r", table)
    return table


def reset_tables() -> None:
    with _registry_lock:
        _tables.clear()


def _check_args(k: int, n: int) -> None:
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")


# ── Public counts ──────────────────────────────────────────────────────────────

def partition_count(n: int) -> int:
    """p(n) by the pentagonal recurrence."""
    _check_args(1, n)
    return _table(1)[n]


def colored_table(k: int, limit: int) -> CountTable:
    _check_args(k, limit)
    return _table(k).extend(limit)


def colored_count(k: int, n: int) -> int:
    """p_{-k}(n); p_{-1} is p."""
    _check_args(k, n)
    return _table(k)[n]


def constrained_table(k: int, profile: ConstraintProfile, limit: int) -> CountTable:
    _check_args(k, limit)
    profile.validate_for(k)
    return _table(k, profile).extend(limit)


def constrained_count(k: int, n: int, profile: ConstraintProfile = EMPTY_PROFILE) -> int:
    """p_{-k}(n | profile)."""
    _check_args(k, n)
    profile.validate_for(k)
    return _table(k, profile)[n]


def convolve(left, right, n_max: int) -> list:
    """Coefficients 0..n_max of the product of two series."""
    return [
        sum(left[j] * right[n - j] for j in range(n + 1))
        for n in range(n_max + 1)
    ]


def verify_convolution_identity(k: int, split: int, n_max: int) -> bool:
    """p_{-k} == p_{-split} * p_{-(k-split)} coefficientwise up to n_max."""
    if k < 2 or not 1 <= split <= k - 1:
        raise PreconditionError(f"split must lie in 1..{k - 1}, got {split} for k={k}")
    left = colored_table(split, n_max).values
    right = colored_table(k - split, n_max).values
    target = colored_table(k, n_max).values
    product = convolve(left, right, n_max)
    holds = product == list(target[: n_max + 1])
    if not holds:
        logger.warning("convolution identity failed for k=%d split=%d", k, split)
    return holds
