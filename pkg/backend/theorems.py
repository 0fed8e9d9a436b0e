"""
Exact scanners for the partition inequalities, their exception lists, the
closed-form maxima of the multiplicative extension, and the conjectured
two-sided inequality.

Exception sets are always discovered from the count tables. The claimed lists
in backend.constant are only attached to reports for comparison.
"""

import logging
from math import comb, prod
from typing import Callable, Iterable, NamedTuple, Optional

from backend.colored import enumerate_partitions, size_multisets
from backend.constant import CLAIMED_EQUALITIES, CLAIMED_EXCEPTIONS
from backend.counts import ConstraintProfile, colored_count, constrained_count, partition_count
from backend.exceptions import PreconditionError
from backend.schemas import (
    ComparisonOutcome,
    MaxMode,
    MaxResult,
    Relation,
    RelationMismatch,
    ScanEntry,
    ScanReport,
)
from backend.workers import ordered_map

logger = logging.getLogger(__name__)

NO_1_1 = ConstraintProfile.forbid(1)
NO_1_2 = ConstraintProfile.forbid(2)
NO_1_1_NO_1_2 = ConstraintProfile.forbid(1, 2)

STRICT = frozenset({Relation.EQUAL, Relation.STRICT_LESS})
NON_STRICT = frozenset({Relation.STRICT_LESS})


# ── Cells: (lhs, rhs) of one inequality instance ───────────────────────────────

def _product_cell(k: int, a: int, b: int) -> tuple:
    return colored_count(k, a) * colored_count(k, b), colored_count(k, a + b)


def _bo_cell(a: int, b: int) -> tuple:
    return partition_count(a) * partition_count(b), partition_count(a + b)


def _lemma_key_cell(k: int, c: int, d: int) -> tuple:
    lhs = constrained_count(k, c, NO_1_1) * constrained_count(k, d, NO_1_2)
    return lhs, constrained_count(k, c + d, NO_1_1_NO_1_2)


def _lemma_g_cell(k: int, a: int) -> tuple:
    return constrained_count(k, a, NO_1_1) * colored_count(k, 1), constrained_count(k, a + 1, NO_1_1)


def _lemma_ab_cell(k: int, a: int, b: int) -> tuple:
    return constrained_count(k, a, NO_1_1) * colored_count(k, b), constrained_count(k, a + b, NO_1_1)


def _conjecture_cell(k: int, n: int, m: int) -> tuple:
    lhs = colored_count(k, n - 1) * colored_count(k, m + 1)
    return lhs, colored_count(k, n) * colored_count(k, m)


def _log_concave_cell(n: int, m: int = 1) -> tuple:
    return partition_count(n) ** 2, partition_count(n - m) * partition_count(n + m)


def _log_concave_colored_cell(k: int, n: int) -> tuple:
    return colored_count(k, n) ** 2, colored_count(k, n - 1) * colored_count(k, n + 1)


def _two_step_cell(n: int) -> tuple:
    return partition_count(n - 1) + partition_count(n - 2), partition_count(n)


def _doubling_cell(n: int) -> tuple:
    return 2 * partition_count(n - 1), partition_count(n)


def _halving_cell(k: int, s: int) -> tuple:
    return colored_count(k, (s + 1) // 2) * colored_count(k, s // 2), colored_count(k, s)


class _ScanKind(NamedTuple):
    cell: Callable
    order: tuple
    exceptions_on: frozenset
    statement: str


SCANS = {
    "theorem2": _ScanKind(
        _product_cell, ("a", "b", "k"), STRICT,
        "p_-k(a) p_-k(b) > p_-k(a+b) for a >= b >= 1",
    ),
    "bo": _ScanKind(
        _bo_cell, ("a", "b"), STRICT,
        "p(a) p(b) > p(a+b) for a >= b > 1, a+b > 9",
    ),
    "lemma-key": _ScanKind(
        _lemma_key_cell, ("c", "d", "k"), NON_STRICT,
        "p_-k(c | no 1_1) p_-k(d | no 1_2) >= p_-k(c+d | no 1_1 and no 1_2) for c >= d >= 1",
    ),
    "lemma-g": _ScanKind(
        _lemma_g_cell, ("a", "k"), STRICT,
        "p_-k(a | no 1_1) p_-k(1) > p_-k(a+1 | no 1_1)",
    ),
    "lemma-ab": _ScanKind(
        _lemma_ab_cell, ("a", "b", "k"), STRICT,
        "p_-k(a | no 1_1) p_-k(b) > p_-k(a+b | no 1_1) for a >= b >= 1",
    ),
    "conjecture": _ScanKind(
        _conjecture_cell, ("k", "n", "m"), NON_STRICT,
        "p_-k(n-1) p_-k(m+1) >= p_-k(n) p_-k(m) for n > m >= 1",
    ),
    "logconcave": _ScanKind(
        _log_concave_cell, ("n",), NON_STRICT,
        "p(n)^2 >= p(n-1) p(n+1) for n > 25",
    ),
    "logconcave-strong": _ScanKind(
        _log_concave_cell, ("n", "m"), STRICT,
        "p(n)^2 > p(n-m) p(n+m) for n > m > 1",
    ),
    "logconcave-colored": _ScanKind(
        _log_concave_colored_cell, ("k", "n"), NON_STRICT,
        "p_-k(n)^2 >= p_-k(n-1) p_-k(n+1) for n >= 1",
    ),
    "two-step": _ScanKind(
        _two_step_cell, ("n",), NON_STRICT,
        "p(n-1) + p(n-2) >= p(n) for n >= 2",
    ),
    "doubling": _ScanKind(
        _doubling_cell, ("n",), NON_STRICT,
        "2 p(n-1) >= p(n) for n >= 2",
    ),
    "halving": _ScanKind(
        _halving_cell, ("k", "s"), STRICT,
        "p_-k(ceil(s/2)) p_-k(floor(s/2)) > p_-k(s) for s >= 4",
    ),
}


def classify(name: str, **params: int) -> ComparisonOutcome:
    """Classify one instance of a named inequality."""
    return ComparisonOutcome.compare(*SCANS[name].cell(**params))


def classify_product(k: int, a: int, b: int) -> ComparisonOutcome:
    if a < 1 or b < 1 or k < 1:
        raise PreconditionError(f"need a, b, k >= 1, got a={a} b={b} k={k}")
    return classify("theorem2", k=k, a=a, b=b)


def classify_lemma_key(k: int, c: int, d: int) -> ComparisonOutcome:
    return classify("lemma-key", k=k, c=c, d=d)


def classify_lemma_g(k: int, a: int) -> ComparisonOutcome:
    return classify("lemma-g", k=k, a=a)


def classify_lemma_ab(k: int, a: int, b: int) -> ComparisonOutcome:
    return classify("lemma-ab", k=k, a=a, b=b)


def classify_conjecture(k: int, n: int, m: int) -> ComparisonOutcome:
    return classify("conjecture", k=k, n=n, m=m)


# ── Scan driver ────────────────────────────────────────────────────────────────

def _evaluate(job: tuple) -> list:
    name, grid = job
    cell = SCANS[name].cell
    return [(params, cell(**params)) for params in grid]


def _chunks(grid: list, workers: int) -> list:
    count = max(1, workers)
    size = max(1, -(-len(grid) // count))
    return [grid[i: i + size] for i in range(0, len(grid), size)]


def _run_grid(name: str, grid: list, workers: int) -> list:
    results = []
    for chunk in ordered_map(_evaluate, [(name, g) for g in _chunks(grid, workers)], workers):
        for params, (lhs, rhs) in chunk:
            results.append(ScanEntry(params=params, outcome=ComparisonOutcome.compare(lhs, rhs)))
    return results


def _relation_mismatches(name: str, exceptions: list, claimed_keys: set, order: list) -> list:
    """Claimed exceptions are StrictLess unless listed in CLAIMED_EQUALITIES."""
    equalities = CLAIMED_EQUALITIES.get(name)
    if equalities is None:
        return []
    equal_keys = {tuple(c[o] for o in order) for c in equalities}
    mismatches = []
    for entry in exceptions:
        key = entry.key(order)
        if key not in claimed_keys:
            continue
        claimed = Relation.EQUAL if key in equal_keys else Relation.STRICT_LESS
        if entry.outcome.relation != claimed:
            mismatches.append(
                RelationMismatch(params=entry.params, claimed=claimed, found=entry.outcome.relation)
            )
    return mismatches


def _scan(
    name: str,
    ranges: dict,
    grid: list,
    workers: int = 1,
    appendix_grid: Optional[list] = None,
    claim_key: Optional[str] = None,
) -> ScanReport:
    kind = SCANS[name]
    order = list(kind.order)
    entries = _run_grid(name, grid, workers)

    exceptions = sorted(
        (e for e in entries if e.outcome.relation in kind.exceptions_on),
        key=lambda e: e.key(order),
    )
    ties = []
    if Relation.EQUAL not in kind.exceptions_on:
        ties = sorted(
            (e for e in entries if e.outcome.relation == Relation.EQUAL),
            key=lambda e: e.key(order),
        )
    appendix = _run_grid(name, appendix_grid, 1) if appendix_grid else []

    report = ScanReport(
        scan=claim_key or name,
        statement=kind.statement,
        param_order=order,
        ranges=ranges,
        exceptions=exceptions,
        ties=ties,
        appendix=appendix,
        total_checked=len(entries),
    )

    claimed_all = CLAIMED_EXCEPTIONS.get(claim_key or name)
    if claimed_all is not None:
        in_grid = {tuple(params[o] for o in order) for params in grid}
        claimed = [c for c in claimed_all if tuple(c[o] for o in order) in in_grid]
        found = set(report.exception_params())
        claimed_keys = {tuple(c[o] for o in order) for c in claimed}
        report.claimed = claimed
        report.unlisted = [e.params for e in exceptions if e.key(order) not in claimed_keys]
        report.unconfirmed = [c for c in claimed if tuple(c[o] for o in order) not in found]
        report.relation_mismatches = _relation_mismatches(claim_key or name, exceptions, claimed_keys, order)
        if report.has_discrepancy:
            logger.warning(
                "%s: scan disagrees with claimed exceptions "
                "(unlisted=%s, unconfirmed=%s, relation mismatches=%d)",
                report.scan, report.unlisted, report.unconfirmed, len(report.relation_mismatches),
            )

    logger.info("%s: %d checked, %d exceptions", report.scan, len(entries), len(exceptions))
    return report


def _require_positive(**values: int) -> None:
    for label, value in values.items():
        if value < 1:
            raise PreconditionError(f"{label} must be positive, got {value}")


# ── Scans ──────────────────────────────────────────────────────────────────────

def scan_theorem2(k_max: int, sum_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, sum_max=sum_max)
    grid = [
        {"a": a, "b": b, "k": k}
        for k in range(2, k_max + 1)
        for a in range(1, sum_max)
        for b in range(1, min(a, sum_max - a) + 1)
    ]
    return _scan("theorem2", {"k": [2, k_max], "sum": [2, sum_max]}, grid, workers)


def scan_bessenrodt_ono(sum_max: int, workers: int = 1) -> ScanReport:
    if sum_max <= 9:
        raise PreconditionError(f"sum_max must exceed 9, got {sum_max}")
    grid, appendix = [], []
    for a in range(2, sum_max - 1):
        for b in range(2, min(a, sum_max - a) + 1):
            (grid if a + b > 9 else appendix).append({"a": a, "b": b})
    return _scan("bo", {"sum": [10, sum_max]}, grid, workers, appendix_grid=appendix)


def scan_lemma_key(k_max: int, sum_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, sum_max=sum_max)
    grid = [
        {"c": c, "d": d, "k": k}
        for k in range(2, k_max + 1)
        for c in range(1, sum_max)
        for d in range(1, min(c, sum_max - c) + 1)
    ]
    return _scan("lemma-key", {"k": [2, k_max], "sum": [2, sum_max]}, grid, workers)


def scan_lemma_g(k_max: int, a_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, a_max=a_max)
    grid = [{"a": a, "k": k} for k in range(2, k_max + 1) for a in range(1, a_max + 1)]
    return _scan("lemma-g", {"k": [2, k_max], "a": [1, a_max]}, grid, workers)


def scan_lemma_ab(k_max: int, sum_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, sum_max=sum_max)
    grid = [
        {"a": a, "b": b, "k": k}
        for k in range(2, k_max + 1)
        for a in range(1, sum_max)
        for b in range(1, min(a, sum_max - a) + 1)
    ]
    return _scan("lemma-ab", {"k": [2, k_max], "sum": [2, sum_max]}, grid, workers)


def verify_base_identity(k_range: Iterable[int]) -> bool:
    """p_-k(2 | no 1_1) p_-k(2) - p_-k(4 | no 1_1) == 5 C(k+2, 4) for every k."""
    holds = True
    for k in k_range:
        if k < 2:
            raise PreconditionError(f"base identity needs k >= 2, got {k}")
        gap = constrained_count(k, 2, NO_1_1) * colored_count(k, 2) - constrained_count(k, 4, NO_1_1)
        if gap != 5 * comb(k + 2, 4):
            logger.warning("base identity fails at k=%d: gap %d", k, gap)
            holds = False
    return holds


def scan_conjecture(k_max: int, n_max: int, workers: int = 1) -> ScanReport:
    if n_max < 2:
        raise PreconditionError(f"n_max must be >= 2, got {n_max}")
    _require_positive(k_max=k_max)
    grid = [
        {"k": k, "n": n, "m": m}
        for k in range(2, k_max + 1)
        for n in range(2, n_max + 1)
        for m in range(1, n)
    ]
    return _scan("conjecture", {"k": [2, k_max], "n": [2, n_max]}, grid, workers)


def scan_log_concavity_p(
    n_max: int, strong: bool = False, m_max: Optional[int] = None, workers: int = 1
) -> ScanReport:
    if n_max <= 26:
        raise PreconditionError(f"n_max must exceed 26, got {n_max}")
    if not strong:
        grid = [{"n": n} for n in range(26, n_max + 1)]
        return _scan("logconcave", {"n": [26, n_max]}, grid, workers)
    m_cap = n_max if m_max is None else m_max
    grid = [
        {"n": n, "m": m}
        for n in range(3, n_max)
        for m in range(2, min(n - 1, n_max - n, m_cap) + 1)
    ]
    ranges = {"n+m": [5, n_max], "m": [2, m_cap]}
    return _scan("logconcave-strong", ranges, grid, workers, claim_key="logconcave")


def scan_log_concavity_colored(k_max: int, n_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, n_max=n_max)
    grid = [{"k": k, "n": n} for k in range(2, k_max + 1) for n in range(1, n_max)]
    return _scan("logconcave-colored", {"k": [2, k_max], "n": [1, n_max - 1]}, grid, workers)


def scan_two_step_bound(n_max: int) -> ScanReport:
    _require_positive(n_max=n_max)
    grid = [{"n": n} for n in range(2, n_max + 1)]
    return _scan("two-step", {"n": [2, n_max]}, grid)


def scan_doubling_bound(n_max: int) -> ScanReport:
    _require_positive(n_max=n_max)
    grid = [{"n": n} for n in range(2, n_max + 1)]
    return _scan("doubling", {"n": [2, n_max]}, grid)


def scan_halving_step(k_max: int, s_max: int, workers: int = 1) -> ScanReport:
    _require_positive(k_max=k_max, s_max=s_max)
    grid = [{"k": k, "s": s} for k in range(2, k_max + 1) for s in range(4, s_max + 1)]
    return _scan("halving", {"k": [2, k_max], "s": [4, s_max]}, grid, workers)


def reverify(report: ScanReport) -> bool:
    """Recompute both sides of every exception and tie from the count tables."""
    name = report.scan
    if name == "logconcave" and report.param_order == ["n", "m"]:
        name = "logconcave-strong"
    for entry in report.exceptions + report.ties + report.appendix:
        if classify(name, **entry.params) != entry.outcome:
            return False
    return True


# ── Maximal values of the multiplicative extension ─────────────────────────────

def extended_value(k: int, sizes: Iterable[int]) -> int:
    """p_-k(λ) = product of p_-k over the part sizes of λ."""
    return prod(colored_count(k, s) for s in sizes)


def _brute_force_max(k: int, n: int) -> tuple:
    best, maximizers = 0, []
    for sizes in size_multisets(n):
        value = extended_value(k, sizes)
        if value > best:
            best, maximizers = value, [list(sizes)]
        elif value == best:
            maximizers.append(list(sizes))
    return best, maximizers


def _closed_form_max(k: int, n: int) -> tuple:
    if k == 2:
        if n % 2 == 0:
            return 5 ** (n // 2), [[2] * (n // 2)]
        value = 2 * 5 ** ((n - 1) // 2)
        maximizers = [[2] * ((n - 1) // 2) + [1]]
        if n >= 3:
            maximizers.insert(0, [3] + [2] * ((n - 3) // 2))
        return value, maximizers
    if k == 3:
        return 3 ** n, [[2] * m + [1] * (n - 2 * m) for m in range(n // 2, -1, -1)]
    return k ** n, [[1] * n]


def max_product(k: int, n: int, mode: MaxMode = MaxMode.BRUTE_FORCE) -> MaxResult:
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    mode = MaxMode(mode)
    if mode == MaxMode.BRUTE_FORCE:
        value, maximizers = _brute_force_max(k, n)
    else:
        value, maximizers = _closed_form_max(k, n)
    return MaxResult(k=k, n=n, mode=mode, value=value, maximizers=maximizers)


def check_color_blind_product(k: int, n_max: int = 6) -> bool:
    """The maximum over coloured partitions equals the maximum over size multisets."""
    for n in range(1, n_max + 1):
        colored_best = max(
            extended_value(k, lam.sizes()) for lam in enumerate_partitions(k, n)
        )
        if colored_best != _brute_force_max(k, n)[0]:
            return False
    return True
