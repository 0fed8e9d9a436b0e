"""
Command dispatch behind app.py.

run(config) returns (exit status, rendered report). Status 0 means the
command completed and every embedded expectation held, 1 means it completed
with a mismatch. Toolkit errors propagate so the caller can exit with 2.
"""

import logging
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ValidationError, model_validator

from backend import config
from backend.cache import default_cache_path, load_or_build_cache
from backend.constant import (
    BASE_IDENTITY_K_RANGE,
    CONVOLUTION_DEFAULTS,
    SCAN_DEFAULTS,
    SCAN_MINIMUMS,
    SCAN_NAMES,
    TABLE_K_RANGE,
    TABLE_N_RANGE,
)
from backend.counts import ConstraintProfile, colored_table, constrained_count, verify_convolution_identity
from backend.exceptions import PreconditionError
from backend.injections import audit_injection
from backend.render import render_audit, render_count, render_grid, render_max, render_scan, render_verify
from backend.schemas import (
    CountGrid,
    CountResult,
    CountRow,
    Expectation,
    MapVariant,
    MaxMode,
    OutputFormat,
    ScanReport,
    VerifyResult,
)
from backend import theorems

logger = logging.getLogger(__name__)

MAX_MODES = ("brute-force", "closed-form", "both")

RANGE_FLAGS = {
    "k_min": "--kmin",
    "k_max": "--kmax",
    "n_min": "--nmin",
    "n_max": "--nmax",
    "m_max": "--mmax",
    "a_max": "--amax",
    "s_max": "--smax",
    "sum_max": "--sum-max",
}


class CommandConfig(BaseModel):
    command: Literal["table", "count", "scan", "audit", "max", "verify"]
    target: Optional[str] = None

    k: Optional[int] = None
    n: Optional[int] = None
    a: Optional[int] = None
    c: Optional[int] = None
    d: Optional[int] = None
    split: Optional[int] = None

    k_min: Optional[int] = None
    k_max: Optional[int] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    m_max: Optional[int] = None
    a_max: Optional[int] = None
    s_max: Optional[int] = None
    sum_max: Optional[int] = None
    strong: bool = False

    forbid: Optional[str] = None
    require: Optional[str] = None
    variant: MapVariant = MapVariant.COLOR_PRESERVING
    mode: str = "brute-force"

    output_format: OutputFormat = OutputFormat.TEXT
    cache_path: Optional[Path] = None
    workers: int = 1
    expect_path: Optional[Path] = None

    @model_validator(mode="after")
    def _check(self) -> "CommandConfig":
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for name in ("k", "n", "a", "c", "d", "split", *RANGE_FLAGS):
            value = getattr(self, name)
            if value is not None and value > config.CAPACITY:
                raise ValueError(f"{name}={value} exceeds capacity {config.CAPACITY}")
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.command == "scan" and self.target not in SCAN_NAMES:
            raise ValueError(f"unknown scan {self.target!r}; choose from {', '.join(SCAN_NAMES)}")
        if self.command == "audit" and self.target not in ("f", "g"):
            raise ValueError(f"unknown map {self.target!r}; choose f or g")
        if self.command == "verify" and self.target not in ("convolution", "base"):
            raise ValueError(f"unknown check {self.target!r}; choose convolution or base")
        if self.command in ("count", "max", "audit") and self.k is None:
            raise ValueError(f"{self.command} needs --k")
        if self.command in ("count", "max") and self.n is None:
            raise ValueError(f"{self.command} needs --n")
        if self.command == "max":
            if self.n < 1:
                raise ValueError("max needs n >= 1")
            if self.k < 2:
                raise ValueError("max needs k >= 2")
            if self.mode not in MAX_MODES:
                raise ValueError(f"unknown mode {self.mode!r}")
        if self.command == "audit":
            needed = ("c", "d") if self.target == "f" else ("a",)
            missing = [f"--{p}" for p in needed if getattr(self, p) is None]
            if missing:
                raise ValueError(f"audit {self.target} needs {' '.join(missing)}")
        if self.command == "table":
            self._check_range("k", TABLE_K_RANGE, 1)
            self._check_range("n", TABLE_N_RANGE, 0)
        if self.command == "scan":
            self._check_scan_ranges()
        if self.command == "verify":
            self._check_verify_ranges()
        return self

    def _check_range(self, axis: str, defaults: tuple, floor: int) -> None:
        lo = self.pick(f"{axis}_min", defaults[0])
        hi = self.pick(f"{axis}_max", defaults[1])
        if lo < floor:
            raise ValueError(f"{RANGE_FLAGS[axis + '_min']} must be >= {floor}, got {lo}")
        if lo > hi:
            raise ValueError(f"empty {axis} range [{lo}, {hi}]")

    def _check_scan_ranges(self) -> None:
        key = self.scan_key
        accepted = set(SCAN_DEFAULTS[key]) | ({"m_max"} if key == "logconcave-strong" else set())
        if self.strong and self.target != "logconcave":
            raise ValueError("--strong applies to the logconcave scan only")
        unused = [RANGE_FLAGS[f] for f in RANGE_FLAGS if getattr(self, f) is not None and f not in accepted]
        if unused:
            raise ValueError(f"scan {self.target} does not take {' '.join(unused)}")
        for field in accepted:
            value = self.pick(field, SCAN_DEFAULTS[key].get(field, SCAN_MINIMUMS[field]))
            if value < SCAN_MINIMUMS[field]:
                raise ValueError(
                    f"{RANGE_FLAGS[field]} must be >= {SCAN_MINIMUMS[field]} for scan {self.target}, got {value}"
                )

    def _check_verify_ranges(self) -> None:
        if self.target == "base" or self.k is None:
            defaults = BASE_IDENTITY_K_RANGE if self.target == "base" else (
                CONVOLUTION_DEFAULTS["k_min"], CONVOLUTION_DEFAULTS["k_max"]
            )
            self._check_range("k", defaults, 2)
        elif self.k < 2:
            raise ValueError(f"verify convolution needs k >= 2, got {self.k}")

    @property
    def scan_key(self) -> str:
        return "logconcave-strong" if self.target == "logconcave" and self.strong else self.target

    def pick(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value


# ── Expectations ───────────────────────────────────────────────────────────────

def _load_expectation(config_: CommandConfig) -> Optional[Expectation]:
    if config_.expect_path is None:
        return None
    path = Path(config_.expect_path)
    try:
        return Expectation.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise PreconditionError(f"cannot read expectation file {path}: {e}") from e
    except ValidationError as e:
        raise PreconditionError(f"invalid expectation file {path}: {e}") from e


def _scan_matches(report: ScanReport, expected: Expectation) -> bool:
    if expected.exceptions is None:
        raise PreconditionError("scan expectation needs an 'exceptions' list")
    order = report.param_order
    wanted = set()
    for item in expected.exceptions:
        if set(item) != set(order):
            raise PreconditionError(
                f"expected exception {item} must have exactly the keys {', '.join(order)}"
            )
        wanted.add(tuple(item[p] for p in order))
    found = set(report.exception_params())
    if wanted != found:
        logger.warning("expected exceptions %s, found %s", sorted(wanted), sorted(found))
        return False
    return True


def _fields_match(model: BaseModel, expected: Expectation, keys: tuple) -> bool:
    data = model.model_dump()
    for key, value in expected.present(keys).items():
        if data[key] != value:
            logger.warning("expected %s=%s, got %s", key, value, data[key])
            return False
    return True


# ── Handlers ───────────────────────────────────────────────────────────────────

def _prime_cache(config_: CommandConfig, ks, limit: int) -> None:
    if config_.cache_path is None:
        return
    for k in ks:
        load_or_build_cache(default_cache_path(k, config_.cache_path), k, limit)


def _table(config_: CommandConfig) -> tuple:
    k_lo, k_hi = config_.pick("k_min", TABLE_K_RANGE[0]), config_.pick("k_max", TABLE_K_RANGE[1])
    n_lo, n_hi = config_.pick("n_min", TABLE_N_RANGE[0]), config_.pick("n_max", TABLE_N_RANGE[1])
    _prime_cache(config_, range(k_lo, k_hi + 1), n_hi)
    rows = [
        CountRow(k=k, values=list(colored_table(k, n_hi).values[n_lo: n_hi + 1]))
        for k in range(k_lo, k_hi + 1)
    ]
    grid = CountGrid(k_range=[k_lo, k_hi], n_range=[n_lo, n_hi], rows=rows)
    return 0, render_grid(grid, config_.output_format)


def _count(config_: CommandConfig) -> tuple:
    profile = ConstraintProfile.parse(config_.forbid, config_.require)
    _prime_cache(config_, [config_.k], config_.n)
    result = CountResult(
        k=config_.k,
        n=config_.n,
        condition=profile.describe(),
        count=constrained_count(config_.k, config_.n, profile),
    )
    return 0, render_count(result, config_.output_format)


def _scan(config_: CommandConfig) -> tuple:
    name = config_.target
    defaults = SCAN_DEFAULTS[config_.scan_key]
    pick = lambda field: config_.pick(field, defaults[field])  # noqa: E731
    workers = config_.workers

    if name == "theorem2":
        report = theorems.scan_theorem2(pick("k_max"), pick("sum_max"), workers)
    elif name == "bo":
        report = theorems.scan_bessenrodt_ono(pick("sum_max"), workers)
    elif name == "lemma-key":
        report = theorems.scan_lemma_key(pick("k_max"), pick("sum_max"), workers)
    elif name == "lemma-g":
        report = theorems.scan_lemma_g(pick("k_max"), pick("a_max"), workers)
    elif name == "lemma-ab":
        report = theorems.scan_lemma_ab(pick("k_max"), pick("sum_max"), workers)
    elif name == "conjecture":
        report = theorems.scan_conjecture(pick("k_max"), pick("n_max"), workers)
    elif name == "logconcave":
        report = theorems.scan_log_concavity_p(pick("n_max"), config_.strong, config_.m_max, workers)
    elif name == "logconcave-colored":
        report = theorems.scan_log_concavity_colored(pick("k_max"), pick("n_max"), workers)
    elif name == "two-step":
        report = theorems.scan_two_step_bound(pick("n_max"))
    elif name == "doubling":
        report = theorems.scan_doubling_bound(pick("n_max"))
    else:
        report = theorems.scan_halving_step(pick("k_max"), pick("s_max"), workers)

    expected = _load_expectation(config_)
    status = 0 if expected is None or _scan_matches(report, expected) else 1
    return status, render_scan(report, config_.output_format)


def _audit(config_: CommandConfig) -> tuple:
    if config_.target == "f":
        parameters = {"c": config_.c, "d": config_.d}
    else:
        parameters = {"a": config_.a}
    report = audit_injection(
        config_.target, config_.k, parameters, config_.variant, workers=config_.workers
    )
    expected = _load_expectation(config_)
    keys = ("injective", "surjective", "domain_size", "codomain_size", "unhit_count")
    status = 0
    if report.codomain_violations:
        status = 1
    if expected is not None and not _fields_match(report, expected, keys):
        status = 1
    return status, render_audit(report, config_.output_format)


def _max(config_: CommandConfig) -> tuple:
    mode = MaxMode.CLOSED_FORM if config_.mode == "closed-form" else MaxMode.BRUTE_FORCE
    result = theorems.max_product(config_.k, config_.n, mode)
    status = 0
    if config_.mode == "both":
        closed = theorems.max_product(config_.k, config_.n, MaxMode.CLOSED_FORM)
        if (closed.value, closed.maximizers) != (result.value, result.maximizers):
            logger.warning("closed form disagrees with brute force at k=%d n=%d", config_.k, config_.n)
            status = 1
    expected = _load_expectation(config_)
    if expected is not None and not _fields_match(result, expected, ("value", "maximizers")):
        status = 1
    return status, render_max(result, config_.output_format)


def _verify(config_: CommandConfig) -> tuple:
    if config_.target == "base":
        k_lo = config_.pick("k_min", BASE_IDENTITY_K_RANGE[0])
        k_hi = config_.pick("k_max", BASE_IDENTITY_K_RANGE[1])
        failures = [{"k": k} for k in range(k_lo, k_hi + 1) if not theorems.verify_base_identity([k])]
        result = VerifyResult(
            check="base", parameters={"k_min": k_lo, "k_max": k_hi},
            holds=not failures, failures=failures,
        )
    else:
        n_max = config_.pick("n_max", CONVOLUTION_DEFAULTS["n_max"])
        if config_.k is not None:
            ks = [config_.k]
        else:
            ks = range(config_.pick("k_min", CONVOLUTION_DEFAULTS["k_min"]),
                       config_.pick("k_max", CONVOLUTION_DEFAULTS["k_max"]) + 1)
        _prime_cache(config_, ks, n_max)
        failures = []
        checked = {}
        for k in ks:
            splits = [config_.split] if config_.split is not None else range(1, k)
            for split in splits:
                if not verify_convolution_identity(k, split, n_max):
                    failures.append({"k": k, "split": split})
        checked["n_max"] = n_max
        if config_.k is not None:
            checked["k"] = config_.k
        if config_.split is not None:
            checked["split"] = config_.split
        result = VerifyResult(check="convolution", parameters=checked, holds=not failures, failures=failures)

    expected = _load_expectation(config_)
    status = 0 if result.holds else 1
    if expected is not None and not _fields_match(result, expected, ("holds",)):
        status = 1
    return status, render_verify(result, config_.output_format)


HANDLERS = {
    "table": _table,
    "count": _count,
    "scan": _scan,
    "audit": _audit,
    "max": _max,
    "verify": _verify,
}


def run(config_: CommandConfig) -> tuple:
    logger.debug("running %s", config_.model_dump(exclude_none=True))
    return HANDLERS[config_.command](config_)
