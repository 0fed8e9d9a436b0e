"""
The part-surgery maps f_k and g_k and an exhaustive auditor for them.

f_k : P_{-k}(c+d | no 1_1 and no 1_2) -> P_{-k}(c | no 1_1) x P_{-k}(d | no 1_2)
g_k : P_{-k}(a+1 | no 1_1)            -> P_{-k}(a | no 1_1) x P_{-k}(1)

Both maps are applied literally; outputs are re-canonicalized. The auditor
reports what the maps do and never repairs them.
"""

import logging
from itertools import islice, product
from typing import NamedTuple, Optional

from backend import config
from backend.colored import (
    ColoredPart,
    ColoredPartition,
    canonicalize,
    enumerate_partitions,
    oracle_count,
    satisfies,
)
from backend.counts import EMPTY_PROFILE, ConstraintProfile
from backend.exceptions import PreconditionError, ScaleLimitError
from backend.schemas import AuditReport, CodomainPair, Collision, MappedPair, MapVariant
from backend.workers import ordered_map

logger = logging.getLogger(__name__)

NO_1_1 = ConstraintProfile.forbid(1)
NO_1_2 = ConstraintProfile.forbid(2)
NO_1_1_NO_1_2 = ConstraintProfile.forbid(1, 2)


class SplitData(NamedTuple):
    """i is 1-based; x + (tail after i) = d and y + (head before i) = c."""

    i: int
    x: int
    y: int


def _units(color: int, count: int) -> list:
    return [ColoredPart(1, color)] * count


def _check_colors(k: int, lam: ColoredPartition) -> None:
    for part in lam:
        if not 1 <= part.color <= k:
            raise PreconditionError(f"{lam} has colour outside 1..{k}")


# ── Split point ────────────────────────────────────────────────────────────────

def split_point(lam: ColoredPartition, c: int, d: int) -> SplitData:
    """Largest i with size(λ_i) + ... + size(λ_t) >= d, and the cut of λ_i."""
    if not lam.parts:
        raise PreconditionError("split point of the empty partition")
    if c < 1 or d < 1:
        raise PreconditionError(f"c and d must be positive, got c={c} d={d}")
    if lam.weight != c + d:
        raise PreconditionError(f"weight of {lam} is {lam.weight}, expected {c + d}")

    tail = 0
    for index in range(len(lam.parts), 0, -1):
        size = lam.parts[index - 1].size
        if tail + size >= d:
            x = d - tail
            return SplitData(i=index, x=x, y=size - x)
        tail += size
    raise AssertionError("tail sum never reached d")  # weight >= d rules this out


# ── f_k ────────────────────────────────────────────────────────────────────────

def apply_f(k: int, c: int, d: int, lam: ColoredPartition) -> tuple:
    if not c >= d >= 1:
        raise PreconditionError(f"need c >= d >= 1, got c={c} d={d}")
    if c < 2:
        raise PreconditionError("c = d = 1 is counted directly, not mapped")
    _check_colors(k, lam)
    if not satisfies(lam, NO_1_1_NO_1_2):
        raise PreconditionError(f"{lam} contains 1_1 or 1_2")

    parts = lam.parts
    i, x, y = split_point(lam, c, d)
    head = list(parts[: i - 1])
    tail = list(parts[i:])
    color = parts[i - 1].color

    if y == 0:
        mu, nu = head, [parts[i - 1]] + tail
    elif y >= 2:
        mu, nu = head + [ColoredPart(y, color)], tail + _units(1, x)
    elif color == 1:
        # i >= 2 here: i = 1 with y = 1 would force c = 1
        assert i >= 2, "f case y=1, c(λ_i)=1 without λ_{i-1}"
        mu = head[:-1] + _units(2, parts[i - 2].size + 1)
        nu = tail + _units(1, x)
    else:
        mu, nu = head + [ColoredPart(1, color)], tail + _units(1, x)

    return canonicalize(mu), canonicalize(nu)


# ── g_k ────────────────────────────────────────────────────────────────────────

def apply_g(
    k: int,
    a: int,
    lam: ColoredPartition,
    variant: MapVariant = MapVariant.COLOR_PRESERVING,
) -> tuple:
    if a < 2:
        raise PreconditionError(f"need a >= 2, got a={a}")
    if lam.weight != a + 1:
        raise PreconditionError(f"weight of {lam} is {lam.weight}, expected {a + 1}")
    _check_colors(k, lam)
    if not satisfies(lam, NO_1_1):
        raise PreconditionError(f"{lam} contains 1_1")

    parts = list(lam.parts)
    last = parts[-1]
    one_1 = [ColoredPart(1, 1)]

    if last.size >= 3:
        color = 1 if variant == MapVariant.AS_WRITTEN else last.color
        mu, nu = parts[:-1] + [ColoredPart(last.size - 1, color)], one_1
    elif last.size == 2 and last.color == 1:
        assert len(parts) >= 2, "g case λ_t = 2_1 without λ_{t-1}"
        mu, nu = parts[:-2] + _units(2, parts[-2].size + 1), one_1
    elif last.size == 2:
        mu, nu = parts[:-1] + [ColoredPart(1, last.color)], one_1
    else:
        mu, nu = parts[:-1], [last]

    return canonicalize(mu), canonicalize(nu)


# ── Audit ──────────────────────────────────────────────────────────────────────

class _MapSpec(NamedTuple):
    name: str
    k: int
    parameters: dict
    variant: Optional[MapVariant]
    domain: tuple  # (weight, profile)
    mu_side: tuple
    nu_side: tuple


def _describe(weight: int, profile: ConstraintProfile, k: int) -> str:
    if profile.is_empty:
        return f"P_-{k}({weight})"
    return f"P_-{k}({weight} | {profile.describe()})"


def _map_spec(name: str, k: int, parameters: dict, variant: Optional[MapVariant]) -> _MapSpec:
    if k < 2:
        raise PreconditionError(f"maps need k >= 2, got k={k}")
    if name == "f":
        c, d = parameters["c"], parameters["d"]
        if not c >= d >= 1 or c < 2:
            raise PreconditionError(f"f needs c >= d >= 1 and c >= 2, got c={c} d={d}")
        return _MapSpec(
            "f", k, {"c": c, "d": d}, None,
            (c + d, NO_1_1_NO_1_2), (c, NO_1_1), (d, NO_1_2),
        )
    if name == "g":
        a = parameters["a"]
        if a < 2:
            raise PreconditionError(f"g needs a >= 2, got a={a}")
        return _MapSpec(
            "g", k, {"a": a}, variant or MapVariant.COLOR_PRESERVING,
            (a + 1, NO_1_1), (a, NO_1_1), (1, EMPTY_PROFILE),
        )
    raise PreconditionError(f"unknown map {name!r}")


def _apply(spec: _MapSpec, lam: ColoredPartition) -> tuple:
    if spec.name == "f":
        return apply_f(spec.k, spec.parameters["c"], spec.parameters["d"], lam)
    return apply_g(spec.k, spec.parameters["a"], lam, spec.variant)


def _in_side(part: ColoredPartition, side: tuple, k: int) -> bool:
    weight, profile = side
    return (
        part.weight == weight
        and all(1 <= p.color <= k for p in part)
        and satisfies(part, profile)
    )


def _map_shard(job: tuple) -> list:
    spec, shard = job
    return [(lam, _apply(spec, lam)) for lam in shard]


def _shards(items: list, count: int) -> list:
    size = max(1, -(-len(items) // max(count, 1)))
    return [items[i: i + size] for i in range(0, len(items), size)]


def audit_injection(
    name: str,
    k: int,
    parameters: dict,
    variant: Optional[MapVariant] = None,
    workers: int = 1,
    max_weight: Optional[int] = None,
    max_k: Optional[int] = None,
    unhit_sample: Optional[int] = None,
) -> AuditReport:
    """Apply a map to its whole domain and report violations, collisions and misses."""
    spec = _map_spec(name, k, parameters, variant)
    max_weight = config.AUDIT_MAX_WEIGHT if max_weight is None else max_weight
    max_k = config.AUDIT_MAX_K if max_k is None else max_k
    unhit_sample = config.AUDIT_UNHIT_SAMPLE if unhit_sample is None else unhit_sample

    weight, domain_profile = spec.domain
    if weight > max_weight or k > max_k:
        raise ScaleLimitError(
            f"audit of {name} at weight {weight}, k={k} exceeds limit "
            f"(weight <= {max_weight}, k <= {max_k})"
        )

    domain = list(enumerate_partitions(k, weight, domain_profile))
    logger.info("auditing %s k=%d %s over %d partitions", name, k, spec.parameters, len(domain))

    mapped = []
    for chunk in ordered_map(_map_shard, [(spec, s) for s in _shards(domain, workers)], workers):
        mapped.extend(chunk)

    violations = []
    collisions = []
    first_preimage: dict = {}
    for lam, (mu, nu) in mapped:
        if not (_in_side(mu, spec.mu_side, k) and _in_side(nu, spec.nu_side, k)):
            violations.append(MappedPair(source=str(lam), mu=str(mu), nu=str(nu)))
            continue
        earlier = first_preimage.setdefault((mu, nu), lam)
        if earlier is not lam:
            collisions.append(
                Collision(first=str(earlier), second=str(lam), mu=str(mu), nu=str(nu))
            )

    mu_weight, mu_profile = spec.mu_side
    nu_weight, nu_profile = spec.nu_side
    codomain_size = oracle_count(k, mu_weight, mu_profile) * oracle_count(k, nu_weight, nu_profile)
    unhit = (
        (mu, nu)
        for mu, nu in product(
            list(enumerate_partitions(k, mu_weight, mu_profile)),
            list(enumerate_partitions(k, nu_weight, nu_profile)),
        )
        if (mu, nu) not in first_preimage
    )
    examples = [CodomainPair(mu=str(mu), nu=str(nu)) for mu, nu in islice(unhit, unhit_sample)]
    unhit_count = len(examples) + sum(1 for _ in unhit)

    report = AuditReport(
        map=name,
        k=k,
        parameters=spec.parameters,
        variant=spec.variant,
        domain=_describe(weight, domain_profile, k),
        codomain=f"{_describe(mu_weight, mu_profile, k)} x {_describe(nu_weight, nu_profile, k)}",
        domain_size=len(domain),
        codomain_size=codomain_size,
        codomain_violations=violations,
        collisions=collisions,
        unhit_count=unhit_count,
        unhit_codomain_examples=examples,
        injective=not collisions,
        surjective=unhit_count == 0,
    )
    logger.info(
        "audit %s k=%d %s: %d collisions, %d unhit", name, k, spec.parameters,
        len(collisions), unhit_count,
    )
    return report
