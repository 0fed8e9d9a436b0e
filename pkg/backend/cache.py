"""
On-disk cache for p_{-k}(n) tables.

The document is {"schema": 1, "k": k, "profile": {...}, "counts": ["1", "2", ...]}
with counts as decimal strings.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from backend import config
from backend.counts import EMPTY_PROFILE, CountTable, colored_count, install_table
from backend.exceptions import CacheValidationError
from backend.schemas import CountCache, ProfileModel

logger = logging.getLogger(__name__)

VALIDATED_PREFIX = 3


def default_cache_path(k: int, directory: Optional[Union[str, Path]] = None) -> Path:
    return Path(directory or config.CACHE_DIR) / f"colored_k{k}.json"


def write_cache(path: Union[str, Path], table: CountTable) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = CountCache(
        schema=config.SCHEMA_VERSION,
        k=table.k,
        profile=ProfileModel(**table.profile.as_dict()),
        counts=list(table.values),
    )
    path.write_text(document.model_dump_json(by_alias=True), encoding="utf-8")
    logger.info("wrote %d counts for k=%d to %s", len(table), table.k, path)
    return path


def read_cache(path: Union[str, Path], k: int) -> Optional[CountTable]:
    """
    Parse and check a cache file.

    Returns None (after a warning) when the file is absent, unparseable or
    for another schema/k/profile. Raises CacheValidationError when it parses
    but its leading counts disagree with recomputation.
    """
    path = Path(path)
    if not path.exists():
        return None
    try:
        document = CountCache.model_validate_json(path.read_text(encoding="utf-8"))
    except (ValidationError, ValueError, OSError) as e:
        logger.warning("cache %s unreadable, rebuilding: %s", path, e)
        return None

    if document.schema_ != config.SCHEMA_VERSION or document.k != k:
        logger.warning(
            "cache %s has schema %s for k=%s, expected schema %s for k=%s; rebuilding",
            path, document.schema_, document.k, config.SCHEMA_VERSION, k,
        )
        return None
    if document.profile.forbidden_units or document.profile.required_units:
        logger.warning("cache %s holds a constrained table; rebuilding", path)
        return None
    if not document.counts:
        logger.warning("cache %s is empty; rebuilding", path)
        return None

    for n, cached in enumerate(document.counts[:VALIDATED_PREFIX]):
        expected = colored_count(k, n)
        if cached != expected:
            raise CacheValidationError(
                f"cache {path}: p_-{k}({n}) is {cached}, recomputed {expected}"
            )
    return CountTable(k, EMPTY_PROFILE, values=document.counts)


def load_or_build_cache(path: Optional[Union[str, Path]], k: int, limit: int) -> CountTable:
    """Load the k table from path (or the default cache directory), extend it to limit, persist."""
    path = Path(path) if path else default_cache_path(k)
    loaded = read_cache(path, k)
    if loaded is None:
        logger.info("building k=%d table to n=%d", k, limit)
        table = install_table(CountTable(k, EMPTY_PROFILE))
        stale = True
    else:
        table = install_table(loaded)
        stale = loaded.limit < limit
    table.extend(limit)
    if stale:
        write_cache(path, table)
    return table
