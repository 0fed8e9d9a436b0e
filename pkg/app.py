"""
Command-line front end for the k-coloured partition toolkit.

Usage:
    python app.py table --format csv              # p_-k(n) for k in [2,10], n in [1,11]
    python app.py count --k 2 --n 4 --require 1   # p_-2(4 | at least one 1_1's)
    python app.py scan conjecture --kmax 10 --nmax 11 --format json
    python app.py audit g --k 2 --a 3 --variant as-written
    python app.py max --k 2 --n 7 --mode both
    python app.py verify base --kmin 2 --kmax 10
"""

import logging
import sys
from pathlib import Path

import click
from pydantic import ValidationError

from backend import config
from backend.constant import MAP_NAMES, OUTPUT_FORMATS, SCAN_NAMES
from backend.exceptions import PartitionToolkitError
from backend.runner import MAX_MODES, CommandConfig, run
from backend.schemas import MapVariant


def common_options(fn):
    """--format, --cache, --workers, --expect and --verbose for every subcommand."""
    options = [
        click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS),
                     default="text", show_default=True, help="Output format"),
        click.option("--cache", "cache_path", type=click.Path(path_type=Path), default=None,
                     is_flag=False, flag_value=config.CACHE_DIR,
                     help="Cache directory for count tables (bare flag: PARTITION_CACHE_DIR)"),
        click.option("--workers", type=click.IntRange(min=1), default=config.WORKERS,
                     show_default=True, help="Parallel workers for scans and audits"),
        click.option("--expect", "expect_path", type=click.Path(path_type=Path), default=None,
                     help="JSON file with expected results; a mismatch exits with 1"),
        click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _execute(command: str, target=None, verbose: bool = False, **fields) -> None:
    if verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
    ctx = click.get_current_context()
    try:
        config_ = CommandConfig(command=command, target=target, **fields)
    except ValidationError as e:
        messages = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise click.UsageError(messages, ctx=ctx)

    try:
        status, text = run(config_)
    except PartitionToolkitError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(2)
    click.echo(text, nl=False)
    ctx.exit(status)


@click.group()
@click.version_option(version="1.0.0", prog_name="kcolor")
def cli():
    """
    Exact counts, inequality scans and injection audits for k-coloured partitions.

    Exit status: 0 completed, 1 completed with expectation mismatches,
    2 usage or capacity error.
    """


@cli.command()
@click.option("--kmin", "k_min", type=int, default=None, help="Smallest k (default 2)")
@click.option("--kmax", "k_max", type=int, default=None, help="Largest k (default 10)")
@click.option("--nmin", "n_min", type=int, default=None, help="Smallest n (default 1)")
@click.option("--nmax", "n_max", type=int, default=None, help="Largest n (default 11)")
@common_options
def table(**options):
    """Grid of p_-k(n); the defaults give the 9 x 11 reference table."""
    _execute("table", **options)


@cli.command()
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--n", type=click.IntRange(min=0), required=True)
@click.option("--forbid", default=None, help="Colours c whose unit part 1_c is forbidden, e.g. 1,2")
@click.option("--require", default=None, help="Colours c needing at least one 1_c")
@common_options
def count(**options):
    """p_-k(n), optionally restricted by unit-part conditions."""
    _execute("count", **options)


@cli.command()
@click.argument("name", type=click.Choice(SCAN_NAMES))
@click.option("--kmax", "k_max", type=int, default=None)
@click.option("--sum-max", "sum_max", type=int, default=None, help="Largest a+b (or c+d)")
@click.option("--amax", "a_max", type=int, default=None)
@click.option("--nmax", "n_max", type=int, default=None)
@click.option("--mmax", "m_max", type=int, default=None)
@click.option("--smax", "s_max", type=int, default=None)
@click.option("--strong", is_flag=True, help="logconcave: p(n)^2 > p(n-m) p(n+m)")
@common_options
def scan(name, **options):
    """Classify an inequality over a parameter grid and list its exceptions."""
    _execute("scan", target=name, **options)


@cli.command()
@click.argument("name", type=click.Choice(MAP_NAMES))
@click.option("--k", type=int, required=True)
@click.option("--c", type=int, default=None)
@click.option("--d", type=int, default=None)
@click.option("--a", type=int, default=None)
@click.option("--variant", type=click.Choice([v.value for v in MapVariant]),
              default=MapVariant.COLOR_PRESERVING.value, show_default=True,
              help="Colour of the shortened last part in g's first case")
@common_options
def audit(name, **options):
    """Apply f or g to its whole domain and report collisions and misses."""
    _execute("audit", target=name, **options)


@cli.command("max")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--mode", type=click.Choice(MAX_MODES), default="brute-force", show_default=True)
@common_options
def max_(**options):
    """Maximum of p_-k over the partitions of n and its maximizers."""
    _execute("max", **options)


@cli.command()
@click.argument("check", type=click.Choice(["convolution", "base"]))
@click.option("--k", type=int, default=None)
@click.option("--split", type=int, default=None)
@click.option("--nmax", "n_max", type=int, default=None)
@click.option("--kmin", "k_min", type=int, default=None)
@click.option("--kmax", "k_max", type=int, default=None)
@common_options
def verify(check, **options):
    """Check the convolution identities or the base-case identity 5 C(k+2, 4)."""
    _execute("verify", target=check, **options)


if __name__ == "__main__":
    cli()
