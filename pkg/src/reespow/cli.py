"""Command line interface for instance files.

Exit status: 0 when the computation finishes and no checker reports a
violation, 2 when a checker verdict is VIOLATION, 1 on malformed input,
unsupported instances, or resource limits.
"""

from __future__ import annotations

import sys

import click

from . import backend
from .asymptotics import (
    VIOLATION,
    ass_sequence,
    burch_check,
    cm_equality_check,
    cowsik_nori_check,
    grade_check,
    quotient_depth_sequence,
)
from .errors import (
    EngineInconsistencyError,
    InstanceParseError,
    ResourceLimitError,
    RingMismatchError,
    UnsupportedInstanceError,
)
from .instance import load_instance
from .report import invariant_record, power_csv, record_json

_USER_ERRORS = (
    InstanceParseError,
    UnsupportedInstanceError,
    ResourceLimitError,
    RingMismatchError,
    EngineInconsistencyError,
    ValueError,
    OSError,
)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _options(f):
    for opt in (
        click.option("--n-max", type=int, default=None, help="Largest power to inspect."),
        click.option("--window", type=int, default=None, help="Tail length for stability."),
        click.option("--char", type=int, default=None, help="Override the coefficient characteristic."),
        click.option("--seed", type=int, default=None, help="Seed for randomized searches."),
        click.option("--backend", "backend_choice", type=click.Choice(["auto", "numba", "numpy"]), default=None, help="Reduction kernel selection."),
    ):
        f = opt(f)
    return f


def _load(path, char, n_max, window, seed, backend_choice):
    if backend_choice:
        backend.configure(backend_choice)
    return load_instance(path, char=char, n_max=n_max, window=window, seed=seed)


@click.group()
def main():
    """Exact invariants of Rees powers of modules over polynomial rings."""


def _checker_command(name, runner, help_text):
    @main.command(name=name, help=help_text)
    @click.argument("instance", type=click.Path(exists=True, dir_okay=False))
    @click.option("--out", type=click.Path(dir_okay=False), default=None)
    @_options
    def cmd(instance, out, n_max, window, char, seed, backend_choice):
        try:
            inst = _load(instance, char, n_max, window, seed, backend_choice)
            verdict = runner(inst.context(), inst.n_max, inst.window)
        except _USER_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        _emit(record_json(verdict.as_dict()), out)
        sys.exit(2 if verdict.verdict == VIOLATION else 0)

    return cmd


_checker_command(
    "burch", burch_check, "Spread against the depth-corrected bound d + e - 1."
)
_checker_command(
    "grade", grade_check, "Grade of the base ideal on the Rees algebra vs power depths."
)
_checker_command(
    "cm-equality",
    cm_equality_check,
    "Depth equality when the Rees algebra is Cohen-Macaulay.",
)
_checker_command(
    "cowsik-nori",
    cowsik_nori_check,
    "Cohen-Macaulay quotients against equimultiplicity.",
)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.argument("n", type=int)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_options
def power(instance, n, out, n_max, window, char, seed, backend_choice):
    """CSV generator matrix of the n-th Rees power."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        text = power_csv(inst.context(), n)
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _emit(text, out)


@main.command(name="depth-seq")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_options
def depth_seq(instance, n_max, window, char, seed, backend_choice):
    """Depth and dimension of G_n/E_n for n = 1..n_max."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        seq = quotient_depth_sequence(inst.context(), inst.n_max, inst.window)
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for n, depth, dim in seq.entries:
        click.echo(f"n={n} depth={depth} dim={dim}")
    if seq.stable_from is None:
        click.echo("stable=no")
    else:
        click.echo(f"stable=yes from={seq.stable_from} depth={seq.stable_depth}")


@main.command(name="ass-seq")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_options
def ass_seq(instance, n_max, window, char, seed, backend_choice):
    """Associated primes of G_n/E_n for n = 1..n_max (monomial instances)."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        seq = ass_sequence(inst.context(), inst.n_max, inst.window)
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if not seq.supported:
        click.echo(f"UNSUPPORTED: {seq.reason}")
        sys.exit(0)
    for n, primes, free in seq.entries:
        star = " +free" if free else ""
        click.echo(f"n={n} primes={' '.join(primes)}{star}")
    if seq.stable_from is None:
        click.echo("stable=no")
    else:
        click.echo(f"stable=yes from={seq.stable_from}")


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_options
def spread(instance, n_max, window, char, seed, backend_choice):
    """Analytic spread of the module."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        click.echo(str(inst.context().analytic_spread()))
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_options
def dim(instance, n_max, window, char, seed, backend_choice):
    """Krull dimension of the Rees algebra."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        click.echo(str(inst.context().dim_rees()))
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--no-meta", is_flag=True, default=False, help="Drop timings for byte-stable output.")
@_options
def report(instance, out, no_meta, n_max, window, char, seed, backend_choice):
    """Full invariant record as JSON."""
    try:
        inst = _load(instance, char, n_max, window, seed, backend_choice)
        record = invariant_record(inst, include_meta=not no_meta)
    except _USER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _emit(record_json(record), out)
    bad = any(c["verdict"] == VIOLATION for c in record["checkers"])
    sys.exit(2 if bad else 0)


if __name__ == "__main__":
    main()
