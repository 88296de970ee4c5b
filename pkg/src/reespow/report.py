"""Machine-readable outputs: the invariant record and power CSV export.

The record is plain JSON with sorted keys.  Without the meta block the
bytes are a deterministic function of the instance and the run options,
which the tests rely on.
"""

from __future__ import annotations

import csv
import io
import json
import time

from . import __version__, backend
from .asymptotics import (
    all_checkers,
    ass_sequence,
    json_value,
    quotient_depth_sequence,
)
from .errors import UnsupportedInstanceError
from .instance import Instance
from .rees import ReesContext

SCHEMA_VERSION = 1


def t_monomial_label(exponents: tuple[int, ...]) -> str:
    parts = []
    for i, a in enumerate(exponents):
        if a == 1:
            parts.append(f"t{i}")
        elif a > 1:
            parts.append(f"t{i}^{a}")
    return "*".join(parts) if parts else "1"


def power_csv(ctx: ReesContext, n: int) -> str:
    """Generator matrix of E_n: one row per t-monomial, one column per
    minimal generator, entries printed as polynomials."""
    power = ctx.rees_power(n)
    gens = power.minimal_gens()
    basis = ctx.t_basis(n) if n > 0 else [(0,) * ctx.rank]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["monomial"] + [f"g{j}" for j in range(len(gens))])
    for c, mono in enumerate(basis):
        row = [t_monomial_label(mono)]
        for g in gens:
            row.append(str(g.component(c)))
        writer.writerow(row)
    return buf.getvalue()


def invariant_record(
    instance: Instance, include_meta: bool = True
) -> dict:
    """All primary invariants, sequences, and checker verdicts of an instance."""
    timings: dict[str, float] = {}

    def timed(name, thunk):
        start = time.perf_counter()
        out = thunk()
        timings[name] = round(time.perf_counter() - start, 6)
        return out

    ctx = timed("context", instance.context)
    n_max, window, seed = instance.n_max, instance.window, instance.seed

    spread = timed("analyticSpread", ctx.analytic_spread)
    dim_rees = timed("dimRees", ctx.dim_rees)
    fitting_height = timed("fittingHeight", ctx.fitting_height)
    ideal_module = timed("idealModule", ctx.is_ideal_module)
    if ideal_module:
        deviation = ctx.deviation()
        analytic_deviation = ctx.analytic_deviation()
        ci = ctx.is_complete_intersection()
        equimultiple = ctx.is_equimultiple()
        try:
            generically_ci = ctx.is_generically_ci()
        except UnsupportedInstanceError:
            generically_ci = None
    else:
        deviation = analytic_deviation = ci = equimultiple = generically_ci = None

    depth_seq = timed(
        "depthSequence", lambda: quotient_depth_sequence(ctx, n_max, window)
    )
    ass_seq = timed("assSequence", lambda: ass_sequence(ctx, n_max, window))
    checkers = timed(
        "checkers", lambda: all_checkers(ctx, n_max=n_max, window=window, seed=seed)
    )

    record = {
        "schemaVersion": SCHEMA_VERSION,
        "ring": {
            "char": ctx.ring.char,
            "vars": list(ctx.ring.names),
            "weights": list(ctx.ring.weights),
        },
        "module": {
            "ambientRank": ctx.rank,
            "generators": [str(g) for g in instance.gens],
            "minimalGenerators": [str(g) for g in ctx.min_gens],
            "generatorDegrees": list(ctx.degrees),
        },
        "options": {"nMax": n_max, "window": window, "seed": seed},
        "invariants": json_value(
            {
                "d": ctx.ring.nvars,
                "e": ctx.rank,
                "mu": ctx.mu,
                "rank": ctx.generic_rank(),
                "analyticSpread": spread,
                "dimRees": dim_rees,
                "fittingHeight": fitting_height,
                "idealModule": ideal_module,
                "deviation": deviation,
                "analyticDeviation": analytic_deviation,
                "completeIntersection": ci,
                "equimultiple": equimultiple,
                "genericallyCI": generically_ci,
                "depthRees": ctx.rees_quotient().depth(),
            }
        ),
        "depthSequence": depth_seq.as_dict(),
        "assSequence": ass_seq.as_dict(),
        "checkers": [cv.as_dict() for cv in checkers],
    }
    if include_meta:
        record["meta"] = {
            "version": __version__,
            "backend": backend.selected(),
            "timings": timings,
        }
    return record


def record_json(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + "\n"
