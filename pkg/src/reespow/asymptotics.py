"""Asymptotic behavior of Rees powers: depth and dimension sequences,
associated prime sequences, superficial elements, reduction modulo a
linear form, and checkers for the asymptotic statements.

Checker verdicts are three-valued.  CONSISTENT means every identity
whose hypotheses were established held exactly (possibly vacuously).
VIOLATION means an identity failed although its hypotheses were fully
verified, which would indicate an engine bug or a genuine
counterexample.  INCONCLUSIVE means a hypothesis could not be verified
inside the computed window, so a failed identity is not promoted to a
contradiction.  Statements that quantify over all powers are tested on
the window n = 1..n_max; the reported onset of a constant depth tail is
window evidence, not a proof of stabilization.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .element import Element
from .errors import UnsupportedInstanceError
from .modops import (
    INFINITE_DEPTH,
    Quotient,
    Submodule,
    koszul_grade,
    module_depth,
)
from .rees import ReesContext

CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"
INCONCLUSIVE = "INCONCLUSIVE"

_SEVERITY = {CONSISTENT: 0, INCONCLUSIVE: 1, VIOLATION: 2}


def worst_verdict(verdicts: Sequence[str]) -> str:
    out = CONSISTENT
    for v in verdicts:
        if _SEVERITY[v] > _SEVERITY[out]:
            out = v
    return out


def json_value(v):
    """Recursively convert quantities to JSON-ready values (inf -> "inf")."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, dict):
        return {str(k): json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [json_value(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(json_value(x) for x in v)
    return str(v)


@dataclass
class CheckerVerdict:
    checker: str
    verdict: str
    quantities: dict
    explanation: str

    def as_dict(self) -> dict:
        return {
            "checker": self.checker,
            "verdict": self.verdict,
            "quantities": json_value(self.quantities),
            "explanation": self.explanation,
        }


def stable_tail(pairs: Sequence[tuple[int, object]], window: int):
    """(onset, value) when the trailing `window` values agree, else None.

    The onset is the first index of the maximal constant run ending at
    the last entry.
    """
    if window < 1 or len(pairs) < window:
        return None
    value = pairs[-1][1]
    if any(v != value for _, v in pairs[-window:]):
        return None
    onset = pairs[-1][0]
    for n, v in reversed(pairs):
        if v != value:
            break
        onset = n
    return onset, value


# -- sequences -----------------------------------------------------------


@dataclass
class DepthDimSequence:
    """Per-power depth and dimension of the quotients G_n/E_n."""

    entries: list[tuple[int, int | float, int]]
    stable_from: int | None
    stable_depth: int | float | None

    def depth_pairs(self) -> list[tuple[int, int | float]]:
        return [(n, depth) for n, depth, _ in self.entries]

    def as_dict(self) -> dict:
        return json_value(
            {
                "entries": [
                    {"n": n, "depth": depth, "dim": dim}
                    for n, depth, dim in self.entries
                ],
                "stableFrom": self.stable_from,
                "stableDepth": self.stable_depth,
            }
        )


def quotient_depth_sequence(ctx: ReesContext, n_max: int, window: int = 3) -> DepthDimSequence:
    entries = []
    for n in range(1, n_max + 1):
        q = ctx.power_quotient(n)
        entries.append((n, q.depth(), q.krull_dim()))
    tail = stable_tail([(n, depth) for n, depth, _ in entries], window)
    if tail is None:
        return DepthDimSequence(entries, None, None)
    return DepthDimSequence(entries, tail[0], tail[1])


def power_depth_sequence(
    ctx: ReesContext, n_max: int, window: int = 3
) -> tuple[list[tuple[int, int | float]], int | None]:
    """Depths of the modules E_n themselves for n = 0..n_max, with tail onset."""
    pairs = [(n, module_depth(ctx.rees_power(n))) for n in range(0, n_max + 1)]
    tail = stable_tail(pairs, window)
    return pairs, (None if tail is None else tail[0])


@dataclass
class AssSequence:
    """Associated primes of G_n/E_n per power, for monomial instances."""

    supported: bool
    reason: str | None
    entries: list[tuple[int, list[str], bool]]
    stable_from: int | None
    stable_value: list[str] | None

    def as_dict(self) -> dict:
        if not self.supported:
            return {"supported": False, "reason": self.reason}
        return json_value(
            {
                "supported": True,
                "entries": [
                    {"n": n, "primes": ps, "freeSummand": free}
                    for n, ps, free in self.entries
                ],
                "stableFrom": self.stable_from,
                "stablePrimes": self.stable_value,
            }
        )


def prime_string(support: frozenset[int], names: Sequence[str]) -> str:
    if not support:
        return "(0)"
    return "(" + ",".join(names[i] for i in sorted(support)) + ")"


def ass_sequence(ctx: ReesContext, n_max: int, window: int = 3) -> AssSequence:
    names = ctx.ring.names
    entries = []
    for n in range(1, n_max + 1):
        q = ctx.power_quotient(n)
        if not q.relations.is_monomial():
            return AssSequence(
                False,
                f"relations of power {n} are not componentwise monomial",
                [],
                None,
                None,
            )
        primes, free = q.associated_primes()
        rendered = sorted(prime_string(p, names) for p in primes)
        entries.append((n, rendered, free))
    tail = stable_tail([(n, tuple(ps)) for n, ps, _ in entries], window)
    if tail is None:
        return AssSequence(True, None, entries, None, None)
    return AssSequence(True, None, entries, tail[0], list(tail[1]))


# -- superficial elements and reduction ----------------------------------


def _linear_combination(ring, coeffs, var_indices) -> Element:
    total = Element.zero(ring, 1)
    for c, i in zip(coeffs, var_indices):
        if c:
            total = total + Element.variable(ring, i).scaled(ring.coeff_from_int(c))
    return total


def superficial_element(
    ctx: ReesContext, n_max: int, seed: int = 0, tries: int = 200
) -> Element | None:
    """A linear form regular on G_n/E_n for 1 <= n <= n_max, or None.

    Deterministic small-coefficient candidates come first, then seeded
    random ones.  Returns None when some quotient in the window has
    depth zero (no such element exists) or the search budget runs out.
    """
    ring = ctx.ring
    linear = [i for i, w in enumerate(ring.weights) if w == 1]
    if not linear:
        return None
    for n in range(1, n_max + 1):
        if ctx.power_quotient(n).depth() == 0:
            return None

    def is_superficial(a: Element) -> bool:
        for n in range(1, n_max + 1):
            rels = ctx.rees_power(n)
            if not rels.colon(a).same_module(rels):
                return False
        return True

    seen = set()
    candidates = []
    for i in range(len(linear)):
        candidates.append(tuple(1 if j == i else 0 for j in range(len(linear))))
    pool = itertools.product((0, 1, -1, 2), repeat=len(linear))
    for coeffs in itertools.islice(pool, 256):
        nonzero = [c for c in coeffs if c]
        if len(nonzero) >= 2 and nonzero[0] == 1:
            candidates.append(coeffs)
    rng = random.Random(seed)
    bound = ring.char if ring.char else 101
    while len(candidates) < tries:
        coeffs = tuple(rng.randrange(bound) for _ in linear)
        if any(coeffs):
            candidates.append(coeffs)
    for coeffs in candidates[:tries]:
        if coeffs in seen:
            continue
        seen.add(coeffs)
        a = _linear_combination(ring, coeffs, linear)
        if a.is_zero():
            continue
        if is_superficial(a):
            return a.monic()
    return None


def reduced_context(ctx: ReesContext, a: Element) -> ReesContext:
    """Context for the image of the module after killing the linear form a.

    The variable of largest index in the support of a is eliminated and
    rewritten in terms of the remaining ones.
    """
    ring = ctx.ring
    if a.ring != ring or a.rank != 1 or a.is_zero():
        raise ValueError("reduction needs a nonzero linear form in the base ring")
    if not a.is_homogeneous() or a.degree() != 1:
        raise ValueError("reduction needs a homogeneous form of degree 1")
    support = {}
    for t in range(len(a.comps)):
        row = a.exps[t]
        var = int(np_nonzero_index(row))
        support[var] = a.coeffs[t]
    pivot = max(support)
    keep = [i for i in range(ring.nvars) if i != pivot]
    bar = ring.restricted(keep, order=ring.order.name if ring.order.name in ("grevlex", "lex") else "grevlex")
    inv = ring.coeff_inverse(support[pivot])
    images = []
    for i in range(ring.nvars):
        if i != pivot:
            images.append(Element.variable(bar, keep.index(i)))
    pivot_image = Element.zero(bar, 1)
    for var, coeff in support.items():
        if var == pivot:
            continue
        scale = bar.coeff_from_int(-coeff * inv)
        pivot_image = pivot_image + Element.variable(bar, keep.index(var)).scaled(scale)
    images.insert(pivot, pivot_image)
    gens = [g.mapped(bar, images) for g in ctx.min_gens]
    return ReesContext(bar, [g for g in gens if not g.is_zero()], ctx.rank)


def np_nonzero_index(row) -> int:
    for i, v in enumerate(row):
        if v:
            return i
    raise ValueError("constant term has no variable")


def _shifted_numerator(numerator: dict[int, int], by: int) -> dict[int, int]:
    return {k + by: v for k, v in numerator.items()}


def _numerator_difference(numerator: dict[int, int], by: int) -> dict[int, int]:
    """numerator(z) * (1 - z^by), with zero coefficients dropped."""
    out = dict(numerator)
    for k, v in _shifted_numerator(numerator, by).items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def bar_reduce_check(ctx: ReesContext, a: Element, n_max: int = 3) -> CheckerVerdict:
    """Compare each power with its image modulo a linear form.

    Three identities per power n: (i) the graded numerator of
    G_n/(E_n + a G_n) equals (1 - z) times the numerator of the reduced
    quotient, (iii) the reduced power needs as many generators as
    E_n/(a G_n meet E_n).  Both hold for any linear form and any failure
    is a violation.  (ii) a G_n meet E_n = a E_n holds exactly when a is
    regular on G_n/E_n, so its failure only marks the element as not
    superficial and the verdict INCONCLUSIVE.
    """
    ring = ctx.ring
    bar = reduced_context(ctx, a)
    rows = []
    broken = False
    not_regular = []
    for n in range(1, n_max + 1):
        g = ctx.power_rank(n)
        power = ctx.rees_power(n)
        a_units = [a * Element.unit_vector(ring, g, c) for c in range(g)]
        ambient_scaled = Submodule(ring, g, a_units)
        summed = Quotient(Submodule(ring, g, list(power.gens) + a_units))
        lhs_num = summed.hilbert_numerator()
        rhs_num = _numerator_difference(bar.power_quotient(n).hilbert_numerator(), 1)
        ok_numerator = lhs_num == rhs_num

        meet = power.intersect(ambient_scaled)
        ok_intersection = meet.same_module(power.scaled_by(a))

        mins = power.minimal_gens()
        degrees = tuple(m.degree() for m in mins)
        rels = list(power.presentation_syzygies())
        for z in meet.gens:
            lifted = power.lift(z)
            if lifted is None:
                raise UnsupportedInstanceError("intersection element fell outside the power")
            rels.append(Element.from_components(ring, lifted))
        mu_quotient = Quotient(Submodule(ring, len(mins), rels, degrees)).min_gen_count()
        mu_bar = bar.mu_of_power(n)
        ok_mu = mu_bar == mu_quotient

        if not ok_numerator or not ok_mu:
            broken = True
        if not ok_intersection:
            not_regular.append(n)
        rows.append(
            {
                "n": n,
                "numeratorMatch": ok_numerator,
                "intersectionMatch": ok_intersection,
                "reducedGeneratorCount": mu_bar,
                "quotientGeneratorCount": mu_quotient,
                "generatorCountMatch": ok_mu,
            }
        )
    if broken:
        verdict = VIOLATION
        explanation = (
            "an identity that holds for every linear form failed exactly"
        )
    elif not_regular:
        verdict = INCONCLUSIVE
        explanation = (
            "the chosen form is not regular on the quotient at n = "
            + ", ".join(str(n) for n in not_regular)
            + "; the intersection identity requires a superficial element"
        )
    else:
        verdict = CONSISTENT
        explanation = "all three reduction identities hold on the window"
    return CheckerVerdict(
        "barReduce",
        verdict,
        {"element": str(a), "rows": rows},
        explanation,
    )


# -- windowed checkers ----------------------------------------------------


def burch_check(ctx: ReesContext, n_max: int = 6, window: int = 3) -> CheckerVerdict:
    """Spread bound: analytic spread <= d + e - 1 - min depth of G_n/E_n.

    The minimum is taken over the window; when the depth tail has not
    stabilized a failure stays INCONCLUSIVE because the true infimum may
    be smaller than the windowed one.
    """
    seq = quotient_depth_sequence(ctx, n_max, window)
    inf_window = min(depth for _, depth, _ in seq.entries)
    spread = ctx.analytic_spread()
    bound = ctx.ring.nvars + ctx.rank - 1 - inf_window
    ok = spread <= bound
    stable = seq.stable_from is not None
    if ok:
        verdict = CONSISTENT
        explanation = "the analytic spread respects the depth-corrected bound"
    elif stable:
        verdict = VIOLATION
        explanation = (
            "the analytic spread exceeds the bound although the depth tail is stable"
        )
    else:
        verdict = INCONCLUSIVE
        explanation = (
            "the bound fails on the window but the depth sequence has not stabilized"
        )
    return CheckerVerdict(
        "burch",
        verdict,
        {
            "spread": spread,
            "bound": bound,
            "windowMinDepth": inf_window,
            "depthSequence": seq.as_dict(),
        },
        explanation,
    )


def grade_check(ctx: ReesContext, n_max: int = 6, window: int = 3) -> CheckerVerdict:
    """Grade of the base maximal ideal on the Rees algebra vs power depths.

    Identity: that grade equals the infimum of depth E_n over n >= 0.
    Bound: the depth of the Rees algebra is at most the infimum plus the
    analytic spread.  The grade is computed by Koszul homology on the
    presentation, an independent route from the resolutions behind the
    power depths.
    """
    pairs, stable_from = power_depth_sequence(ctx, n_max, window)
    inf_window = min(v for _, v in pairs)
    sym_ring, _ = ctx.presentation()
    xs = [Element.variable(sym_ring, i) for i in range(ctx.ring.nvars)]
    quotient = ctx.rees_quotient()
    grade = koszul_grade(quotient, xs)
    depth_rees = quotient.depth()
    spread = ctx.analytic_spread()
    verdicts = []
    notes = []
    if grade == inf_window:
        verdicts.append(CONSISTENT)
    elif grade > inf_window:
        verdicts.append(VIOLATION)
        notes.append("the grade exceeds the windowed infimum of power depths")
    elif stable_from is not None:
        verdicts.append(VIOLATION)
        notes.append("the grade undercuts the stabilized infimum of power depths")
    else:
        verdicts.append(INCONCLUSIVE)
        notes.append(
            "the grade is below the windowed infimum and the tail has not stabilized"
        )
    if depth_rees <= inf_window + spread:
        verdicts.append(CONSISTENT)
    else:
        verdicts.append(VIOLATION)
        notes.append(
            "the Rees algebra depth exceeds the power-depth infimum plus the spread"
        )
    verdict = worst_verdict(verdicts)
    if verdict == CONSISTENT:
        notes.append("grade identity and depth bound both hold on the window")
    return CheckerVerdict(
        "grade",
        verdict,
        {
            "gradeOfBaseIdeal": grade,
            "powerDepths": [{"n": n, "depth": v} for n, v in pairs],
            "windowMinPowerDepth": inf_window,
            "stableFrom": stable_from,
            "depthRees": depth_rees,
            "spread": spread,
        },
        "; ".join(notes),
    )


def cm_equality_check(ctx: ReesContext, n_max: int = 6, window: int = 3) -> CheckerVerdict:
    """When the Rees algebra of a full-rank non-free module is Cohen-Macaulay,
    the spread bound is an equality: spread = d + e - 1 - inf depth G_n/E_n.

    The equality needs generic rank equal to the ambient rank, since its
    derivation rewrites dim of the Rees algebra as d + e.  Modules of smaller
    rank, and free modules, make the hypothesis vacuous.
    """
    seq = quotient_depth_sequence(ctx, n_max, window)
    inf_window = min(depth for _, depth, _ in seq.entries)
    quotient = ctx.rees_quotient()
    depth_rees = quotient.depth()
    dim_rees = ctx.dim_rees()
    spread = ctx.analytic_spread()
    cm = depth_rees == dim_rees
    free = ctx.module.is_zero() or not ctx.module.presentation_syzygies()
    full_rank = ctx.generic_rank() == ctx.rank
    rhs = ctx.ring.nvars + ctx.rank - 1 - inf_window
    quantities = {
        "cohenMacaulay": cm,
        "free": free,
        "fullRank": full_rank,
        "depthRees": depth_rees,
        "dimRees": dim_rees,
        "spread": spread,
        "windowMinDepth": inf_window,
        "boundValue": rhs,
        "stableFrom": seq.stable_from,
    }
    if free:
        return CheckerVerdict(
            "cmEquality",
            CONSISTENT,
            quantities,
            "vacuous: the module is free",
        )
    if not full_rank:
        return CheckerVerdict(
            "cmEquality",
            CONSISTENT,
            quantities,
            "vacuous: the module does not have full rank in its ambient free module",
        )
    if not cm:
        return CheckerVerdict(
            "cmEquality",
            CONSISTENT,
            quantities,
            "vacuous: the Rees algebra is not Cohen-Macaulay",
        )
    if spread == rhs:
        return CheckerVerdict(
            "cmEquality",
            CONSISTENT,
            quantities,
            "the spread bound is an exact equality on the window",
        )
    if spread < rhs:
        return CheckerVerdict(
            "cmEquality",
            VIOLATION,
            quantities,
            "the spread falls strictly below the bound, which a Cohen-Macaulay "
            "Rees algebra of a non-free module rules out",
        )
    if seq.stable_from is not None:
        return CheckerVerdict(
            "cmEquality",
            VIOLATION,
            quantities,
            "the spread exceeds the bound although the depth tail is stable",
        )
    return CheckerVerdict(
        "cmEquality",
        INCONCLUSIVE,
        quantities,
        "the spread exceeds the windowed bound but the depths have not stabilized",
    )


def cowsik_nori_check(ctx: ReesContext, n_max: int = 6, window: int = 3) -> CheckerVerdict:
    """Complete intersection criteria through Cohen-Macaulay quotients.

    For an ideal module, a stable depth tail equal to d minus the
    Fitting height forces equimultiplicity.  When the module is
    additionally generically a complete intersection: complete
    intersection and equimultiple are equivalent, every quotient has
    dimension d minus the Fitting height, a complete intersection has
    Cohen-Macaulay quotients at every power, and a stable
    Cohen-Macaulay tail forces complete intersection.
    """
    if not ctx.is_ideal_module():
        return CheckerVerdict(
            "cowsikNori",
            INCONCLUSIVE,
            {},
            "requires an ideal module (generic rank equal to ambient rank, free double dual)",
        )
    seq = quotient_depth_sequence(ctx, n_max, window)
    d = ctx.ring.nvars
    height = ctx.fitting_height()
    target_dim = d - height
    rows = []
    all_cm = True
    dims_ok = True
    for n, depth, dim in seq.entries:
        cm = ctx.power_quotient(n).is_cohen_macaulay()
        rows.append({"n": n, "depth": depth, "dim": dim, "cohenMacaulay": cm})
        all_cm = all_cm and cm
        dims_ok = dims_ok and dim == target_dim
    stable = seq.stable_from is not None
    tail_cm = stable and rows[-1]["cohenMacaulay"]
    tail_depth_is_target = stable and seq.stable_depth == target_dim
    try:
        gci = ctx.is_generically_ci()
    except UnsupportedInstanceError:
        gci = None
    equi = ctx.is_equimultiple()
    ci = ctx.is_complete_intersection()
    verdicts = []
    notes = []
    tested = False
    if tail_depth_is_target and not equi:
        tested = True
        verdicts.append(VIOLATION)
        notes.append(
            "a stable depth tail equal to d minus the Fitting height forces "
            "equimultiplicity, but the analytic deviation is positive"
        )
    elif tail_depth_is_target:
        tested = True
    if gci:
        tested = True
        if ci != equi:
            verdicts.append(VIOLATION)
            notes.append(
                "for a generically complete intersection module, complete "
                "intersection and equimultiple must coincide"
            )
        if not dims_ok:
            verdicts.append(VIOLATION)
            notes.append(
                "a generically complete intersection module must have every "
                f"quotient of dimension {target_dim}"
            )
        if ci and not all_cm:
            verdicts.append(VIOLATION)
            notes.append(
                "a complete intersection must have Cohen-Macaulay quotients "
                "at every power"
            )
        if not ci and all_cm:
            if tail_cm:
                verdicts.append(VIOLATION)
                notes.append(
                    "a stable Cohen-Macaulay tail forces complete intersection, "
                    "but the deviation is positive"
                )
            else:
                verdicts.append(INCONCLUSIVE)
                notes.append(
                    "all windowed quotients are Cohen-Macaulay but the depth "
                    "tail has not stabilized"
                )
    elif gci is None:
        notes.append("generic complete intersection status could not be decided")
    verdict = worst_verdict(verdicts) if verdicts else (
        CONSISTENT if tested else INCONCLUSIVE
    )
    if verdict == CONSISTENT and not notes:
        notes.append(
            "depth tails, dimensions, and deviations agree with the criteria"
        )
    return CheckerVerdict(
        "cowsikNori",
        verdict,
        {
            "genericallyCompleteIntersection": gci,
            "completeIntersection": ci,
            "equimultiple": equi,
            "fittingHeight": height,
            "targetDim": target_dim,
            "rows": rows,
            "stableFrom": seq.stable_from,
        },
        "; ".join(notes),
    )


def all_checkers(
    ctx: ReesContext, n_max: int = 6, window: int = 3, seed: int = 0
) -> list[CheckerVerdict]:
    """Run every checker, finding a superficial element for the reduction."""
    out = [
        burch_check(ctx, n_max, window),
        grade_check(ctx, n_max, window),
        cm_equality_check(ctx, n_max, window),
        cowsik_nori_check(ctx, n_max, window),
    ]
    a = superficial_element(ctx, min(n_max, 3), seed=seed)
    if a is None:
        out.append(
            CheckerVerdict(
                "barReduce",
                INCONCLUSIVE,
                {},
                "no superficial linear form found (a windowed quotient may have depth zero)",
            )
        )
    else:
        out.append(bar_reduce_check(ctx, a, min(n_max, 3)))
    return out
