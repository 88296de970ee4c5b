"""Buchberger's algorithm over free-module submodules, with syzygies.

Module term orders combine the ring's monomial order with a component
policy: TOP (monomial first, then smaller component index wins), POT
(component first), or component elimination (a leading block of
components dominates, used to read off syzygies and membership lifts
from one augmented basis).  Pair management follows Gebauer-Moeller;
the coprime-lead shortcut is only sound for pairs supported in a single
shared component, so it is guarded accordingly (for ideals it always
applies, for genuine module elements it almost never does).
"""

from __future__ import annotations

import heapq
from typing import Callable, Sequence

import numpy as np

from . import backend
from . import _kernels_numpy as knp
from .element import Element, canonical_arrays
from .errors import DegreeGuardError, RingMismatchError
from .ring import Ring


class ModuleOrder:
    """Total order on (component, monomial) pairs of R^rank."""

    __slots__ = ("ring", "rank", "mono_matrix", "comp_weights", "tag")

    def __init__(self, ring: Ring, rank: int, comp_weights: np.ndarray, tag: str):
        self.ring = ring
        self.rank = rank
        self.mono_matrix = ring.order.matrix
        self.comp_weights = np.ascontiguousarray(comp_weights, dtype=np.int64).reshape(-1, rank)
        self.tag = tag

    def sorted_arrays(self, elem: Element):
        """Copies of the term arrays, descending under this order."""
        if len(elem.comps) <= 1:
            return elem.comps.copy(), elem.exps.copy(), elem.coeffs.copy()
        idx = knp.sort_indices(elem.comps, elem.exps, self.mono_matrix, self.comp_weights)
        return elem.comps[idx], elem.exps[idx].copy(), elem.coeffs[idx]

    def leading_term(self, elem: Element):
        """(component, exponent tuple, coeff) of the largest term."""
        if elem.is_zero():
            raise ValueError("zero element has no leading term")
        comps, exps, coeffs = self.sorted_arrays(elem)
        return int(comps[0]), tuple(int(x) for x in exps[0]), coeffs[0]

    def __repr__(self):
        return f"ModuleOrder({self.tag}, rank={self.rank}, {self.ring.order!r})"


def top_order(ring: Ring, rank: int) -> ModuleOrder:
    """Term-over-position: ring order first, lower component breaks ties."""
    return ModuleOrder(ring, rank, np.empty((0, rank), dtype=np.int64), "top")


def pot_order(ring: Ring, rank: int) -> ModuleOrder:
    """Position-over-term: lower component dominates outright."""
    return ModuleOrder(ring, rank, -np.arange(rank, dtype=np.int64)[None, :], "pot")


def component_elim_order(ring: Ring, rank: int, lead_components: int) -> ModuleOrder:
    """Terms in the first `lead_components` components dominate the rest."""
    row = np.zeros((1, rank), dtype=np.int64)
    row[0, :lead_components] = 1
    return ModuleOrder(ring, rank, row, "comp-elim")


class _Work:
    """A basis element during Buchberger: arrays sorted under the order."""

    __slots__ = ("comps", "exps", "coeffs", "lead_comp", "lead_exps", "pure")

    def __init__(self, comps, exps, coeffs):
        self.comps = comps
        self.exps = exps
        self.coeffs = coeffs
        self.lead_comp = int(comps[0])
        self.lead_exps = exps[0]
        self.pure = bool((comps == comps[0]).all())


def _flatten(basis: Sequence[_Work], nvars: int, char: int):
    if not basis:
        empty_f = np.empty(0, dtype=np.int64 if char else object)
        return (
            np.empty(0, dtype=np.int64),
            np.empty((0, nvars), dtype=np.int64),
            empty_f,
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
        )
    sizes = np.array([len(w.comps) for w in basis], dtype=np.int64)
    ends = np.cumsum(sizes)
    starts = ends - sizes
    bc = np.concatenate([w.comps for w in basis])
    be = np.concatenate([w.exps for w in basis], axis=0)
    bf = np.concatenate([w.coeffs for w in basis])
    return bc, be, bf, starts, ends


def _nf_arrays(fc, fe, ff, flat, order: ModuleOrder, char: int, max_degree: int):
    if backend.use_numba(char):
        from . import _kernels_numba as knb

        try:
            return knb.normal_form(
                fc, fe, ff, *flat, order.mono_matrix, order.comp_weights, char, max_degree
            )
        except OverflowError as exc:
            raise DegreeGuardError(str(exc)) from None
    return knp.normal_form(
        fc, fe, ff, *flat, order.mono_matrix, order.comp_weights, char, max_degree
    )


def _monic_arrays(ring: Ring, comps, exps, coeffs):
    inv = ring.coeff_inverse(coeffs[0])
    if ring.char:
        coeffs = (coeffs * inv) % ring.char
    else:
        coeffs = np.array([c * inv for c in coeffs], dtype=object)
    return comps, exps, coeffs


def _spair_arrays(ring: Ring, order: ModuleOrder, f: _Work, g: _Work):
    """S-vector of two monic elements with leads in a shared component."""
    lcm = np.maximum(f.lead_exps, g.lead_exps)
    sf = lcm - f.lead_exps
    sg = lcm - g.lead_exps
    comps = np.concatenate([f.comps, g.comps])
    exps = np.concatenate([f.exps + sf, g.exps + sg], axis=0)
    if ring.char:
        coeffs = np.concatenate([f.coeffs, (-g.coeffs) % ring.char])
    else:
        coeffs = np.concatenate([f.coeffs, np.array([-c for c in g.coeffs], dtype=object)])
    ring.guard_exponents(exps)
    return knp.canonicalize(comps, exps, coeffs, order.mono_matrix, order.comp_weights, ring.char)


def _lead_key(order: ModuleOrder, w: _Work):
    head = [int(order.comp_weights[r, w.lead_comp]) for r in range(order.comp_weights.shape[0])]
    mono = [int(x) for x in order.mono_matrix @ w.lead_exps]
    return tuple(head + mono + [-w.lead_comp])


class GroebnerBasis:
    """Reduced basis plus cached flat arrays for the reduction kernel."""

    __slots__ = ("ring", "rank", "order", "elements", "leads", "_flat")

    def __init__(self, ring: Ring, rank: int, order: ModuleOrder, work: list[_Work]):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.leads = [(w.lead_comp, tuple(int(x) for x in w.lead_exps)) for w in work]
        self.elements = tuple(
            Element(ring, rank, *canonical_arrays(ring, w.comps, w.exps, w.coeffs), _canonical=True)
            for w in work
        )
        self._flat = _flatten(work, ring.nvars, ring.char)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, elem: Element) -> Element:
        """Unique remainder of elem modulo the basis (full reduction)."""
        if elem.ring != self.ring or elem.rank != self.rank:
            raise RingMismatchError("element does not match basis ambient")
        if elem.is_zero() or not self.elements:
            return elem
        fc, fe, ff = self.order.sorted_arrays(elem)
        rc, re_, rf = _nf_arrays(fc, fe, ff, self._flat, self.order, self.ring.char, self.ring.max_degree)
        return Element(self.ring, self.rank, *canonical_arrays(self.ring, rc, re_, rf), _canonical=True)

    def contains(self, elem: Element) -> bool:
        return self.normal_form(elem).is_zero()


def buchberger(
    gens: Sequence[Element],
    order: ModuleOrder | None = None,
    trace: Callable[[str], None] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by gens.

    Pairs are selected by smallest weighted lcm degree (ties by index),
    pruned by the Gebauer-Moeller rules.  Output elements are monic,
    interreduced, and sorted by increasing leading term, so the result
    is unique for a given module and order, independent of gens.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise RingMismatchError("generators must share ring and rank")
    if order is None:
        order = top_order(ring, rank)

    weights = np.asarray(ring.weights, dtype=np.int64)
    basis: list[_Work] = []
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple[int, int, int]] = []
    stats = {"pairs": 0, "zero": 0, "added": 0}

    def lcm_of(i: int, j: int):
        return np.maximum(basis[i].lead_exps, basis[j].lead_exps)

    def add_element(comps, exps, coeffs):
        """Append a monic element and refresh the pair set (Gebauer-Moeller)."""
        new = _Work(*_monic_arrays(ring, comps, exps, coeffs))
        h = len(basis)
        basis.append(new)

        survivors = set()
        for (i, j) in pairs:
            lcm_ij = lcm_of(i, j)
            if (
                basis[h].lead_comp == basis[i].lead_comp
                and bool((basis[h].lead_exps <= lcm_ij).all())
                and bool((lcm_of(i, h) != lcm_ij).any())
                and bool((lcm_of(j, h) != lcm_ij).any())
            ):
                continue
            survivors.add((i, j))
        pairs.clear()
        pairs.update(survivors)

        cand = [i for i in range(h) if basis[i].lead_comp == new.lead_comp]
        by_lcm: dict[tuple, int] = {}
        for i in cand:
            key = tuple(int(x) for x in lcm_of(i, h))
            if key not in by_lcm or i < by_lcm[key]:
                by_lcm[key] = i
        kept_keys = []
        for key in sorted(by_lcm, key=lambda k: (sum(k), k)):
            arr = np.array(key, dtype=np.int64)
            if any(bool((np.array(k2, dtype=np.int64) <= arr).all()) for k2 in kept_keys):
                continue
            kept_keys.append(key)
        for key in kept_keys:
            i = by_lcm[key]
            coprime = (
                basis[i].pure
                and new.pure
                and bool((np.minimum(basis[i].lead_exps, new.lead_exps) == 0).all())
            )
            if coprime:
                continue
            deg = int(np.array(key, dtype=np.int64) @ weights)
            pairs.add((i, h))
            heapq.heappush(heap, (deg, i, h))

    for g in gens:
        add_element(*order.sorted_arrays(g))

    while heap:
        deg, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        stats["pairs"] += 1
        sc, se, sf = _spair_arrays(ring, order, basis[i], basis[j])
        if len(sc):
            flat = _flatten(basis, ring.nvars, ring.char)
            sc, se, sf = _nf_arrays(sc, se, sf, flat, order, ring.char, ring.max_degree)
        if len(sc) == 0:
            stats["zero"] += 1
            if trace:
                trace(f"pair ({i},{j}) deg={deg} -> 0")
            continue
        stats["added"] += 1
        if trace:
            trace(f"pair ({i},{j}) deg={deg} -> basis element {len(basis)}")
        add_element(sc, se, sf)

    # Minimal basis: drop anything whose lead another lead divides.
    ordered = sorted(range(len(basis)), key=lambda i: (_lead_key(order, basis[i]), i))
    kept: list[int] = []
    for i in ordered:
        wi = basis[i]
        redundant = any(
            basis[k].lead_comp == wi.lead_comp and bool((basis[k].lead_exps <= wi.lead_exps).all())
            for k in kept
        )
        if not redundant:
            kept.append(i)
    minimal = [basis[i] for i in kept]

    # Interreduce: full remainder of each element against the others.
    for pos in range(len(minimal)):
        others = minimal[:pos] + minimal[pos + 1 :]
        w = minimal[pos]
        if others:
            flat = _flatten(others, ring.nvars, ring.char)
            rc, re_, rf = _nf_arrays(w.comps, w.exps, w.coeffs, flat, order, ring.char, ring.max_degree)
            minimal[pos] = _Work(*_monic_arrays(ring, rc, re_, rf))
        else:
            minimal[pos] = _Work(*_monic_arrays(ring, w.comps, w.exps, w.coeffs))
    if trace:
        trace(
            f"done: {stats['pairs']} pairs processed, {stats['zero']} reduced to zero, "
            f"{len(minimal)} elements in reduced basis"
        )
    return GroebnerBasis(ring, rank, order, minimal)


def normal_form(elem: Element, basis: GroebnerBasis) -> Element:
    return basis.normal_form(elem)


class AugmentedBasis:
    """Groebner basis of {g_i + eps_i} used for syzygies and lifts.

    The ambient components come first and dominate the tracking block, so
    basis elements supported purely in the tracking block generate the
    syzygy module, and the tracking part of any normal form reads off an
    expression in the generators.
    """

    __slots__ = ("ring", "rank", "count", "gb")

    def __init__(self, gens: Sequence[Element], rank: int):
        gens = list(gens)
        if not gens:
            raise ValueError("no generators")
        ring = gens[0].ring
        self.ring = ring
        self.rank = rank
        self.count = len(gens)
        total = rank + self.count
        augmented = [
            g.embedded(total, 0) + Element.unit_vector(ring, total, rank + i)
            for i, g in enumerate(gens)
        ]
        self.gb = buchberger(augmented, component_elim_order(ring, total, rank))

    def syzygies(self) -> list[Element]:
        """Generators of {(a_1..a_s) : sum a_i g_i = 0} as rank-s elements."""
        out = []
        for h in self.gb.elements:
            if h.component_range(0, self.rank).is_zero():
                out.append(h.component_range(self.rank, self.rank + self.count))
        return out

    def lift(self, target: Element) -> list[Element] | None:
        """Coefficients q with target = sum q_i g_i, or None if outside."""
        if target.ring != self.ring or target.rank != self.rank:
            raise RingMismatchError("target does not match ambient")
        rem = self.gb.normal_form(target.embedded(self.rank + self.count, 0))
        if not rem.component_range(0, self.rank).is_zero():
            return None
        tracking = rem.component_range(self.rank, self.rank + self.count)
        return [-(tracking.component(i)) for i in range(self.count)]


def syzygies(gens: Sequence[Element], rank: int) -> list[Element]:
    """Generators of the full relation module of gens inside R^rank."""
    gens = list(gens)
    if len(gens) == 1 and not gens[0].is_zero():
        lead = gens[0]
        if lead.rank != rank:
            raise RingMismatchError("generator rank mismatch")
        return []
    return AugmentedBasis(gens, rank).syzygies()


def eliminate(gens: Sequence[Element], block: int, target: Ring) -> list[Element]:
    """Generators of (ideal of gens) intersected with k[vars after block].

    The gens' ring must order the block variables first under a block
    elimination order; target must be the ring on the remaining
    variables.  Returns the reduced basis of the elimination ideal.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    if ring.order.name != "elim" or ring.order.elim_block != block:
        raise ValueError("ring must carry a block elimination order matching `block`")
    if any(g.rank != 1 for g in gens):
        raise ValueError("elimination applies to ideals (rank 1)")
    if target.names != ring.names[block:] or target.weights != ring.weights[block:]:
        raise RingMismatchError("target ring must keep exactly the trailing variables")
    gb = buchberger(gens, top_order(ring, 1))
    out = []
    for g in gb.elements:
        if g.is_zero() or int(g.exps[:, :block].sum()) > 0:
            continue
        out.append(
            Element(
                target,
                1,
                g.comps,
                g.exps[:, block:],
                g.coeffs,
            )
        )
    return out
