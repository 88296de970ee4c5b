"""Pure-numpy reduction kernel, valid for every coefficient field.

This is the reference implementation of the division loop: the numba
kernel must produce bit-identical output on prime-characteristic input.
Coefficients are int64 residues when char > 0 and Fraction objects when
char == 0.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeGuardError


def key_columns(comps, exps, mono_matrix, comp_weights):
    """Lexicographic key columns (primary first) for module terms."""
    cols = [comp_weights[r][comps] for r in range(comp_weights.shape[0])]
    km = exps @ mono_matrix.T
    cols.extend(km[:, j] for j in range(km.shape[1]))
    cols.append(-comps)
    return cols


def sort_indices(comps, exps, mono_matrix, comp_weights):
    """Indices putting the terms in strictly descending order."""
    cols = key_columns(comps, exps, mono_matrix, comp_weights)
    return np.lexsort(cols[::-1])[::-1]


def canonicalize(comps, exps, coeffs, mono_matrix, comp_weights, char):
    """Sort descending, combine duplicate terms, drop zeros."""
    if len(comps) == 0:
        return comps, exps, coeffs
    idx = sort_indices(comps, exps, mono_matrix, comp_weights)
    comps, exps, coeffs = comps[idx], exps[idx], coeffs[idx]
    tagged = np.concatenate([comps[:, None], exps], axis=1)
    new_group = np.empty(len(comps), dtype=bool)
    new_group[0] = True
    new_group[1:] = np.any(tagged[1:] != tagged[:-1], axis=1)
    starts = np.flatnonzero(new_group)
    coeffs = np.add.reduceat(coeffs, starts)
    if char:
        coeffs = coeffs % char
    comps, exps = comps[starts], exps[starts]
    keep = coeffs != 0
    return comps[keep], exps[keep], coeffs[keep]


def normal_form(fc, fe, ff, bc, be, bf, bstart, bend, mono_matrix, comp_weights, char, max_degree):
    """Full remainder of f on division by the listed basis elements.

    All term arrays must already be sorted descending under the order
    given by (comp_weights, mono_matrix); the remainder comes back sorted
    the same way.  The first basis element whose lead divides the current
    lead is always chosen, so the result is deterministic in basis order.
    """
    nb = len(bstart)
    if nb:
        lead_c = bc[bstart]
        lead_e = be[bstart]
    rc, re_, rf = [], [], []
    while len(fc):
        c0, e0, a0 = fc[0], fe[0], ff[0]
        hit = -1
        if nb:
            cand = np.flatnonzero((lead_c == c0) & np.all(lead_e <= e0, axis=1))
            if len(cand):
                hit = int(cand[0])
        if hit < 0:
            rc.append(c0)
            re_.append(e0)
            rf.append(a0)
            fc, fe, ff = fc[1:], fe[1:], ff[1:]
            continue
        s, t = bstart[hit], bend[hit]
        shift = e0 - be[s]
        tail_e = be[s + 1 : t] + shift
        if tail_e.size and int(tail_e.sum(axis=1).max()) > max_degree:
            raise DegreeGuardError(f"term degree exceeds guard {max_degree} during reduction")
        if char:
            q = (int(a0) * pow(int(bf[s]), char - 2, char)) % char
            tail_f = (-q * bf[s + 1 : t]) % char
        else:
            q = a0 / bf[s]
            tail_f = np.array([-q * x for x in bf[s + 1 : t]], dtype=object)
        fc = np.concatenate([fc[1:], bc[s + 1 : t]])
        fe = np.concatenate([fe[1:], tail_e], axis=0)
        ff = np.concatenate([ff[1:], tail_f])
        fc, fe, ff = canonicalize(fc, fe, ff, mono_matrix, comp_weights, char)
    nvars = fe.shape[1]
    out_c = np.array(rc, dtype=np.int64)
    out_e = (
        np.array(re_, dtype=np.int64).reshape(len(rc), nvars)
        if rc
        else np.empty((0, nvars), dtype=np.int64)
    )
    if char:
        out_f = np.array(rf, dtype=np.int64)
    else:
        out_f = np.empty(len(rf), dtype=object)
        for i, x in enumerate(rf):
            out_f[i] = x
    return out_c, out_e, out_f
