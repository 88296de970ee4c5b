"""Numba-compiled reduction kernel for prime characteristic.

Mirrors _kernels_numpy.normal_form exactly: same reducer choice (first
basis element in listed order whose lead divides), same merge semantics,
so the two backends return bit-identical term arrays.  The degree guard
raises OverflowError inside compiled code; the dispatcher rewraps it.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _invmod(a, p):
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _cmp_terms(c1, e1, c2, e2, mono_matrix, comp_weights):
    """Order comparison of two module terms: 1, 0 or -1."""
    for r in range(comp_weights.shape[0]):
        a = comp_weights[r, c1]
        b = comp_weights[r, c2]
        if a != b:
            return 1 if a > b else -1
    for r in range(mono_matrix.shape[0]):
        s1 = 0
        s2 = 0
        for j in range(mono_matrix.shape[1]):
            s1 += mono_matrix[r, j] * e1[j]
            s2 += mono_matrix[r, j] * e2[j]
        if s1 != s2:
            return 1 if s1 > s2 else -1
    if c1 != c2:
        return 1 if c1 < c2 else -1
    return 0


@njit(cache=True)
def normal_form(fc, fe, ff, bc, be, bf, bstart, bend, mono_matrix, comp_weights, p, max_degree):
    v = fe.shape[1]
    nb = bstart.shape[0]

    wc = fc.copy()
    we = fe.copy()
    wf = ff.copy()
    wlen = wc.shape[0]
    wpos = 0

    rcap = wlen + 8
    rc = np.empty(rcap, np.int64)
    re = np.empty((rcap, v), np.int64)
    rf = np.empty(rcap, np.int64)
    rlen = 0

    e2 = np.empty(v, np.int64)

    while wpos < wlen:
        c0 = wc[wpos]
        a0 = wf[wpos]
        hit = -1
        for idx in range(nb):
            s = bstart[idx]
            if bc[s] == c0:
                ok = True
                for j in range(v):
                    if be[s, j] > we[wpos, j]:
                        ok = False
                        break
                if ok:
                    hit = idx
                    break
        if hit < 0:
            if rlen == rcap:
                rcap *= 2
                nrc = np.empty(rcap, np.int64)
                nrc[:rlen] = rc[:rlen]
                rc = nrc
                nre = np.empty((rcap, v), np.int64)
                nre[:rlen] = re[:rlen]
                re = nre
                nrf = np.empty(rcap, np.int64)
                nrf[:rlen] = rf[:rlen]
                rf = nrf
            rc[rlen] = c0
            for j in range(v):
                re[rlen, j] = we[wpos, j]
            rf[rlen] = a0
            rlen += 1
            wpos += 1
            continue

        s = bstart[hit]
        t = bend[hit]
        q = (a0 * _invmod(bf[s], p)) % p
        n1 = wlen - wpos - 1
        n2 = t - s - 1
        cap = n1 + n2
        mc = np.empty(cap, np.int64)
        me = np.empty((cap, v), np.int64)
        mf = np.empty(cap, np.int64)
        i1 = wpos + 1
        i2 = s + 1
        mlen = 0
        while i1 < wlen or i2 < t:
            if i1 >= wlen:
                take = 2
            elif i2 >= t:
                take = 1
            else:
                for j in range(v):
                    e2[j] = be[i2, j] + we[wpos, j] - be[s, j]
                cmp = _cmp_terms(wc[i1], we[i1], bc[i2], e2, mono_matrix, comp_weights)
                take = 1 if cmp > 0 else (2 if cmp < 0 else 3)
            if take == 1:
                mc[mlen] = wc[i1]
                for j in range(v):
                    me[mlen, j] = we[i1, j]
                mf[mlen] = wf[i1]
                mlen += 1
                i1 += 1
            elif take == 2:
                coef = (p - (q * bf[i2]) % p) % p
                if coef != 0:
                    mc[mlen] = bc[i2]
                    dsum = 0
                    for j in range(v):
                        ej = be[i2, j] + we[wpos, j] - be[s, j]
                        me[mlen, j] = ej
                        dsum += ej
                    if dsum > max_degree:
                        raise OverflowError("term degree exceeds guard during reduction")
                    mf[mlen] = coef
                    mlen += 1
                i2 += 1
            else:
                coef = (wf[i1] + p - (q * bf[i2]) % p) % p
                if coef != 0:
                    mc[mlen] = wc[i1]
                    for j in range(v):
                        me[mlen, j] = we[i1, j]
                    mf[mlen] = coef
                    mlen += 1
                i1 += 1
                i2 += 1
        wc = mc
        we = me
        wf = mf
        wlen = mlen
        wpos = 0

    return rc[:rlen].copy(), re[:rlen].copy(), rf[:rlen].copy()
