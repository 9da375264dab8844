# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; drop-in twin of ``_pykernels``.

Path counts are int64, so ``dp_counts`` refuses inputs where the number of
paths ``n_links ** steps`` could overflow (the caller falls back to Python).
"""
import numpy as np
cimport numpy as cnp
from itertools import product

cnp.import_array()

NAME = "cython"

ctypedef cnp.int64_t i64


def _compositions(int total, int parts):
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


cdef void _sweep(i64[:, :, :, ::1] cur, i64[:, :, :, ::1] nxt,
                 Py_ssize_t[:, ::1] succ, Py_ssize_t[:, ::1] factor,
                 Py_ssize_t[:, ::1] mul, int n_links, int t) noexcept nogil:
    cdef Py_ssize_t idx, last, d, c, g, target
    cdef i64 count
    for idx in range(cur.shape[0]):
        for last in range(n_links):
            for c in range(t + 1):
                for g in range(8):
                    count = cur[idx, last, c, g]
                    if count == 0:
                        continue
                    for d in range(n_links):
                        target = succ[idx, d]
                        if d == last:
                            nxt[target, d, c, g] += count
                        else:
                            nxt[target, d, c + 1, mul[g, factor[last, d]]] += count


def dp_counts(int n_links, int steps, int start, factor, mul):
    if n_links ** steps >= 2 ** 63:
        raise OverflowError("path count may exceed int64")
    cdef Py_ssize_t[:, ::1] fac = np.ascontiguousarray(factor, dtype=np.intp)
    cdef Py_ssize_t[:, ::1] mt = np.ascontiguousarray(mul, dtype=np.intp)
    levels = [_compositions(t, n_links) for t in range(steps + 1)]
    cur = np.zeros((1, n_links, steps + 1, 8), dtype=np.int64)
    cur[0, start, 0, 0] = 1
    cdef Py_ssize_t[:, ::1] succ_view
    for t in range(steps):
        nxt_index = {vec: i for i, vec in enumerate(levels[t + 1])}
        succ = np.empty((len(levels[t]), n_links), dtype=np.intp)
        for i, vec in enumerate(levels[t]):
            for d in range(n_links):
                succ[i, d] = nxt_index[vec[:d] + (vec[d] + 1,) + vec[d + 1:]]
        succ_view = succ
        nxt = np.zeros((len(levels[t + 1]), n_links, steps + 1, 8), dtype=np.int64)
        _sweep(cur, nxt, succ_view, fac, mt, n_links, t)
        cur = nxt
    summed = cur.sum(axis=1)
    out = {}
    final = levels[steps]
    for idx, c, g in zip(*np.nonzero(summed)):
        out.setdefault(final[idx], {})[(int(c), int(g))] = int(summed[idx, c, g])
    return out


cdef inline bint _in_dn(long* h, int n) noexcept nogil:
    cdef long total = 0
    cdef int k
    for k in range(n):
        if h[k] & 1:
            return False
        total += h[k]
    return total % 4 == 0


cdef inline bint _in_dn_shift(long* h, int n, long s0, long s) noexcept nogil:
    # membership of h - (s0, s, s, ...) in D_n
    cdef long total = 0
    cdef long x
    cdef int k
    for k in range(n):
        x = h[k] - (s0 if k == 0 else s)
        if x & 1:
            return False
        total += x
    return total % 4 == 0


def decomposition_scan(int radius_halves):
    cdef int r = radius_halves
    blocks_list = []
    for parity in (0, 1):
        vals = [v for v in range(-r, r + 1) if (v & 1) == parity]
        blocks_list.extend(product(vals, repeat=4))
    cdef long[:, ::1] blocks = np.ascontiguousarray(blocks_list, dtype=np.dtype("l")).reshape(-1, 4)
    cdef Py_ssize_t nb = blocks.shape[0]
    cdef Py_ssize_t ia, ib
    cdef long h[8]
    cdef int k
    cdef bint in_d8, in_rhs, in_e8, in_hd
    cdef long n_cand = 0, n_d8 = 0, n_rhs = 0, n_e8 = 0, n_hd = 0
    d8_only, rhs_only, e8_only, hd_only = [], [], [], []
    for ia in range(nb):
        for ib in range(nb):
            for k in range(4):
                h[k] = blocks[ia, k]
                h[k + 4] = blocks[ib, k]
            n_cand += 1
            in_d8 = _in_dn(h, 8)
            in_rhs = ((_in_dn(h, 4) and _in_dn(&h[4], 4))
                      or (_in_dn_shift(h, 4, 2, 0) and _in_dn_shift(&h[4], 4, 2, 0)))
            in_e8 = in_d8 or _in_dn_shift(h, 8, 1, 1)
            in_hd = ((_in_dn(h, 4) or _in_dn_shift(h, 4, 1, 1))
                     and (_in_dn(&h[4], 4) or _in_dn_shift(&h[4], 4, 1, 1)))
            n_d8 += in_d8
            n_rhs += in_rhs
            n_e8 += in_e8
            n_hd += in_hd
            if in_d8 != in_rhs or in_e8 != in_hd:
                pt = tuple([h[k] for k in range(8)])
                if in_d8 and not in_rhs:
                    d8_only.append(pt)
                elif in_rhs and not in_d8:
                    rhs_only.append(pt)
                if in_e8 and not in_hd:
                    e8_only.append(pt)
                elif in_hd and not in_e8:
                    hd_only.append(pt)
    counts = {"candidates": n_cand, "d8": n_d8, "rhs20": n_rhs,
              "e8": n_e8, "hd_sum": n_hd}
    return counts, d8_only, rhs_only, e8_only, hd_only
