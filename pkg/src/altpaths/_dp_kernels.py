"""Subset-DP kernels for the exact longest-alternating-path oracle.

State encoding: for a vertex subset `mask`, reach[mask] is a bitset over
(endpoint, role) pairs at bit 2*v + role.  role 1 means the endpoint's
single path edge leaves it (so the next edge must leave it too); role 0
means it enters.  Order-1 seeds carry both roles.

Compiled with numba when available; the pure-Python twin is kept in sync
and used as a fallback.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is normally installed
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def alt_path_dp(out_masks, in_masks, reach, want_k):
    """Fill `reach` (len 2^n, zeroed int64) and return (best, best_mask, best_state).

    best is the maximum path order; best_state encodes 2*last+role at
    best_mask.  If want_k > 0, returns as soon as best >= want_k (reach is
    then only partially filled).
    """
    n = out_masks.shape[0]
    size = 1 << n
    for v in range(n):
        reach[1 << v] = 3 << (2 * v)
    best = 1
    best_mask = 1
    best_state = 0
    full = size - 1
    if want_k > 0 and best >= want_k:
        return best, best_mask, best_state
    for mask in range(1, size):
        s = reach[mask]
        if s == 0:
            continue
        pc = 0
        mm = mask
        while mm:
            mm &= mm - 1
            pc += 1
        if pc > best:
            best = pc
            best_mask = mask
            t = s & -s
            bi = -1
            while t:
                t >>= 1
                bi += 1
            best_state = bi
            if want_k > 0 and best >= want_k:
                return best, best_mask, best_state
        free = full & ~mask
        if free == 0:
            continue
        st = s
        while st:
            b = st & -st
            st ^= b
            idx = -1
            bb = b
            while bb:
                bb >>= 1
                idx += 1
            last = idx >> 1
            role = idx & 1
            if role == 1:
                cand = out_masks[last] & free
            else:
                cand = in_masks[last] & free
            while cand:
                wb = cand & -cand
                cand ^= wb
                w = -1
                ww = wb
                while ww:
                    ww >>= 1
                    w += 1
                reach[mask | wb] |= 1 << (2 * w + (1 - role))
    return best, best_mask, best_state


def alt_path_dp_py(out_masks, in_masks, reach, want_k):
    """Pure-Python twin of alt_path_dp (same contract, plain int lists)."""
    n = len(out_masks)
    size = 1 << n
    for v in range(n):
        reach[1 << v] = 3 << (2 * v)
    best, best_mask, best_state = 1, 1, 0
    if want_k > 0 and best >= want_k:
        return best, best_mask, best_state
    full = size - 1
    for mask in range(1, size):
        s = reach[mask]
        if not s:
            continue
        pc = mask.bit_count()
        if pc > best:
            best, best_mask = pc, mask
            best_state = (s & -s).bit_length() - 1
            if want_k > 0 and best >= want_k:
                return best, best_mask, best_state
        free = full & ~mask
        if not free:
            continue
        st = s
        while st:
            b = st & -st
            st ^= b
            idx = b.bit_length() - 1
            last, role = idx >> 1, idx & 1
            cand = (out_masks[last] if role == 1 else in_masks[last]) & free
            while cand:
                wb = cand & -cand
                cand ^= wb
                w = wb.bit_length() - 1
                reach[mask | wb] |= 1 << (2 * w + (1 - role))
    return best, best_mask, best_state


def run_dp(out_masks, in_masks, n, want_k=0):
    """Dispatch to the compiled kernel when usable; returns (best, mask, state, reach)."""
    size = 1 << n
    if HAVE_NUMBA and 2 * n <= 62:
        reach = np.zeros(size, dtype=np.int64)
        om = np.asarray(out_masks, dtype=np.int64)
        im = np.asarray(in_masks, dtype=np.int64)
        best, bm, bs = alt_path_dp(om, im, reach, want_k)
        return int(best), int(bm), int(bs), reach
    reach = [0] * size
    best, bm, bs = alt_path_dp_py(list(out_masks), list(in_masks), reach, want_k)
    return best, bm, bs, reach
