"""numba-compiled twins of :mod:`netclosure.kernels._numpy`."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def subset_unions(rows, n):
    out = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        half = 1 << k
        r = rows[k]
        for j in range(half):
            out[half + j] = out[j] | r
    return out


@njit(cache=True, nogil=True)
def _closure_of_union(regions, union):
    c = np.int64(0)
    for i in range(regions.shape[0]):
        if regions[i] & ~union == 0:
            c |= np.int64(1) << i
    return c


@njit(cache=True, nogil=True)
def _union_of(regions, mask):
    u = np.int64(0)
    i = 0
    while mask:
        if mask & 1:
            u |= regions[i]
        mask >>= 1
        i += 1
    return u


@njit(cache=True, nogil=True)
def all_closures(regions, n):
    unions = subset_unions(regions, n)
    out = np.empty_like(unions)
    for m in range(unions.shape[0]):
        out[m] = _closure_of_union(regions, unions[m])
    return out


@njit(cache=True, nogil=True)
def closures_of(regions, masks):
    out = np.empty(masks.shape[0], dtype=np.int64)
    for k in range(masks.shape[0]):
        out[k] = _closure_of_union(regions, _union_of(regions, masks[k]))
    return out


@njit(cache=True, nogil=True)
def continuity_violations(src_regions, dst_regions, images):
    n = src_regions.shape[0]
    closed = all_closures(src_regions, n)
    image = subset_unions(images, n)
    out = np.zeros(closed.shape[0], dtype=np.bool_)
    for m in range(closed.shape[0]):
        img = image[m]
        rhs = _closure_of_union(dst_regions, _union_of(dst_regions, img))
        out[m] = image[closed[m]] & ~rhs != 0
    return out


@njit(cache=True, nogil=True)
def any_violation(src_regions, dst_regions, images):
    n = src_regions.shape[0]
    closed = all_closures(src_regions, n)
    image = subset_unions(images, n)
    for m in range(closed.shape[0]):
        rhs = _closure_of_union(dst_regions, _union_of(dst_regions, image[m]))
        if image[closed[m]] & ~rhs != 0:
            return True
    return False


@njit(cache=True, nogil=True)
def monotone_violation(table, n):
    for m in range(1, 1 << n):
        for i in range(n):
            if (m >> i) & 1:
                sub = m ^ (1 << i)
                if table[sub] & ~table[m] != 0:
                    return sub, m
    return -1, -1
