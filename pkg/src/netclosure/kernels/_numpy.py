"""Vectorised numpy implementations of the subset-table kernels.

Every table is indexed by a subset bitmask ``m`` in ``range(2**n)``.
"""
import numpy as np

ONE = np.int64(1)


def subset_unions(rows, n):
    """``out[m]`` = OR of ``rows[i]`` over the bits ``i`` of ``m``."""
    out = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        half = 1 << k
        np.bitwise_or(out[:half], rows[k], out=out[half : 2 * half])
    return out


def _contained(regions, unions):
    closed = np.zeros(unions.shape, dtype=np.int64)
    for i in range(len(regions)):
        hit = (regions[i] & ~unions) == 0
        closed[hit] |= ONE << i
    return closed


def all_closures(regions, n):
    return _contained(regions, subset_unions(regions, n))


def closures_of(regions, masks):
    masks = np.asarray(masks, dtype=np.int64)
    unions = np.zeros(masks.shape, dtype=np.int64)
    for i in range(len(regions)):
        sel = ((masks >> i) & 1).astype(bool)
        unions[sel] |= regions[i]
    return _contained(regions, unions)


def continuity_violations(src_regions, dst_regions, images):
    n = len(src_regions)
    closed = all_closures(src_regions, n)
    image = subset_unions(images, n)
    lhs = image[closed]
    rhs = closures_of(dst_regions, image)
    return (lhs & ~rhs) != 0


def any_violation(src_regions, dst_regions, images):
    return bool(continuity_violations(src_regions, dst_regions, images).any())


def monotone_violation(table, n):
    """First cover pair ``(m - {i}, m)`` with ``table`` not inclusion-preserving.

    Ordered by ``m`` then ``i``; ``(-1, -1)`` when monotone.
    """
    masks = np.arange(1 << n, dtype=np.int64)
    best = None
    for i in range(n):
        bit = ONE << i
        has = ((masks >> i) & 1).astype(bool)
        bad = has & ((table[masks ^ bit] & ~table) != 0)
        hits = np.flatnonzero(bad)
        if hits.size and (best is None or hits[0] < best[1]):
            best = (int(hits[0] ^ bit), int(hits[0]))
    return best if best is not None else (-1, -1)
