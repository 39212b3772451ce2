"""Arithmetic modulo 2^m on numpy arrays.

int64 is used whenever every intermediate provably stays below 2^62;
otherwise arrays fall back to dtype=object (Python integers), which is
slow but exact.
"""
from __future__ import annotations

import numpy as np

_SAFE_BITS = 62


def mask(m: int) -> int:
    return (1 << m) - 1


def row_dtype(m: int, max_abs_weight: int):
    """dtype for frontier rows: three products (value < 2^m) * weight summed."""
    return np.int64 if m + (3 * max_abs_weight).bit_length() <= _SAFE_BITS else object


def as_residues(values, m: int, dtype) -> np.ndarray:
    return np.array([int(v) & mask(m) for v in values], dtype=dtype)


def matmul_mod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """(a @ b) mod 2^m for arrays with entries already in [0, 2^m).

    Splits ``b`` into limbs narrow enough that every dot product fits in
    int64; falls back to object arithmetic for very large m.
    """
    msk = mask(m)
    inner = a.shape[-1]
    dim_bits = max(inner, 1).bit_length()
    if a.dtype == object or b.dtype == object:
        return (a.astype(object) @ b.astype(object)) & msk
    if 2 * m + dim_bits <= _SAFE_BITS:
        return (a @ b) & msk
    limb = _SAFE_BITS - m - dim_bits
    if limb < 4:
        return ((a.astype(object) @ b.astype(object)) & msk).astype(object)
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    limb_mask = mask(limb)
    shift = 0
    while shift < m:
        part = (b >> shift) & limb_mask
        out += ((a @ part) & mask(m - shift)) << shift
        out &= msk
        shift += limb
    return out
