"""Chunked modular scans of f(n) mod 2^m seeded by matrix jump-ahead.

The range [0, n_stop) is cut into equal chunks.  Each chunk starts from the
frontier A^(i*L) e_0, and all chunks are advanced together as the rows of a
2-D array, so one numpy operation moves every chunk forward by one row.
Worker threads take disjoint groups of chunks.  The arithmetic is exact, so
the output does not depend on the chunking or on the thread count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .engine import WILF_HALVED, modular_width
from .matrices import mat_pow_mod, matmul_mod, modular_transfer
from .modarith import mask, row_dtype

DEFAULT_CHUNK_LEN = 512


class _Stepper:
    def __init__(self, m: int):
        width = modular_width(m)
        b, c, d = WILF_HALVED.vectors(width)
        self.dtype = row_dtype(m, max(map(abs, b + c + d)))
        self.b = np.array(b[:-1], dtype=self.dtype)
        self.c = np.array(c, dtype=self.dtype)
        self.d = np.array(d[:-1], dtype=self.dtype)
        self.mask = mask(m)

    def __call__(self, state: np.ndarray) -> np.ndarray:
        new = state * self.c
        new[:, 1:] += state[:, :-1] * self.b
        new[:, :-1] += state[:, 1:] * self.d
        new &= self.mask
        return new


def chunk_seeds(m: int, chunk_len: int, count: int) -> np.ndarray:
    """Rows i*chunk_len of the modular frontier for i < count, one per row."""
    width = modular_width(m)
    jump = mat_pow_mod(modular_transfer(m), chunk_len, m)
    seeds = np.zeros((width, count), dtype=jump.entries.dtype)
    vec = np.zeros((width, 1), dtype=jump.entries.dtype)
    vec[0, 0] = 1
    for i in range(count):
        seeds[:, i] = vec[:, 0]
        if i + 1 < count:
            vec = matmul_mod(jump.entries, vec, m)
    return seeds.T.copy()


def _plan(n_stop: int, chunk_len: int | None) -> tuple[int, int]:
    if chunk_len is None:
        chunk_len = DEFAULT_CHUNK_LEN
    chunk_len = max(1, min(chunk_len, n_stop))
    return chunk_len, -(-n_stop // chunk_len)


def _run(m: int, seeds: np.ndarray, first_chunk: int, chunk_len: int, n_stop: int,
         zeros_only: bool):
    step = _Stepper(m)
    state = seeds.astype(step.dtype)
    count = state.shape[0]
    if zeros_only:
        hits = []
    else:
        out = np.empty((count, chunk_len), dtype=step.dtype)
    for j in range(chunk_len):
        col = state[:, 0]
        if zeros_only:
            idx = np.flatnonzero(col == 0)
            if idx.size:
                hits.extend((first_chunk + i) * chunk_len + j for i in idx.tolist())
        else:
            out[:, j] = col
        if j + 1 < chunk_len:
            state = step(state)
    if zeros_only:
        return [n for n in hits if n < n_stop]
    return out.reshape(-1)


def _scan(m: int, n_stop: int, threads: int, chunk_len: int | None, zeros_only: bool):
    if n_stop <= 0:
        return [] if zeros_only else np.zeros(0, dtype=np.int64)
    chunk_len, count = _plan(n_stop, chunk_len)
    seeds = chunk_seeds(m, chunk_len, count)
    threads = max(1, min(threads, count))
    bounds = np.linspace(0, count, threads + 1).astype(int)
    groups = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    def work(group):
        lo, hi = group
        return _run(m, seeds[lo:hi], lo, chunk_len, n_stop, zeros_only)

    if len(groups) == 1:
        parts = [work(groups[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(groups)) as pool:
            parts = list(pool.map(work, groups))
    if zeros_only:
        return sorted(n for part in parts for n in part)
    return np.concatenate(parts)[:n_stop]


def scan_zeros(m: int, n_stop: int, threads: int = 1, chunk_len: int | None = None) -> list[int]:
    """All n < n_stop with f(n) = 0 mod 2^m, ascending."""
    return _scan(m, n_stop, threads, chunk_len, zeros_only=True)


def scan_residues(m: int, n_stop: int, threads: int = 1, chunk_len: int | None = None) -> np.ndarray:
    """f(n) mod 2^m for n < n_stop as an array (dtype int64 or object)."""
    return _scan(m, n_stop, threads, chunk_len, zeros_only=False)
