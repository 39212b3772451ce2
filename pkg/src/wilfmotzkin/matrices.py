"""Tridiagonal transfer matrices and modular jump-ahead."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import WILF_HALVED, Frontier, initial_frontier, modular_width
from .modarith import mask, matmul_mod
from .weights import WeightSystem

# the 4x4 block of A_{4k-1} mod 2 for wilf_halved
BLOCK_A = ((1, 1, 0, 0),
           (1, 0, 0, 0),
           (0, 1, 1, 1),
           (0, 0, 1, 0))


@dataclass(frozen=True)
class TransferMatrix:
    r: int
    entries: tuple[tuple[int, ...], ...]
    system: WeightSystem

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)

    def mod(self, m: int) -> tuple[tuple[int, ...], ...]:
        msk = mask(m)
        return tuple(tuple(v & msk for v in row) for row in self.entries)


@dataclass(frozen=True)
class ModMatrix:
    m: int
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if other.m != self.m:
            raise ValueError("moduli differ")
        return ModMatrix(self.m, matmul_mod(self.entries, other.entries, self.m))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModMatrix) and self.m == other.m
                and np.array_equal(self.entries, other.entries))

    def is_identity(self) -> bool:
        return np.array_equal(self.entries, np.eye(self.dim, dtype=np.int64))


def build_transfer(system: WeightSystem, r: int) -> TransferMatrix:
    """The (r+1)x(r+1) matrix with c on the diagonal, d above, b below."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    size = r + 1
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = system.c(i)
        if i + 1 < size:
            rows[i][i + 1] = system.d(i)
            rows[i + 1][i] = system.b(i)
    return TransferMatrix(r, tuple(map(tuple, rows)), system)


def _dtype_for(m: int, dim: int):
    return np.int64 if m <= 62 - dim.bit_length() else object


def to_mod(matrix: TransferMatrix | np.ndarray | list, m: int) -> ModMatrix:
    entries = matrix.entries if isinstance(matrix, TransferMatrix) else matrix
    msk = mask(m)
    rows = [[int(v) & msk for v in row] for row in entries]
    return ModMatrix(m, np.array(rows, dtype=_dtype_for(m, len(rows))))


def identity_mod(dim: int, m: int) -> ModMatrix:
    return ModMatrix(m, np.eye(dim, dtype=_dtype_for(m, dim)))


def mat_pow_mod(matrix, e: int, m: int) -> ModMatrix:
    """matrix**e mod 2^m by square-and-multiply."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    base = matrix if isinstance(matrix, ModMatrix) and matrix.m == m else to_mod(
        matrix.entries if isinstance(matrix, ModMatrix) else matrix, m)
    result = identity_mod(base.dim, m)
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def block_diagonal_a(k: int) -> tuple[tuple[int, ...], ...]:
    size = 4 * k
    rows = [[0] * size for _ in range(size)]
    for blk in range(k):
        for i in range(4):
            for j in range(4):
                rows[4 * blk + i][4 * blk + j] = BLOCK_A[i][j]
    return tuple(map(tuple, rows))


def check_block_structure(k: int, system: WeightSystem = WILF_HALVED) -> bool:
    """Is A_{4k-1} mod 2 block diagonal with k copies of BLOCK_A?"""
    if k < 1:
        raise ValueError("k must be positive")
    return build_transfer(system, 4 * k - 1).mod(1) == block_diagonal_a(k)


def modular_transfer(m: int) -> ModMatrix:
    """A_{4m-1} for wilf_halved, reduced mod 2^m: one step of the width-4m frontier."""
    return to_mod(build_transfer(WILF_HALVED, modular_width(m) - 1), m)


def apply_mod(matrix: ModMatrix, vector) -> np.ndarray:
    vec = np.asarray([int(v) for v in vector], dtype=matrix.entries.dtype).reshape(-1, 1)
    return matmul_mod(matrix.entries, vec, matrix.m).reshape(-1)


def jump_state(m: int, n: int) -> Frontier:
    """Modular frontier at row n, via A_{4m-1}^n applied to the initial row."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    start = initial_frontier(m)
    if n == 0:
        return start
    power = mat_pow_mod(modular_transfer(m), n, m)
    # initial row is e_0, so the result is column 0 of the power
    return Frontier(n, tuple(int(v) for v in power.entries[:, 0]), m)
