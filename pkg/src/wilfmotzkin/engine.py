"""Frontier recurrence for weighted Motzkin numbers.

Row n of the frontier holds W[n][k], the weighted count of paths of length n
from height 0 to height k.  One step of the recurrence is

    W[n+1][k] = b_{k-1} W[n][k-1] + c_k W[n][k] + d_k W[n][k+1]

and M_n = W[n][0].  Exact rows use Python integers.  Modular rows (the
wilf_halved system only) keep heights 0..4m-1: every path to height k
carries the rise weights b_0..b_{k-1}, whose product is divisible by
2^floor(k/4), so the dropped column 4m is 0 mod 2^m.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .modarith import as_residues, mask, row_dtype
from .weights import WeightSystem, preset

CHECKPOINT_VERSION = 1

WILF_PLAIN = preset("wilf_plain")
WILF_HALVED = preset("wilf_halved")


class ModeError(ValueError):
    """Modular frontier used with an unsupported system or mismatched exponent."""


def is_wilf_halved(system: WeightSystem) -> bool:
    return (system.rise, system.level, system.fall) == (
        WILF_HALVED.rise, WILF_HALVED.level, WILF_HALVED.fall)


def modular_width(m: int) -> int:
    return 4 * m


@dataclass(frozen=True)
class Frontier:
    n: int
    values: tuple[int, ...]
    m: Optional[int] = None  # None means exact

    @property
    def exact(self) -> bool:
        return self.m is None

    @property
    def width(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k] if k < len(self.values) else 0


@dataclass(frozen=True)
class CfExpansion:
    depth: int
    coefficients: tuple[int, ...]


def initial_frontier(m: Optional[int] = None) -> Frontier:
    if m is None:
        return Frontier(0, (1,))
    if m < 1:
        raise ValueError(f"modulus exponent must be positive, got {m}")
    return Frontier(0, (1,) + (0,) * (modular_width(m) - 1), m)


def _step_exact(row: Sequence[int], b, c, d, width: int) -> list[int]:
    new = [0] * width
    n_prev = len(row)
    for k in range(width):
        s = 0
        if k < n_prev:
            s = c[k] * row[k]
        if 0 < k <= n_prev:
            s += b[k - 1] * row[k - 1]
        if k + 1 < n_prev:
            s += d[k] * row[k + 1]
        new[k] = s
    return new


def advance(frontier: Frontier, system: WeightSystem) -> Frontier:
    if frontier.exact:
        width = frontier.width + 1
        b, c, d = system.vectors(width)
        return Frontier(frontier.n + 1, tuple(_step_exact(frontier.values, b, c, d, width)))
    if not is_wilf_halved(system):
        raise ModeError(f"modular frontiers require the wilf_halved system, got {system.label!r}")
    m, width = frontier.m, frontier.width
    b, c, d = system.vectors(width)
    msk = mask(m)
    row = _step_exact(frontier.values, b, c, d, width)
    return Frontier(frontier.n + 1, tuple(v & msk for v in row), m)


def exact_rows(system: WeightSystem, n_max: int):
    """Yield the exact frontiers for rows 0..n_max."""
    fr = initial_frontier()
    yield fr
    b, c, d = system.vectors(n_max + 1)
    row = list(fr.values)
    for n in range(1, n_max + 1):
        row = _step_exact(row, b, c, d, n + 1)
        yield Frontier(n, tuple(row))


def motzkin_sequence(system: WeightSystem, n_max: int) -> list[int]:
    """M_0..M_{n_max}.  Heights above the number of remaining steps are skipped."""
    b, c, d = system.vectors(n_max + 2)
    row = [1]
    out = [1]
    for n in range(1, n_max + 1):
        width = min(n, n_max - n) + 1
        row = _step_exact(row, b, c, d, width)
        out.append(row[0])
    return out


def motzkin_number(system: WeightSystem, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return motzkin_sequence(system, n)[n]


@lru_cache(maxsize=8)
def _f_sequence(n_max: int) -> tuple[int, ...]:
    return tuple(motzkin_sequence(WILF_PLAIN, n_max))


def f_sequence(n_max: int) -> tuple[int, ...]:
    """Exact f(0..n_max); cached, computed in blocks of 64 to share work."""
    size = max(64, -(-(n_max + 1) // 64) * 64)
    return _f_sequence(size - 1)[: n_max + 1]


def f_exact(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return f_sequence(n)[n]


class ModularRow:
    """Mutable numpy-backed modular frontier for fast sequential scans."""

    def __init__(self, m: int, values: Optional[Sequence[int]] = None):
        self.m = m
        self.width = modular_width(m)
        b, c, d = WILF_HALVED.vectors(self.width)
        self.dtype = row_dtype(m, max(map(abs, b + c + d)))
        self.b = np.array(b[:-1], dtype=self.dtype)
        self.c = np.array(c, dtype=self.dtype)
        self.d = np.array(d[:-1], dtype=self.dtype)
        self.mask = mask(m)
        init = values if values is not None else initial_frontier(m).values
        self.row = as_residues(init, m, self.dtype)

    def step(self) -> None:
        row = self.row
        new = row * self.c
        new[1:] += row[:-1] * self.b
        new[:-1] += row[1:] * self.d
        new &= self.mask
        self.row = new

    def values(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.row)


def f_mod(n: int, m: int) -> int:
    """f(n) mod 2^m from a width-4m modular frontier."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = ModularRow(m)
    for _ in range(n):
        row.step()
    return int(row.row[0])


def scan_mod(m: int, n_max: int, start: Optional[Frontier] = None,
             emit: Optional[Callable[[int, int], None]] = None,
             checkpoint: Optional[os.PathLike] = None,
             checkpoint_every: int = 1 << 20) -> Frontier:
    """Emit (n, f(n) mod 2^m) for n = start.n .. n_max and return row n_max.

    With ``checkpoint`` set, the frontier is written atomically every
    ``checkpoint_every`` rows and at the end.
    """
    if start is None:
        start = initial_frontier(m)
    elif start.m != m or start.width != modular_width(m):
        raise ModeError(f"start frontier has m={start.m}, width={start.width}; expected m={m}, "
                        f"width={modular_width(m)}")
    row = ModularRow(m, start.values)
    n = start.n
    while True:
        if emit is not None:
            emit(n, int(row.row[0]))
        if n >= n_max:
            break
        row.step()
        n += 1
        if checkpoint is not None and n % checkpoint_every == 0:
            save_checkpoint(checkpoint, Frontier(n, row.values(), m))
    final = Frontier(n, row.values(), m)
    if checkpoint is not None:
        save_checkpoint(checkpoint, final)
    return final


def save_checkpoint(path: os.PathLike, frontier: Frontier, label: str = "wilf_halved") -> None:
    if frontier.exact:
        raise ModeError("only modular frontiers are checkpointed")
    path = Path(path)
    doc = {"version": CHECKPOINT_VERSION, "weight_label": label, "m": frontier.m,
           "width": frontier.width, "n": frontier.n,
           "values": [format(v, "x") for v in frontier.values]}
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: os.PathLike) -> Frontier:
    doc = json.loads(Path(path).read_text())
    if doc.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {doc.get('version')!r}")
    if doc["weight_label"] != "wilf_halved":
        raise ModeError(f"checkpoint is for {doc['weight_label']!r}, not wilf_halved")
    values = tuple(int(v, 16) for v in doc["values"])
    if len(values) != doc["width"] or doc["width"] != modular_width(doc["m"]):
        raise ValueError("checkpoint width does not match 4m")
    return Frontier(doc["n"], values, doc["m"])


def _series_inverse(p: Sequence[int], n_max: int) -> list[int]:
    # p[0] == 1, so the inverse has integer coefficients
    inv = [0] * (n_max + 1)
    inv[0] = 1
    for n in range(1, n_max + 1):
        s = 0
        for i in range(1, min(n, len(p) - 1) + 1):
            s += p[i] * inv[n - i]
        inv[n] = -s
    return inv


def _series_mul(p: Sequence[int], q: Sequence[int], n_max: int) -> list[int]:
    out = [0] * (n_max + 1)
    for i, a in enumerate(p[: n_max + 1]):
        if a:
            for j, b in enumerate(q[: n_max + 1 - i]):
                out[i + j] += a * b
    return out


def series_from_cf(system: WeightSystem, depth: int, n_max: int) -> CfExpansion:
    """Power series of the continued fraction truncated after level ``depth``.

    Coefficients agree with M_n for n <= 2*depth + 1.
    """
    if depth < 0 or n_max < 0:
        raise ValueError("depth and n_max must be nonnegative")
    inner = [1] + [0] * n_max  # level below the truncation contributes nothing
    for level in range(depth, -1, -1):
        denom = [0] * (n_max + 1)
        denom[0] = 1
        if n_max >= 1:
            denom[1] -= system.c(level)
        if level < depth:
            bd = system.b(level) * system.d(level)
            for i, a in enumerate(inner[: n_max - 1]):
                denom[i + 2] -= bd * a
        inner = _series_inverse(denom, n_max)
    return CfExpansion(depth, tuple(inner))
