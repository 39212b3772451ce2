"""Brute-force ground truth: explicit path enumeration and Stirling sums.

Nothing here touches the frontier engine, so these functions can serve as
independent checks of it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .weights import WeightSystem

MAX_ENUM_LENGTH = 16

RISE, FALL, LEVEL = "U", "D", "L"


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class MotzkinPath:
    steps: str  # over U (rise), D (fall), L (level)

    def __post_init__(self):
        height = 0
        for s in self.steps:
            if s not in (RISE, FALL, LEVEL):
                raise ValueError(f"bad step {s!r}")
            height += (s == RISE) - (s == FALL)
            if height < 0:
                raise ValueError(f"path {self.steps!r} dips below the axis")
        if height != 0:
            raise ValueError(f"path {self.steps!r} ends at height {height}")

    def __len__(self) -> int:
        return len(self.steps)


def enumerate_paths(n: int) -> list[MotzkinPath]:
    """All Motzkin paths of length n, depth first, never generating invalid prefixes."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ENUM_LENGTH:
        raise EnumerationTooLarge(f"n={n} exceeds enumeration limit {MAX_ENUM_LENGTH}")
    return list(_paths(n))


@lru_cache(maxsize=MAX_ENUM_LENGTH + 1)
def _paths(n: int) -> tuple[MotzkinPath, ...]:
    out: list[MotzkinPath] = []
    buf: list[str] = []

    def walk(height: int, left: int) -> None:
        if left == 0:
            if height == 0:
                out.append(MotzkinPath("".join(buf)))
            return
        # must still be able to come back down
        if height + 1 <= left - 1:
            buf.append(RISE)
            walk(height + 1, left - 1)
            buf.pop()
        if height <= left - 1:
            buf.append(LEVEL)
            walk(height, left - 1)
            buf.pop()
        if height > 0:
            buf.append(FALL)
            walk(height - 1, left - 1)
            buf.pop()

    walk(0, n)
    return tuple(out)


def weight_of_path(path: MotzkinPath, system: WeightSystem) -> int:
    w = 1
    y = 0
    for s in path.steps:
        if s == RISE:
            w *= system.b(y)
            y += 1
        elif s == FALL:
            y -= 1
            w *= system.d(y)
        else:
            w *= system.c(y)
    return w


def motzkin_by_enumeration(system: WeightSystem, n: int) -> int:
    return sum(weight_of_path(p, system) for p in enumerate_paths(n))


@lru_cache(maxsize=None)
def _stirling_rows(n_max: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = (k * prev[k] if k < n else 0) + prev[k - 1]
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class StirlingTable:
    n_max: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n_max: int) -> "StirlingTable":
        return cls(n_max, _stirling_rows(n_max))

    def __call__(self, n: int, k: int) -> int:
        if k > n:
            return 0
        return self.entries[n][k]


def stirling(n: int, k: int) -> int:
    """Stirling number of the second kind; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    return _stirling_rows(n)[n][k]


def stirling_poly(n: int, u: int) -> int:
    """sum_k S(n,k) u^k."""
    return sum(s * u ** k for k, s in enumerate(_stirling_rows(n)[n]))


def f_by_stirling(n: int) -> int:
    return stirling_poly(n, -1)


def stirling_poly_check(n: int, u: int) -> bool:
    from .engine import motzkin_number
    from .weights import preset
    return stirling_poly(n, u) == motzkin_number(preset("flajolet_stirling", u=u), n)
