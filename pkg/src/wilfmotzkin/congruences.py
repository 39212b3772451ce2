"""Shift-operator calculus and finite-range checks of the 2-adic congruences.

E denotes the shift S^(6(2t-1)).  Each ``verify_*`` function evaluates a
polynomial in E on a window of exact (or modular) values and compares the
2-adic valuation of the result with what the congruence requires.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .chunks import scan_residues
from .engine import WILF_HALVED, exact_rows, f_sequence

EXACT_LIMIT = 400
MARGIN_HEADROOM = 4  # extra bits carried by modular windows so margins stay visible

INF = math.inf


def v2(x: int) -> float:
    """2-adic valuation; v2(0) is +inf."""
    x = int(x)
    if x == 0:
        return INF
    return (x & -x).bit_length() - 1


def e_period(t: int) -> int:
    if t < 1:
        raise ValueError("t must be a positive integer")
    return 6 * (2 * t - 1)


@dataclass(frozen=True)
class SequenceWindow:
    base_n: int
    values: tuple[int, ...]
    source: str = "f"  # "f" or "W-column k"
    modulus_exponent: Optional[int] = None  # values are residues when set

    def __getitem__(self, n: int) -> int:
        i = n - self.base_n
        if i < 0 or i >= len(self.values):
            raise IndexError(f"index {n} outside window [{self.base_n}, {self.base_n + len(self.values)})")
        return self.values[i]

    @property
    def end(self) -> int:
        return self.base_n + len(self.values)


@dataclass(frozen=True)
class EPoly:
    """sum_i coeffs[i] E^i with E = S^period, period = 6(2t-1) unless overridden."""

    t: int
    coeffs: tuple[int, ...]
    period: Optional[int] = None

    @property
    def shift(self) -> int:
        return self.period if self.period is not None else e_period(self.t)

    @property
    def span(self) -> int:
        return (len(self.coeffs) - 1) * self.shift

    @classmethod
    def power_minus_one(cls, t: int, j: int, r: int, period: Optional[int] = None) -> "EPoly":
        """(E^j - 1)^r."""
        coeffs = [0] * (j * r + 1)
        for i in range(r + 1):
            coeffs[i * j] = math.comb(r, i) * (-1) ** (r - i)
        return cls(t, tuple(coeffs), period)


def apply(poly: EPoly, window: SequenceWindow, at: int) -> int:
    if at < window.base_n or at + poly.span >= window.end:
        raise IndexError(f"window [{window.base_n}, {window.end}) too short for span "
                         f"{poly.span} at {at}")
    step = poly.shift
    return sum(a * window[at + i * step] for i, a in enumerate(poly.coeffs) if a)


@dataclass
class Report:
    lemma: str
    params: dict
    points: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    min_margin: float = INF
    extra: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.violations

    def record(self, point, observed: float, required: int) -> None:
        self.points.append(point)
        margin = observed - required
        if margin < self.min_margin:
            self.min_margin = margin
        if margin < 0:
            self.violations.append({"point": list(point), "v2": observed, "required": required})

    def to_dict(self) -> dict:
        def num(x):
            return "inf" if x == INF else x
        out = {"lemma": self.lemma, "params": self.params, "checked": len(self.points),
               "violations": [{**v, "v2": num(v["v2"])} for v in self.violations],
               "min_margin": num(self.min_margin), "holds": self.holds}
        out.update(self.extra)
        return out


def merge_reports(lemma: str, reports: Iterable[Report]) -> Report:
    """Deterministic merge, ordered by parameter tuple."""
    reports = sorted(reports, key=lambda r: tuple(sorted(r.params.items())))
    merged = Report(lemma, {"runs": [r.params for r in reports]})
    for r in reports:
        merged.points.extend(r.points)
        merged.violations.extend({**v, "params": r.params} for v in r.violations)
        merged.min_margin = min(merged.min_margin, r.min_margin)
    return merged


def f_window(n_stop: int, exponent: Optional[int] = None) -> SequenceWindow:
    """f(0..n_stop-1): exact below EXACT_LIMIT unless an exponent is given."""
    if exponent is None and n_stop <= EXACT_LIMIT:
        return SequenceWindow(0, f_sequence(max(n_stop - 1, 0)))
    if exponent is None:
        raise ValueError(f"exact window beyond n={EXACT_LIMIT}; pass a modulus exponent")
    res = scan_residues(exponent, n_stop)
    return SequenceWindow(0, tuple(int(v) for v in res), "f", exponent)


def w_column_windows(n_stop: int, k_max: int) -> list[SequenceWindow]:
    """Exact W[n][k] for the wilf_halved system, one window per column k."""
    cols = [[] for _ in range(k_max + 1)]
    for fr in exact_rows(WILF_HALVED, n_stop - 1):
        for k in range(k_max + 1):
            cols[k].append(fr[k])
    return [SequenceWindow(0, tuple(col), f"W-column {k}") for k, col in enumerate(cols)]


def _observed(value: int, window: SequenceWindow) -> float:
    if window.modulus_exponent is None:
        return v2(value)
    e = window.modulus_exponent
    r = value & ((1 << e) - 1)
    return INF if r == 0 else v2(r)


def _capped(report: Report, window: SequenceWindow) -> None:
    if window.modulus_exponent is not None:
        report.extra["valuation_cap"] = window.modulus_exponent


def verify_lemma4(r: int, t: int, n_max: int, k_max: int, period: Optional[int] = None,
                  windows: Optional[Sequence[SequenceWindow]] = None) -> Report:
    """v2((E-1)^r W[n][k]) >= r for n <= n_max, k <= k_max (wilf_halved rows).

    ``period`` replaces the shift of E; used for negative controls.
    """
    poly = EPoly.power_minus_one(t, 1, r, period)
    if windows is None:
        windows = w_column_windows(n_max + poly.span + 1, k_max)
    rep = Report("lemma4", {"r": r, "t": t, "n_max": n_max, "k_max": k_max,
                            **({"period": period} if period is not None else {})})
    for k in range(k_max + 1):
        win = windows[k]
        for n in range(n_max + 1):
            rep.record((n, k), v2(apply(poly, win, n)), r)
    return rep


def verify_lemma5(k: int, t: int, n_max: int) -> Report:
    """v2((E^(2^k) - 1)^2 f(n)) >= 2k+2."""
    poly = EPoly.power_minus_one(t, 2 ** k, 2)
    need = n_max + poly.span + 1
    required = 2 * k + 2
    win = f_window(need, None if need <= EXACT_LIMIT else required + MARGIN_HEADROOM)
    rep = Report("lemma5", {"k": k, "t": t, "n_max": n_max})
    _capped(rep, win)
    for n in range(n_max + 1):
        rep.record((n,), _observed(apply(poly, win, n), win), required)
    return rep


def verify_single_difference(k: int, t: int, n_max: int) -> Report:
    """v2((E^(2^k) - 1) f(n)) >= k+1, the single-power companion of verify_lemma5."""
    poly = EPoly.power_minus_one(t, 2 ** k, 1)
    need = n_max + poly.span + 1
    required = k + 1
    win = f_window(need, None if need <= EXACT_LIMIT else required + MARGIN_HEADROOM)
    rep = Report("single_difference", {"k": k, "t": t, "n_max": n_max})
    _capped(rep, win)
    for n in range(n_max + 1):
        rep.record((n,), _observed(apply(poly, win, n), win), required)
    return rep


def verify_periodicity(k: int, n_max: int, offset: int = 0,
                       residues: Optional[SequenceWindow] = None) -> Report:
    """f(n + 3*2^(k+1) + offset) = f(n) mod 2^(k+1) for n <= n_max.

    A nonzero ``offset`` gives a deliberately wrong period (negative control).
    """
    period = 3 * 2 ** (k + 1) + offset
    required = k + 1
    if residues is None:
        residues = f_window(n_max + period + 1, required + MARGIN_HEADROOM)
    e = residues.modulus_exponent
    rep = Report("periodicity", {"k": k, "n_max": n_max,
                                 **({"offset": offset} if offset else {})})
    _capped(rep, residues)
    vals = residues.values
    for n in range(n_max + 1):
        rep.record((n,), _observed(vals[n + period] - vals[n], residues), required)
    return rep


def verify_periodicity_range(k_max: int, n_max: int, threads: int = 1) -> Report:
    """Periodicity for every k <= k_max from a single modular scan."""
    e = k_max + 1 + MARGIN_HEADROOM
    res = scan_residues(e, n_max + 3 * 2 ** (k_max + 1) + 1, threads=threads)
    win = SequenceWindow(0, tuple(int(v) for v in res), "f", e)
    return merge_reports("periodicity", (verify_periodicity(k, n_max, residues=win)
                                         for k in range(k_max + 1)))


def verify_doubling(k: int, t: int, n_max: int) -> Report:
    """(E^(2^(k+1)) - 1) f(n) = 2 (E^(2^k) - 1) f(n)  mod 2^(2k+2).

    Checked as v2 of the difference of both sides, which is (E^(2^k) - 1)^2 f(n).
    The two sides are evaluated separately, not through that identity.
    """
    big = EPoly.power_minus_one(t, 2 ** (k + 1), 1)
    small = EPoly.power_minus_one(t, 2 ** k, 1)
    required = 2 * k + 2
    need = n_max + big.span + 1
    win = f_window(need, None if need <= EXACT_LIMIT else required + MARGIN_HEADROOM)
    rep = Report("doubling", {"k": k, "t": t, "n_max": n_max})
    _capped(rep, win)
    for n in range(n_max + 1):
        lhs = apply(big, win, n)
        rhs = 2 * apply(small, win, n)
        rep.record((n,), _observed(lhs - rhs, win), required)
    return rep


def abc_points(m: int, a: int, b: int) -> tuple[int, int, int]:
    big_a = 2 + 3 * 2 ** m + 3 * 2 ** (m + 1) * a
    big_b = 2 + 3 * 2 ** (m + 1) * b
    return big_a, big_b, (big_a + big_b) // 2


def verify_abc(m: int, a: int, b: int) -> Report:
    """Three-point relation behind the lifting step, checked mod 2^(m+3).

    With A = 2 + 3*2^m + 3*2^(m+1) a, B = 2 + 3*2^(m+1) b and C = (A+B)/2,
    C - B = A - C = 3*2^(m-1)(2(a-b)+1), so the doubling congruence at
    shift index m-2 and n = B gives  f(A) - f(B) = 2 (f(C) - f(B)).
    The variant  f(A) - f(C) = 2 (f(B) - f(C))  is evaluated too and
    reported as ``swapped_form_holds``; it is not what the doubling
    congruence yields and is not used for the verdict.
    """
    if m < 5:
        raise ValueError("m must be at least 5")
    if a < b:
        raise ValueError("requires a >= b; replace a by a + 4b first")
    big_a, big_b, big_c = abc_points(m, a, b)
    e = m + 3
    k = m - 2
    res = scan_residues(e, big_a + 1)
    fa, fb, fc = (int(res[x]) for x in (big_a, big_b, big_c))
    msk = (1 << e) - 1
    rep = Report("abc", {"m": m, "a": a, "b": b})
    rep.extra.update({
        "A": big_a, "B": big_b, "C": big_c,
        "f_mod": {"A": fa, "B": fb, "C": fc}, "modulus_exponent": e,
        "shift_index": k, "t": a - b + 1,
        "exponent_ok": 2 * k + 2 >= e,
        "swapped_form_holds": ((fa - fc) - 2 * (fb - fc)) & msk == 0,
    })
    if not rep.extra["exponent_ok"]:
        rep.violations.append({"point": [big_a, big_b, big_c], "v2": 0, "required": e,
                               "reason": "2k+2 < m+3"})
    r = ((fa - fb) - 2 * (fc - fb)) & msk
    rep.record((big_a, big_b, big_c), INF if r == 0 else v2(r), e)
    return rep
