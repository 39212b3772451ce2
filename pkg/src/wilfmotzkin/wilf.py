"""Residue classes a_k where f(n) can vanish mod 2^(k+2), and zero certificates.

For k >= 5, f(n) = 0 mod 2^(k+2) forces n = 2 or n = a_k (mod 3*2^k).
a_k is computed as the unique class other than that of 2 which contains
some n in one full period [0, 3*2^(k+2)) of f mod 2^(k+2) with
f(n) = 0 mod 2^(k+2).
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .chunks import scan_zeros
from .engine import f_sequence
from .matrices import apply_mod, mat_pow_mod, modular_transfer

log = logging.getLogger(__name__)

BASE_K = 5
ANCHOR = 38  # every a_k is 38 mod 96
MAX_K = 24
EXACT_CONFIRM_LIMIT = 10_000
CACHE_ENV = "WILFMOTZKIN_CACHE_DIR"


class ResidueStructureError(RuntimeError):
    """The zero set mod 3*2^k is not {2, a} with a = 38 mod 96."""

    def __init__(self, message: str, residues):
        super().__init__(f"{message}: {sorted(residues)}")
        self.residues = sorted(residues)


class LiftError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(f"{message}: {diagnostics}")
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class AkEntry:
    k: int
    a_k: int
    witness_n: Optional[int]
    scanned_up_to: int

    @property
    def modulus(self) -> int:
        return 3 * 2 ** self.k


@dataclass
class ZeroReport:
    n_max: int
    m: int
    surviving_n: list[int]
    confirmed_zero: list[int]
    unconfirmed: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def period_length(k: int) -> int:
    """Period of f mod 2^(k+2)."""
    return 3 * 2 ** (k + 2)


def _check_structure(k: int, residues: set[int]) -> int:
    others = residues - {2}
    if 2 not in residues or len(others) != 1:
        raise ResidueStructureError(f"k={k}: expected {{2, a_k}}", residues)
    (a,) = others
    if a % 96 != ANCHOR:
        raise ResidueStructureError(f"k={k}: a_k={a} is not 38 mod 96", residues)
    return a


def find_zero_residues(k: int, threads: int = 1) -> set[int]:
    """{n mod 3*2^k : f(n) = 0 mod 2^(k+2)} from a full-period scan."""
    if k < BASE_K:
        raise ValueError(f"k must be at least {BASE_K}")
    zeros = scan_zeros(k + 2, period_length(k), threads=threads)
    residues = {n % (3 * 2 ** k) for n in zeros}
    _check_structure(k, residues)
    return residues


def base_entry(threads: int = 1) -> AkEntry:
    k = BASE_K
    a = _check_structure(k, find_zero_residues(k, threads))
    zeros = scan_zeros(k + 2, period_length(k), threads=threads)
    witness = min(n for n in zeros if n % (3 * 2 ** k) == a)
    return AkEntry(k, a, witness, period_length(k))


def _class_residues_jump(start: int, step: int, count: int, m: int, threads: int) -> list[int]:
    """f(start + i*step) mod 2^m for i < count, via matrix jumps."""
    A = modular_transfer(m)
    jump = mat_pow_mod(A, step, m)
    first = mat_pow_mod(A, start, m).entries[:, 0]

    # split the class into contiguous runs; each worker jumps to its own start
    threads = max(1, min(threads, count))
    bounds = np.linspace(0, count, threads + 1).astype(int)

    def run(lo: int, hi: int) -> list[int]:
        vec = first if lo == 0 else apply_mod(mat_pow_mod(jump, lo, m), first)
        out = []
        for i in range(lo, hi):
            out.append(int(vec[0]))
            if i + 1 < hi:
                vec = apply_mod(jump, vec)
        return out

    spans = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    if len(spans) == 1:
        return run(*spans[0])
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        parts = list(pool.map(lambda s: run(*s), spans))
    return [v for part in parts for v in part]


def lift_ak(prev: AkEntry, threads: int = 1, method: str = "jump") -> AkEntry:
    """a_{k+1} from a_k: only n = a_k (mod 3*2^k) can vanish mod 2^(k+3).

    ``method="jump"`` evaluates the 8 candidates of one period directly by
    matrix powers; ``method="scan"`` runs the full chunked scan of the
    period and filters it, which is slower but shares no code with the jump
    path beyond the transfer matrix.
    """
    k = prev.k + 1
    if k > MAX_K:
        raise ValueError(f"k={k} exceeds limit {MAX_K}")
    m = k + 2
    prev_mod = prev.modulus
    period = period_length(k)
    if method == "jump":
        count = period // prev_mod
        vals = _class_residues_jump(prev.a_k, prev_mod, count, m, threads)
        hits = [prev.a_k + i * prev_mod for i, v in enumerate(vals) if v == 0]
    elif method == "scan":
        hits = [n for n in scan_zeros(m, period, threads=threads) if n % prev_mod == prev.a_k]
    else:
        raise ValueError(f"unknown method {method!r}")
    modulus = 3 * 2 ** k
    classes = sorted({n % modulus for n in hits})
    lifts = (prev.a_k, prev.a_k + prev_mod)
    diag = {"k": k, "prev_a": prev.a_k, "lifts": list(lifts), "hits": hits[:16]}
    if len(classes) == 0:
        raise LiftError(f"undetermined at k={k}: no zero in either lift", diag)
    if len(classes) > 1:
        raise LiftError(f"both lifts vanish at k={k}", diag)
    a = classes[0]
    if a not in lifts or a % 96 != ANCHOR:
        raise LiftError(f"unexpected class at k={k}", diag)
    return AkEntry(k, a, min(hits), period)


def default_cache_path() -> Path:
    root = os.environ.get(CACHE_ENV)
    base = Path(root) if root else Path.home() / ".cache" / "wilfmotzkin"
    return base / "ak_table.json"


def load_cache(path: os.PathLike) -> list[AkEntry]:
    path = Path(path)
    if not path.exists():
        return []
    entries = [AkEntry(**row) for row in json.loads(path.read_text())]
    entries.sort(key=lambda e: e.k)
    # keep the longest valid prefix starting at the base case
    good: list[AkEntry] = []
    for e in entries:
        expected_k = BASE_K + len(good)
        if e.k != expected_k or e.a_k % 96 != ANCHOR:
            break
        if good and e.a_k not in (good[-1].a_k, good[-1].a_k + good[-1].modulus):
            break
        good.append(e)
    return good


def save_cache(path: os.PathLike, entries: list[AkEntry]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump([asdict(e) for e in entries], fh, indent=1)
    os.replace(tmp, path)


def compute_ak_table(k_max: int, threads: int = 1, cache: Optional[os.PathLike] = None,
                     method: str = "jump") -> list[AkEntry]:
    if not BASE_K <= k_max <= MAX_K:
        raise ValueError(f"k_max must lie in [{BASE_K}, {MAX_K}]")
    cached = load_cache(cache) if cache is not None else []
    table = list(cached) or [base_entry(threads)]
    while table[-1].k < k_max:
        entry = lift_ak(table[-1], threads=threads, method=method)
        log.info("a_%d = %d (witness %s)", entry.k, entry.a_k, entry.witness_n)
        table.append(entry)
        if cache is not None:
            save_cache(cache, table)
    if cache is not None and len(table) > len(cached):
        save_cache(cache, table)
    return [e for e in table if e.k <= k_max]


def certify_nonzero(n_max: int, m: int, threads: int = 1,
                    exact_limit: int = EXACT_CONFIRM_LIMIT) -> ZeroReport:
    """Every n <= n_max with f(n) != 0 mod 2^m is certified f(n) != 0.

    Survivors at or below ``exact_limit`` are settled exactly.
    """
    survivors = scan_zeros(m, n_max + 1, threads=threads)
    small = [n for n in survivors if n <= exact_limit]
    exact = f_sequence(max(small)) if small else ()
    confirmed = [n for n in small if exact[n] == 0]
    unconfirmed = [n for n in survivors if n > exact_limit]
    return ZeroReport(n_max, m, survivors, confirmed, unconfirmed)


def theorem2_narrative(k: int, table: list[AkEntry], certificate: Optional[ZeroReport] = None) -> dict:
    """Spell out what the computed a_k says about zeros below 3*2^k."""
    by_k = {e.k: e for e in table}
    if k not in by_k:
        raise ValueError(f"a_{k} has not been computed")
    entry = by_k[k]
    bound = entry.modulus
    candidates = [entry.a_k]  # the only n in (2, 3*2^k) in the class
    report = {
        "k": k, "a_k": entry.a_k, "modulus": bound, "modulus_exponent": k + 2,
        "statement": (f"f(n) = 0 mod 2^{k + 2} only if n = 2 or n = {entry.a_k} mod {bound}; "
                      f"any zero with 2 < n < {bound} must equal {entry.a_k}, "
                      f"so at most one such zero exists"),
        "candidates": candidates,
    }
    status = {}
    for n in candidates:
        if certificate is not None and n <= certificate.n_max:
            status[str(n)] = ("excluded" if n not in certificate.surviving_n else
                              "zero" if n in certificate.confirmed_zero else "unresolved survivor")
        elif n <= EXACT_CONFIRM_LIMIT:
            status[str(n)] = "zero" if f_sequence(n)[n] == 0 else "excluded"
        else:
            status[str(n)] = f"candidate, 2-adically unresolved at k={k}"
    report["candidate_status"] = status
    if certificate is not None:
        report["certificate"] = {"n_max": certificate.n_max, "m": certificate.m,
                                 "surviving_n": certificate.surviving_n}
    return report
