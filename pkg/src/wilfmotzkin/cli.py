"""Command-line interface: ``wilfmotzkin <command> ...`` (or ``python -m wilfmotzkin``).

Exit codes: 0 success, 1 a verification found violations, 2 usage error.
With ``--json`` each command prints one JSON object per line; big integers
are written as decimal strings.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import congruences as cg
from . import engine, matrices, oracle, wilf
from .weights import PRESETS, preset

log = logging.getLogger("wilfmotzkin")


@dataclass
class CommandResult:
    command: str
    params: dict
    payload: object
    elapsed_ms: int = 0
    ok: bool = True


def _big(x: int) -> str:
    return str(int(x))


def _system(args):
    return preset(args.weights, u=args.u)


def cmd_compute(args) -> CommandResult:
    what = args.what
    if what == "f":
        if args.mod_exponent is not None:
            value = engine.f_mod(args.n, args.mod_exponent)
        else:
            value = engine.f_exact(args.n)
        return CommandResult("compute f", {"n": args.n, "mod_exponent": args.mod_exponent}, _big(value))
    if what == "motzkin":
        system = _system(args)
        return CommandResult("compute motzkin", {"weights": system.label, "n": args.n},
                             _big(engine.motzkin_number(system, args.n)))
    if what == "stirling":
        return CommandResult("compute stirling", {"n": args.n, "k": args.k},
                             _big(oracle.stirling(args.n, args.k)))
    if what == "cf":
        system = _system(args)
        cf = engine.series_from_cf(system, args.depth, args.n_max)
        return CommandResult("compute cf", {"weights": system.label, "depth": args.depth,
                                            "n_max": args.n_max},
                             [_big(v) for v in cf.coefficients])
    raise AssertionError(what)


def cmd_scan(args) -> CommandResult:
    m, n_max = args.mod_exponent, args.n_max
    start = None
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    if ckpt is not None and ckpt.exists():
        start = engine.load_checkpoint(ckpt)
        if start.m != m:
            raise engine.ModeError(f"checkpoint has m={start.m}, requested m={m}")
        log.info("resuming from row %d", start.n)
    rows = []

    def emit(n, r):
        # a resumed start row was already emitted by the previous run
        if start is not None and n == start.n:
            return
        if not args.emit_zeros_only or r == 0:
            rows.append([n, _big(r)])

    final = engine.scan_mod(m, n_max, start=start, emit=emit, checkpoint=ckpt)
    return CommandResult("scan", {"mod_exponent": m, "n_max": n_max,
                                  "emit_zeros_only": args.emit_zeros_only},
                         {"rows": rows, "final_n": final.n})


def _report(name, params, rep) -> CommandResult:
    payload = rep.to_dict() if hasattr(rep, "to_dict") else rep
    return CommandResult(f"verify {name}", params, payload, ok=bool(payload["holds"]))


def cmd_verify(args) -> CommandResult:
    name = args.which
    if name == "a6":
        power = matrices.mat_pow_mod(matrices.BLOCK_A, 6, 1)
        return _report(name, {}, {"holds": power.is_identity()})
    if name == "blocks":
        results = {str(k): matrices.check_block_structure(k) for k in range(1, args.k + 1)}
        return _report(name, {"k": args.k}, {"holds": all(results.values()), "by_k": results})
    if name == "lemma4":
        reps = [cg.verify_lemma4(r, t, args.n_max, args.k_max if args.k_max is not None else 4 * r + 3)
                for r in range(1, args.r + 1) for t in args.t]
        return _report(name, {"r_max": args.r, "t": args.t, "n_max": args.n_max},
                       cg.merge_reports("lemma4", reps))
    if name == "lemma5":
        reps = [cg.verify_lemma5(k, t, args.n_max) for k in range(args.k + 1) for t in args.t]
        return _report(name, {"k_max": args.k, "t": args.t, "n_max": args.n_max},
                       cg.merge_reports("lemma5", reps))
    if name == "periodicity":
        rep = cg.verify_periodicity_range(args.k, args.n_max, threads=args.threads)
        return _report(name, {"k_max": args.k, "n_max": args.n_max}, rep)
    if name == "doubling":
        reps = [cg.verify_doubling(k, t, args.n_max) for k in range(args.k + 1) for t in args.t]
        return _report(name, {"k_max": args.k, "t": args.t, "n_max": args.n_max},
                       cg.merge_reports("doubling", reps))
    if name == "abc":
        a, b = args.a, args.b
        if a < b:
            a += 4 * b
        return _report(name, {"m": args.m, "a": args.a, "b": args.b}, cg.verify_abc(args.m, a, b))
    if name == "theorem3":
        bad = [[n, u] for n in range(args.n_max + 1) for u in range(args.u_min, args.u_max + 1)
               if not oracle.stirling_poly_check(n, u)]
        return _report(name, {"n_max": args.n_max, "u_min": args.u_min, "u_max": args.u_max},
                       {"holds": not bad, "violations": bad})
    raise AssertionError(name)


def cmd_search_ak(args) -> CommandResult:
    cache = Path(args.cache) if args.cache else (None if args.no_cache else wilf.default_cache_path())
    table = wilf.compute_ak_table(args.max_k, threads=args.threads, cache=cache,
                                  method="scan" if args.full_scan else "jump")
    return CommandResult("search-ak", {"max_k": args.max_k},
                         [asdict(e) for e in table])


def cmd_certify(args) -> CommandResult:
    rep = wilf.certify_nonzero(args.n_max, args.mod_exponent, threads=args.threads)
    payload = rep.to_dict()
    if args.narrative_k is not None:
        table = wilf.compute_ak_table(args.narrative_k, threads=args.threads)
        payload["narrative"] = wilf.theorem2_narrative(args.narrative_k, table, rep)
    return CommandResult("certify", {"n_max": args.n_max, "mod_exponent": args.mod_exponent},
                         payload)


def cmd_oracle(args) -> CommandResult:
    if args.which == "paths":
        paths = oracle.enumerate_paths(args.n)
        return CommandResult("oracle paths", {"n": args.n},
                             {"count": len(paths), "paths": [p.steps for p in paths]})
    if args.which == "weight":
        system = _system(args)
        path = oracle.MotzkinPath(args.path)
        return CommandResult("oracle weight", {"weights": system.label, "path": args.path},
                             _big(oracle.weight_of_path(path, system)))
    if args.which == "crosscheck":
        system = _system(args)
        rows = []
        for n in range(args.n_max + 1):
            by_paths = oracle.motzkin_by_enumeration(system, n)
            by_engine = engine.motzkin_number(system, n)
            rows.append({"n": n, "paths": _big(by_paths), "engine": _big(by_engine),
                         "agree": by_paths == by_engine})
        ok = all(r["agree"] for r in rows)
        return CommandResult("oracle crosscheck", {"weights": system.label, "n_max": args.n_max},
                             {"holds": ok, "rows": rows}, ok=ok)
    raise AssertionError(args.which)


def cmd_matrix(args) -> CommandResult:
    system = _system(args)
    tm = matrices.build_transfer(system, args.r)
    if args.pow is not None:
        m = args.mod_exponent if args.mod_exponent is not None else 1
        entries = matrices.mat_pow_mod(tm, args.pow, m).tolist()
    elif args.mod_exponent is not None:
        entries = [list(row) for row in tm.mod(args.mod_exponent)]
    else:
        entries = [list(row) for row in tm.entries]
    return CommandResult("matrix", {"weights": system.label, "r": args.r, "pow": args.pow,
                                    "mod_exponent": args.mod_exponent}, entries)


def _format_text(res: CommandResult) -> str:
    p = res.payload
    if res.command == "search-ak":
        lines = [f"{'k':>3}  {'a_k':>9}  {'witness_n':>9}  {'scanned_up_to':>13}"]
        lines += [f"{e['k']:>3}  {e['a_k']:>9}  {e['witness_n']!s:>9}  {e['scanned_up_to']:>13}" for e in p]
        return "\n".join(lines)
    if res.command == "matrix":
        return "\n".join(json.dumps(row) for row in p)
    if res.command == "scan":
        return "\n".join(f"{n} {r}" for n, r in p["rows"])
    if res.command == "compute cf":
        return " ".join(p)
    if isinstance(p, str):
        return p
    return json.dumps(p, sort_keys=True)


def _add_weights(p, required=True):
    p.add_argument("--weights", choices=PRESETS, required=required,
                   default=None if required else "motzkin")
    p.add_argument("--u", type=int, default=None, help="parameter of flajolet_stirling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wilfmotzkin", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit JSON lines")
    parser.add_argument("--timing", action="store_true", help="include elapsed_ms in JSON output")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="f(n), weighted Motzkin numbers, Stirling numbers, CF series")
    csub = comp.add_subparsers(dest="what", required=True)
    p = csub.add_parser("f")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod-exponent", type=int)
    p = csub.add_parser("motzkin")
    _add_weights(p)
    p.add_argument("--n", type=int, required=True)
    p = csub.add_parser("stirling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = csub.add_parser("cf")
    _add_weights(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    comp.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", help="stream f(n) mod 2^M")
    p.add_argument("--mod-exponent", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--checkpoint")
    p.add_argument("--emit-zeros-only", action="store_true")
    p.set_defaults(func=cmd_scan)

    ver = sub.add_parser("verify", help="finite-range congruence and structure checks")
    vsub = ver.add_subparsers(dest="which", required=True)
    vsub.add_parser("a6")
    p = vsub.add_parser("blocks")
    p.add_argument("--k", type=int, default=8)
    p = vsub.add_parser("lemma4")
    p.add_argument("--r", type=int, default=4, help="check every r' <= r")
    p.add_argument("--t", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--k-max", type=int, help="default 4r+3")
    p = vsub.add_parser("lemma5")
    p.add_argument("--k", type=int, default=3, help="check every k' <= k")
    p.add_argument("--t", type=int, nargs="+", default=[1, 2])
    p.add_argument("--n-max", type=int, default=100)
    p = vsub.add_parser("periodicity")
    p.add_argument("--k", type=int, default=10, help="check every k' <= k")
    p.add_argument("--n-max", type=int, default=10_000)
    p.add_argument("--threads", type=int, default=1)
    p = vsub.add_parser("doubling")
    p.add_argument("--k", type=int, default=2, help="check every k' <= k")
    p.add_argument("--t", type=int, nargs="+", default=[1, 3])
    p.add_argument("--n-max", type=int, default=100)
    p = vsub.add_parser("abc")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p = vsub.add_parser("theorem3")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--u-min", type=int, default=-3)
    p.add_argument("--u-max", type=int, default=3)
    ver.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-ak", help="recompute the residue table a_5..a_K")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cache", help=f"cache file (default under ${wilf.CACHE_ENV})")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--full-scan", action="store_true",
                   help="scan every row of each period instead of jumping to candidates")
    p.set_defaults(func=cmd_search_ak)

    p = sub.add_parser("certify", help="certify f(n) != 0 for n <= N by a scan mod 2^M")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--mod-exponent", type=int, default=40)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--narrative-k", type=int)
    p.set_defaults(func=cmd_certify)

    orc = sub.add_parser("oracle", help="brute-force path enumeration")
    osub = orc.add_subparsers(dest="which", required=True)
    p = osub.add_parser("paths")
    p.add_argument("--n", type=int, required=True)
    p = osub.add_parser("weight")
    _add_weights(p)
    p.add_argument("--path", required=True, help="steps over U, D, L")
    p = osub.add_parser("crosscheck")
    _add_weights(p)
    p.add_argument("--n-max", type=int, default=12)
    orc.set_defaults(func=cmd_oracle)

    p = sub.add_parser("matrix", help="transfer matrix A_r, optionally a modular power")
    _add_weights(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--pow", type=int)
    p.add_argument("--mod-exponent", type=int)
    p.set_defaults(func=cmd_matrix)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    start = time.perf_counter()
    try:
        res = args.func(args)
    except (ValueError, engine.ModeError, oracle.EnumerationTooLarge) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (wilf.ResidueStructureError, wilf.LiftError) as exc:
        print(f"verification failure: {exc}", file=err)
        return 1
    res.elapsed_ms = int((time.perf_counter() - start) * 1000)
    if args.json:
        doc = {"command": res.command, "params": res.params, "payload": res.payload}
        if args.timing:
            doc["elapsed_ms"] = res.elapsed_ms
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(_format_text(res), file=out)
    log.info("%s finished in %d ms", res.command, res.elapsed_ms)
    return 0 if res.ok else 1


def main() -> None:
    sys.exit(run())
