"""Command line interface.

Exit codes: 0 success, 1 verification failure or Type-2 candidate, 2 usage
error, 3 I/O or parse error. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import generators
from .complementation import complement_at
from .core import NotADesign, Ryser, Symmetric, classify
from .equivalence import check_hypothesis_h, enumerate_class, even_block_construction, is_type1
from .errors import IdentityViolation, ParameterError, ParseError, RyserError
from .invariants import (
    block_profile,
    check_sum_identity,
    compute_ledger,
    two_block_size_analysis,
)
from .io import parse_document, serialize
from .search import SearchConfig, conjecture_scan, search_ryser

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _kind_dict(kind) -> dict:
    if isinstance(kind, Symmetric):
        return {"kind": "symmetric", "k": kind.k, "lambda_prime": kind.lambda_prime}
    if isinstance(kind, Ryser):
        return {"kind": "ryser", "lambda": kind.lam, "r1": kind.r1, "r2": kind.r2}
    return {"kind": "not_a_design", "violations": [str(v) for v in kind.violations]}


def _kind_text(kind) -> str:
    if isinstance(kind, Symmetric):
        return f"symmetric design, k = {kind.k}, lambda' = {kind.lambda_prime}"
    if isinstance(kind, Ryser):
        return f"Ryser design, lambda = {kind.lam}, r1 = {kind.r1}, r2 = {kind.r2}"
    return "not a design: " + "; ".join(map(str, kind.violations))


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# --- subcommands ------------------------------------------------------------


def cmd_generate(args) -> int:
    params = tuple(args.params)
    expected = {"fano": 0, "pg2": 1, "paley": 1, "diffset": 3}[args.seed]
    if len(params) != expected:
        raise _Usage(f"{args.seed} takes {expected} integer parameter(s), got {len(params)}")
    system = generators.named_seed(args.seed, *params)
    name = args.seed + "".join(f"_{p}" for p in params)
    meta = {"name": name, "provenance": f"generate {args.seed} {' '.join(map(str, params))}".strip()}
    _write(args.out, serialize(system, meta))
    return EXIT_OK


def cmd_complement(args) -> int:
    doc = _read(args.input)
    system = doc.system()
    if not 0 <= args.block < system.v:
        raise _Usage(f"block index {args.block} out of range for v = {system.v}")
    out = complement_at(system, args.block)
    meta = dict(doc.metadata)
    source = meta.get("name", "input")
    meta["name"] = f"{source}*{args.block}"
    meta["provenance"] = f"complemented at block {args.block} of {source}"
    _write(args.out, serialize(out, meta))
    return EXIT_OK


def _verify_payload(system) -> tuple[dict, list[str], bool]:
    kind = classify(system)
    payload = {"classification": _kind_dict(kind)}
    lines = [_kind_text(kind)]
    if isinstance(kind, NotADesign):
        payload["clean"] = False
        return payload, lines, False
    if isinstance(kind, Symmetric):
        payload["clean"] = True
        return payload, lines, True
    try:
        ledger = compute_ledger(system)
    except IdentityViolation as exc:
        payload["identities"] = {exc.identity: False}
        payload["clean"] = False
        lines.append(str(exc))
        return payload, lines, False
    checks = {name: ok for name, ok in ledger.identity_checks().items()}
    s = check_sum_identity(system, ledger)
    profiles_ok = True
    try:
        for i in range(system.v):
            block_profile(ledger, system, i)
    except RyserError as exc:
        profiles_ok = False
        lines.append(str(exc))
    clean = all(checks.values()) and s.holds and profiles_ok
    payload["ledger"] = ledger.as_dict()
    payload["identities"] = dict(checks)
    payload["identities"]["block_sum"] = {"lhs": _frac(s.lhs), "rhs": _frac(s.rhs), "holds": s.holds}
    payload["identities"]["block_form"] = profiles_ok
    payload["clean"] = clean
    led = ledger.as_dict()
    lines.append(
        "ledger: "
        + ", ".join(f"{k} = {led[k]}" for k in ("v", "lambda", "r1", "r2", "e1", "e2", "rho", "c", "d", "g", "a", "D"))
    )
    lines.append(f"E1 = {led['E1']}, E2 = {led['E2']}")
    lines.append(f"block_sum: {_frac(s.lhs)} = {_frac(s.rhs)} {'ok' if s.holds else 'FAIL'}")
    for name, ok in checks.items():
        lines.append(f"{name}: {'ok' if ok else 'FAIL'}")
    lines.append(f"block_form: {'ok' if profiles_ok else 'FAIL'}")
    lines.append("clean" if clean else "NOT CLEAN")
    return payload, lines, clean


def cmd_verify(args) -> int:
    system = _read(args.input).system()
    payload, lines, clean = _verify_payload(system)
    _emit(args, payload, lines)
    return EXIT_OK if clean else EXIT_FAIL


def cmd_profile(args) -> int:
    system = _read(args.input).system()
    ledger = compute_ledger(system)
    rows = []
    lines = [f"{'block':>5} {'size':>4} {'t':>3} {'tau1':>4} {'tau2':>4}  class"]
    for i in range(system.v):
        p = block_profile(ledger, system, i)
        rows.append({"block": i, "size": p.size, "t": p.t, "tau1": p.tau1, "tau2": p.tau2, "class": p.cls.value})
        lines.append(f"{i:>5} {p.size:>4} {p.t:>3} {p.tau1:>4} {p.tau2:>4}  {p.cls.value}")
    _emit(args, {"ledger": ledger.as_dict(), "blocks": rows}, lines)
    return EXIT_OK


def cmd_equiv_class(args) -> int:
    doc = _read(args.input)
    system = doc.system()
    cls = enumerate_class(system)
    members = []
    lines = [f"class size {len(cls)} (bound v + 1 = {system.v + 1})"]
    out_dir = Path(args.emit_members) if args.emit_members else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for n, m in enumerate(cls):
        kind = classify(m.system)
        entry = {"member": n, "provenance": m.provenance, "classification": _kind_dict(kind)}
        if out_dir is not None:
            tag = "original" if m.via_block is None else f"block_{m.via_block}"
            path = out_dir / f"member_{n:03d}_{tag}.json"
            meta = {"name": f"{doc.metadata.get('name', 'input')}:{tag}", "provenance": m.provenance}
            path.write_text(serialize(m.system, meta), encoding="utf-8")
            entry["file"] = str(path)
        members.append(entry)
        lines.append(f"{n:>3}  {m.provenance:<22} {_kind_text(kind)}")
    _emit(args, {"size": len(cls), "members": members}, lines)
    return EXIT_OK


def cmd_is_type1(args) -> int:
    system = _read(args.input).system()
    dec = is_type1(system, verify_slow_path=args.verify_slow_path)
    payload = {
        "type1": dec.is_type1,
        "witness_block": dec.witness_block,
        "symmetric_params": list(dec.symmetric_params) if dec.symmetric_params else None,
    }
    if dec.is_type1:
        v, k, lp = dec.symmetric_params
        lines = [f"Type-1: complementing at block {dec.witness_block} gives a symmetric ({v}, {k}, {lp}) design"]
    else:
        lines = ["TYPE-2 CANDIDATE: neither E1 nor E2 is a block"]
    ok = dec.is_type1
    if args.verify_slow_path:
        payload["slow_path"] = dec.slow_path
        agree = dec.slow_path == dec.is_type1
        payload["paths_agree"] = agree
        lines.append(f"slow path {'agrees' if agree else 'DISAGREES'}")
        ok = ok and agree
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_h(args) -> int:
    system = _read(args.input).system()
    res = check_hypothesis_h(system, exhaustive=args.all)
    viol = [
        {"member": v.member.provenance, "large_block": v.large_block, "small_block": v.small_block}
        for v in res.violations
    ]
    if res.holds:
        lines = [f"Hypothesis H holds on all {res.members_checked} Ryser members of the class"]
    else:
        lines = [f"VIOLATED in {v['member']}: large block {v['large_block']}, small block {v['small_block']}" for v in viol]
    _emit(args, {"holds": res.holds, "members_checked": res.members_checked, "violations": viol}, lines)
    return EXIT_OK if res.holds else EXIT_FAIL


def cmd_even_block(args) -> int:
    system = _read(args.input).system()
    res = even_block_construction(system)
    if res is None:
        _emit(args, {"found": False}, ["no two blocks of equal size"])
        return EXIT_FAIL
    expected = 2 * (res.k - res.lam)
    ok = res.size == expected and res.size % 2 == 0
    payload = {
        "found": True,
        "pair": list(res.pair),
        "k": res.k,
        "lambda": res.lam,
        "even_block": list(res.system[res.block_index].points),
        "size": res.size,
        "expected_size": expected,
        "ok": ok,
    }
    lines = [
        f"blocks {res.pair[0]} and {res.pair[1]} have size {res.k}; complementing at {res.pair[0]}",
        f"block {res.block_index} becomes {list(res.system[res.block_index].points)} of size {res.size}"
        f" (2(k - lambda) = {expected}) {'ok' if ok else 'FAIL'}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze_two_size(args) -> int:
    system = _read(args.input).system()
    a = two_block_size_analysis(system)
    payload = {"pattern": a.pattern, "size_counts": {str(k): n for k, n in a.size_counts.items()}}
    if not a.pattern:
        _emit(args, payload, [f"NotTwoSizePattern: sizes {a.size_counts}"])
        return EXIT_OK
    payload.update(
        {
            "k": a.k,
            "alpha": a.alpha,
            "beta": a.beta,
            "count_sum": a.count_sum,
            "product_relation": a.product_relation,
            "r1r2": a.r1r2,
            "product_rhs": a.product_rhs,
            "P_alpha": a.p_alpha,
            "P_1": a.p_one,
            "P_v": a.p_v,
            "P_v_closed_form": a.p_v_closed_form,
            "symmetric_relation": a.symmetric_relation,
            "interior_roots": a.interior_roots,
            "confirmed": a.confirmed,
        }
    )
    lines = [
        f"sizes: {a.alpha} x {a.k}, {a.beta} x {2 * a.lam}",
        f"alpha + beta = v: {a.count_sum}",
        f"r1*r2 = {a.r1r2}, (k-lambda)*alpha + lambda*(beta+1) = {a.product_rhs}: {a.product_relation}",
        f"P(alpha) = {a.p_alpha}, P(1) = {a.p_one}, P(v) = {a.p_v} (closed form {a.p_v_closed_form})",
        f"k(k-1) = lambda(v-1): {a.symmetric_relation}",
        f"integer roots strictly between 1 and v: {a.interior_roots or 'none'}",
        "Type-1 pattern confirmed" if a.confirmed else "pattern NOT confirmed",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if a.confirmed else EXIT_FAIL


def _report_dict(r) -> dict:
    return {
        "v": r.config.v,
        "lambda": r.config.lam,
        "completed": r.completed,
        "found": len(r.found),
        "type1_count": r.type1_count,
        "type2_candidates": [s.to_lists() for s in r.type2_candidates],
        "nodes_explored": r.nodes_explored,
        "designs": [s.to_lists() for s in r.found],
    }


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("RYSER_WORKERS")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise _Usage(f"RYSER_WORKERS must be an integer, got {env!r}")


def cmd_search(args) -> int:
    cfg = SearchConfig(
        args.v, args.lam, max_results=args.max_results, time_budget=args.budget,
        parallel_width=_workers(args),
    )
    r = search_ryser(cfg)
    state = "completed" if r.completed else "INCOMPLETE (budget or result limit reached)"
    lines = [
        f"v = {cfg.v}, lambda = {cfg.lam}: {state}",
        f"{len(r.found)} design(s) up to isomorphism, {r.type1_count} Type-1, "
        f"{len(r.type2_candidates)} Type-2 candidate(s); {r.nodes_explored} nodes",
    ]
    for s in r.type2_candidates:
        lines.append(f"TYPE-2 CANDIDATE: {s.to_lists()}")
    _emit(args, _report_dict(r), lines)
    return EXIT_FAIL if r.type2_candidates else EXIT_OK


def cmd_scan(args) -> int:
    summary = conjecture_scan(args.v_max, args.lambda_max, budget=args.budget, parallel_width=_workers(args))
    lines = [f"{'v':>3} {'lam':>3} {'found':>5} {'type1':>5} {'type2':>5}  status"]
    cells = []
    for c in summary.cells:
        r = c.report
        lines.append(f"{c.v:>3} {c.lam:>3} {len(r.found):>5} {r.type1_count:>5} {len(r.type2_candidates):>5}  {c.status}")
        for s in r.type2_candidates:
            lines.append(f"    TYPE-2 CANDIDATE (v={c.v}, lambda={c.lam}): {s.to_lists()}")
        cells.append({**_report_dict(r), "status": c.status})
    lines.append("Type-2 candidates found" if summary.type2_found else "no Type-2 candidates")
    _emit(args, {"cells": cells, "type2_found": summary.type2_found, "all_completed": summary.all_completed}, lines)
    return EXIT_FAIL if summary.type2_found else EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    infile = argparse.ArgumentParser(add_help=False)
    infile.add_argument("--in", dest="input", default="-", help="design file ('-' for stdin)")

    p = argparse.ArgumentParser(prog="ryser", description="Ryser design toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="build a seed symmetric design")
    g.add_argument("seed", choices=["fano", "pg2", "paley", "diffset"])
    g.add_argument("params", type=int, nargs="*")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("complement", parents=[common, infile], help="complement at a block")
    c.add_argument("--block", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_complement)

    for name, func, help_ in [
        ("verify", cmd_verify, "classify and check every identity"),
        ("profile", cmd_profile, "per-block size profile"),
        ("even-block", cmd_even_block, "even block construction"),
        ("analyze-two-size", cmd_analyze_two_size, "two block size quadratic"),
    ]:
        s = sub.add_parser(name, parents=[common, infile], help=help_)
        s.set_defaults(func=func)

    e = sub.add_parser("equiv-class", parents=[common, infile], help="enumerate the equivalence class")
    e.add_argument("--emit-members", metavar="DIR")
    e.set_defaults(func=cmd_equiv_class)

    t = sub.add_parser("is-type1", parents=[common, infile], help="decide Type-1")
    t.add_argument("--verify-slow-path", action="store_true")
    t.set_defaults(func=cmd_is_type1)

    h = sub.add_parser("check-h", parents=[common, infile], help="check Hypothesis H on the class")
    h.add_argument("--all", action="store_true", help="report every violation")
    h.set_defaults(func=cmd_check_h)

    s = sub.add_parser("search", parents=[common], help="exhaustive search at (v, lambda)")
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=int, required=True)
    s.add_argument("--budget", type=float, help="seconds")
    s.add_argument("--workers", type=int)
    s.add_argument("--max-results", type=int)
    s.set_defaults(func=cmd_search)

    sc = sub.add_parser("scan", parents=[common], help="search every small (v, lambda)")
    sc.add_argument("--v-max", type=int, required=True)
    sc.add_argument("--lambda-max", type=int, required=True)
    sc.add_argument("--budget", type=float, help="seconds per cell")
    sc.add_argument("--workers", type=int)
    sc.set_defaults(func=cmd_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RyserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
