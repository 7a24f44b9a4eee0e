"""Command-line interface.

Subcommands: analyze, reconstruct, certify, search.  Exit codes are a stable
contract: 0 success, 1 certification failures, 2 input/parse error,
3 capability/range error, 4 inconsistent data.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .estimators import FrameAnalyzer
from .exceptions import (
    EnumerationCapExceeded,
    FrameParseError,
    InconsistentMeasurements,
    InconsistentSigns,
)
from .fixtures import certification_checks, fixture_frame, fixture_names
from .frames import Frame, Tolerance, load_frame, load_measurements
from .oracle import minimality_scan
from .properties import ENUMERATION_CAP, does_phase_retrieval, extend_to_full_spark
from .reconstruction import build_lifted, reconstruct

EXIT_OK = 0
EXIT_CERTIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_RANGE = 3
EXIT_INCONSISTENT = 4


def _enumeration_cap() -> int:
    raw = os.environ.get("FRAMEKIT_MAX_N")
    if raw is None:
        return ENUMERATION_CAP
    try:
        return int(raw)
    except ValueError:
        raise FrameParseError(f"FRAMEKIT_MAX_N must be an integer, got {raw!r}")


def _tolerance(args) -> Tolerance:
    return Tolerance(eps_rank=args.eps_rank, eps_val=args.eps_val)


def _resolve_frame(args, tol: Tolerance) -> Frame:
    """--fixture takes a built-in name; --frame takes a path, falling back to
    a fixture name if no such file exists (so `--frame r2-weak` works too)."""
    if getattr(args, "fixture", None):
        return fixture_frame(args.fixture, tol=tol)
    path = getattr(args, "frame", None)
    if not path:
        raise FrameParseError("provide --frame PATH or --fixture NAME")
    if os.path.exists(path):
        return load_frame(path, tol=tol)
    if path in fixture_names():
        return fixture_frame(path, tol=tol)
    raise FrameParseError(f"no such file or fixture: {path}")


def _emit(payload: dict, args, render_text) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        render_text(payload)


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    frame = _resolve_frame(args, tol)
    analyzer = FrameAnalyzer(
        eps_rank=tol.eps_rank,
        eps_val=tol.eps_val,
        grid=args.grid,
        seed=args.seed,
        max_enumeration=_enumeration_cap(),
    )
    analyzer.fit(frame.vectors)
    summary = analyzer.summary()

    def render(s: dict) -> None:
        rep = s["report"]
        print(f"frame: n={rep['n']} m={rep['dim']}")
        print(f"frame bounds: ({rep['lower_bound']:.10g}, {rep['upper_bound']:.10g})")
        for key in ("is_frame", "is_tight", "is_parseval", "is_equal_norm", "is_unit_norm"):
            print(f"{key.replace('_', ' ')}: {rep[key]}")
        full = s["full_spark"]
        print(f"spark: {s['spark']} (full spark: {'n/a (n < m)' if full is None else full})")
        if s["cp_witness"] is None:
            print("complement property: True")
        else:
            w = s["cp_witness"]
            print(
                f"complement property: False (witness I={w['subset']}, "
                f"ranks {w['rank_subset']}/{w['rank_complement']})"
            )
        print(f"does phase retrieval: {s['does_phase_retrieval']}")
        print(f"does weak phaseless: {s['does_weak_phaseless']}")
        verdict = s["verdict"]
        print(f"weak phase retrieval: {verdict['status']} ({verdict['evidence']['kind']})")
        for key, value in verdict["evidence"].items():
            if key != "kind":
                print(f"  {key}: {value}")

    _emit(summary, args, render)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    tol = _tolerance(args)
    frame = _resolve_frame(args, tol)
    y = load_measurements(args.measurements, n=frame.n)
    if args.magnitudes:
        y = y**2
    solution = reconstruct(frame, y, lifted=build_lifted(frame))
    payload = solution.to_dict()

    def render(s: dict) -> None:
        print(f"kind: {s['kind']}")
        print(f"representative: {np.array2string(np.array(s['representative']), precision=8)}")
        comps = " ".join("{" + ",".join(map(str, c)) + "}" for c in s["components"]) or "none"
        print(f"sign components: {comps}")
        print(f"free parameters: {s['free_parameters']}")

    _emit(payload, args, render)
    return EXIT_OK


def cmd_certify(args) -> int:
    tol = _tolerance(args)
    rows = certification_checks(tol, only=args.fixture)
    failures = sum(1 for r in rows if not r["ok"])
    payload = {"checks": rows, "failures": failures, "passed": failures == 0}

    def render(p: dict) -> None:
        widths = {
            key: max(len(key), *(len(str(r[key])) for r in p["checks"]))
            for key in ("fixture", "check", "expected", "got")
        }
        header = (
            f"{'fixture':<{widths['fixture']}}  {'check':<{widths['check']}}  "
            f"{'expected':<{widths['expected']}}  {'got':<{widths['got']}}  status"
        )
        print(header)
        print("-" * len(header))
        for r in p["checks"]:
            status = "PASS" if r["ok"] else "FAIL"
            print(
                f"{r['fixture']:<{widths['fixture']}}  {r['check']:<{widths['check']}}  "
                f"{r['expected']:<{widths['expected']}}  {r['got']:<{widths['got']}}  {status}"
            )
        print("-" * len(header))
        print(f"{len(p['checks'])} checks, {p['failures']} failures")

    _emit(payload, args, render)
    return EXIT_OK if failures == 0 else EXIT_CERTIFY_FAILED


def cmd_search(args) -> int:
    tol = _tolerance(args)
    if args.minimality:
        if not 2 <= args.dim <= 4:
            print(f"error: -m must be in [2, 4], got {args.dim}", file=sys.stderr)
            return EXIT_RANGE
        report = minimality_scan(args.dim, trials=args.trials, rng_seed=args.seed, grid=args.grid)
        payload = {"mode": "minimality", **report}

        def render(p: dict) -> None:
            print(
                f"minimality scan: m={p['m']} n={p['n']} trials={p['trials']} seed={p['seed']}"
            )
            print(
                f"disproven={p['disproven']} counterexamples={p['counterexamples']} "
                f"survivors={len(p['survivors'])}"
            )

        _emit(payload, args, render)
        return EXIT_OK

    frame = _resolve_frame(args, tol)
    try:
        psi = extend_to_full_spark(frame, rng_seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    extended = Frame(np.vstack([frame.vectors, psi]), tol=tol)
    payload = {
        "mode": "extend",
        "seed": args.seed,
        "psi": psi.tolist(),
        "extended_does_phase_retrieval": does_phase_retrieval(extended, cap=_enumeration_cap()),
    }

    def render(p: dict) -> None:
        print(f"extension vector psi: {np.array2string(np.array(p['psi']), precision=8)}")
        print(f"extended frame does phase retrieval: {p['extended_does_phase_retrieval']}")
        print(f"seed: {p['seed']}")

    _emit(payload, args, render)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framekit",
        description="Finite-frame analysis and reconstruction from squared magnitudes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fixture_help="built-in fixture name"):
        p.add_argument("--frame", help="path to a frame file (CSV rows or JSON)")
        p.add_argument("--fixture", choices=fixture_names(), help=fixture_help)
        p.add_argument("--eps-rank", type=float, default=1e-9, help="rank decision threshold")
        p.add_argument("--eps-val", type=float, default=1e-9, help="scalar zero threshold")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
        p.add_argument("--grid", type=int, default=10_000, help="kernel search grid size")
        p.add_argument("--output", choices=("text", "json"), default="text")

    p_analyze = sub.add_parser("analyze", help="frame bounds, spark, CP, weak-PR verdict")
    add_common(p_analyze)
    p_analyze.set_defaults(fn=cmd_analyze)

    p_rec = sub.add_parser("reconstruct", help="reconstruct a signal from measurements")
    add_common(p_rec)
    p_rec.add_argument(
        "--measurements", required=True, help="file with one squared magnitude per line"
    )
    p_rec.add_argument(
        "--magnitudes",
        action="store_true",
        help="entries are magnitudes |<x,phi>| rather than squares",
    )
    p_rec.set_defaults(fn=cmd_reconstruct)

    p_cert = sub.add_parser("certify", help="run the built-in golden fixture checks")
    p_cert.add_argument("--fixture", choices=fixture_names(), help="restrict to one fixture")
    p_cert.add_argument("--eps-rank", type=float, default=1e-9)
    p_cert.add_argument("--eps-val", type=float, default=1e-9)
    p_cert.add_argument("--output", choices=("text", "json"), default="text")
    p_cert.set_defaults(fn=cmd_certify)

    p_search = sub.add_parser("search", help="minimality scan or full-spark extension")
    mode = p_search.add_mutually_exclusive_group(required=True)
    mode.add_argument("--minimality", action="store_true", help="scan n = 2m-3 random frames")
    mode.add_argument("--extend", action="store_true", help="extend a full-spark 2m-2 frame")
    p_search.add_argument("-m", "--dim", type=int, default=3, help="dimension for --minimality")
    p_search.add_argument("--trials", type=int, default=200)
    add_common(p_search)
    p_search.set_defaults(fn=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InconsistentMeasurements, InconsistentSigns) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (FrameParseError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
