"""Command line front end.

Commands:
  analyze       exact G report (plus concurrence) for a state file, or a
                G estimate when given a measurement-record file
  scan-bounds   CSV of (C, G) samples plus the two analytic bound curves
  purity-slice  CSV of a fixed-purity ensemble plus a per-bin spread summary
  sample        finite-shot simulation of the 9-setting protocol
  ensemble      run a generator described by an ensemble-spec JSON file

All commands accept --seed and default it to a fixed constant, so bare
invocations are reproducible.  Exit codes: 0 success, 1 runtime error,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .concurrence import concurrence_mixed
from .ensembles import ensemble_spec_from_dict, fixed_purity, generate, ginibre, haar_pure
from .gmeasure import (
    analyze,
    bounds_violated,
    g_from_covariances,
    greport_to_dict,
    mixed_state_ceiling,
    pure_state_floor,
)
from .jsonio import dumps, format_float
from .observables import correlation_data
from .sampler import (
    estimate_g,
    estimate_to_dict,
    exact_g,
    record_from_dict,
    simulate_record,
)
from .states import (
    DensityMatrix,
    density_matrix_to_dict,
    density_matrix_from_dict,
    from_pure,
    purity,
    pure_state_from_dict,
)

DEFAULT_SEED = 12345
BOUND_CURVE_POINTS = 200
BIN_WIDTH = 0.05

CSV_SCAN_HEADER = "kind,concurrence,g,purity,rank,violates"


class CliInputError(Exception):
    """Any problem with user-supplied files or arguments (exit code 2)."""


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"parse error in {path}: {exc}") from exc


def _load_state(path: str) -> DensityMatrix:
    data = _load_json_file(path)
    try:
        if isinstance(data, dict) and "amps" in data:
            return from_pure(pure_state_from_dict(data))
        return density_matrix_from_dict(data)
    except ValueError as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def _open_output(path: str):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8"), True
    except OSError as exc:
        raise CliInputError(f"cannot write {path}: {exc}") from exc


def _emit(path: str, text: str) -> None:
    fh, close = _open_output(path)
    try:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    finally:
        if close:
            fh.close()


def _fmt(value) -> str:
    if isinstance(value, float):
        return format_float(value)
    return "" if value is None else str(value)


def cmd_analyze(args) -> int:
    data = _load_json_file(args.state_file)
    if isinstance(data, dict) and "counts" in data:
        try:
            rec = record_from_dict(data)
        except ValueError as exc:
            raise CliInputError(f"{args.state_file}: {exc}") from exc
        out = estimate_to_dict(estimate_g(rec))
        _emit(args.output, dumps(out))
        return 0

    rho = _load_state(args.state_file)
    report = analyze(rho)
    out = greport_to_dict(report)
    out["concurrence"] = concurrence_mixed(rho)
    if args.format == "csv":
        header = ",".join(out)
        row = ",".join(_fmt(v) for v in out.values())
        _emit(args.output, f"{header}\n{row}")
    else:
        _emit(args.output, dumps(out))
    return 0


def _parse_ranks(text: str) -> list[int]:
    try:
        ranks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise CliInputError(f"bad rank list {text!r}") from exc
    if not ranks or any(r not in (1, 2, 3, 4) for r in ranks):
        raise CliInputError(f"ranks must be a comma list drawn from 1..4, got {text!r}")
    return ranks


def cmd_scan_bounds(args) -> int:
    ranks = _parse_ranks(args.rank)
    if args.count < 1:
        raise CliInputError(f"count must be >= 1, got {args.count}")
    lines = [CSV_SCAN_HEADER]
    for idx in range(args.count):
        rank = ranks[idx % len(ranks)]
        rho = ginibre(args.seed, idx, rank)
        c = concurrence_mixed(rho)
        g = g_from_covariances(correlation_data(rho))
        row = (
            "sample",
            c,
            g,
            purity(rho),
            rank,
            int(bounds_violated(c, g)),
        )
        lines.append(",".join(_fmt(v) for v in row))
    for c in np.linspace(0.0, 1.0, BOUND_CURVE_POINTS):
        c = float(c)
        lines.append(",".join(_fmt(v) for v in ("lower_bound", c, pure_state_floor(c), None, None, 0)))
    for c in np.linspace(0.0, 1.0, BOUND_CURVE_POINTS):
        c = float(c)
        lines.append(",".join(_fmt(v) for v in ("upper_bound", c, mixed_state_ceiling(c), None, None, 0)))
    _emit(args.output, "\n".join(lines))
    return 0


def bin_spreads(cs, gs, width: float = BIN_WIDTH) -> list[tuple[float, float, int, float]]:
    """Per concurrence bin: (lo, hi, count, spread of G above the pure-state floor).

    The spread is max - min of G - C^2 (2 + C^2) inside the bin, i.e. the
    vertical extent of the scatter measured against the pure-state curve;
    for an ensemble lying exactly on that curve it vanishes no matter how G
    itself varies across the bin.
    """
    cs = np.asarray(cs, dtype=float)
    gs = np.asarray(gs, dtype=float)
    excess = gs - (cs * cs * (2.0 + cs * cs))
    out = []
    n_bins = int(np.ceil(1.0 / width))
    for k in range(n_bins):
        lo, hi = k * width, (k + 1) * width
        mask = (cs >= lo) & (cs < hi) if k < n_bins - 1 else (cs >= lo) & (cs <= 1.0)
        n = int(np.count_nonzero(mask))
        if n == 0:
            continue
        spread = float(excess[mask].max() - excess[mask].min())
        out.append((lo, hi, n, spread))
    return out


def cmd_purity_slice(args) -> int:
    if args.count < 1:
        raise CliInputError(f"count must be >= 1, got {args.count}")
    if args.window <= 0:
        raise CliInputError(f"window must be positive, got {args.window}")

    rows = []
    for idx in range(args.count):
        if args.purity == 1.0:
            # A rank-4 rejection sweep essentially never reaches purity 1;
            # the pure slice is sampled directly from Haar states instead.
            rho = from_pure(haar_pure(args.seed, idx))
        else:
            try:
                rho = fixed_purity(args.seed, idx, args.purity, args.window)
            except (ValueError, RuntimeError) as exc:
                raise CliInputError(str(exc)) from exc
        c = concurrence_mixed(rho)
        g = g_from_covariances(correlation_data(rho))
        rows.append((c, g, purity(rho)))

    lines = ["concurrence,g,purity"]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _emit(args.output, "\n".join(lines))

    print(
        "# per-bin spread of G above the pure-state curve C^2(2+C^2), bin width "
        f"{BIN_WIDTH}",
        file=sys.stderr,
    )
    for lo, hi, n, spread in bin_spreads([r[0] for r in rows], [r[1] for r in rows]):
        print(f"bin [{lo:.2f},{hi:.2f}) n={n} g_spread={format_float(spread)}", file=sys.stderr)
    return 0


def cmd_sample(args) -> int:
    rho = _load_state(args.state_file)
    if args.shots < 1:
        raise CliInputError(f"shots must be >= 1, got {args.shots}")
    rec = simulate_record(rho, args.shots, args.seed)
    est = estimate_g(rec)
    out = estimate_to_dict(est)
    out["g_exact"] = exact_g(rho)
    _emit(args.output, dumps(out))
    return 0


def cmd_ensemble(args) -> int:
    data = _load_json_file(args.spec)
    try:
        spec = ensemble_spec_from_dict(data)
    except ValueError as exc:
        raise CliInputError(f"{args.spec}: {exc}") from exc

    if args.format == "json":
        states = []
        for idx, rho in generate(spec):
            entry = {"index": idx}
            entry.update(density_matrix_to_dict(rho))
            states.append(entry)
        _emit(args.output, dumps(states))
        return 0

    lines = ["index,kind,concurrence,g,purity"]
    for idx, rho in generate(spec):
        c = concurrence_mixed(rho)
        g = g_from_covariances(correlation_data(rho))
        lines.append(",".join(_fmt(v) for v in (idx, spec.kind, c, g, purity(rho))))
    _emit(args.output, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entcov",
        description="Covariance-based entanglement quantification for two-qubit states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="exact G report for a state file")
    p.add_argument("state_file", help="density-matrix, pure-state or record JSON file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default="-", help="output path or - for stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan-bounds", help="CSV of (C, G) samples plus bound curves")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--rank", default="1,2,3,4", help="comma list of Ginibre ranks to cycle")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_scan_bounds)

    p = sub.add_parser("purity-slice", help="CSV of a fixed-purity ensemble")
    p.add_argument("--purity", type=float, required=True)
    p.add_argument("--window", type=float, default=0.005)
    p.add_argument("--count", type=int, default=5000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_purity_slice)

    p = sub.add_parser("sample", help="simulate the 9-setting protocol at finite shots")
    p.add_argument("state_file")
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ensemble", help="run a generator from an ensemble-spec JSON")
    p.add_argument("spec", help="EnsembleSpec JSON file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_ensemble)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
