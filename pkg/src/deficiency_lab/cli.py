"""deficiency-lab command line.

Usage:
    deficiency-lab run --config scenario.json
    deficiency-lab fig1 [--lambda 0.55 --eps 0.5 --kappa 0.9 --alpha 0.6 --out fig1.csv]
    deficiency-lab all --manifest manifest.json --out-dir reports

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .extremal import FIG1, ExtremalParams
from .scenarios import ConfigError, ScenarioConfig, default_manifest, dumps, fig1_export, run_all, run_scenario

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="deficiency-lab", description="Exponential-deficiency verification scenarios.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one scenario from a JSON config")
    run.add_argument("--config", required=True, type=Path)

    fig = sub.add_parser("fig1", help="export the extremal density on (0, 7.5] as CSV")
    fig.add_argument("--lambda", dest="lam", type=float, default=FIG1.lam)
    fig.add_argument("--eps", type=float, default=FIG1.eps)
    fig.add_argument("--kappa", type=float, default=FIG1.kappa)
    fig.add_argument("--alpha", type=float, default=FIG1.alpha)
    fig.add_argument("--h", type=float, default=1e-4)
    fig.add_argument("--x-hi", type=float, default=7.5)
    fig.add_argument("--out", type=Path, default=Path("fig1.csv"))

    al = sub.add_parser("all", help="run a manifest of scenarios")
    al.add_argument("--manifest", type=Path, help="JSON list of scenario configs (default: built-in)")
    al.add_argument("--out-dir", required=True, type=Path)

    sub.add_parser("manifest", help="print the built-in default manifest")
    return ap


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = ScenarioConfig.from_dict(_load_json(args.config))
            rep = run_scenario(cfg)
            status = "PASS" if rep.passed else "FAIL"
            print(f"{rep.scenario}: {status} ({rep.runtime_ms} ms) -> {Path(cfg.output_dir) / (rep.scenario + '.json')}")
            return EXIT_PASS if rep.passed else EXIT_FAIL

        if args.command == "fig1":
            try:
                params = ExtremalParams(args.lam, args.eps, args.kappa, args.alpha)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            s = fig1_export(params, 0.0, args.x_hi, args.h, args.out)
            print(f"wrote {s['n_points']} rows to {args.out}")
            print("local maxima: " + ", ".join(f"{m:.4f}" for m in s["local_maxima"]))
            print(f"corrected log-peak slope: {s['log_peak_slope']:.6f}")
            return EXIT_PASS

        if args.command == "all":
            manifest = default_manifest(str(args.out_dir)) if args.manifest is None else _load_json(args.manifest)
            if not isinstance(manifest, list):
                raise ConfigError("manifest must be a JSON list of scenario configs")
            summary = run_all(manifest, args.out_dir)
            print(summary.table())
            return EXIT_PASS if summary.passed else EXIT_FAIL

        if args.command == "manifest":
            sys.stdout.write(dumps(default_manifest()))
            return EXIT_PASS
    except ConfigError as exc:
        print(f"deficiency-lab: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"deficiency-lab: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
