"""Command line entry point: `fcl <experiment> --config file.json [...]`.

Exit codes: 0 success, 2 invalid config or arguments, 3 resource refusal
(a guard declined to run something too large), 4 oracle-check failure.
All angles in configs are radians; all times are integer Floquet periods.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import EXPERIMENTS, load_config
from .errors import ConfigError, InvalidArgumentError, ResourceLimitError
from .experiments import run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcl",
        description="Floquet cluster chain laboratory: batch experiments to CSV (optionally SVG).",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS, help="which experiment to run")
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", default=None, help="output directory (default: config output_dir or '.')")
    parser.add_argument("--threads", type=int, default=1, help="process-pool workers for sweep cells")
    parser.add_argument("--svg", action="store_true", help="also render SVG plots next to the CSVs")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error(f"--threads must be >= 1, got {args.threads}")
    try:
        cfg = load_config(args.config, args.experiment)
        out_dir = Path(args.out or cfg.output_dir or ".")
        result = run(cfg, out_dir, threads=args.threads)
        if args.svg:
            from .plotting import render_table

            for table in result.tables:
                svg = render_table(table, out_dir)
                if svg is not None:
                    result.paths.append(svg)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"fcl: invalid config: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"fcl: refusing to run: {exc}", file=sys.stderr)
        return 3
    for path in result.paths:
        print(f"wrote {path}")
    if args.experiment == "oracle-check":
        for row in result.tables[0].rows:
            verdict = "PASS" if row[4] else "FAIL"
            print(f"{verdict} {row[0]}: max|err| = {row[1]:.3e} (required {row[3]} {row[2]:g})")
        if not result.ok:
            return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
