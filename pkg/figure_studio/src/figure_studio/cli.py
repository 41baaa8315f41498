"""figure-studio command line.

    figure-studio --manifest FILE --style line|heatmap|surface --out FILE.png
                  [--series col1,col2]
    figure-studio --all DIR [--out-dir DIR]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import DEFAULT_SERIES, JobError, PlotJob, render, render_batch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figure-studio",
                                     description="Render sweep CSVs into figures.")
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--manifest", type=Path, help="one manifest to render")
    mode.add_argument("--all", type=Path, metavar="DIR",
                      help="render every manifest in a directory")
    parser.add_argument("--style", choices=("line", "heatmap", "surface"), default="line")
    parser.add_argument("--series", default=",".join(DEFAULT_SERIES),
                        help="comma-separated CSV columns to draw")
    parser.add_argument("--out", type=Path, help="output image (single-manifest mode)")
    parser.add_argument("--out-dir", type=Path, help="output directory (batch mode)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.manifest is not None:
            if args.out is None:
                raise JobError("--out is required with --manifest")
            series = tuple(s.strip() for s in args.series.split(",") if s.strip())
            report = render(PlotJob(manifest_path=args.manifest, style=args.style,
                                    series=series, out_path=args.out))
            print(f"{report.out_path}: {report.style} with {', '.join(report.series_drawn)}")
        else:
            for report in render_batch(args.all, args.out_dir):
                print(f"{report.out_path}: {report.style} "
                      f"with {', '.join(report.series_drawn)}")
        return 0
    except JobError as exc:
        print(f"job error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
