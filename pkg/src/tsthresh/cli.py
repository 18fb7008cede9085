"""Command-line front end: histogram export, thresholding, q sweeps, segmentation.

Every run resolves its parameters into a RunManifest, written next to the
primary output (or printed with --dry-run) so any result can be regenerated
from its manifest alone. Data goes to files or stdout; diagnostics to stderr.
Exit status 0 means every requested output was written; 2 flags bad usage,
1 anything that failed during the run.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .entropy import InvalidPartitionError
from .histogram import histogram_of, normalize
from .image_io import ImageFormatError, read_image, write_image
from .optimizer import (
    MAX_CLASSES,
    InfeasiblePartitionError,
    ThresholdSet,
    entropy_landscape,
    optimize,
)
from .segmenter import apply_thresholds, default_level_map
from .transition import (
    DEFAULT_JUMP,
    DEFAULT_Q_MAX,
    DEFAULT_Q_MIN,
    DEFAULT_Q_STEP,
    DEFAULT_REFINE_TOL,
    SweepConfig,
    curve_to_csv,
    find_transitions,
    report_to_csv,
)

__all__ = ["RunManifest", "main", "entry_point"]


class _UsageError(Exception):
    """Bad arguments detected before any work starts (exit status 2)."""


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run: resolved inputs, params, outputs."""

    tool: str
    version: str
    subcommand: str
    input: str
    params: dict
    outputs: dict

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _manifest(args: argparse.Namespace, params: dict, outputs: dict) -> RunManifest:
    return RunManifest(
        tool="tsthresh",
        version=__version__,
        subcommand=args.command,
        input=args.input,
        params=params,
        outputs=outputs,
    )


def _emit_manifest(manifest: RunManifest, primary_output: str, dry_run: bool) -> bool:
    """Print the manifest (dry run) or write it next to the primary output.

    Returns True when the run should stop after the manifest (dry run).
    """
    if dry_run:
        sys.stdout.write(manifest.to_json())
        return True
    with open(primary_output + ".manifest.json", "w") as fh:
        fh.write(manifest.to_json())
    return False


def _load_distribution(path: str):
    img = read_image(path)
    return img, normalize(histogram_of(img))


def _cmd_histogram(args: argparse.Namespace) -> int:
    manifest = _manifest(args, params={}, outputs={"csv": args.out})
    if _emit_manifest(manifest, args.out, args.dry_run):
        return 0
    img = read_image(args.input)
    hist = histogram_of(img)
    with open(args.out, "w") as fh:
        fh.write("level,count\n")
        for level, count in enumerate(hist.counts):
            fh.write(f"{level},{int(count)}\n")
    return 0


def _check_q(q: float) -> float:
    if not 0.0 < q < 1.0:
        raise _UsageError(
            f"--q must lie strictly inside (0, 1), got {q}"
            + (" (q = 1 is the Shannon limit and has no Tsallis form)" if q == 1.0 else "")
        )
    return q


def _check_classes(m: int) -> int:
    if not 2 <= m <= MAX_CLASSES:
        raise _UsageError(f"--classes must be in [2, {MAX_CLASSES}], got {m}")
    return m


def _cmd_threshold(args: argparse.Namespace) -> int:
    q = _check_q(args.q)
    m = _check_classes(args.classes)
    outputs = {"image": args.out}
    if args.landscape:
        outputs["landscape_csv"] = args.landscape
    manifest = _manifest(args, params={"q": q, "classes": m}, outputs=outputs)
    if _emit_manifest(manifest, args.out, args.dry_run):
        return 0

    img, dist = _load_distribution(args.input)
    result = optimize(dist, m, q)
    print(f"thresholds: {result.thresholds}")
    print(f"entropy: {result.entropy:.12g}")
    write_image(apply_thresholds(img, result.thresholds, default_level_map(m)), args.out)
    if args.landscape:
        with open(args.landscape, "w") as fh:
            cols = ",".join(f"t{j}" for j in range(1, m))
            fh.write(f"{cols},entropy\n")
            for ts, entropy in entropy_landscape(dist, m, q):
                fh.write(f"{ts},{entropy:.12g}\n")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        cfg = SweepConfig(
            q_min=args.q_min,
            q_max=args.q_max,
            q_step=args.q_step,
            m=_check_classes(args.classes),
            jump_threshold=args.jump,
            refine_tol=args.refine_tol,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    params = {
        "q_min": cfg.q_min,
        "q_max": cfg.q_max,
        "q_step": cfg.q_step,
        "classes": cfg.m,
        "jump": cfg.jump_threshold,
        "refine_tol": cfg.refine_tol,
    }
    manifest = _manifest(args, params, outputs={"curve_csv": args.curve, "report_csv": args.report})
    if _emit_manifest(manifest, args.curve, args.dry_run):
        return 0

    _, dist = _load_distribution(args.input)
    curve, report = find_transitions(dist, cfg)
    with open(args.curve, "w") as fh:
        fh.write(curve_to_csv(curve))
    with open(args.report, "w") as fh:
        fh.write(report_to_csv(report))
    for tr in report.transitions:
        print(
            f"transition: critical_q={tr.critical_q:.6f} max_jump={tr.max_jump} "
            f"below={tr.below} above={tr.above}"
        )
    for g in report.gradual:
        print(
            f"gradual: bracket [{g.q_low:.6f}, {g.q_high:.6f}] "
            "dissolved below the jump threshold",
            file=sys.stderr,
        )
    return 0


def _parse_thresholds(text: str) -> ThresholdSet:
    try:
        levels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"--thresholds must be comma-separated integers, got {text!r}") from None
    try:
        return ThresholdSet(levels)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_segment(args: argparse.Namespace) -> int:
    ts = _parse_thresholds(args.thresholds)
    manifest = _manifest(
        args, params={"thresholds": list(ts.levels)}, outputs={"image": args.out}
    )
    if _emit_manifest(manifest, args.out, args.dry_run):
        return 0
    img = read_image(args.input)
    write_image(apply_thresholds(img, ts, default_level_map(ts.class_count)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsthresh",
        description="Maximum-Tsallis-entropy gray-level thresholding and q sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"tsthresh {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="input image (PGM P2/P5 or 8-bit grayscale PNG)")
        p.add_argument(
            "--dry-run",
            action="store_true",
            help="print the run manifest and exit without reading or writing data",
        )

    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("histogram", formatter_class=fmt, help="export the 256-bin histogram as CSV")
    common(p)
    p.add_argument("--out", required=True, help="output CSV path (level,count)")
    p.set_defaults(func=_cmd_histogram)

    p = sub.add_parser(
        "threshold", formatter_class=fmt, help="optimize thresholds at a fixed q and segment"
    )
    common(p)
    p.add_argument("--q", type=float, required=True, help="entropic index, in (0, 1)")
    p.add_argument("--classes", type=int, default=2, help="number of output classes")
    p.add_argument("--out", required=True, help="segmented output image (PGM P5)")
    p.add_argument(
        "--landscape", default=None, help="also write the full candidate/entropy table as CSV"
    )
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser(
        "sweep", formatter_class=fmt, help="sweep q, record the threshold curve, report jumps"
    )
    common(p)
    p.add_argument("--q-min", type=float, default=DEFAULT_Q_MIN, help="grid start")
    p.add_argument("--q-max", type=float, default=DEFAULT_Q_MAX, help="grid end (inclusive)")
    p.add_argument("--q-step", type=float, default=DEFAULT_Q_STEP, help="grid spacing")
    p.add_argument("--classes", type=int, default=2, help="number of classes")
    p.add_argument(
        "--jump", type=int, default=DEFAULT_JUMP, help="gray-level move that counts as a transition"
    )
    p.add_argument(
        "--refine-tol",
        type=float,
        default=DEFAULT_REFINE_TOL,
        help="bracket width in q at which refinement stops",
    )
    p.add_argument("--curve", required=True, help="output CSV for the threshold curve")
    p.add_argument("--report", required=True, help="output CSV for refined transitions")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "segment", formatter_class=fmt, help="segment with manually chosen thresholds"
    )
    common(p)
    p.add_argument(
        "--thresholds", required=True, help="comma-separated thresholds, e.g. 97 or 84,169"
    )
    p.add_argument("--out", required=True, help="segmented output image (PGM P5)")
    p.set_defaults(func=_cmd_segment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (
        OSError,
        ImageFormatError,
        InfeasiblePartitionError,
        InvalidPartitionError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())
