"""Experiment harness CLI.

Subcommands: ``fft1d``, ``ladder``, ``ablate``, ``fft2d``, ``sweep``.
Every command runs deterministically from its configuration (the seed
fully determines generated inputs), writes a JSON or CSV report, and can
render a matplotlib figure next to the report with ``--plot``.

Exit codes: 0 success, 1 configuration or simulator error, 2 verification
failure, 3 ordering regression from ``ladder``.
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import SimError
from .fftcore import ComplexBuffer, dft_oracle, fft_reference, random_buffer, rel_l2_error
from .fft2d import Distribution2D, run_fft2d
from .kernels.runner import run_fft_kernel
from .kernels.variants import ABLATION_ROWS, ALL_ON, AblationFlags, LADDER_ORDER, get_variant
from .report import build_document, write_document
from .sim.ledger import DEFAULT_WEIGHTS, resolve_weights

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFICATION = 2
EXIT_ORDERING = 3

# Published reference runtimes (milliseconds), carried in reports as the
# paper_ms column for side-by-side plots. These are hardware measurements,
# never computed outputs.
LADDER_REFERENCE_MS = {
    "initial": 14.39,
    "chunked": 9.38,
    "thcon": 7.56,
    "wide128": 6.61,
    "single_copy": 5.31,
}
FFT2D_REFERENCE = {(1024, 1024, 64): {"paper_ms": 23.56, "paper_watts": 42.0}}

# Verification tolerances (relative L2 against the brute-force oracles).
ORACLE_TOL_SMALL = 1e-5   # n <= 64
ORACLE_TOL_LARGE = 1e-3
ORACLE_N_LIMIT_1D = 4096  # O(N^2) oracle ceiling for fft1d verification

# Calibration bands for the component-ablation cost ratios (documented
# alongside the default weights; see README).
READ_OFF_RATIO_BAND = (0.35, 0.65)
COMPUTE_ONLY_MAX_RATIO = 0.15


def _parse_weights(text):
    if not text:
        return None
    overrides = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        if not _:
            raise SimError(f"bad --weights entry {item!r}, expected name=value")
        overrides[key.strip()] = float(value)
    return overrides


def _base_config(args, **extra):
    config = {
        "seed": args.seed,
        "weights": resolve_weights(_parse_weights(args.weights)),
        "format": args.format,
    }
    config.update(extra)
    return config


def _emit(args, command, config, reports, plot_fn=None):
    document = build_document(command, config, reports)
    if args.out:
        write_document(document, args.out, args.format)
        if getattr(args, "plot", False):
            figure_path = args.out + ".png"
            plot_fn(reports, figure_path)
            print(f"wrote {args.out} and {figure_path}")
        else:
            print(f"wrote {args.out}")
    else:
        from .report import to_csv_bytes, to_json_bytes

        data = to_json_bytes(document) if args.format == "json" else to_csv_bytes(document)
        sys.stdout.write(data.decode("ascii"))
    return EXIT_OK


def _oracle_tolerance(n: int) -> float:
    return ORACLE_TOL_SMALL if n <= 64 else ORACLE_TOL_LARGE


def _verify_1d(out: ComplexBuffer, inp: ComplexBuffer) -> str | None:
    """Returns a failure description, or None when verification passes."""
    ref = fft_reference(inp)
    if not out.bitwise_equal(ref):
        return f"output differs from the FP32 reference FFT (rel L2 {rel_l2_error(out, ref):.3g})"
    if inp.n <= ORACLE_N_LIMIT_1D:
        err = rel_l2_error(out, dft_oracle(inp))
        if err > _oracle_tolerance(inp.n):
            return f"oracle disagreement: rel L2 {err:.3g} > {_oracle_tolerance(inp.n):.0e}"
    return None


def cmd_fft1d(args) -> int:
    flags = AblationFlags.from_string(args.flags) if args.flags else ALL_ON
    weights = _parse_weights(args.weights)
    inp = random_buffer(args.n, args.seed)
    out = report = None
    for _ in range(args.repeat):
        started = time.perf_counter()
        out, report = run_fft_kernel(inp, args.variant, flags, weights=weights,
                                     record_trace=False)
        elapsed = time.perf_counter() - started
    if args.repeat > 1:
        print(f"simulator time: {elapsed:.3f} s per run ({args.repeat} repeats)")
    report["seed"] = args.seed
    if flags.all_enabled:
        failure = _verify_1d(out, inp)
        if failure is not None:
            print(f"verification failed: {failure}", file=sys.stderr)
            return EXIT_VERIFICATION
    config = _base_config(args, n=args.n, variant=args.variant, flags=flags.to_string())
    from .plots import breakdown_figure

    return _emit(args, "fft1d", config, [report],
                 lambda reports, path: breakdown_figure(reports[0], path))


def cmd_ladder(args) -> int:
    weights = _parse_weights(args.weights)
    inp = random_buffer(args.n, args.seed)
    reports = []
    for name in LADDER_ORDER:
        out, report = run_fft_kernel(inp, name, weights=weights, record_trace=False)
        failure = _verify_1d(out, inp)
        if failure is not None:
            print(f"verification failed for {name}: {failure}", file=sys.stderr)
            return EXIT_VERIFICATION
        report["seed"] = args.seed
        report["paper_ms"] = LADDER_REFERENCE_MS[name]
        reports.append(report)
    config = _base_config(args, n=args.n)
    from .plots import ladder_figure

    code = _emit(args, "ladder", config, reports, ladder_figure)
    costs = [r["modeled_cost"] for r in reports]
    if not all(a > b for a, b in zip(costs, costs[1:])):
        print(f"ordering regression: modeled costs {costs} are not strictly decreasing",
              file=sys.stderr)
        return EXIT_ORDERING
    return code


def cmd_ablate(args) -> int:
    weights = _parse_weights(args.weights)
    inp = random_buffer(args.n, args.seed)
    reports = []
    full_cost = None
    for row, ms in ABLATION_ROWS:
        flags = AblationFlags.from_string(row)
        out, report = run_fft_kernel(inp, args.variant, flags, weights=weights,
                                     record_trace=False)
        if flags.all_enabled:
            failure = _verify_1d(out, inp)
            if failure is not None:
                print(f"verification failed: {failure}", file=sys.stderr)
                return EXIT_VERIFICATION
            full_cost = report["modeled_cost"]
        report["seed"] = args.seed
        report["paper_ms"] = ms
        report["ratio_to_full"] = report["modeled_cost"] / full_cost if full_cost else None
        reports.append(report)
    config = _base_config(args, n=args.n, variant=args.variant)
    from .plots import ablation_figure

    return _emit(args, "ablate", config, reports, ablation_figure)


def cmd_fft2d(args) -> int:
    weights = _parse_weights(args.weights)
    if args.input:
        from .arrayio import read_array2d

        inp, rows, cols = read_array2d(args.input)
        if (args.rows, args.cols) != (rows, cols):
            raise SimError(
                f"--rows/--cols {args.rows}x{args.cols} disagree with file {rows}x{cols}"
            )
    else:
        inp = random_buffer((args.rows, args.cols), args.seed)
    dist = Distribution2D(args.rows, args.cols, args.cores)
    out = report = None
    for _ in range(args.repeat):
        started = time.perf_counter()
        out, report = run_fft2d(inp, dist, args.variant, weights=weights)
        elapsed = time.perf_counter() - started
    if args.repeat > 1:
        print(f"simulator time: {elapsed:.3f} s per run ({args.repeat} repeats)")
    if report["correctness"]["checked"]:
        err = report["correctness"]["max_rel_err"]
        if err > ORACLE_TOL_LARGE:
            print(f"verification failed: rel L2 {err:.3g} vs the 2D oracle", file=sys.stderr)
            return EXIT_VERIFICATION
    report["seed"] = args.seed
    reference = FFT2D_REFERENCE.get((args.rows, args.cols, args.cores))
    if reference:
        report.update(reference)
    if args.write_output:
        from .arrayio import write_array2d

        write_array2d(args.write_output, out, args.rows, args.cols)
    config = _base_config(args, rows=args.rows, cols=args.cols, num_cores=args.cores,
                          variant=args.variant)
    from .plots import breakdown_figure

    return _emit(args, "fft2d", config, [report],
                 lambda reports, path: breakdown_figure(reports[0], path))


def cmd_sweep(args) -> int:
    weights = _parse_weights(args.weights)
    variants = [v.strip() for v in args.variants.split(",")]
    for name in variants:
        get_variant(name)
    reports = []
    if args.n_list:
        sizes = [int(v) for v in args.n_list.split(",")]
        for n in sizes:
            for name in variants:
                inp = random_buffer(n, args.seed)
                out, report = run_fft_kernel(inp, name, weights=weights, record_trace=False)
                if report["correctness"]["max_rel_err"] != 0.0:
                    print(f"verification failed at n={n}, {name}", file=sys.stderr)
                    return EXIT_VERIFICATION
                report["seed"] = args.seed
                reports.append(report)
        config = _base_config(args, n_list=sizes, variants=variants)
    else:
        cores_list = [int(v) for v in args.cores_list.split(",")]
        for cores in cores_list:
            for name in variants:
                inp = random_buffer((args.rows, args.cols), args.seed)
                dist = Distribution2D(args.rows, args.cols, cores)
                out, report = run_fft2d(inp, dist, name, weights=weights)
                report["seed"] = args.seed
                reports.append(report)
        config = _base_config(args, rows=args.rows, cols=args.cols,
                              cores_list=cores_list, variants=variants)
    from .plots import sweep_figure

    return _emit(args, "sweep", config, reports, sweep_figure)


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0, help="input-generation seed")
    parser.add_argument("--weights", default="",
                        help="cost-weight overrides, e.g. thcon_access_32=1.4,tile_ops=0.9 "
                             f"(defaults: {DEFAULT_WEIGHTS})")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default=None, help="report path (stdout when omitted)")
    parser.add_argument("--plot", action="store_true",
                        help="also render a figure at OUT.png (requires --out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensixfft",
        description="Run FFT kernel experiments on the simulated dataflow core.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fft1d", help="run one variant at one size and verify it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=LADDER_ORDER, default="single_copy")
    p.add_argument("--flags", default="",
                   help="five Y/N characters: external read, read reorder, compute, "
                        "write reorder, external write")
    p.add_argument("--repeat", type=int, default=1,
                   help="re-run to time the simulator itself (timing goes to stdout, "
                        "never into the report)")
    _add_common(p)
    p.set_defaults(func=cmd_fft1d)

    p = sub.add_parser("ladder", help="run all five variants and check the cost ordering")
    p.add_argument("--n", type=int, default=16384)
    _add_common(p)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("ablate", help="run the seven component-ablation rows")
    p.add_argument("--n", type=int, default=16384)
    p.add_argument("--variant", choices=LADDER_ORDER, default="initial")
    _add_common(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("fft2d", help="distributed 2D FFT across simulated cores")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--variant", choices=LADDER_ORDER, default="single_copy")
    p.add_argument("--input", default=None, help="binary 2D array file (see README)")
    p.add_argument("--write-output", default=None, help="write the transform to this file")
    p.add_argument("--repeat", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_fft2d)

    p = sub.add_parser("sweep", help="one report row per (size or core count) x variant")
    p.add_argument("--n-list", default="", help="comma-separated 1D sizes")
    p.add_argument("--cores-list", default="", help="comma-separated core counts (2D mode)")
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--variants", default="single_copy", help="comma-separated variant names")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "plot", False) and not args.out:
        parser.error("--plot requires --out")
    if args.command == "sweep":
        if bool(args.n_list) == bool(args.cores_list):
            print("sweep needs exactly one of --n-list or --cores-list", file=sys.stderr)
            return EXIT_ERROR
        if args.cores_list and (args.rows is None or args.cols is None):
            print("a --cores-list sweep needs --rows and --cols", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.func(args)
    except (SimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
