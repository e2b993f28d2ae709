"""Command-line interface.

Three subcommands:

* ``simulate``: run a Monte Carlo grid from a JSON config and write tables.
* ``estimate``: estimate the mean of a censored sample read from CSV.
* ``ktrace``:   dump the threshold-selection sweep for diagnostic plotting.

Exit codes: 0 on success, 2 on configuration/input errors, 3 when a
simulation finished but one or more cells failed on every replicate.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .bootstrap import bootstrap_mu
from .censoring import load_csv
from .errors import CensMeanError, ConfigError
from .estimator import mu_hat
from .harness import config_from_mapping, run_grid, write_tables
from .streams import substream
from .tail import DEFAULT_THETA, k_star_trace

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARTIAL = 3


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theta", type=float, default=DEFAULT_THETA,
                        help="stability-criterion exponent (default %(default)s)")
    parser.add_argument("--kmin", type=int, default=2,
                        help="smallest candidate k (default %(default)s)")
    parser.add_argument("--kmax", type=int, default=None,
                        help="largest candidate k (default n//4)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="censmean",
        description="Mean estimation for heavy-tailed right-censored data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a Monte Carlo grid from a config file")
    sim.add_argument("--config", required=True, help="JSON config mirroring GridConfig")
    sim.add_argument("--out", required=True, help="output directory for tables")
    sim.add_argument("--format", choices=("csv", "markdown"), default="csv")
    sim.add_argument("--threads", type=int, default=1)
    sim.add_argument("--quiet", action="store_true", help="suppress progress lines")

    est = sub.add_parser("estimate", help="estimate the mean of a z,delta CSV sample")
    est.add_argument("--input", required=True, help="CSV file with header z,delta")
    est.add_argument("--k", default="auto", help="threshold count, an integer or 'auto'")
    _add_sweep_flags(est)
    est.add_argument("--ci", action="store_true", help="bootstrap a confidence interval")
    est.add_argument("--boot-b", type=int, default=500, help="bootstrap resamples")
    est.add_argument("--boot-policy", choices=("fixed", "reauto"), default="fixed")
    est.add_argument("--level", type=float, default=0.95, help="confidence level")
    est.add_argument("--seed", type=int, default=0, help="bootstrap stream seed")
    est.add_argument("--json", action="store_true", help="emit a JSON record instead of text")

    ktr = sub.add_parser("ktrace", help="dump the threshold-selection sweep as CSV")
    ktr.add_argument("--input", required=True, help="CSV file with header z,delta")
    ktr.add_argument("--out", required=True, help="output CSV path")
    _add_sweep_flags(ktr)

    return parser


def _cmd_simulate(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            mapping = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(mapping, dict):
        print("error: config must be a JSON object", file=sys.stderr)
        return EXIT_CONFIG
    config = config_from_mapping(mapping)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    progress = None if args.quiet else lambda line: print(line, file=sys.stderr)
    summaries = run_grid(config, threads=args.threads, progress=progress)

    suffix = "csv" if args.format == "csv" else "md"
    out_path = out_dir / f"tables.{suffix}"
    write_tables(summaries, format=args.format, path=out_path)
    print(out_path)

    if any(s.all_failed for s in summaries):
        print("warning: some cells failed on every replicate", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _parse_k(raw: str):
    if raw == "auto":
        return "auto"
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"--k must be an integer or 'auto', got {raw!r}") from None


def _cmd_estimate(args) -> int:
    sample = load_csv(args.input)
    k = _parse_k(args.k)
    est = mu_hat(sample, k, theta=args.theta, k_min=args.kmin, k_max=args.kmax)
    record = {
        "mu_hat": est.mu_hat,
        "mu1_hat": est.mu1_hat,
        "mu2_hat": est.mu2_hat,
        "gamma1_hat": est.tail.gamma1_hat,
        "gamma_hill": est.tail.gamma_hill,
        "p_hat": est.tail.p_hat,
        "k_star": est.tail.k,
        "km_mean": est.km_baseline,
    }
    if args.ci:
        boot = bootstrap_mu(
            sample,
            args.boot_b,
            k=est.tail.k,
            policy=args.boot_policy,
            level=args.level,
            rng=substream(args.seed, sample.n),
            theta=args.theta,
            k_min=args.kmin,
            k_max=args.kmax,
        )
        record.update(
            ci_lower=boot.ci_lower,
            ci_upper=boot.ci_upper,
            boot_sd=boot.boot_sd,
            boot_failures=boot.failures,
            level=boot.level,
        )
    if args.json:
        print(json.dumps(record))
    else:
        width = max(len(name) for name in record)
        for name, value in record.items():
            text = f"{value:.6f}" if isinstance(value, float) else str(value)
            print(f"{name:<{width}}  {text}")
    return EXIT_OK


def _cmd_ktrace(args) -> int:
    sample = load_csv(args.input)
    ks, hills, phats, g1s, crit = k_star_trace(
        sample, theta=args.theta, k_min=args.kmin, k_max=args.kmax
    )
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "gamma_hill", "p_hat", "gamma1_hat", "criterion"])
        for row in zip(ks, hills, phats, g1s, crit):
            writer.writerow([row[0]] + [repr(float(v)) for v in row[1:]])
    print(args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "simulate": _cmd_simulate,
        "estimate": _cmd_estimate,
        "ktrace": _cmd_ktrace,
    }[args.command]
    try:
        return handler(args)
    except CensMeanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
