"""``forge`` command line.

Exit codes: 0 ok, 1 I/O failure, 2 bad configuration (including mean
mismatch and sampler retry exhaustion), 3 non-graphical sequence,
4 repeated model out of attempts, 5 experiment acceptance failure.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bidegree import SamplerParams, sample_bidegree
from .degree_dist import kappa, parse_distribution
from .errors import AttemptsExhausted, ForgeError, MeanMismatch, RetryExhausted
from .formats import (
    dump_json,
    format_degree_file,
    format_edge_list,
    parse_config_file,
    read_degree_file,
    sidecar_path,
)
from .graphicality import is_graphical
from .pipeline import Model, generate
from .rng import DEGREES_STREAM, check_seed, derive_rng

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NOT_GRAPHICAL = 3
EXIT_ATTEMPTS = 4
EXIT_ACCEPTANCE = 5

SEED_ENV = "FORGE_SEED"


class ConfigError(ForgeError, ValueError):
    pass


@dataclass
class RunConfig:
    fin_spec: str
    fout_spec: str
    n: int
    seed: int
    model: str = "erased"
    delta0: float | None = None
    reps: int = 5000
    output_path: Path | None = None
    format: str = "degree_file"
    max_resamples: int = 1000
    mean_tolerance: float = 1e-9
    max_attempts: int | None = None
    resample_degrees: bool = False
    jobs: int = 1
    figures: Path | None = None
    timing: bool = False
    base_dir: Path | None = None

    def distributions(self):
        try:
            F = parse_distribution(self.fin_spec, self.base_dir)
            G = parse_distribution(self.fout_spec, self.base_dir)
        except OSError as exc:
            raise ConfigError(f"cannot read distribution file: {exc}") from None
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return F, G

    def sampler_params(self, F, G) -> SamplerParams:
        if self.delta0 is not None:
            k = kappa(F.tail_index, G.tail_index)
            if not 0 < self.delta0 < k:
                raise ConfigError(f"delta0 must lie in (0, kappa={k:.6g}), got {self.delta0}")
        return SamplerParams(self.delta0, self.max_resamples, self.mean_tolerance)


# -- argument handling --

_CONVERTERS = {
    "fin": str,
    "fout": str,
    "n": int,
    "delta0": float,
    "seed": int,
    "model": str,
    "reps": int,
    "output": str,
    "max_resamples": int,
    "mean_tolerance": float,
    "max_attempts": int,
    "resample_degrees": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
    "jobs": int,
    "figures": str,
    "timing": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value file whose keys mirror the long flags")
    p.add_argument("--fin", help="in-degree distribution, e.g. poisson:2 or zeta:3.5")
    p.add_argument("--fout", help="out-degree distribution")
    p.add_argument("-n", type=int, help="number of nodes")
    p.add_argument("--delta0", type=float, help="sum-gate slack in (0, kappa); default kappa/2")
    p.add_argument("--seed", type=int, help=f"unsigned 64-bit seed (fallback: ${SEED_ENV})")
    p.add_argument("--max-resamples", type=int, dest="max_resamples")
    p.add_argument("--mean-tolerance", type=float, dest="mean_tolerance")
    p.add_argument("-o", "--output", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge",
        description="Simple directed random graphs with prescribed in/out-degree laws.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrees", help="sample an equal-sum bi-degree sequence")
    _add_common(p)

    p = sub.add_parser("check", help="test a degree file for graphicality")
    p.add_argument("--degrees", required=True, help="degree file with N<TAB>D rows")

    p = sub.add_parser("generate", help="generate a graph and write its edge list")
    _add_common(p)
    p.add_argument("--model", choices=[m.value for m in Model])
    p.add_argument("--max-attempts", type=int, dest="max_attempts")
    p.add_argument(
        "--resample-degrees",
        action="store_true",
        default=None,
        dest="resample_degrees",
        help="repeated model: redraw the degree sequence after each failed pairing",
    )
    p.add_argument("--figures", help="directory for diagnostic PNGs")

    p = sub.add_parser("experiment", help="Monte-Carlo check of P(simple) and the Poisson limits")
    _add_common(p)
    p.add_argument("--reps", type=int)
    p.add_argument("--jobs", type=int, help="worker processes for replications")
    p.add_argument("--timing", action="store_true", default=None, help="record runtime_seconds")
    p.add_argument("--figures", help="directory for diagnostic PNGs")
    return parser


def resolve_config(args: argparse.Namespace, env=None) -> RunConfig:
    env = os.environ if env is None else env
    values = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    base_dir = None
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            file_values = parse_config_file(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        base_dir = path.parent
        for key, raw in file_values.items():
            if key not in _CONVERTERS:
                raise ConfigError(f"unknown config key {key!r}")
            if values.get(key) is None:
                try:
                    values[key] = _CONVERTERS[key](raw)
                except ValueError:
                    raise ConfigError(f"bad value for {key}: {raw!r}") from None

    if values.get("seed") is None and env.get(SEED_ENV):
        try:
            values["seed"] = int(env[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer") from None
    if values.get("seed") is None:
        values["seed"] = secrets.randbits(64)

    for key in ("fin", "fout", "n"):
        if values.get(key) is None:
            raise ConfigError(f"missing required setting --{key}")
    n = values["n"]
    if n < 1:
        raise ConfigError("n must be a positive integer")
    try:
        seed = check_seed(values["seed"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    cfg = RunConfig(fin_spec=values["fin"], fout_spec=values["fout"], n=n, seed=seed, base_dir=base_dir)
    for key in ("delta0", "reps", "max_resamples", "mean_tolerance", "max_attempts", "jobs"):
        if values.get(key) is not None:
            setattr(cfg, key, values[key])
    if values.get("model") is not None:
        cfg.model = values["model"]
    cfg.resample_degrees = bool(values.get("resample_degrees"))
    cfg.timing = bool(values.get("timing"))
    if values.get("output"):
        cfg.output_path = Path(values["output"])
    if values.get("figures"):
        cfg.figures = Path(values["figures"])
    if cfg.model not in {m.value for m in Model}:
        raise ConfigError(f"unknown model {cfg.model!r}")
    if cfg.max_resamples < 1:
        raise ConfigError("max-resamples must be positive")
    if cfg.mean_tolerance < 0:
        raise ConfigError("mean-tolerance must be nonnegative")
    if cfg.max_attempts is not None and cfg.max_attempts < 1:
        raise ConfigError("max-attempts must be positive")
    if cfg.jobs < 1:
        raise ConfigError("jobs must be positive")
    return cfg


def _emit(text: str, path: Path | None, sidecar: str | None = None):
    if path is None:
        sys.stdout.write(text)
        if sidecar is not None:
            sys.stderr.write(sidecar)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    if sidecar is not None:
        sidecar_path(path).write_text(sidecar)


def _header(cfg: RunConfig, command: str) -> list[str]:
    delta0 = "auto" if cfg.delta0 is None else repr(cfg.delta0)
    return [
        f"digraph_forge {command}",
        f"fin={cfg.fin_spec} fout={cfg.fout_spec} n={cfg.n} seed={cfg.seed} delta0={delta0}",
    ]


# -- commands --


def cmd_degrees(cfg: RunConfig) -> int:
    F, G = cfg.distributions()
    params = cfg.sampler_params(F, G)
    seq, diag = sample_bidegree(F, G, cfg.n, params, derive_rng(cfg.seed, *DEGREES_STREAM))
    sidecar = {"config": _config_dict(cfg), "diagnostics": diag.to_dict(), "total": seq.total}
    _emit(format_degree_file(seq, _header(cfg, "degrees")), cfg.output_path, dump_json(sidecar))
    return EXIT_OK


def cmd_check(path) -> int:
    try:
        seq = read_degree_file(path)
    except OSError as exc:
        print(f"error: cannot read degree file: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    ok = is_graphical(seq)
    print(f"graphical: {'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_NOT_GRAPHICAL


def cmd_generate(cfg: RunConfig) -> int:
    F, G = cfg.distributions()
    params = cfg.sampler_params(F, G)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = generate(
            F,
            G,
            cfg.n,
            model=cfg.model,
            params=params,
            seed=cfg.seed,
            max_attempts=cfg.max_attempts,
            resample_degrees=cfg.resample_degrees,
        )
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    summary = result.summary(F, G)
    summary["config"] = _config_dict(cfg)
    header = _header(cfg, f"generate model={cfg.model}")
    if result.graph is not None:
        text = format_edge_list(result.graph.src, result.graph.dst, comments=header)
    else:
        g = result.multigraph
        text = format_edge_list(g.src, g.dst, g.mult, comments=header)
    _emit(text, cfg.output_path, dump_json(summary))
    if cfg.figures is not None:
        from .plots import plot_degree_laws

        stem = cfg.output_path.stem if cfg.output_path else "generate"
        plot_degree_laws(result.in_degrees, result.out_degrees, F, G, cfg.figures / f"{stem}_degrees.png")
    return EXIT_OK


def cmd_experiment(cfg: RunConfig) -> int:
    from .experiment import MIN_REPS, simple_probability_experiment

    if cfg.reps < MIN_REPS:
        raise ConfigError(f"reps too small: need at least {MIN_REPS}, got {cfg.reps}")
    F, G = cfg.distributions()
    if not (F.finite_variance and G.finite_variance):
        raise ConfigError("experiment needs finite second moments for both distributions")
    params = cfg.sampler_params(F, G)
    report = simple_probability_experiment(
        F, G, cfg.n, cfg.reps, params, cfg.seed, jobs=cfg.jobs, timing=cfg.timing
    )
    _emit(dump_json(report.to_dict()), cfg.output_path)
    if cfg.figures is not None:
        from .plots import plot_counter_fits

        stem = cfg.output_path.stem if cfg.output_path else "experiment"
        plot_counter_fits(report, cfg.figures / f"{stem}_counters.png")
    for name, check in report.checks.items():
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_ACCEPTANCE


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "fin": cfg.fin_spec,
        "fout": cfg.fout_spec,
        "n": cfg.n,
        "seed": cfg.seed,
        "model": cfg.model,
        "delta0": cfg.delta0,
        "max_resamples": cfg.max_resamples,
        "mean_tolerance": cfg.mean_tolerance,
        "max_attempts": cfg.max_attempts,
        "resample_degrees": cfg.resample_degrees,
    }


_FORMATS = {"degrees": "degree_file", "generate": "tsv_edges", "experiment": "json_report"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args.degrees)
        cfg = resolve_config(args)
        cfg.format = _FORMATS[args.command]
        if args.command == "degrees":
            return cmd_degrees(cfg)
        if args.command == "generate":
            return cmd_generate(cfg)
        return cmd_experiment(cfg)
    except (ConfigError, MeanMismatch, RetryExhausted, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AttemptsExhausted as exc:
        print(f"error: AttemptsExhausted: {exc}", file=sys.stderr)
        return EXIT_ATTEMPTS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
