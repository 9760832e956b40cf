"""Command-line interface: one binary, subcommands for each report type.

All inputs come from a JSON config file (--config) with a few flag overrides.
Outputs are deterministic: floats are serialized with 17 significant digits,
iteration orders are sorted, and random probes are seeded, so reruns with the
same config are byte-identical.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from .indices import IndexSet, analytic_indices, block_weights, estimate_indices
from .shifts import SeriesDivergenceError
from .spaces import NumericalError, SpaceSpec, SpecJSONError, space_from_json, space_to_json
from .spectra import (
    ProbeConfig,
    approx_eigenvalue_set,
    classify_lambda,
    probe_lower_bound,
    residual_curve,
    sufficient_set_general,
)
from .witness import build_witness, distortion, standard_probes

__all__ = ["main", "ConfigError", "RunConfig"]

PROBE_CSV_HEADER = "lambda,theta,min_ratio,n,residual,argmin_k"
RESIDUAL_CSV_HEADER = "lambda,theta,n,residual,argmin_k"


class ConfigError(ValueError):
    """Bad run configuration; message names the offending field."""


@dataclass(frozen=True)
class WitnessConfig:
    theta: float
    n_copies: int = 16
    windows: tuple[int, ...] = (8, 32)
    k: Optional[int] = None
    n_random: int = 100


@dataclass(frozen=True)
class RunConfig:
    space: SpaceSpec
    k_radius: int = 256
    n_max: int = 64
    lambda_grid: tuple[float, ...] = ()
    n_list: tuple[int, ...] = (8, 16, 32, 64)
    probe_k_radius: int = 128
    n_random: int = 200
    seed: int = 0x5EED
    witness: Optional[WitnessConfig] = None
    raw: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.k_radius < 4 * self.n_max:
            raise ConfigError(
                f"k_radius={self.k_radius} must be >= 4 * n_max = {4 * self.n_max}"
            )
        if self.k_radius > 1000:
            raise ConfigError("k_radius above 1000 leaves the exact block range")
        if self.probe_k_radius < 1 or self.probe_k_radius > self.k_radius:
            raise ConfigError("probe_k_radius must lie in [1, k_radius]")
        for lam in self.lambda_grid:
            if not lam > 0:
                raise ConfigError(f"lambda_grid entries must be positive, got {lam}")
        for n in self.n_list:
            if n < 1:
                raise ConfigError(f"n_list entries must be >= 1, got {n}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit an unsigned 64-bit integer")


def _opt_int(obj: dict, name: str, default: int) -> int:
    v = obj.get(name, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"field {name} must be an integer, got {v!r}")
    return v


def _opt_number(obj: dict, name: str, default: float) -> float:
    v = obj.get(name, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"field {name} must be a number, got {v!r}")
    return float(v)


def _number_list(obj: dict, name: str, default: tuple) -> tuple:
    v = obj.get(name, list(default))
    if not isinstance(v, list):
        raise ConfigError(f"field {name} must be a list of numbers, got {v!r}")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"field {name}[{i}] must be a number, got {x!r}")
        out.append(x)
    return tuple(out)


def _parse_witness(obj, default_windows=(8, 32)) -> WitnessConfig:
    if not isinstance(obj, dict):
        raise ConfigError("field witness must be an object")
    if "theta" in obj:
        theta = _opt_number(obj, "theta", 0.0)
    elif "lam" in obj:
        theta = math.log2(_opt_number(obj, "lam", 1.0))
    elif "p" in obj:
        p = obj["p"]
        if p == "inf":
            theta = 0.0
        else:
            theta = 1.0 / _opt_number(obj, "p", 1.0)
    else:
        raise ConfigError("field witness needs one of theta, lam, p")
    if not 0.0 <= theta <= 1.0:
        raise ConfigError(f"witness theta={theta} outside [0, 1]")
    windows = tuple(int(n) for n in _number_list(obj, "windows", default_windows))
    for n in windows:
        if n < 1:
            raise ConfigError(f"witness windows entries must be >= 1, got {n}")
    k = obj.get("k")
    if k is not None and (isinstance(k, bool) or not isinstance(k, int)):
        raise ConfigError(f"field witness.k must be an integer, got {k!r}")
    return WitnessConfig(
        theta=theta,
        n_copies=_opt_int(obj, "n_copies", 16),
        windows=windows,
        k=k,
        n_random=_opt_int(obj, "n_random", 100),
    )


def load_config(path: str, overrides: argparse.Namespace) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    if "space" not in raw:
        raise ConfigError("missing field space")
    try:
        space = space_from_json(raw["space"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    k_radius = _opt_int(raw, "k_radius", 256)
    n_max = _opt_int(raw, "n_max", 64)
    seed = _opt_int(raw, "seed", 0x5EED)
    if overrides.krange is not None:
        k_radius = overrides.krange
    if overrides.nmax is not None:
        n_max = overrides.nmax
    if overrides.seed is not None:
        seed = overrides.seed

    witness = None
    if "witness" in raw:
        witness = _parse_witness(raw["witness"])

    return RunConfig(
        space=space,
        k_radius=k_radius,
        n_max=n_max,
        lambda_grid=tuple(float(x) for x in _number_list(raw, "lambda_grid", ())),
        n_list=tuple(int(n) for n in _number_list(raw, "n_list", (8, 16, 32, 64))),
        probe_k_radius=_opt_int(raw, "probe_k_radius", 128),
        n_random=_opt_int(raw, "n_random", 200),
        seed=seed,
        witness=witness,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# Deterministic JSON / CSV emission.


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x}")
    return format(x, ".17g")


def _emit_json(obj, pieces: list[str]) -> None:
    if obj is None:
        pieces.append("null")
    elif obj is True:
        pieces.append("true")
    elif obj is False:
        pieces.append("false")
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, float):
        pieces.append(_fmt_float(obj))
    elif isinstance(obj, str):
        pieces.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, item in enumerate(obj):
            if i:
                pieces.append(",")
            _emit_json(item, pieces)
        pieces.append("]")
    elif isinstance(obj, dict):
        pieces.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                pieces.append(",")
            pieces.append(json.dumps(str(key)))
            pieces.append(":")
            _emit_json(val, pieces)
        pieces.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json_text(obj) -> str:
    pieces: list[str] = []
    _emit_json(obj, pieces)
    return "".join(pieces)


def _write_out(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _config_echo(cfg: RunConfig) -> dict:
    echo = {
        "space": space_to_json(cfg.space),
        "k_radius": cfg.k_radius,
        "n_max": cfg.n_max,
        "lambda_grid": list(cfg.lambda_grid),
        "n_list": list(cfg.n_list),
        "probe_k_radius": cfg.probe_k_radius,
        "n_random": cfg.n_random,
        "seed": cfg.seed,
    }
    if cfg.witness is not None:
        echo["witness"] = {
            "theta": cfg.witness.theta,
            "n_copies": cfg.witness.n_copies,
            "windows": list(cfg.witness.windows),
            "k": cfg.witness.k,
            "n_random": cfg.witness.n_random,
        }
    return echo


def _index_json(ix: IndexSet, with_meta: bool = True) -> dict:
    out = dict(ix.as_dict())
    if with_meta and ix.meta:
        meta = {
            "method": ix.meta.get("method"),
            "n_max": ix.meta.get("n_max"),
            "k_range": ix.meta.get("k_range"),
            "est_error": ix.meta.get("est_error"),
            "regression_slope": ix.meta.get("regression_slope"),
            "per_n": ix.meta.get("per_n"),
        }
        out["meta"] = {k: v for k, v in meta.items() if v is not None}
    return out


def _estimate(cfg: RunConfig) -> IndexSet:
    w = block_weights(cfg.space, -cfg.k_radius, cfg.k_radius)
    return estimate_indices(w, cfg.n_max)


def cmd_indices(cfg: RunConfig) -> dict:
    est = _estimate(cfg)
    ana = analytic_indices(cfg.space)
    report = {
        "command": "indices",
        "config": _config_echo(cfg),
        "estimated": _index_json(est),
        "analytic": _index_json(ana) if ana is not None else None,
    }
    if ana is not None:
        report["delta"] = {
            name: est.as_dict()[name] - ana.as_dict()[name] for name in est.as_dict()
        }
    return report


def _interval_json_theta(iv) -> dict:
    return {"theta_lo": iv.lo, "theta_hi": iv.hi}


def _p_endpoint(p: float):
    return "inf" if math.isinf(p) else p


def cmd_spectrum(cfg: RunConfig) -> dict:
    est = _estimate(cfg)
    ana = analytic_indices(cfg.space)
    rep = approx_eigenvalue_set(est)
    suff = sufficient_set_general(est)
    report = {
        "command": "spectrum",
        "config": _config_echo(cfg),
        "indices": _index_json(est, with_meta=False),
        "analytic": _index_json(ana, with_meta=False) if ana is not None else None,
        "case": rep.case_tag,
        "eigen_set_theta": [_interval_json_theta(iv) for iv in rep.eigen_set],
        "frep_set_p": [
            {"p_lo": _p_endpoint(lo), "p_hi": _p_endpoint(hi)} for lo, hi in rep.frep_set
        ],
        "split_uncertain": rep.split_uncertain,
        "assuming_fundamental_type": ana is None,
        "sufficient_set": {
            "eigen_set_theta": [_interval_json_theta(iv) for iv in suff.eigen_set],
            "sufficient_only": True,
        },
        "classification": [
            {
                "lambda": lc.lam,
                "theta": lc.theta,
                "verdict": lc.verdict.value,
            }
            for lc in (classify_lambda(est, lam) for lam in sorted(cfg.lambda_grid))
        ],
    }
    return report


def _probe_rows(cfg: RunConfig) -> list[dict]:
    if not cfg.lambda_grid:
        raise ConfigError("probe needs a nonempty lambda_grid")
    est = _estimate(cfg)
    pc = ProbeConfig(
        k_lo=-cfg.probe_k_radius,
        k_hi=cfg.probe_k_radius,
        n_values=tuple(cfg.n_list),
        n_random=cfg.n_random,
        seed=cfg.seed,
    )
    k_search = range(-cfg.probe_k_radius, cfg.probe_k_radius + 1)
    rows = []
    for lam_index, lam in enumerate(sorted(cfg.lambda_grid)):
        pl = probe_lower_bound(cfg.space, lam, pc, ix=est, lam_index=lam_index)
        rc = residual_curve(cfg.space, lam, cfg.n_list, k_search)
        resid = dict(rc.residuals)
        argmin = rc.meta["argmin"]
        for n in sorted(set(cfg.n_list)):
            rows.append(
                {
                    "lambda": lam,
                    "theta": pl.theta,
                    "min_ratio": pl.min_ratio,
                    "n": n,
                    "residual": resid[n],
                    "argmin_k": argmin[n]["k"],
                }
            )
    return rows


def cmd_probe(cfg: RunConfig) -> str:
    lines = [PROBE_CSV_HEADER]
    for row in _probe_rows(cfg):
        lines.append(
            ",".join(
                [
                    _fmt_float(row["lambda"]),
                    _fmt_float(row["theta"]),
                    _fmt_float(row["min_ratio"]),
                    str(row["n"]),
                    _fmt_float(row["residual"]),
                    str(row["argmin_k"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_residuals(cfg: RunConfig) -> str:
    if not cfg.lambda_grid:
        raise ConfigError("residuals needs a nonempty lambda_grid")
    k_search = range(-cfg.probe_k_radius, cfg.probe_k_radius + 1)
    lines = [RESIDUAL_CSV_HEADER]
    for lam in sorted(cfg.lambda_grid):
        rc = residual_curve(cfg.space, lam, cfg.n_list, k_search)
        argmin = rc.meta["argmin"]
        for n, residual in rc.residuals:
            lines.append(
                ",".join(
                    [
                        _fmt_float(lam),
                        _fmt_float(rc.theta),
                        str(n),
                        _fmt_float(residual),
                        str(argmin[n]["k"]),
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def cmd_witness(cfg: RunConfig) -> dict:
    if cfg.witness is None:
        raise ConfigError("missing field witness")
    wc = cfg.witness
    lam = 2.0**wc.theta
    results = []
    for window_n in wc.windows:
        k = wc.k if wc.k is not None else -(window_n + 40)
        fam = build_witness(cfg.space, lam, wc.n_copies, window_n, k)
        probes = standard_probes(wc.n_copies, wc.theta, cfg.seed, wc.n_random)
        results.append(
            {
                "window_n": window_n,
                "k": k,
                "distortion": distortion(fam, probes),
            }
        )
    return {
        "command": "witness",
        "config": _config_echo(cfg),
        "theta": wc.theta,
        "p": _p_endpoint(math.inf if wc.theta == 0 else 1.0 / wc.theta),
        "n_copies": wc.n_copies,
        "results": results,
    }


def cmd_report(cfg: RunConfig) -> dict:
    report = {
        "command": "report",
        "config": _config_echo(cfg),
        "indices": cmd_indices(cfg),
        "spectrum": cmd_spectrum(cfg),
    }
    if cfg.witness is not None:
        report["witness"] = cmd_witness(cfg)
    return report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rispect",
        description="Dilation indices and doubling-operator spectra of "
        "rearrangement-invariant spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("indices", "estimate the six dilation indices"),
        ("spectrum", "assemble eigenvalue/frep intervals and classify lambdas"),
        ("probe", "CSV of probe lower bounds and window residuals"),
        ("residuals", "CSV of window residual curves"),
        ("witness", "distortion of disjoint-copy witness families"),
        ("report", "combined JSON report"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--nmax", type=int, default=None, help="override n_max")
        p.add_argument("--krange", type=int, default=None, help="override k_radius")
        p.add_argument("--seed", type=int, default=None, help="override seed")
        p.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args)
        if args.command == "indices":
            text = to_json_text(cmd_indices(cfg)) + "\n"
        elif args.command == "spectrum":
            text = to_json_text(cmd_spectrum(cfg)) + "\n"
        elif args.command == "probe":
            text = cmd_probe(cfg)
        elif args.command == "residuals":
            text = cmd_residuals(cfg)
        elif args.command == "witness":
            text = to_json_text(cmd_witness(cfg)) + "\n"
        elif args.command == "report":
            text = to_json_text(cmd_report(cfg)) + "\n"
        else:  # pragma: no cover - argparse enforces the choices
            raise ConfigError(f"unknown command {args.command}")
    except (ConfigError, SpecJSONError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, SeriesDivergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    _write_out(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
