"""Command-line front end: JSON and CSV reports over the library operations.

Exit codes: 0 on success, 2 for validation or usage errors, 3 when a size cap
is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .asymptotics import SpectrumQuery, entropy_rate_series, spectrum_probability
from .codes import (
    build_deterministic_code,
    build_stochastic_code,
    codebook_from_json,
    codebook_to_json,
)
from .distributions import atom_cap, distribution_from_json, mixture_from_json
from .errors import SmoothcodeError, TooLarge
from .evaluation import evaluate_code, sandwich_report
from .logspace import LN2
from .oracle import optimal_code_bruteforce, smoothing_feasible_search
from .smooth_renyi import (
    optimal_smoothing,
    r_alpha_eps,
    smooth_max_entropy,
    smooth_renyi_entropy,
)


@dataclass(frozen=True)
class RunConfig:
    """Resolved global options shared by the subcommands."""

    subcommand: str
    unit: str = "nats"
    fmt: str = "json"
    seed: int = 0
    cap: int | None = None


def _in_unit(nats: float, unit: str) -> float:
    return nats / LN2 if unit == "bits" else nats


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _fmt12(x: float) -> str:
    return format(x, ".12g")


def _cmd_entropy(args, cfg: RunConfig) -> int:
    dist = distribution_from_json(_load_json(args.dist))
    sub = optimal_smoothing(dist, args.eps)
    _emit_json(
        {
            "alpha": args.alpha,
            "eps": args.eps,
            "unit": cfg.unit,
            "entropy": _in_unit(smooth_renyi_entropy(dist, args.alpha, args.eps), cfg.unit),
            "smooth_max_entropy": _in_unit(smooth_max_entropy(dist, args.eps), cfg.unit),
            "r_alpha_eps": r_alpha_eps(dist, args.alpha, args.eps),
            "k_star": sub.k_star,
            "gamma_eps": sub.gamma_eps,
        }
    )
    return 0


def _build_code(args, dist):
    build = build_deterministic_code if args.mode == "deterministic" else build_stochastic_code
    return build(dist, args.eps, args.lam)


def _cmd_code(args, cfg: RunConfig) -> int:
    dist = distribution_from_json(_load_json(args.dist))
    _emit_json(codebook_to_json(_build_code(args, dist)))
    return 0


def _cmd_evaluate(args, cfg: RunConfig) -> int:
    dist = distribution_from_json(_load_json(args.dist))
    if args.code is not None:
        code = codebook_from_json(_load_json(args.code))
    else:
        code = _build_code(args, dist)
    report = evaluate_code(code, dist, args.eps, args.lam)
    _emit_json(report.to_json_dict())
    return 0


def _cmd_oracle(args, cfg: RunConfig) -> int:
    dist = distribution_from_json(_load_json(args.dist))
    if args.mode == "code":
        result = optimal_code_bruteforce(dist, args.eps, args.lam, args.max_len)
        _emit_json(
            {
                "best_moment": result.best_moment,
                "encoder": list(result.encoder),
                "decoder": result.decoder,
                "search_space_size": result.search_space_size,
            }
        )
    else:
        if args.alpha is None:
            raise ValueError("oracle smoothing mode needs --alpha")
        best = smoothing_feasible_search(
            dist, args.alpha, args.eps, trials=args.trials, seed=cfg.seed
        )
        _emit_json(
            {
                "alpha": args.alpha,
                "eps": args.eps,
                "trials": args.trials,
                "seed": cfg.seed,
                "best_power_sum": best,
            }
        )
    return 0


def _cmd_mixture(args, cfg: RunConfig) -> int:
    spec = mixture_from_json(_load_json(args.spec))
    series = entropy_rate_series(spec, args.alpha, args.eps, _int_list(args.n_list), cap=cfg.cap)
    limit = _in_unit(series.limit, cfg.unit)
    if cfg.fmt == "csv":
        print("n,value,limit")
        for n, value in series.entries:
            print(f"{n},{_fmt12(_in_unit(value, cfg.unit))},{_fmt12(limit)}")
    else:
        _emit_json(
            {
                "alpha": series.alpha,
                "eps": series.eps,
                "unit": cfg.unit,
                "component": series.component,
                "limit": limit,
                "entries": [
                    {"n": n, "value": _in_unit(v, cfg.unit)} for n, v in series.entries
                ],
            }
        )
    return 0


def _cmd_spectrum(args, cfg: RunConfig) -> int:
    spec = mixture_from_json(_load_json(args.spec))
    query = SpectrumQuery(
        n=args.n, direction=args.direction, threshold=args.threshold, gamma=args.gamma
    )
    prob = spectrum_probability(spec, query, cap=cfg.cap)
    _emit_json(
        {
            "n": args.n,
            "direction": args.direction,
            "threshold": args.threshold,
            "gamma": args.gamma,
            "probability": prob,
        }
    )
    return 0


def _cmd_sweep(args, cfg: RunConfig) -> int:
    dist = distribution_from_json(_load_json(args.dist))
    reports = [
        sandwich_report(dist, eps, lam)
        for eps in _float_list(args.epsilons)
        for lam in _float_list(args.lambdas)
    ]
    if cfg.fmt == "csv":
        cols = [
            "eps",
            "lambda",
            "error_prob",
            "error_prob_raw",
            "exp_moment",
            "converse_bound",
            "direct_bound",
        ]
        print(",".join(cols))
        for r in reports:
            d = r.to_json_dict()
            print(",".join(_fmt12(d[c]) for c in cols))
    else:
        _emit_json({"reports": [r.to_json_dict() for r in reports]})
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothcode",
        description="Smooth Renyi entropies, error-tolerant prefix codes, and moment bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, unit=False, fmt=False, cap=False, seed=False):
        if unit:
            p.add_argument("--unit", choices=("nats", "bits"), default="nats")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        if cap:
            p.add_argument("--cap", type=int, default=None, help="type-class cap override")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("entropy", help="smooth Renyi and smooth max entropy of a distribution")
    p.add_argument("--dist", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    common(p, unit=True)

    p = sub.add_parser("code", help="construct a flag-bit codebook")
    p.add_argument("--dist", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mode", choices=("stochastic", "deterministic"), default="stochastic")

    p = sub.add_parser("evaluate", help="error probability, exact moment, and bounds")
    p.add_argument("--dist", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mode", choices=("stochastic", "deterministic"), default="stochastic")
    p.add_argument("--code", default=None, help="evaluate this codebook instead of building one")

    p = sub.add_parser("oracle", help="brute-force optimal code or random smoothing search")
    p.add_argument("--dist", required=True)
    p.add_argument("--mode", choices=("code", "smoothing"), default="code")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--trials", type=int, default=1000)
    common(p, seed=True)

    p = sub.add_parser("mixture", help="per-symbol entropy series of a mixture source")
    p.add_argument("--spec", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n-list", required=True, help="comma-separated blocklengths")
    common(p, unit=True, fmt=True, cap=True)

    p = sub.add_parser("spectrum", help="exact mass of a self-information rate predicate")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--direction", choices=("ge", "le", "within"), required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--gamma", type=float, default=None)
    common(p, cap=True)

    p = sub.add_parser("sweep", help="sandwich reports over an (eps, lambda) grid")
    p.add_argument("--dist", required=True)
    p.add_argument("--epsilons", required=True, help="comma-separated eps values")
    p.add_argument("--lambdas", required=True, help="comma-separated lambda values")
    common(p, fmt=True)

    return parser


_HANDLERS = {
    "entropy": _cmd_entropy,
    "code": _cmd_code,
    "evaluate": _cmd_evaluate,
    "oracle": _cmd_oracle,
    "mixture": _cmd_mixture,
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cap_arg = getattr(args, "cap", None)
    cfg = RunConfig(
        subcommand=args.subcommand,
        unit=getattr(args, "unit", "nats"),
        fmt=getattr(args, "format", "json"),
        seed=getattr(args, "seed", 0),
        cap=cap_arg if cap_arg is not None else atom_cap(),
    )
    try:
        return _HANDLERS[args.subcommand](args, cfg)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SmoothcodeError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
