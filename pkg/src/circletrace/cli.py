"""Batch experiment runner and command line interface.

Every experiment is described by a single JSON-serializable config (kind,
params, output); no environment variables participate, so a run is fully
reproducible from the config artifact.  Exit codes: 0 success, 2 invalid
parameters, 3 resource rejection.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import closed_forms as cf
from .dixmier import (
    ClassifyPolicy,
    cesaro_mean,
    classify_limit,
    log_extrapolate,
)
from .errors import ParameterError, ResourceLimitError
from .fourier import (
    CoefficientRule,
    FourierSymbol,
    WeierstrassParams,
    mode_symbol,
    symbol_from_json_obj,
    weierstrass_symbol,
)
from .nc_torus import (
    AntisymmetricForm,
    LatticeSymbol,
    clifford_rep,
    dirac_coefficients,
    grading_dirac_coefficients,
    identity_coefficients,
    torus_trace_partial,
)
from .operators import hankel_matrix, operator_to_json_obj
from .report import Report, emit_report
from .spectral import decay_slope, singular_values, weak_quasinorm

__all__ = ["Limits", "ExperimentConfig", "run_experiment", "emit_report", "main"]

KINDS = (
    "WeierstrassTrace",
    "Measurability",
    "SingularValueSweep",
    "KernelCheck",
    "Winding",
    "NcTorus",
    "HnCheck",
    "FourierTrace",
)


@dataclass(frozen=True)
class Limits:
    max_matrix: int = 4096
    max_tuples: int = 10_000_000


@dataclass
class ExperimentConfig:
    kind: str
    params: dict = field(default_factory=dict)
    out_path: str | None = None
    out_format: str = "json"
    limits: Limits = field(default_factory=Limits)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ParameterError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if self.out_format not in ("json", "csv"):
            raise ParameterError(f"output format must be json or csv, got {self.out_format!r}")


# -------------------------- parameter parsing helpers -----------------------


_INT_EXPR = re.compile(r"^\s*(\d+)\s*(?:\*\*|\^)\s*(\d+)\s*$")


def parse_int_expr(text) -> int:
    """Accept plain integers and the power shorthands 2**40 / 2^40."""
    if isinstance(text, (int, np.integer)):
        return int(text)
    s = str(text)
    match = _INT_EXPR.match(s)
    if match:
        return int(match.group(1)) ** int(match.group(2))
    try:
        return int(s)
    except ValueError:
        raise ParameterError(f"cannot parse integer expression {text!r}")


def rule_from_obj(obj) -> CoefficientRule:
    """Coefficient rule from a JSON object or a compact string form.

    Strings: "constant:VALUE", "periodic:V1,V2,...", "block-indicator:BASE",
    "sqrt-log-cos".
    """
    if isinstance(obj, CoefficientRule):
        return obj
    if isinstance(obj, str):
        name, _, arg = obj.partition(":")
        if name == "constant":
            return CoefficientRule.constant(float(arg) if arg else 1.0)
        if name == "periodic":
            return CoefficientRule.from_head(
                [float(x) for x in arg.split(",") if x], extension="periodic"
            )
        if name == "block-indicator":
            return CoefficientRule.block_indicator(int(arg) if arg else 2)
        if name == "sqrt-log-cos":
            return CoefficientRule.sqrt_log_cos()
        raise ParameterError(f"unknown coefficient rule {obj!r}")
    if isinstance(obj, dict):
        return CoefficientRule(
            head=tuple(obj.get("head", ())),
            extension=obj.get("extension", "constant"),
            base=obj.get("base"),
        )
    if isinstance(obj, (list, tuple)):
        return CoefficientRule.from_head(obj, extension="constant")
    raise ParameterError(f"cannot interpret coefficient rule {obj!r}")


def _rule_json(rule: CoefficientRule) -> dict:
    out: dict = {"head": list(rule.head), "extension": rule.extension}
    if rule.base is not None:
        out["base"] = rule.base
    return out


def symbol_from_obj(obj) -> FourierSymbol:
    """Symbol from interchange JSON, a power shorthand or a lacunary spec."""
    if isinstance(obj, FourierSymbol):
        return obj
    if isinstance(obj, str):
        match = re.match(r"^z\s*\^\s*(-?\d+)$", obj.strip())
        if match:
            return mode_symbol(int(match.group(1)))
        raise ParameterError(f"cannot interpret symbol shorthand {obj!r}")
    if isinstance(obj, dict):
        if "modes" in obj:
            return symbol_from_json_obj(obj)
        if "power" in obj:
            return mode_symbol(parse_int_expr(obj["power"]))
        if "weierstrass" in obj:
            spec = obj["weierstrass"]
            params = WeierstrassParams(
                alpha=float(spec.get("alpha", 0.5)),
                gamma=int(spec.get("gamma", 2)),
                c=rule_from_obj(spec.get("c", "constant:1")),
            )
            return weierstrass_symbol(params, parse_int_expr(spec["cutoff"]))
    raise ParameterError(f"cannot interpret symbol spec {obj!r}")


def symbol_from_arg(text: str) -> FourierSymbol:
    """CLI symbol argument: inline JSON, a z^k shorthand, or a JSON file path."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return symbol_from_obj(json.loads(stripped))
    if re.match(r"^z\s*\^\s*-?\d+$", stripped):
        return symbol_from_obj(stripped)
    path = Path(stripped)
    if not path.exists():
        raise ParameterError(f"symbol file {text!r} does not exist")
    return symbol_from_obj(json.loads(path.read_text()))


def _policy_from_obj(obj) -> ClassifyPolicy:
    if obj is None:
        return ClassifyPolicy()
    if isinstance(obj, ClassifyPolicy):
        return obj
    return ClassifyPolicy(
        window_count=int(obj.get("window_count", 5)),
        rel_gap=float(obj.get("rel_gap", 0.02)),
        abs_floor=float(obj.get("abs_floor", 1e-9)),
        window_base=int(obj.get("window_base", 2)),
    )


def _twist_from_obj(obj, n: int) -> AntisymmetricForm:
    if obj is None or obj == "zero":
        return AntisymmetricForm.zero(n)
    if isinstance(obj, dict) and "matrix" in obj:
        return AntisymmetricForm(np.asarray(obj["matrix"], dtype=float))
    if isinstance(obj, dict) and "random" in obj:
        rng = np.random.default_rng(int(obj["random"]))
        scale = float(obj.get("scale", 1.0))
        upper = np.triu(rng.standard_normal((n, n)), k=1) * scale
        return AntisymmetricForm(upper - upper.T)
    raise ParameterError(f"cannot interpret twist form spec {obj!r}")


def _lattice_symbol_from_obj(obj, n: int) -> LatticeSymbol:
    if isinstance(obj, dict) and "pair" in obj:
        return LatticeSymbol.symmetric_pair(obj["pair"], complex(obj.get("amplitude", 1.0)))
    if isinstance(obj, dict) and "modes" in obj:
        coeffs = {}
        for entry in obj["modes"]:
            vec, re_part, im_part = entry
            coeffs[tuple(int(c) for c in vec)] = complex(float(re_part), float(im_part))
        return LatticeSymbol(n, coeffs)
    raise ParameterError(f"cannot interpret lattice symbol spec {obj!r}")


# ------------------------------ experiment kinds ----------------------------


def _run_weierstrass_trace(params: dict, limits: Limits) -> Report:
    gamma = int(params.get("gamma", 2))
    alpha = float(params.get("alpha", 0.5))
    if alpha != 0.5:
        raise ParameterError(
            "the lacunary trace closed form is exact only at alpha = 1/2; "
            f"got alpha = {alpha}"
        )
    c_rule = rule_from_obj(params.get("c", "constant:1"))
    d_rule = rule_from_obj(params.get("d", params.get("c", "constant:1")))
    n_trunc = parse_int_expr(params.get("N", 2**40))
    seq = cf.weierstrass_trace(gamma, c_rule, d_rule, n_trunc)
    limit, slope = log_extrapolate(np.asarray(seq.values, dtype=float), seq.points)
    report = Report(kind="WeierstrassTrace")
    report.inputs = {
        "gamma": gamma,
        "alpha": alpha,
        "c": _rule_json(c_rule),
        "d": _rule_json(d_rule),
        "N": n_trunc,
    }
    report.add_sequence("partial_sums", seq.expression, seq.normalization, seq.points, seq.values)
    report.add_scalar("extrapolated limit of " + seq.expression, limit, "fit L + C/log(N+2)")
    report.add_scalar("extrapolation 1/log coefficient", slope, "fit L + C/log(N+2)")
    if c_rule.extension == "constant" and d_rule.extension == "constant":
        reference = -(c_rule.head[-1] * d_rule.head[-1]) / math.log(gamma)
        report.add_scalar(
            "-(lim Cesaro(c*d))/log(gamma)", reference, "closed-form reference"
        )
        report.add_check("extrapolated limit vs closed form", limit, reference)
    return report


def _run_measurability(params: dict, limits: Limits) -> Report:
    entries = params.get("entries")
    if entries is None:
        entries = [
            {
                "label": params.get("label", "sequence"),
                "gamma": params.get("gamma", 2),
                "c": params.get("c", "constant:1"),
                "d": params.get("d"),
            }
        ]
    n_index = parse_int_expr(params.get("N", 4**10))
    policy = _policy_from_obj(params.get("policy"))
    report = Report(kind="Measurability")
    report.inputs = {"N": n_index, "policy": policy.__dict__.copy(), "entries": []}
    for entry in entries:
        gamma = int(entry.get("gamma", 2))
        c_rule = rule_from_obj(entry.get("c", "constant:1"))
        d_rule = rule_from_obj(entry.get("d") or entry.get("c", "constant:1"))
        label = str(entry.get("label", f"gamma={gamma}"))
        report.inputs["entries"].append(
            {"label": label, "gamma": gamma, "c": _rule_json(c_rule), "d": _rule_json(d_rule)}
        )
        product = c_rule.values(n_index + 1) * d_rule.values(n_index + 1)
        verdict = classify_limit(cesaro_mean(product), policy)
        report.scalars.append(
            {
                "expression": f"verdict[{label}]: Cesaro(c*d) behavior, "
                "surrogate for limit-functional independence of "
                "tr(P[P,W(1/2,gamma,c)][P,W(1/2,gamma,d)]) = -C(c*d)/log(gamma)",
                "value": 0.0,
                "verdict": verdict.to_json_obj(),
            }
        )
    return report


def _run_singular_sweep(params: dict, limits: Limits) -> Report:
    alpha = float(params.get("alpha", 0.5))
    gamma = int(params.get("gamma", 2))
    n_trunc = parse_int_expr(params.get("N", 1024))
    if n_trunc > limits.max_matrix:
        raise ResourceLimitError(
            f"matrix size {n_trunc} exceeds the cap {limits.max_matrix}"
        )
    c_rule = rule_from_obj(params.get("c", "constant:1"))
    w_params = WeierstrassParams(alpha=alpha, gamma=gamma, c=c_rule)
    symbol = weierstrass_symbol(w_params, 2 * n_trunc)
    spectrum = singular_values(hankel_matrix(symbol, n_trunc))
    p = float(params.get("p", 1.0 / alpha))
    k_lo = int(params.get("k_lo", 16))
    k_hi = int(params.get("k_hi", min(512, n_trunc // 4)))
    report = Report(kind="SingularValueSweep")
    report.inputs = {
        "alpha": alpha,
        "gamma": gamma,
        "N": n_trunc,
        "c": _rule_json(c_rule),
        "p": p,
        "k_lo": k_lo,
        "k_hi": k_hi,
    }
    report.add_sequence(
        "mu",
        "singular values of P W (1-P) truncated",
        "none",
        np.arange(len(spectrum)),
        spectrum.mu,
    )
    report.add_scalar(
        "sup_k (1+k)^(1/p) mu_k", weak_quasinorm(spectrum, p), f"p = {p:.6g}"
    )
    report.add_scalar(
        "log-log decay slope", decay_slope(spectrum, k_lo, k_hi), f"window [{k_lo},{k_hi})"
    )
    return report


def _run_kernel_check(params: dict, limits: Limits) -> Report:
    a = symbol_from_obj(params["a"])
    b = symbol_from_obj(params["b"])
    n_trunc = parse_int_expr(params.get("N", 64))
    if n_trunc > limits.max_matrix:
        raise ResourceLimitError(f"kernel truncation {n_trunc} exceeds {limits.max_matrix}")
    r = float(params.get("r", 1.0 - 1e-6))
    grid = parse_int_expr(params.get("grid", 8 * n_trunc))
    kp = cf.KernelParams(n_trunc=n_trunc, r=r, grid=grid)
    value = cf.integral_trace(a, b, kp)
    oracle = -_double_sum(a, b, n_trunc) / math.log(n_trunc)
    refined = cf.integral_trace(a, b, cf.KernelParams(n_trunc, 1.0 - (1.0 - r) / 10.0, grid))
    report = Report(kind="KernelCheck")
    report.inputs = {"N": n_trunc, "r": r, "grid": grid}
    report.add_scalar("tr(P[P,a][P,b]) via kernel quadrature", value, "1/log(N)")
    report.add_scalar("-sum_{l<=N} sum_{k>l} a_k b_{-k}", oracle, "1/log(N)")
    report.add_check("quadrature vs coefficient double sum", value, oracle)
    report.add_check("radius refinement r -> 1-(1-r)/10", value, refined)
    return report


def _double_sum(a: FourierSymbol, b: FourierSymbol, n_trunc: int) -> complex:
    total = 0j
    for k, av in a.coeffs.items():
        if k >= 1 and -k in b.coeffs:
            total += min(k, n_trunc + 1) * av * b.coeffs[-k]
    return total


def _run_winding(params: dict, limits: Limits) -> Report:
    a = symbol_from_obj(params["a"])
    n_trunc = parse_int_expr(params.get("N", 64))
    if 2 * n_trunc + 1 > limits.max_matrix:
        raise ResourceLimitError(f"truncation {n_trunc} exceeds the matrix cap")
    result = cf.winding_report(a, n_trunc)
    report = Report(kind="Winding")
    report.inputs = {"N": n_trunc, "band": a.n_max}
    report.add_scalar("tr((2P-1)[P,a][P,a^-1])", result.value, "plain trace")
    report.add_scalar("nearest integer", result.nearest_integer)
    report.add_scalar("imaginary defect", result.imag_defect)
    report.add_scalar("inverse out-of-band residual", result.inverse_residual)
    report.add_scalar("safe band", result.safe_band)
    report.notes.append(
        "entries are exact only for modes within the safe band; negative "
        "values mean the truncation is too small for the symbol band"
    )
    return report


def _run_nctorus(params: dict, limits: Limits) -> Report:
    n = int(params.get("n", 2))
    rep_data = clifford_rep(n)
    n_trunc = parse_int_expr(params.get("N", 64))
    symbols = [_lattice_symbol_from_obj(s, n) for s in params["symbols"]]
    t_name = params.get("T", "grading-dirac")
    factories = {
        "grading-dirac": grading_dirac_coefficients,
        "dirac": dirac_coefficients,
        "identity": identity_coefficients,
    }
    if t_name not in factories:
        raise ParameterError(f"unknown T coefficient map {t_name!r}")
    t_map = factories[t_name](rep_data)
    twist = _twist_from_obj(params.get("theta"), n)
    seq = torus_trace_partial(
        rep_data, t_map, symbols, n_trunc, twist, max_tuples=limits.max_tuples
    )
    control = torus_trace_partial(
        rep_data, t_map, symbols, n_trunc, None, max_tuples=limits.max_tuples
    )
    report = Report(kind="NcTorus")
    report.inputs = {"n": n, "N": n_trunc, "T": t_name, "k": len(symbols)}
    report.add_sequence("partial_sums", seq.expression, seq.normalization, seq.points, seq.values)
    report.add_sequence(
        "partial_sums_zero_twist", control.expression, control.normalization,
        control.points, control.values,
    )
    report.add_scalar(
        "max |twisted - untwisted|",
        float(np.max(np.abs(seq.values - control.values))),
        "entrywise",
    )
    return report


def _run_hn_check(params: dict, limits: Limits) -> Report:
    m_max = int(params.get("m_max", 4))
    n_trunc = parse_int_expr(params.get("N", 64))
    t_points = int(params.get("t_points", 64))
    t_grid = np.linspace(0.0, 1.0, t_points + 1)[1:]
    report = Report(kind="HnCheck")
    report.inputs = {"m_max": m_max, "N": n_trunc, "t_points": t_points}
    worst = 0.0
    for m in range(1, m_max + 1):
        binom_form = cf.sphere_kernel(t_grid, n_trunc, m)
        deriv_form = cf.sphere_kernel_derivative(t_grid, n_trunc, m)
        gap = float(np.max(np.abs(binom_form - deriv_form)))
        worst = max(worst, gap)
        report.add_scalar(
            f"max |binomial - derivative| at m={m}", gap, f"t in (0,1], N={n_trunc}"
        )
    report.add_scalar("worst discrepancy over m", worst)
    geo = cf.sphere_kernel(t_grid, n_trunc, 1)
    closed = (1.0 - (1.0 - t_grid) ** (n_trunc + 1)) / t_grid
    report.add_check(
        "m=1 geometric reduction", float(np.max(np.abs(geo - closed))), 0.0
    )
    return report


def _run_fourier_trace(params: dict, limits: Limits) -> Report:
    a = symbol_from_obj(params["a"])
    b = symbol_from_obj(params["b"])
    n_trunc = parse_int_expr(params.get("N", 256))
    symmetric = bool(params.get("symmetric", False))
    if symmetric:
        seq = cf.symmetric_fourier_trace(a, b, n_trunc)
    else:
        seq = cf.fourier_side_trace(a, b, n_trunc)
    report = Report(kind="FourierTrace")
    report.inputs = {"N": n_trunc, "symmetric": symmetric}
    report.add_sequence("trace", seq.expression, seq.normalization, seq.points, seq.values)
    return report


_RUNNERS = {
    "WeierstrassTrace": _run_weierstrass_trace,
    "Measurability": _run_measurability,
    "SingularValueSweep": _run_singular_sweep,
    "KernelCheck": _run_kernel_check,
    "Winding": _run_winding,
    "NcTorus": _run_nctorus,
    "HnCheck": _run_hn_check,
    "FourierTrace": _run_fourier_trace,
}


def run_experiment(config: ExperimentConfig) -> Report:
    """Validate parameters, dispatch on kind and return a deterministic report."""
    return _RUNNERS[config.kind](config.params, config.limits)


# ----------------------------------- CLI ------------------------------------


def _write_output(data: bytes, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(out_path).write_bytes(data)


def _config_from_json_obj(obj: dict) -> ExperimentConfig:
    limits_obj = obj.get("limits", {})
    limits = Limits(
        max_matrix=int(limits_obj.get("max_matrix", 4096)),
        max_tuples=int(limits_obj.get("max_tuples", 10_000_000)),
    )
    output = obj.get("output", {})
    return ExperimentConfig(
        kind=obj.get("kind", ""),
        params=obj.get("params", {}),
        out_path=output.get("path"),
        out_format=output.get("format", "json"),
        limits=limits,
    )


def _execute(config: ExperimentConfig, dump_operator: str | None = None) -> None:
    report = run_experiment(config)
    if dump_operator and config.kind == "Winding":
        a = symbol_from_obj(config.params["a"])
        n_trunc = parse_int_expr(config.params.get("N", 64))
        from .operators import commutator_matrix

        obj = operator_to_json_obj(commutator_matrix(a, n_trunc))
        Path(dump_operator).write_text(json.dumps(obj))
    _write_output(emit_report(report, config.out_format), config.out_path)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", default="json", choices=("json", "csv"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circletrace",
        description="log-averaged trace asymptotics for truncated circle operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weierstrass-trace", help="lacunary pair trace partial sums")
    p.add_argument("--gamma", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--coeffs", default="constant:1", help="coefficient rule for c")
    p.add_argument("--d-coeffs", default=None, help="coefficient rule for d (default c)")
    p.add_argument("--N", default="2**40")
    _add_common(p)

    p = sub.add_parser("measurability", help="limit classification verdict table")
    p.add_argument("--config", default=None, help="JSON file with an entries list")
    p.add_argument("--rule", default=None, help="inline coefficient rule")
    p.add_argument("--gamma", type=int, default=2)
    p.add_argument("--N", default="4**10")
    p.add_argument("--window-count", type=int, default=5)
    p.add_argument("--rel-gap", type=float, default=0.02)
    p.add_argument("--abs-floor", type=float, default=1e-9)
    _add_common(p)

    p = sub.add_parser("singular-sweep", help="Hankel singular values of a lacunary symbol")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--gamma", type=int, default=2)
    p.add_argument("--coeffs", default="constant:1")
    p.add_argument("--N", default="1024")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--k-lo", type=int, default=16)
    p.add_argument("--k-hi", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("kernel-check", help="integral kernel quadrature vs double sum")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--N", default="64")
    p.add_argument("--r", type=float, default=1.0 - 1e-6)
    p.add_argument("--grid", default=None)
    _add_common(p)

    p = sub.add_parser("winding", help="winding number trace")
    p.add_argument("--a", required=True)
    p.add_argument("--N", default="64")
    p.add_argument("--dump-operator", default=None, help="write the commutator matrix JSON here")
    _add_common(p)

    p = sub.add_parser("fourier-trace", help="Fourier-side trace partial sums")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--N", default="256")
    p.add_argument("--symmetric", action="store_true")
    _add_common(p)

    p = sub.add_parser("hn", help="sphere kernel consistency sweep")
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--N", default="64")
    p.add_argument("--t-points", type=int, default=64)
    _add_common(p)

    p = sub.add_parser("nctorus", help="twisted torus truncated trace sums")
    p.add_argument("--config", required=True, help="JSON spec {n, theta, T, symbols, N}")
    _add_common(p)

    p = sub.add_parser("run", help="run experiment configs from a JSON document")
    p.add_argument("--config", required=True)

    return parser


def _args_to_config(args: argparse.Namespace) -> tuple[ExperimentConfig, str | None]:
    dump_operator = None
    if args.command == "weierstrass-trace":
        params = {
            "gamma": args.gamma,
            "alpha": args.alpha,
            "c": args.coeffs,
            "d": args.d_coeffs or args.coeffs,
            "N": args.N,
        }
        config = ExperimentConfig("WeierstrassTrace", params, args.out, args.format)
    elif args.command == "measurability":
        params: dict = {
            "N": args.N,
            "policy": {
                "window_count": args.window_count,
                "rel_gap": args.rel_gap,
                "abs_floor": args.abs_floor,
            },
        }
        if args.config:
            doc = json.loads(Path(args.config).read_text())
            params["entries"] = doc["entries"] if isinstance(doc, dict) else doc
        elif args.rule:
            params["c"] = args.rule
            params["gamma"] = args.gamma
            params["label"] = args.rule
        else:
            raise ParameterError("measurability needs --config or --rule")
        config = ExperimentConfig("Measurability", params, args.out, args.format)
    elif args.command == "singular-sweep":
        params = {
            "alpha": args.alpha,
            "gamma": args.gamma,
            "c": args.coeffs,
            "N": args.N,
        }
        if args.p is not None:
            params["p"] = args.p
        params["k_lo"] = args.k_lo
        if args.k_hi is not None:
            params["k_hi"] = args.k_hi
        config = ExperimentConfig("SingularValueSweep", params, args.out, args.format)
    elif args.command == "kernel-check":
        params = {"a": _symbol_arg_obj(args.a), "b": _symbol_arg_obj(args.b), "N": args.N, "r": args.r}
        if args.grid is not None:
            params["grid"] = args.grid
        config = ExperimentConfig("KernelCheck", params, args.out, args.format)
    elif args.command == "winding":
        params = {"a": _symbol_arg_obj(args.a), "N": args.N}
        dump_operator = args.dump_operator
        config = ExperimentConfig("Winding", params, args.out, args.format)
    elif args.command == "fourier-trace":
        params = {
            "a": _symbol_arg_obj(args.a),
            "b": _symbol_arg_obj(args.b),
            "N": args.N,
            "symmetric": args.symmetric,
        }
        config = ExperimentConfig("FourierTrace", params, args.out, args.format)
    elif args.command == "hn":
        params = {"m_max": args.m_max, "N": args.N, "t_points": args.t_points}
        config = ExperimentConfig("HnCheck", params, args.out, args.format)
    elif args.command == "nctorus":
        doc = json.loads(Path(args.config).read_text())
        config = ExperimentConfig("NcTorus", doc, args.out, args.format)
    else:  # pragma: no cover - argparse enforces the choices
        raise ParameterError(f"unknown command {args.command!r}")
    return config, dump_operator


def _symbol_arg_obj(text: str):
    """Keep CLI symbol args as JSON objects so reports echo them verbatim."""
    symbol = symbol_from_arg(text)
    from .fourier import symbol_to_json_obj

    return symbol_to_json_obj(symbol)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            doc = json.loads(Path(args.config).read_text())
            entries = doc["experiments"] if isinstance(doc, dict) and "experiments" in doc else [doc]
            for entry in entries:
                _execute(_config_from_json_obj(entry))
        else:
            config, dump_operator = _args_to_config(args)
            _execute(config, dump_operator)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
