"""Command-line experiment runner.

Every subcommand builds a :class:`RunRecord` (resolved configuration,
result rows, metadata) and writes it as CSV or JSON.  Settings come from an
optional ``key=value`` file given with ``--config``; flags on the command
line override it.  Exit codes: 0 success, 1 usage or configuration error,
2 numerical failure or I/O error, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import sys
import time
from dataclasses import dataclass, field

from . import __version__, verify
from ._kernels import resolve_threads
from .bounds import ShiftConfig, fit_exponent, main_rhs, prop24_rhs
from .dirichlet_sums import zsum_direct, zsum_smoothed
from .errors import CapacityError, NumericalFailure, PreconditionError, ZetaLabError
from .moments import (
    DEFAULT_EPS,
    WINDOW_INNER_STEP,
    MomentSpec,
    QuadParams,
    integrate_moment,
    max_step_for_length,
    sigma_moment,
    window_moment,
    zeta_step,
)
from .perron import PerronConfig, contour_identity_gap, perron_residual, residue_term
from .smoothing import build_cutoff, cutoff_for_height, decay_envelope_check, derivative_sup
from .zeta_eval import eval_zeta, hardy_z

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_INVARIANT = 0, 1, 2, 3

T_CAP = 1e5
Y_CAP = 1e4
EVAL_CAP = 1e7

COMMANDS = ("zeta", "zsum", "moment", "shifted", "window", "perron", "smooth", "scaling", "verify")
SCALING_COLUMNS = ("T", "Y", "m", "S_m", "S_m_err", "rhs", "ratio", "dt")
MELLIN_TAUS = (10.0, 30.0, 100.0, 300.0)


class UsageError(ZetaLabError):
    pass


# ------------------------------------------------------------------ config

def _float(v):
    return float(v)


def _int(v):
    return int(v)


def _bool(v):
    if isinstance(v, bool):
        return v
    text = str(v).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def _float_list(v):
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    return [float(x) for x in str(v).replace(";", ",").split(",") if x.strip()]


def _choice(*options):
    def parse(v):
        if v not in options:
            raise ValueError(f"expected one of {options}, got {v!r}")
        return v
    return parse


# key -> (parser, default); None means "no default" (required where used)
KEYS = {
    "T": (_float, None),
    "Y": (_float, None),
    "m": (_float, None),
    "E": (_float, None),
    "U": (_float, None),
    "C_exp": (_float, None),
    "dt": (_float, None),
    "tol": (_float, 1e-10),
    "precision": (_choice("double", "extended"), "double"),
    "deterministic": (_bool, False),
    "format": (_choice("csv", "json"), "csv"),
    "out": (str, None),
    "threads": (_int, None),
    "unsafe_scale": (_bool, False),
    "eps": (_float, DEFAULT_EPS),
    "sigma": (_float, 0.5),
    "t": (_float, 0.0),
    "variant": (_choice("sharp", "smoothed", "rough"), "sharp"),
    "a": (_float_list, None),
    "b": (_float_list, None),
    "sign": (_choice(1, -1), 1),
    "T_list": (_float_list, None),
    "Y_rule": (str, None),
    "suite": (_choice("fast", "full"), "fast"),
}

COMMAND_KEYS = {
    "zeta": ("sigma", "t"),
    "zsum": ("Y", "t", "U"),
    "moment": ("m", "T", "Y", "variant", "U", "C_exp", "eps"),
    "shifted": ("T", "a", "b", "sigma", "eps"),
    "window": ("m", "T", "E", "sign", "eps"),
    "perron": ("Y", "t"),
    "smooth": ("U", "T", "C_exp"),
    "scaling": ("m", "T_list", "Y_rule", "eps"),
    "verify": ("suite",),
}
COMMON_KEYS = ("dt", "tol", "precision", "deterministic", "format", "out", "threads", "unsafe_scale")


def read_config_file(path: str) -> dict:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def resolve_config(command: str, file_values: dict, flag_values: dict) -> dict:
    """Merge file and flags (flags win), reject unknown keys, apply defaults."""
    allowed = set(COMMAND_KEYS[command]) | set(COMMON_KEYS)
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    unknown = sorted(set(merged) - allowed)
    if unknown:
        raise UsageError(f"unknown configuration keys for {command!r}: {', '.join(unknown)}")
    cfg = {}
    for key in sorted(allowed):
        parse, default = KEYS[key]
        if key in merged:
            raw = merged[key]
            if key == "sign":
                raw = int(raw)
            try:
                cfg[key] = parse(raw)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for {key}: {exc}") from exc
        else:
            cfg[key] = default
    cfg["threads"] = resolve_threads(cfg["threads"])
    return cfg


def _need(cfg: dict, *keys):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise UsageError(f"missing required setting(s): {', '.join(missing)}")


# ---------------------------------------------------------------- Y rules

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"sqrt": math.sqrt, "log": math.log, "exp": math.exp, "floor": math.floor, "ceil": math.ceil}
_CONSTS = {"pi": math.pi, "e": math.e}


def eval_y_rule(rule: str, T: float) -> float:
    """Evaluate an arithmetic rule in T such as ``sqrt(T)`` or ``T**0.4 + 0.5``."""
    try:
        tree = ast.parse(rule, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse Y rule {rule!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "T":
                return float(T)
            if node.id in _CONSTS:
                return _CONSTS[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return float(_FUNCS[node.func.id](walk(node.args[0])))
        raise UsageError(f"unsupported element in Y rule {rule!r}: {ast.dump(node)}")

    try:
        value = walk(tree)
    except (ArithmeticError, ValueError) as exc:
        raise UsageError(f"Y rule {rule!r} failed at T={T:g}: {exc}") from exc
    if not math.isfinite(value):
        raise UsageError(f"Y rule {rule!r} is not finite at T={T:g}")
    return value


# ----------------------------------------------------------------- records

@dataclass
class RunRecord:
    command: str
    config: dict
    columns: tuple
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)


def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_value(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, float)):
        x = float(x) if not isinstance(x, int) else x
        if isinstance(x, float) and not math.isfinite(x):
            return "null"
        return _num(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in x) + "]"
    return json.dumps(str(x))


def _plain(x):
    """numpy scalars to Python scalars."""
    if hasattr(x, "item") and not isinstance(x, (list, tuple, dict)):
        return x.item()
    return x


def _echo(record: RunRecord) -> dict:
    cfg = dict(record.config)
    if cfg.get("deterministic"):
        # thread count cannot change any value; leaving it out keeps output byte-identical
        cfg.pop("threads", None)
    return {"command": record.command, **cfg}


def render(record: RunRecord, fmt: str) -> str:
    if fmt == "json":
        rows = [{c: _plain(r.get(c)) for c in record.columns} for r in record.rows]
        obj = {
            "config": _echo(record),
            "results": rows,
            "summary": {k: _plain(v) for k, v in record.summary.items()},
            "metadata": record.metadata,
        }
        lines = ["{"]
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            lines.append(f"  {json.dumps(k)}: {_json_value(v)}" + ("," if i < len(items) - 1 else ""))
        lines.append("}")
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    for k, v in _echo(record).items():
        buf.write(f"# {k}={_cfg_text(v)}\n")
    for k, v in record.metadata.items():
        buf.write(f"# {k}={_cfg_text(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record.columns)
    for r in record.rows:
        writer.writerow([_num(_plain(r.get(c, ""))) for c in record.columns])
    for k, v in record.summary.items():
        buf.write(f"# {k}={_cfg_text(_plain(v))}\n")
    return buf.getvalue()


def _cfg_text(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ",".join(_num(x) for x in v)
    return _num(v)


def emit(record: RunRecord, fmt: str = "csv", path: str | None = None) -> str:
    text = render(record, fmt)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _metadata(cfg: dict, started: float) -> dict:
    meta = {"version": __version__}
    if not cfg["deterministic"]:
        meta["wall_time_s"] = round(time.perf_counter() - started, 6)
    return meta


# -------------------------------------------------------------- desk caps

def _check_caps(command: str, cfg: dict) -> None:
    if cfg["unsafe_scale"]:
        return
    heights = [cfg.get("T")] + list(cfg.get("T_list") or [])
    if command in ("zeta", "zsum", "perron"):
        heights.append(abs(cfg.get("t") or 0.0))
    for T in heights:
        if T is not None and T > T_CAP:
            raise UsageError(f"T={T:g} exceeds the desk cap {T_CAP:g}; pass --unsafe-scale to override")
    if cfg.get("Y") is not None and cfg["Y"] > Y_CAP:
        raise UsageError(f"Y={cfg['Y']:g} exceeds the desk cap {Y_CAP:g}; pass --unsafe-scale to override")
    evals = _estimate_evaluations(command, cfg)
    if evals > EVAL_CAP:
        raise UsageError(f"about {evals:.3g} grid evaluations exceed the cap {EVAL_CAP:g}; "
                         "pass --unsafe-scale to override")


def _points(length: float, step: float) -> float:
    return 2.0 * math.ceil(length / step) + 1


def _estimate_evaluations(command: str, cfg: dict) -> float:
    dt = cfg.get("dt")
    if command == "moment" and cfg["T"] is not None and cfg["Y"] is not None:
        return _points(cfg["T"], dt or max_step_for_length(cfg["Y"]))
    if command == "shifted" and cfg["T"] is not None and cfg["b"]:
        t_max = 2 * cfg["T"] + max(abs(v) for v in cfg["b"])
        return len(cfg["b"]) * _points(cfg["T"], dt or zeta_step(t_max))
    if command == "window" and cfg["T"] is not None and cfg["E"] is not None:
        step = dt or min(WINDOW_INNER_STEP, zeta_step(2 * cfg["T"] + 2 * cfg["E"]))
        return _points(cfg["T"] + cfg["E"], step)
    if command == "perron" and cfg["Y"] is not None and cfg["Y"] >= 10:
        return 2 * _points(2 * cfg["Y"], dt or PerronConfig(cfg["Y"]).max_step)
    if command == "scaling" and cfg["T_list"] and cfg["Y_rule"]:
        total = 0.0
        for T in cfg["T_list"]:
            total += _points(T, dt or max_step_for_length(max(1.0, eval_y_rule(cfg["Y_rule"], T))))
        return total
    return 0.0


def _resolution(cfg: dict) -> QuadParams:
    return QuadParams(dt=cfg["dt"], zeta_tol=cfg["tol"], threads=cfg["threads"])


def _coarse_step(T: float, points: int) -> float:
    return 2.0 * T / (points - 1)


# ------------------------------------------------------------ subcommands

def cmd_zeta(cfg):
    _need(cfg, "t")
    s = complex(cfg["sigma"], cfg["t"])
    r = eval_zeta(s, tol=cfg["tol"], precision=cfg["precision"])
    row = {"sigma": cfg["sigma"], "t": cfg["t"], "re": r.value.real, "im": r.value.imag,
           "abs": abs(r.value), "err": r.err}
    cols = ["sigma", "t", "re", "im", "abs", "err"]
    if cfg["sigma"] == 0.5:
        z = hardy_z(cfg["t"], tol=cfg["tol"], precision=cfg["precision"])
        row.update(Z=z.value.real, Z_err=z.err)
        cols += ["Z", "Z_err"]
    return tuple(cols), [row], {}


def cmd_zsum(cfg):
    _need(cfg, "Y")
    v = zsum_direct(cfg["Y"], cfg["t"])
    row = {"Y": cfg["Y"], "t": cfg["t"], "re": v.real, "im": v.imag, "abs": abs(v)}
    cols = ["Y", "t", "re", "im", "abs"]
    if cfg["U"] is not None:
        w = zsum_smoothed(cfg["Y"], cfg["t"], build_cutoff(cfg["U"]))
        row.update(smoothed_re=w.real, smoothed_im=w.imag)
        cols += ["smoothed_re", "smoothed_im"]
    return tuple(cols), [row], {}


def _cutoff_from(cfg):
    if cfg["U"] is not None:
        return build_cutoff(cfg["U"])
    if cfg["C_exp"] is not None and cfg.get("T") is not None:
        return cutoff_for_height(cfg["T"], cfg["C_exp"])
    return None


def cmd_moment(cfg):
    _need(cfg, "m", "T", "Y")
    spec = MomentSpec(cfg["m"], cfg["T"], cfg["Y"], cfg["variant"], _cutoff_from(cfg), cfg["eps"])
    r = integrate_moment(spec, _resolution(cfg))
    row = {"T": cfg["T"], "Y": cfg["Y"], "m": cfg["m"], "S_m": r.value, "S_m_err": r.err,
           "dt": _coarse_step(cfg["T"], r.panels)}
    cols = ["T", "Y", "m", "S_m", "S_m_err", "dt"]
    if cfg["Y"] <= (1 - cfg["eps"]) * cfg["T"]:
        rhs = main_rhs(cfg["m"], cfg["T"], cfg["Y"])
        row.update(rhs=rhs, ratio=r.value / rhs)
        cols = ["T", "Y", "m", "S_m", "S_m_err", "rhs", "ratio", "dt"]
    return tuple(cols), [row], {}


def cmd_shifted(cfg):
    _need(cfg, "T", "a", "b")
    shift = ShiftConfig(tuple(cfg["a"]), tuple(cfg["b"]))
    if cfg["sigma"] == 0.5:
        shift.check_height(cfg["T"], cfg["eps"])
    r = sigma_moment(shift.a, shift.b, cfg["sigma"], cfg["T"], _resolution(cfg))
    row = {"T": cfg["T"], "sigma": cfg["sigma"], "value": r.value, "err": r.err,
           "dt": _coarse_step(cfg["T"], r.panels)}
    return ("T", "sigma", "value", "err", "dt"), [row], {}


def cmd_window(cfg):
    _need(cfg, "m", "T", "E")
    r = window_moment(cfg["m"], cfg["T"], cfg["E"], cfg["sign"], _resolution(cfg), eps=cfg["eps"])
    rhs = prop24_rhs(cfg["m"], cfg["T"], cfg["E"])
    row = {"T": cfg["T"], "E": cfg["E"], "m": cfg["m"], "sign": cfg["sign"], "value": r.value,
           "err": r.err, "rhs": rhs, "ratio": r.value / rhs}
    return ("T", "E", "m", "sign", "value", "err", "rhs", "ratio"), [row], {}


def cmd_perron(cfg):
    _need(cfg, "Y")
    pc = PerronConfig(cfg["Y"], cfg["t"])
    res = _resolution(cfg)
    rep = perron_residual(pc, res)
    gap, err, pieces = contour_identity_gap(pc, res)
    res_term = residue_term(pc)
    row = {"Y": pc.Y, "t": pc.t, "residual": rep.lhs, "r1": rep.extra["r1"], "r2": rep.extra["r2"],
           "ratio": rep.ratio, "residue_re": res_term.real, "residue_im": res_term.imag,
           "contour_gap": gap, "contour_err": err}
    cols = ("Y", "t", "residual", "r1", "r2", "ratio", "residue_re", "residue_im", "contour_gap", "contour_err")
    return cols, [row], {}


def cmd_smooth(cfg):
    cut = _cutoff_from(cfg)
    if cut is None:
        raise UsageError("smooth needs --U, or --C-exp together with --T")
    samples = [complex(0.5, tau) for tau in MELLIN_TAUS]
    rows = []
    for i in (1, 2, 3):
        rep = decay_envelope_check(cut, i, samples)
        rows.append({"U": cut.U, "order": i, "K": rep.ratio, "sup_derivative": derivative_sup(cut, i),
                     "sup_derivative_over_U": derivative_sup(cut, i) / cut.U ** i})
    return ("U", "order", "K", "sup_derivative", "sup_derivative_over_U"), rows, {}


def run_scaling(m: float, T_list, Y_rule: str, resolution: QuadParams | None = None,
                eps: float = DEFAULT_EPS):
    """S_m(T, Y(T)) against T Y^m (log T)^((m-1)^2) for each T, then the log-log fit.

    Returns (rows, summary, failure) where failure is None or the message of
    the moment computation that stopped the sweep.
    """
    T_list = list(T_list)
    if not T_list:
        raise UsageError("T_list is empty")
    pairs = []
    for T in T_list:
        Y = eval_y_rule(Y_rule, T)
        if not 1 <= Y <= (1 - eps) * T:
            raise UsageError(f"Y rule gives Y={Y:g} at T={T:g}; need 1 <= Y <= (1-eps)T")
        pairs.append((T, Y))
    rows, failure = [], None
    for T, Y in pairs:
        try:
            r = integrate_moment(MomentSpec(m, T, Y, eps=eps), resolution)
        except NumericalFailure as exc:
            failure = str(exc)
            break
        rhs = main_rhs(m, T, Y)
        rows.append({"T": T, "Y": Y, "m": m, "S_m": r.value, "S_m_err": r.err, "rhs": rhs,
                     "ratio": r.value / rhs, "dt": _coarse_step(T, r.panels)})
    summary = {"theorem_scope": m > 2, "complete": failure is None}
    if failure is not None:
        summary["failure"] = failure
    if len(rows) >= 3:
        fit = fit_exponent((math.log(math.log(r["T"])), math.log(r["S_m"] / (r["T"] * r["Y"] ** m)))
                           for r in rows)
        summary.update(fit_slope=fit.slope, fit_intercept=fit.intercept, fit_residual=fit.residual,
                       predicted_exponent=(m - 1.0) ** 2)
    return rows, summary, failure


def cmd_scaling(cfg):
    _need(cfg, "m", "T_list", "Y_rule")
    rows, summary, failure = run_scaling(cfg["m"], cfg["T_list"], cfg["Y_rule"], _resolution(cfg), cfg["eps"])
    return SCALING_COLUMNS, rows, summary, failure


def run_verify(suite: str = "fast"):
    """Run an invariant suite; returns (rows, first failing outcome or None)."""
    outcomes = verify.run_suite(suite)
    rows = [o.as_dict() for o in outcomes]
    return rows, verify.first_failure(outcomes)


def cmd_verify(cfg):
    rows, failed = run_verify(cfg["suite"])
    summary = {"suite": cfg["suite"], "passed": sum(r["passed"] for r in rows), "total": len(rows)}
    if failed is not None:
        summary["first_failure"] = failed.name
    return ("name", "module", "passed", "detail"), rows, summary, failed


HANDLERS = {
    "zeta": cmd_zeta, "zsum": cmd_zsum, "moment": cmd_moment, "shifted": cmd_shifted,
    "window": cmd_window, "perron": cmd_perron, "smooth": cmd_smooth,
    "scaling": cmd_scaling, "verify": cmd_verify,
}


# ----------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common")
    g.add_argument("--config", help="key=value file; flags override its entries")
    for flag in ("--T", "--Y", "--m", "--E", "--U", "--dt", "--tol"):
        g.add_argument(flag, type=float, dest=flag[2:], default=None)
    g.add_argument("--C-exp", type=float, dest="C_exp", default=None, help="cutoff U = (log T)^C")
    g.add_argument("--precision", choices=("double", "extended"), default=None)
    g.add_argument("--deterministic", action="store_const", const=True, default=None)
    g.add_argument("--format", choices=("csv", "json"), default=None)
    g.add_argument("--out", default=None, help="output path (default stdout)")
    g.add_argument("--threads", type=int, default=None, help="worker threads (default $ZETALAB_THREADS)")
    g.add_argument("--unsafe-scale", action="store_const", const=True, dest="unsafe_scale", default=None)
    g.add_argument("--eps", type=float, default=None)

    parser = _Parser(prog="zetalab", description="Numerical experiments on moments of zeta sums.")
    parser.add_argument("--version", action="version", version=f"zetalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    specific = {
        "zeta": [("--sigma", float), ("--t", float)],
        "zsum": [("--t", float)],
        "moment": [("--variant", str)],
        "shifted": [("--a", str), ("--b", str), ("--sigma", float)],
        "window": [("--sign", int)],
        "perron": [("--t", float)],
        "smooth": [],
        "scaling": [("--T-list", str), ("--Y-rule", str)],
        "verify": [("--suite", str)],
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        for flag, typ in specific[name]:
            p.add_argument(flag, type=typ, dest=flag[2:].replace("-", "_"), default=None)
    return parser


def main(argv=None) -> int:
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
        command = args.command
        file_values = read_config_file(args.config) if args.config else {}
        # flags that do not apply to this command are only an error when given
        allowed = set(COMMAND_KEYS[command]) | set(COMMON_KEYS)
        stray = sorted(k for k, v in flags.items() if v is not None and k not in allowed)
        if stray:
            raise UsageError(f"{command!r} does not take: {', '.join('--' + k for k in stray)}")
        cfg = resolve_config(command, file_values, {k: v for k, v in flags.items() if k in allowed})
        _check_caps(command, cfg)
        outcome = HANDLERS[command](cfg)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, PreconditionError, CapacityError) as exc:
        print(f"zetalab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, ArithmeticError) as exc:
        print(f"zetalab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    columns, rows, summary = outcome[:3]
    problem = outcome[3] if len(outcome) > 3 else None
    record = RunRecord(command, cfg, tuple(columns), rows, summary, _metadata(cfg, started))
    try:
        emit(record, cfg["format"], cfg["out"])
    except OSError as exc:
        print(f"zetalab: cannot write output: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if command == "verify" and problem is not None:
        print(f"zetalab: invariant violated: {problem.name} ({problem.detail})", file=sys.stderr)
        return EXIT_INVARIANT
    if command == "scaling" and problem is not None:
        print(f"zetalab: numerical failure, partial results written: {problem}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
