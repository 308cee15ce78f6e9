"""``bmcap`` command-line front end.

Subcommands
-----------
finite      optimal per-mode rates for each n (bar-chart data)
asymptotic  n -> inf: value-vs-r curves (``--sweep r``), optimal r vs s
            (``--sweep s``) or the maxima themselves (``--max``)
figure5     optimal r vs s for every rate, and capacity vs s for an eta grid
verify      run the oracle suite

Exit codes: 0 success, 2 configuration error, 3 computation error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import verify as harness
from .channel import ChannelParams, r_bounds
from .errors import BmcapError
from .optimize import SweepSpec, maximize_over_r_y, sweep
from .rates import RATE_KINDS
from .special import QuadratureSpec

log = logging.getLogger("bmcap")

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_VERIFY = 0, 2, 3, 4

FINITE_COLUMNS = ["kind", "n", "s", "N", "eta", "r_opt", "y_opt", "value_bits_per_mode"]
MAX_COLUMNS = FINITE_COLUMNS + ["evaluations", "converged"]
R_SWEEP_COLUMNS = ["kind", "s", "r", "value"]
S_SWEEP_COLUMNS = ["kind", "s", "r_opt", "y_opt", "value"]
FIG5_R_COLUMNS = ["kind", "s", "r_opt"]
FIG5_C_COLUMNS = ["eta", "s", "C"]

DEFAULTS = {
    "kind": "all",
    "n": "1..30",
    "s": "0,0.8,1.6,2.5",
    "N": 8.0,
    "eta": "0.7",
    "sweep": None,
    "max": False,
    "quad_tol": None,
    "format": "csv",
    "output": None,
    "threads": 1,
    "r_points": 41,
    "n_max": harness.DEFAULT_N_MAX,
    "seed": harness.DEFAULT_SEED,
}
FIGURE5_DEFAULTS = {
    "s": "0:3:0.25",
    "eta": "0.1:1:0.1",
    "output": "figure5",
}


class ConfigError(ValueError):
    """Invalid command-line or config-file setting; names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


# ---------------------------------------------------------------- parsing


def parse_int_list(text) -> list:
    """``"1..30"``, ``"1,2,8"``, mixtures like ``"1..4,16"``; ``"inf"`` allowed."""
    if isinstance(text, (int, float)):
        return [text]
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if part.lower() in ("inf", "asymptotic"):
            out.append(math.inf)
        elif ".." in part:
            a, b = part.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(a, b + 1))
        else:
            out.append(int(part))
    if not out:
        raise ValueError("no values given")
    return out


def parse_float_list(text) -> list[float]:
    """Comma list of floats; ``start:stop:step`` expands to an inclusive grid."""
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, list):
        return [float(v) for v in text]
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            a, b, h = (float(v) for v in part.split(":"))
            if h <= 0:
                raise ValueError(f"step must be positive in {part!r}")
            count = int(math.floor((b - a) / h + 1e-9)) + 1
            out.extend(round(a + i * h, 12) for i in range(count))
        else:
            out.append(float(part))
    if not out:
        raise ValueError("no values given")
    return out


def _strictly_increasing(field, values):
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError(field, "values must be strictly increasing")
    return values


def _kinds(value) -> tuple:
    if value == "all":
        return RATE_KINDS
    kinds = tuple(v.strip() for v in str(value).split(","))
    for k in kinds:
        if k not in RATE_KINDS:
            raise ConfigError("kind", f"unknown rate kind {k!r}; choose from {RATE_KINDS} or 'all'")
    return kinds


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bmcap", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file of option defaults (flags take precedence)")
        p.add_argument("--N", type=float, dest="N", default=None, help="mean photons per mode")
        p.add_argument("--eta", default=None, help="transmittivity (figure5: list)")
        p.add_argument("--s", default=None, help="memory strengths, comma list or start:stop:step")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("-o", "--output", default=None, help="output file ('-' for stdout)")
        p.add_argument("--threads", type=int, default=None, help="parallel worker processes")
        p.add_argument("--quad-tol", type=float, default=None, dest="quad_tol",
                       help="relative quadrature tolerance (absolute is a tenth of it)")

    p = sub.add_parser("finite", help="optimal per-mode rates versus n")
    common(p)
    p.add_argument("--kind", default=None)
    p.add_argument("--n", default=None, help="e.g. 1..30 or 1,2,4")
    p.add_argument("--sweep", choices=("n",), default=None)

    p = sub.add_parser("asymptotic", help="n -> inf curves and maxima")
    common(p)
    p.add_argument("--kind", default=None)
    p.add_argument("--sweep", choices=("r", "s", "n"), default=None)
    p.add_argument("--max", action="store_true", default=None)
    p.add_argument("--r-points", type=int, default=None, dest="r_points",
                   help="r grid resolution for --sweep r")

    p = sub.add_parser("figure5", help="optimal r vs s, capacity vs s for an eta grid")
    common(p)
    p.add_argument("--kind", default=None)

    p = sub.add_parser("verify", help="run the oracle suite")
    common(p)
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--seed", type=int, default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, then the ``--config`` file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if args.command == "figure5":
        cfg.update(FIGURE5_DEFAULTS)
    if args.command == "verify":
        cfg.update({"s": "0.8"})
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise ConfigError(key, "unknown config key")
            cfg[key] = value
    for key, value in vars(args).items():
        if key in DEFAULTS and value is not None:
            cfg[key] = value
    return validate_config(args.command, cfg)


def validate_config(command: str, cfg: dict) -> dict:
    out = dict(cfg, command=command)
    try:
        out["N"] = float(cfg["N"])
    except (TypeError, ValueError):
        raise ConfigError("N", f"not a number: {cfg['N']!r}") from None
    if not (out["N"] > 0 and math.isfinite(out["N"])):
        raise ConfigError("N", f"must be positive and finite, got {out['N']}")
    try:
        etas = parse_float_list(cfg["eta"])
    except ValueError as exc:
        raise ConfigError("eta", str(exc)) from None
    for e in etas:
        if not 0.0 <= e <= 1.0:
            raise ConfigError("eta", f"transmittivity must lie in [0, 1], got {e}")
    if command == "figure5":
        out["eta"] = _strictly_increasing("eta", etas)
    else:
        if len(etas) != 1:
            raise ConfigError("eta", f"'{command}' takes a single transmittivity")
        out["eta"] = etas[0]
    try:
        out["s"] = _strictly_increasing("s", parse_float_list(cfg["s"]))
    except ValueError as exc:
        raise ConfigError("s", str(exc)) from None
    if any(not math.isfinite(v) for v in out["s"]):
        raise ConfigError("s", "memory strengths must be finite")
    out["kinds"] = _kinds(cfg["kind"])
    if command == "finite":
        try:
            ns = parse_int_list(cfg["n"])
        except ValueError as exc:
            raise ConfigError("n", str(exc)) from None
        if any(math.isinf(n) or n < 1 for n in ns):
            raise ConfigError("n", "finite needs positive integer mode counts")
        out["n"] = _strictly_increasing("n", ns)
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError("format", f"must be csv or json, got {cfg['format']!r}")
    if int(cfg["threads"]) < 1:
        raise ConfigError("threads", "must be at least 1")
    out["threads"] = int(cfg["threads"])
    if int(cfg["r_points"]) < 2:
        raise ConfigError("r_points", "need at least 2 grid points")
    out["r_points"] = int(cfg["r_points"])
    if int(cfg["n_max"]) < 2:
        raise ConfigError("n_max", "must be at least 2")
    out["n_max"] = int(cfg["n_max"])
    if cfg["quad_tol"] is None:
        out["quad"] = QuadratureSpec()
    else:
        tol = float(cfg["quad_tol"])
        if not tol > 0:
            raise ConfigError("quad_tol", "must be positive")
        out["quad"] = QuadratureSpec(abs_tol=tol / 10.0, rel_tol=tol)
    if command == "asymptotic":
        mode = cfg["sweep"]
        if mode == "n":
            raise ConfigError("sweep", "asymptotic rates do not depend on n; use 'bmcap finite'")
        if bool(cfg["max"]) == (mode is not None):
            raise ConfigError("sweep", "give exactly one of --max or --sweep {r,s}")
    return out


# ---------------------------------------------------------------- output


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if v == 0.0:
            return "0"
        return format(v, ".12g")
    return str(v)


def _json_value(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(format(v, ".12g"))
    return v


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    """CSV (header always present) or JSON text for ``rows`` restricted to ``columns``."""
    if fmt == "json":
        data = [{c: _json_value(row[c]) for c in columns} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buf.getvalue()


def emit(text: str, output, default_name=None):
    path = output or default_name
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    log.info("wrote %s", path)


# ---------------------------------------------------------------- commands


def cmd_finite(cfg: dict) -> int:
    spec = SweepSpec(variable="n", grid=tuple(cfg["n"]), kinds=cfg["kinds"], N=cfg["N"],
                     eta=cfg["eta"], s=tuple(cfg["s"]), quad=cfg["quad"], workers=cfg["threads"])
    rows = sweep(spec)
    emit(render(rows, FINITE_COLUMNS, cfg["format"]), cfg["output"])
    return EXIT_OK


def _r_grid(N: float, points: int) -> tuple:
    _, r_max = r_bounds(math.inf, N)
    edge = r_max - 1e-9
    return tuple(float(v) for v in np.linspace(-edge, edge, points))


def cmd_asymptotic(cfg: dict) -> int:
    common = dict(kinds=cfg["kinds"], N=cfg["N"], eta=cfg["eta"], quad=cfg["quad"], workers=cfg["threads"])
    if cfg["max"]:
        rows = []
        for kind in cfg["kinds"]:
            for s in cfg["s"]:
                log.info("maximizing %s at s=%s", kind, s)
                res = maximize_over_r_y(kind, math.inf, ChannelParams(cfg["eta"], cfg["N"], s), cfg["quad"])
                rows.append(dict(kind=kind, n=math.inf, s=s, N=cfg["N"], eta=cfg["eta"],
                                 r_opt=res.r_star, y_opt=res.y_star, value_bits_per_mode=res.value,
                                 evaluations=res.evaluations, converged=res.converged))
        emit(render(rows, MAX_COLUMNS, cfg["format"]), cfg["output"])
    elif cfg["sweep"] == "r":
        spec = SweepSpec(variable="r", grid=_r_grid(cfg["N"], cfg["r_points"]), s=tuple(cfg["s"]), **common)
        emit(render(sweep(spec), R_SWEEP_COLUMNS, cfg["format"]), cfg["output"])
    else:
        spec = SweepSpec(variable="s", grid=tuple(cfg["s"]), **common)
        emit(render(sweep(spec), S_SWEEP_COLUMNS, cfg["format"]), cfg["output"])
    return EXIT_OK


def figure5_paths(output: str, fmt: str) -> tuple[str, str]:
    """Output file names ``<stem>_r_opt.<fmt>`` and ``<stem>_capacity.<fmt>``."""
    stem = output
    for ext in (".csv", ".json"):
        if stem.endswith(ext):
            stem = stem[: -len(ext)]
    return f"{stem}_r_opt.{fmt}", f"{stem}_capacity.{fmt}"


def cmd_figure5(cfg: dict) -> int:
    if cfg["output"] == "-":
        raise ConfigError("output", "figure5 writes two files; give a path stem, not '-'")
    path_r, path_c = figure5_paths(cfg["output"], cfg["format"])
    spec_r = SweepSpec(variable="s", grid=tuple(cfg["s"]), kinds=cfg["kinds"], N=cfg["N"],
                       eta=0.7 if len(cfg["eta"]) != 1 else cfg["eta"][0], quad=cfg["quad"],
                       workers=cfg["threads"])
    rows_r = sweep(spec_r)
    emit(render(rows_r, FIG5_R_COLUMNS, cfg["format"]), path_r)
    spec_c = SweepSpec(variable="eta", grid=tuple(cfg["eta"]), kinds=("holevo",), N=cfg["N"],
                       s=tuple(cfg["s"]), quad=cfg["quad"], workers=cfg["threads"])
    emit(render(sweep(spec_c), FIG5_C_COLUMNS, cfg["format"]), path_c)
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    anchor = ChannelParams(eta=cfg["eta"], N=cfg["N"], s=cfg["s"][0])
    reports = harness.run_all(n_max=cfg["n_max"], seed=int(cfg["seed"]), anchor=anchor)
    if cfg["format"] == "json":
        emit(json.dumps([r.as_dict() for r in reports], indent=2) + "\n", cfg["output"])
    else:
        emit(harness.format_reports(reports) + "\n", cfg["output"])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


COMMANDS = {"finite": cmd_finite, "asymptotic": cmd_asymptotic, "figure5": cmd_figure5, "verify": cmd_verify}


def _setup_logging(verbose: bool):
    # own handler on the package logger, replaced on every call
    for h in [h for h in log.handlers if getattr(h, "_bmcap", False)]:
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler._bmcap = True
    handler.setFormatter(logging.Formatter("bmcap: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"bmcap: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"bmcap: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BmcapError, ArithmeticError) as exc:
        print(f"bmcap: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
