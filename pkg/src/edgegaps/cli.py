"""Command-line entry point: ``edgegaps {electro,asym,check,mc,verify}``.

Options may also come from a JSON config file (``--config`` or the
``EDGEGAPS_CONFIG`` environment variable) using the flag names with
underscores; flags given on the command line win. Negative numbers must be
attached with ``=``, as in ``--t=-3.5,-1.5``.

Exit codes: 0 success, 2 usage or validation error, 3 infeasible parameters,
4 numerical accuracy failure or incomplete Monte Carlo run, 5 failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import asymptotics as asy
from . import electrostatics as es
from .errors import (
    AccuracyError,
    BracketError,
    ConstructionError,
    DomainError,
    InfeasibleCountError,
    UsageError,
)
from .serialization import dumps

CONFIG_ENV = "EDGEGAPS_CONFIG"
EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_ACCURACY, EXIT_VERIFY = 0, 2, 3, 4, 5

# keys never echoed into output metadata: they change how a run executes, not what it computes
_EXECUTION_KEYS = {"workers", "chunk_size", "out", "config"}


def _floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).split(",") if x.strip()]


def _grid(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--t-grid expects start:stop:num, got {text!r}")
    return [float(x) for x in np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))]


def _groups(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        return [str(x) for x in text]
    return [g for g in str(text).split(",") if g]


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    raise UsageError(f"expected true/false, got {v!r}")


def _opt_float(v):
    return None if v is None else float(v)


def _opt_str(v):
    return None if v is None else str(v)


# key -> (converter, default) per command
COMMON = {"format": (str, "text"), "out": (_opt_str, None)}
SCHEMA = {
    "electro": {
        "edge": (str, None), "beta": (float, 2.0), "n": (float, 0.0), "a": (float, 0.0), "t": (float, None),
        "tol_root": (float, 1e-12), "tol_quad": (float, 1e-9), "entropy_check": (_bool, False),
    },
    "asym": {
        "edge": (str, None), "beta": (float, 2.0), "n": (float, 0.0), "a": (float, 0.0), "rho": (float, 1.0),
        "eval_at": (_opt_float, None),
    },
    "check": {
        "kind": (str, None), "edge": (str, None), "beta": (float, 2.0), "n": (float, 0.0), "a": (float, 0.0),
        "tol": (float, 1e-12),
    },
    "mc": {
        "ensemble": (str, "gaussian"), "edge": (str, "soft"), "beta": (float, 2.0), "a": (float, 0.0),
        "N": (int, 200), "t": (_floats, None), "t_grid": (_grid, None), "samples": (int, 10_000),
        "seed": (int, 0), "n_max": (int, 4), "workers": (int, 1), "chunk_size": (int, 2048),
        "budget": (_opt_float, None), "compare": (_bool, False), "timing": (_bool, False),
    },
    "verify": {
        "group": (_groups, None), "full": (_bool, False), "seed": (int, 7), "samples": (int, 100_000),
    },
}
ALL_KEYS = set(COMMON) | {k for s in SCHEMA.values() for k in s}


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="output file (mc: base path for .json and .csv reports)")
    common.add_argument("--config", help=f"JSON config file; defaults to ${CONFIG_ENV}")

    p = argparse.ArgumentParser(prog="edgegaps", description="Conditioned edge gap probabilities of beta-ensembles.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("electro", parents=[common], argument_default=S, help="solve the conditioned log-gas problem")
    # optional positionals carry no choices: argparse would test the SUPPRESS sentinel against them
    e.add_argument("edge", nargs="?", help="hard or soft")
    for flag in ("--beta", "--n", "--a", "--t", "--tol-root", "--tol-quad"):
        e.add_argument(flag, type=float)
    e.add_argument("--entropy-check", action="store_true", help="also evaluate the rejected entropy by quadrature")

    a = sub.add_parser("asym", parents=[common], argument_default=S, help="print expansion coefficients")
    a.add_argument("edge", nargs="?", help="hard, soft or bulk")
    for flag in ("--beta", "--n", "--a", "--rho", "--eval-at"):
        a.add_argument(flag, type=float)

    c = sub.add_parser("check", parents=[common], argument_default=S, help="duality and factorization residuals")
    c.add_argument("kind", nargs="?", help="duality or factorization")
    c.add_argument("--edge", choices=["hard", "soft"])
    for flag in ("--beta", "--n", "--a", "--tol"):
        c.add_argument(flag, type=float)

    m = sub.add_parser("mc", parents=[common], argument_default=S, help="Monte Carlo gap probabilities")
    m.add_argument("--ensemble", choices=["gaussian", "laguerre"])
    m.add_argument("--edge", choices=["hard", "soft"])
    m.add_argument("--beta", type=float)
    m.add_argument("--a", type=float)
    m.add_argument("--N", type=int)
    m.add_argument("--t", help="comma-separated scaled thresholds")
    m.add_argument("--t-grid", help="start:stop:num, evenly spaced")
    for flag in ("--samples", "--seed", "--n-max", "--workers", "--chunk-size"):
        m.add_argument(flag, type=int)
    m.add_argument("--budget", type=float, help="wall-clock budget in seconds")
    m.add_argument("--compare", action="store_true", help="attach the comparison with the asymptotic expansions")
    m.add_argument("--timing", action="store_true", help="record wall time (makes reports run-dependent)")

    v = sub.add_parser("verify", parents=[common], argument_default=S, help="run the invariant suites")
    v.add_argument("--group", help="comma-separated group names")
    v.add_argument("--full", action="store_true", help="include the Monte Carlo group")
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int)
    return p


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = set(cfg) - ALL_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def resolve_config(ns: argparse.Namespace, environ=os.environ) -> dict:
    """Defaults, then the config file, then explicit flags; converted and validated."""
    flags = {k: v for k, v in vars(ns).items() if k != "command"}
    path = flags.pop("config", None) or environ.get(CONFIG_ENV)
    cfg = _load_config(path)
    schema = dict(COMMON, **SCHEMA[ns.command])
    eff = {}
    for key, (conv, default) in schema.items():
        raw = flags[key] if key in flags else cfg.get(key, default)
        try:
            eff[key] = raw if raw is None else conv(raw)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"invalid value for {key}: {raw!r} ({exc})") from None
    if eff["format"] not in ("json", "csv", "text"):
        raise UsageError(f"format must be json, csv or text, got {eff['format']!r}")
    if path:
        eff["config"] = str(path)
    return eff


def _echo(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k not in _EXECUTION_KEYS}


def _require(cfg, *keys):
    for k in keys:
        if cfg.get(k) is None:
            raise UsageError(f"missing required option: {k}")


# ---- formatting ---------------------------------------------------------------------------

def _flatten(d: dict, prefix="") -> list[tuple[str, object]]:
    out = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out += _flatten(v, key + ".")
        else:
            out.append((key, v))
    return out


def _human(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.10g}"
    return str(v)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(["%.17g" % x if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[_human(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def _record_output(fmt: str, command: str, cfg: dict, result: dict) -> str:
    if fmt == "json":
        return dumps({"command": command, "config": _echo(cfg), "result": result})
    pairs = _flatten(result)
    if fmt == "csv":
        return _csv([["key", "value"]] + [[k, v] for k, v in pairs])
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {_human(v)}\n" for k, v in pairs)


def _table_output(fmt: str, command: str, cfg: dict, header: list[str], rows: list[list], extra: dict) -> str:
    if fmt == "json":
        return dumps({"command": command, "config": _echo(cfg),
                      "result": dict(extra, rows=[dict(zip(header, r)) for r in rows])})
    if fmt == "csv":
        return _csv([header] + rows)
    tail = "".join(f"{k}: {_human(v)}\n" for k, v in extra.items() if not isinstance(v, (dict, list)))
    return _table(header, rows) + tail


def _emit(text: str, cfg: dict) -> None:
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- commands -----------------------------------------------------------------------------

def cmd_electro(cfg: dict) -> int:
    _require(cfg, "edge", "t")
    if cfg["edge"] == "hard":
        prob = es.HardEdgeProblem(cfg["t"], cfg["n"], cfg["a"], cfg["beta"])
        sol = es.hard_solve(prob, cfg["tol_root"])
        result = sol.to_dict()
        if cfg["entropy_check"]:
            result["legacy_entropy_check"] = es.hard_legacy_entropy(sol.b, prob.t, prob.beta, cfg["tol_quad"])._asdict()
    elif cfg["edge"] == "soft":
        if cfg["a"] != 0:
            raise UsageError("--a applies to the hard edge only")
        prob = es.SoftEdgeProblem(cfg["t"], cfg["n"], cfg["beta"])
        sol = es.soft_solve(prob, cfg["tol_root"])
        result = sol.to_dict()
        if cfg["entropy_check"]:
            result["legacy_entropy_check"] = es.soft_legacy_entropy(sol.d, prob.t, prob.beta, cfg["tol_quad"])._asdict()
    else:
        raise UsageError(f"edge must be hard or soft, got {cfg['edge']!r}")
    _emit(_record_output(cfg["format"], "electro", cfg, result), cfg)
    return EXIT_OK


def cmd_asym(cfg: dict) -> int:
    _require(cfg, "edge")
    edge = cfg["edge"]
    if edge == "hard":
        e = asy.hard_expansion(cfg["beta"], cfg["n"], cfg["a"])
    elif edge == "soft":
        e = asy.soft_expansion(cfg["beta"], cfg["n"])
    elif edge == "bulk":
        e = asy.bulk_expansion(cfg["beta"], cfg["n"], cfg["rho"])
    else:
        raise UsageError(f"edge must be hard, soft or bulk, got {edge!r}")
    header = ["power", "log", "label", "coefficient"]
    rows = [[r["power"], r["log"], r["label"], r["coefficient"]] for r in e.to_rows()]
    extra = {"edge": edge, "variable": "|t|" if edge == "soft" else "t"}
    if cfg["eval_at"] is not None:
        extra["eval_at"] = cfg["eval_at"]
        extra["value"] = asy.evaluate(e, cfg["eval_at"])
    _emit(_table_output(cfg["format"], "asym", cfg, header, rows, extra), cfg)
    return EXIT_OK


def cmd_check(cfg: dict) -> int:
    _require(cfg, "kind", "edge")
    if cfg["edge"] not in ("hard", "soft"):
        raise UsageError(f"edge must be hard or soft, got {cfg['edge']!r}")
    if cfg["kind"] == "duality":
        if cfg["edge"] == "hard":
            table = asy.hard_duality_residual(cfg["beta"], cfg["n"], cfg["a"])
        else:
            table = asy.soft_duality_residual(cfg["beta"], cfg["n"])
    elif cfg["kind"] == "factorization":
        table = asy.factorization_residual(cfg["edge"], cfg["n"], cfg["a"])
    else:
        raise UsageError(f"check kind must be duality or factorization, got {cfg['kind']!r}")
    header = ["term", "lhs", "rhs", "residual", "relative"]
    rows = [[r.term.label(), r.lhs, r.rhs, r.residual, r.relative] for r in table.rows]
    ok = table.ok(cfg["tol"])
    extra = {"kind": table.kind, "edge": table.edge, "params": table.params, "max_relative": table.max_relative,
             "tol": cfg["tol"], "passed": ok,
             "excluded_constant_terms": [{"lhs": r.lhs, "rhs": r.rhs} for r in table.excluded]}
    _emit(_table_output(cfg["format"], "check", cfg, header, rows, extra), cfg)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_mc(cfg: dict) -> int:
    from .mc import EnsembleSpec, MCPlan, compare_mc_asym, run_mc

    if cfg["t"] is not None and cfg["t_grid"] is not None:
        raise UsageError("give either --t or --t-grid, not both")
    grid = cfg["t"] if cfg["t"] is not None else cfg["t_grid"]
    if not grid:
        raise UsageError("missing required option: t (or t_grid)")
    if cfg["edge"] == "hard" and cfg["ensemble"] != "laguerre":
        raise UsageError("the hard edge requires --ensemble laguerre")
    spec = EnsembleSpec(cfg["ensemble"], cfg["N"], cfg["beta"], cfg["a"])
    plan = MCPlan(cfg["samples"], cfg["seed"], tuple(grid), cfg["n_max"])
    rep = run_mc(spec, cfg["edge"], plan, workers=cfg["workers"], chunk_size=cfg["chunk_size"],
                 budget_seconds=cfg["budget"])
    rep.meta = {"config": _echo(cfg), "rng": "Philox4x64-10, key = seed, counter word 3 = sample index"}
    doc = rep.to_dict(timing=cfg["timing"])
    if cfg["compare"] and rep.complete:
        if cfg["edge"] == "hard":
            exps = {n: asy.hard_expansion(spec.beta, n, spec.a) for n in range(plan.n_max + 1)}
        else:
            exps = {n: asy.soft_expansion(spec.beta, n) for n in range(plan.n_max + 1)}
        doc["comparison"] = compare_mc_asym(rep, exps).to_dict()

    if cfg["out"]:
        base = cfg["out"][:-5] if cfg["out"].endswith(".json") else cfg["out"]
        with open(base + ".json", "w") as fh:
            fh.write(dumps(doc))
        with open(base + ".csv", "w") as fh:
            fh.write(rep.to_csv())
    else:
        if cfg["format"] == "json":
            sys.stdout.write(dumps(doc))
        elif cfg["format"] == "csv":
            sys.stdout.write(rep.to_csv())
        else:
            rows = [[t, n, int(rep.counts[k, n]), float(rep.p_hat[k, n]), float(rep.stderr[k, n])]
                    for k, t in enumerate(plan.t_grid) for n in range(plan.n_max + 1)]
            sys.stdout.write(_table(["t", "n", "count", "p_hat", "stderr"], rows))
            sys.stdout.write(f"samples: {rep.samples_done}/{plan.samples}  complete: {rep.complete}\n")
            if "comparison" in doc:
                for key in ("raw_fit", "corrected_fit"):
                    f = doc["comparison"][key]
                    if f:
                        sys.stdout.write(f"{key}: slope {f['slope']:.6g} +/- {f['stderr']:.2g} on {f['basis']}\n")
    if not rep.complete:
        print(f"error: budget of {cfg['budget']} s exhausted after {rep.samples_done} samples; report is partial",
              file=sys.stderr)
        return EXIT_ACCURACY
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    from .verify import GROUPS, run_verify

    groups = cfg["group"]
    if groups:
        bad = [g for g in groups if g not in GROUPS and g != "mc"]
        if bad:
            raise UsageError(f"unknown verify groups {bad}; choose from {sorted(GROUPS) + ['mc']}")
    results = run_verify(groups, full=cfg["full"], seed=cfg["seed"], samples=cfg["samples"])
    header = ["group", "check", "error", "tol", "passed"]
    rows = [[r.group, r.name, r.error, r.tol, r.passed] for r in results]
    ok = all(r.passed for r in results)
    _emit(_table_output(cfg["format"], "verify", cfg, header, rows, {"passed": ok}), cfg)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"electro": cmd_electro, "asym": cmd_asym, "check": cmd_check, "mc": cmd_mc, "verify": cmd_verify}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(ns)
        return COMMANDS[ns.command](cfg)
    except InfeasibleCountError as exc:
        extra = f" (feasible range: 0 <= n < {exc.n_max:.6g})" if exc.n_max is not None else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (AccuracyError, BracketError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
