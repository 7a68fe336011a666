"""Command-line front end.

    lotto-lab spe --P 1 --RA 1 --RB 1
    lotto-lab sweep --cmd spe --axis P:0:3:151 --RA 0.5 --RB 1 --format csv
    lotto-lab verify --checks solver_agreement,proportional_grid_optimality

Parameters come from flags, then a JSON ``--config`` file, then defaults.
Results go to stdout (or ``--output``) as JSON or CSV.  Exit codes: 0 ok,
1 invalid input, 2 solver failure, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import concurrent.futures as cf
import csv
import enum
import functools
import io
import itertools
import json
import os
import sys
import tempfile

import numpy as np

from . import core, favoritism as fav, interplay, oracle, stackelberg as stk
from .core import GameConfig, LottoError, PreAllocation

EXIT_OK, EXIT_INVALID, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("stage2", "spe", "sweep", "level-curve", "ratio", "invest", "stackelberg", "verify")
SWEEPABLE = ("stage2", "spe", "ratio", "invest", "stackelberg", "level-curve")

DEFAULTS = {"P": 0.0, "RA": 1.0, "RB": 1.0, "q": 1.0, "w": [1.0], "num": 100,
            "resolution": 40, "seed": 0}

# long names accepted in config files
ALIASES = {"R_A": "RA", "R_B": "RB", "M_A": "MA", "M_B": "MB", "c_A": "cA", "c_B": "cB"}

SCALAR_KEYS = ("P", "RA", "RB", "q", "Pi", "MA", "cA", "MB", "cB")

SOLVER_ERRORS = (fav.NoConsistentPartition, fav.ConvergenceFailure, fav.NumericUnsupported,
                 stk.NoRootInInterval, stk.BracketFailure)


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]


def _axis(text: str) -> dict:
    try:
        name, start, stop, steps = text.split(":")
        return {"axis": name, "start": float(start), "stop": float(stop), "steps": int(steps)}
    except ValueError:
        raise argparse.ArgumentTypeError(f"axis must be name:start:stop:steps, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("parameters")
    for key in SCALAR_KEYS:
        g.add_argument(f"--{key}", type=float, default=None)
    g.add_argument("--w", type=_floats, default=None, help="battlefield values, comma separated")
    g.add_argument("--p", type=_floats, default=None, help="pre-allocation, comma separated")
    g.add_argument("--num", type=int, default=None, help="level-curve sample count")
    g.add_argument("--checks", default=None, help="comma separated verification checks")
    g.add_argument("--resolution", type=int, default=None)
    g.add_argument("--seed", type=int, default=None)
    io_ = common.add_argument_group("input/output")
    io_.add_argument("--config", default=None, help="JSON config file")
    io_.add_argument("--output", default=None, help="output path (default stdout)")
    io_.add_argument("--format", choices=("json", "csv"), default=None)

    parser = _Parser(prog="lotto-lab", description="General Lotto games with pre-allocations")
    sub = parser.add_subparsers(dest="command")
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, parents=[common])
        if cmd == "sweep":
            sp.add_argument("--cmd", choices=SWEEPABLE, default=None)
            sp.add_argument("--axis", type=_axis, action="append", default=None)
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(cfg) - {"command", "params", "sweep", "output"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def resolve(argv) -> dict:
    """Merge defaults, config file and flags into one run description."""
    args = build_parser().parse_args(argv)
    file_cfg = _load_config(args.config) if args.config else {}
    command = args.command or file_cfg.get("command")
    if command not in COMMANDS:
        raise UsageError(f"unknown or missing command: {command!r}")

    params = dict(DEFAULTS)
    for k, v in (file_cfg.get("params") or {}).items():
        params[ALIASES.get(k, k)] = v
    for k in SCALAR_KEYS + ("w", "p", "num", "checks", "resolution", "seed"):
        v = getattr(args, k)
        if v is not None:
            params[k] = v

    axes = getattr(args, "axis", None) or file_cfg.get("sweep") or []
    out = file_cfg.get("output") or {}
    target = getattr(args, "cmd", None) or params.pop("cmd", None)
    return {
        "command": command,
        "target": target,
        "params": params,
        "axes": [dict(a, axis=ALIASES.get(a["axis"], a["axis"])) for a in axes],
        "path": args.output or out.get("path"),
        "format": args.format or out.get("format") or "json",
    }


# -- per-command evaluation ----------------------------------------------------------

def _need(params, *keys):
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + k for k in missing)}")


def _game(params) -> GameConfig:
    _need(params, "P", "RA", "RB")
    raw = GameConfig(w=tuple(params["w"]), P=params["P"], R_A=params["RA"],
                     R_B=params["RB"], q=params["q"])
    return core.normalize_config(raw)


def _ids(ix) -> str:
    return ";".join(str(i) for i in ix)


def eval_spe(params) -> dict:
    cfg = _game(params)
    r = core.spe_payoff(cfg.P, cfg.R_A, cfg.R_B, cfg.w)
    return {"pi_A": r.pi_A, "pi_B": r.pi_B, "boundary_distance": r.regime.boundary_distance,
            "degenerate": r.degenerate, "regime": r.regime.tag}


def eval_stage2(params) -> dict:
    cfg = _game(params)
    if params.get("p") is None:
        p = PreAllocation.proportional(cfg.w, cfg.P)
    else:
        p = np.asarray(params["p"], dtype=float)
        if len(p) != cfg.n:
            raise UsageError(f"--p has {len(p)} entries but there are {cfg.n} battlefields")
        s = p.sum()
        # a swept P rescales the given shape
        p = PreAllocation(tuple(p * (cfg.P / s)) if s > 0 else tuple(p), cfg.P)
    out = fav.stage2_payoff(p, cfg)
    k = out.kappa
    row = {"pi_A": out.pi_A, "pi_B": out.pi_B}
    row.update({
        "kappa_A": k.kappa_A if k else None, "kappa_B": k.kappa_B if k else None,
        "residual_A": k.residual_A if k else None, "residual_B": k.residual_B if k else None,
        "B1": _ids(k.partition_B1) if k else "", "B2": _ids(k.partition_B2) if k else "",
        "conceded": _ids(k.conceded) if k else "",
        "method": k.method if k else "ZeroRealTime",
    })
    return row


def eval_ratio(params) -> dict:
    _need(params, "RA", "RB")
    R_A, R_B = params["RA"], params["RB"]
    if not (R_A > 0 and R_B > 0):
        raise ValueError("ratio needs positive R_A and R_B")
    return {"E": interplay.effectiveness_ratio(R_A, R_B),
            "P_eq": interplay.equivalent_preallocation(R_A, R_B)}


def eval_invest(params) -> dict:
    _need(params, "MA", "cA", "RB")
    plan = interplay.optimal_investment(params["MA"], params["cA"], params["RB"] * params["q"])
    lo, hi = plan.indifference_interval or (None, None)
    return {"P_star": plan.P_star, "RA_star": plan.R_A_star, "pi_opt": plan.pi_opt,
            "indifferent_P_lo": lo, "indifferent_P_hi": hi, "branch": plan.branch}


def eval_stackelberg(params) -> dict:
    _need(params, "MA", "cA", "MB", "cB")
    out = stk.stackelberg_equilibrium(stk.MonetaryParams(params["MA"], params["cA"],
                                                         params["MB"], params["cB"]))
    return {"p_A_star": out.p_A_star, "p_B_star": out.p_B_star, "u_A": out.u_A, "u_B": out.u_B,
            "p_A_dagger": out.p_A_dagger, "p_B_alternative": out.p_B_alternative,
            "case": out.case}


def eval_level_curve(params) -> list[dict]:
    _need(params, "Pi", "RB")
    c = interplay.level_curve(params["Pi"], params["RB"], int(params["num"]))
    return [{"P": P, "R_A": R} for P, R in c.samples]


EVALUATORS = {"spe": eval_spe, "stage2": eval_stage2, "ratio": eval_ratio,
              "invest": eval_invest, "stackelberg": eval_stackelberg,
              "level-curve": eval_level_curve}


def _workers(n_jobs: int) -> int:
    try:
        cap = int(os.environ.get("LOTTO_LAB_THREADS", "0"))
    except ValueError:
        raise UsageError("LOTTO_LAB_THREADS must be an integer")
    if cap < 0:
        raise UsageError("LOTTO_LAB_THREADS must be non-negative")
    if cap == 0:
        # small sweeps are faster in-process than paying for worker start-up
        cap = min(os.cpu_count() or 1, n_jobs // 500)
    return max(1, min(cap, n_jobs))


def _sweep_point(target, params, names, values):
    p = dict(params)
    p.update(zip(names, values))
    res = EVALUATORS[target](p)
    rows = res if isinstance(res, list) else [res]
    return [dict(zip(names, values), **r) for r in rows]


def run_sweep(target, params, axes) -> list[dict]:
    if target is None:
        raise UsageError("sweep needs --cmd")
    if not 1 <= len(axes) <= 2:
        raise UsageError("sweep takes one or two --axis specifications")
    names, grids = [], []
    for a in axes:
        if a["axis"] not in SCALAR_KEYS:
            raise UsageError(f"cannot sweep over {a['axis']!r}")
        if a["steps"] < 1:
            raise UsageError("axis steps must be positive")
        names.append(a["axis"])
        grids.append(np.linspace(a["start"], a["stop"], a["steps"]).tolist())
    points = list(itertools.product(*grids))
    fn = functools.partial(_sweep_point, target, params, names)
    n = _workers(len(points))
    if n == 1:
        chunks = [fn(pt) for pt in points]
    else:
        with cf.ProcessPoolExecutor(max_workers=n) as ex:
            # map keeps grid order regardless of completion order
            chunks = list(ex.map(fn, points, chunksize=max(1, len(points) // (4 * n))))
    return [row for chunk in chunks for row in chunk]


def run_verify(params) -> list[dict]:
    names = None
    if params.get("checks"):
        names = [c.strip() for c in str(params["checks"]).split(",") if c.strip()]
    grid = oracle.GridSpec(int(params["resolution"]), int(params["seed"]))
    try:
        reports = oracle.run_suite(names, grid)
    except oracle.UnknownCheck as exc:
        raise UsageError(f"unknown check: {exc.args[0]}")
    rows = [r.to_json() for r in reports]
    if not oracle.all_passed(reports):
        raise VerificationFailed(rows)
    return rows


# -- output --------------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, np.generic):
        v = v.item()
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, enum.Enum):
        return str(v.value)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _plain(v):
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


def render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_plain(result), indent=2) + "\n"
    rows = result if isinstance(result, list) else [result]
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(rows[0].keys())
    for r in rows:
        w.writerow(_cell(v) for v in r.values())
    return buf.getvalue()


def write_output(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".lotto-lab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fail(kind: str, exc, code: int) -> int:
    msg = exc.args[0] if exc.args and isinstance(exc.args[0], str) else str(exc)
    sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": msg}) + "\n")
    return code


def run(argv=None) -> int:
    try:
        spec = resolve(argv)
        cmd, params = spec["command"], spec["params"]
        if cmd == "sweep":
            result = run_sweep(spec["target"], params, spec["axes"])
        elif cmd == "verify":
            result = run_verify(params)
        else:
            result = EVALUATORS[cmd](params)
        write_output(render(result, spec["format"]), spec["path"])
        return EXIT_OK
    except VerificationFailed as exc:
        rows = exc.args[0]
        write_output(render(rows, spec["format"]), spec["path"])
        failed = [r["check_name"] for r in rows if not r["pass"]]
        return _fail("verification", VerificationFailed(f"failed checks: {', '.join(failed)}"),
                     EXIT_VERIFY)
    except SOLVER_ERRORS as exc:
        return _fail("solver", exc, EXIT_SOLVER)
    except (UsageError, ValueError, TypeError, LottoError) as exc:
        return _fail("validation", exc, EXIT_INVALID)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
