"""Command-line front end.

Usage: ``weakchan COMMAND [flags]`` or ``python -m weakchan COMMAND``.

Flags mirror the keys of a JSON config file (dashes become underscores).
Precedence: built-in defaults < ``--config FILE`` < explicit flags. A JSON
result file is itself a valid ``--config`` input and reproduces the same
bytes when re-run.

Exit codes: 0 success, 1 numerical failure, 2 invalid configuration.
"""
import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import kernels
from ._accel import thread_cap
from .capacity import (blahut_arimoto_capacity, capacity_upper_bound,
                       optimize_eigenvalue_placement, power_budget)
from .channel import (ChannelSpec, LetterEnsemble, LetterOperator, apply_weak_channel,
                      damping_matrix, output_distribution)
from .coding import DEFAULT_SEED, CodingExperimentConfig, estimate_error_probability
from .eavesdrop import plus_minus_ensemble, tradeoff_sweep
from .errors import InvalidArgs, NumericalError, ValidationError
from .linalg import DensityMatrix
from .needle import NeedleSpec, mixture_entropy

COMMANDS = ("capacity", "bound", "entropy", "channel-map", "simulate", "eavesdrop", "sweep", "placement")
SWEEP_COLUMNS = ("sigma_eve", "chi_before_bits", "chi_after_bits", "eve_info_bits")
FANO_NOTE = "fano_floor uses the asymptotic form (R - chi)/log2(d); the H(P_err) term is dropped"


@dataclass
class RunConfig:
    command: str = "capacity"
    eigenvalues: list = None
    sigma: float = None
    tol: float = 1e-6
    diag: list = None
    rho: object = None
    n: int = 16
    rate: float = None
    codebooks: int = 20
    trials: int = 500
    probs: list = None
    sigma_eve: float = None
    sigma_grid: list = None
    ensemble: str = "plus-minus"
    letters: object = None
    d: int = None
    power: float = None
    restarts: int = 4
    seed: int = DEFAULT_SEED
    format: str = "json"
    output: str = None

    def public(self):
        """Keys the command uses, as emitted into result files (no output path)."""
        keep = ("command",) + COMMAND_KEYS[self.command] + ("format",)
        return {k: getattr(self, k) for k in keep if getattr(self, k) is not None}


_STATE = ("diag", "rho")
_ENSEMBLE = ("ensemble", "letters", "probs")
COMMAND_KEYS = {
    "capacity": ("eigenvalues", "sigma", "tol"),
    "bound": ("eigenvalues", "sigma"),
    "entropy": ("eigenvalues", "sigma") + _STATE,
    "channel-map": ("eigenvalues", "sigma") + _STATE,
    "simulate": ("eigenvalues", "sigma", "tol", "n", "rate", "codebooks", "trials", "probs", "seed"),
    "eavesdrop": ("eigenvalues", "sigma_eve") + _ENSEMBLE,
    "sweep": ("eigenvalues", "sigma_grid") + _ENSEMBLE,
    "placement": ("d", "power", "sigma", "restarts", "tol", "seed"),
}


# ---------------------------------------------------------------- parsing

def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    try:
        return [float(v) for v in str(text).split(",") if v.strip() != ""]
    except ValueError:
        raise InvalidArgs(f"expected a comma-separated list of numbers, got {text!r}") from None


def _json_arg(value, what):
    if not isinstance(value, str):
        return value
    try:
        if value.startswith("@"):
            with open(value[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(value)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidArgs(f"could not read {what}: {exc}") from None


def parse_matrix(value):
    """Matrix from nested JSON: entries are numbers or [re, im] pairs."""
    data = _json_arg(value, "density matrix")
    try:
        arr = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError):
        raise InvalidArgs("density matrix must be a nested list of numbers or [re, im] pairs") from None
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim == 2:
        return arr.astype(np.complex128)
    raise InvalidArgs(f"density matrix has unsupported shape {arr.shape}")


def _matrix_pairs(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def build_parser():
    p = argparse.ArgumentParser(prog="weakchan", description="Weak Gaussian channel capacity toolkit")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file (flags override its values)")
    p.add_argument("--eigenvalues", help="letter eigenvalues, e.g. -1,1")
    p.add_argument("--sigma", type=float, help="needle standard deviation")
    p.add_argument("--tol", type=float, help="capacity tolerance in bits")
    p.add_argument("--diag", help="diagonal density matrix shorthand, e.g. 0.3,0.7")
    p.add_argument("--rho", help="density matrix as JSON ([re, im] pairs) or @file")
    p.add_argument("--n", type=int, help="block length")
    p.add_argument("--rate", type=float, help="code rate in bits per symbol")
    p.add_argument("--codebooks", type=int)
    p.add_argument("--trials", type=int, help="trials per codebook")
    p.add_argument("--probs", help="input distribution over the eigenvalues")
    p.add_argument("--sigma-eve", dest="sigma_eve", type=float)
    p.add_argument("--sigma-grid", dest="sigma_grid", help="ascending list of Eve's sigmas")
    p.add_argument("--ensemble", choices=("plus-minus", "eigenstates"))
    p.add_argument("--letters", help="ensemble as JSON [{\"prob\": p, \"rho\": M}, ...] or @file")
    p.add_argument("--d", type=int, help="alphabet size for placement")
    p.add_argument("--power", type=float, help="power budget max x_i^2 for placement")
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output", "-o", help="output file (default: stdout)")
    return p


_NUMBER_START = re.compile(r"^-(\d|\.\d)")


def _glue_negative_values(argv):
    """Let ``--eigenvalues -1,1`` through argparse by rewriting it as ``--eigenvalues=-1,1``."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NUMBER_START.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


def load_config(argv):
    parser = build_parser()
    parser.__class__ = _Parser
    ns = parser.parse_args(_glue_negative_values(list(argv)))
    cfg = RunConfig()
    known = {f.name for f in fields(RunConfig)}
    if ns.config:
        data = _json_arg("@" + ns.config, "config file")
        if isinstance(data, dict) and isinstance(data.get("config"), dict):
            data = data["config"]
        if not isinstance(data, dict):
            raise InvalidArgs("config file must hold a JSON object")
        unknown = set(data) - known
        if unknown:
            raise InvalidArgs(f"unknown config keys: {sorted(unknown)}")
        for k, v in data.items():
            setattr(cfg, k, v)
    for k, v in vars(ns).items():
        if k in known and v is not None:
            setattr(cfg, k, v)
    cfg.command = ns.command
    for key in ("eigenvalues", "diag", "probs", "sigma_grid"):
        v = getattr(cfg, key)
        if v is not None:
            setattr(cfg, key, _floats(v))
    if isinstance(cfg.rho, str):
        cfg.rho = _json_arg(cfg.rho, "density matrix")
    if isinstance(cfg.letters, str):
        cfg.letters = _json_arg(cfg.letters, "letters")
    return cfg


# ---------------------------------------------------------------- dispatch

def _require(cfg, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise InvalidArgs(f"{cfg.command} requires {flags}")


def _channel(cfg):
    _require(cfg, "eigenvalues", "sigma")
    return ChannelSpec(LetterOperator(cfg.eigenvalues), NeedleSpec(cfg.sigma))


def _state(cfg, d):
    if cfg.rho is not None:
        rho = DensityMatrix(parse_matrix(cfg.rho))
    elif cfg.diag is not None:
        rho = DensityMatrix.diagonal(cfg.diag)
    else:
        raise InvalidArgs(f"{cfg.command} requires --rho or --diag")
    if rho.dim != d:
        raise InvalidArgs(f"state dimension {rho.dim} != number of eigenvalues {d}")
    return rho


def _ensemble(cfg, op):
    if cfg.letters is not None:
        if not isinstance(cfg.letters, list) or not cfg.letters:
            raise InvalidArgs("letters must be a non-empty JSON list")
        try:
            probs = [float(item["prob"]) for item in cfg.letters]
            states = tuple(DensityMatrix(parse_matrix(item["rho"])) for item in cfg.letters)
        except (KeyError, TypeError):
            raise InvalidArgs("each letter needs 'prob' and 'rho' keys") from None
        return LetterEnsemble(probs, states)
    if cfg.ensemble == "plus-minus":
        if op.dim != 2:
            raise InvalidArgs("plus-minus ensemble needs exactly two eigenvalues")
        return plus_minus_ensemble()
    if cfg.ensemble == "eigenstates":
        probs = cfg.probs if cfg.probs is not None else [1.0 / op.dim] * op.dim
        return LetterEnsemble.eigenstates(probs)
    raise InvalidArgs(f"unknown ensemble {cfg.ensemble!r}")


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _capacity_record(ch, res):
    return {
        "eigenvalues": ch.operator.eigenvalues.tolist(),
        "sigma": ch.sigma,
        "capacity_bits": res.capacity_bits,
        "upper_bound_bits": res.upper_bound_bits,
        "bound_gap_bits": res.bound_gap_bits,
        "power_budget": power_budget(ch.operator),
        "input_distribution": np.asarray(res.input_distribution).tolist(),
        "iterations": res.iterations,
        "ba_gap_bits": res.ba_gap_bits,
        "output_bins": res.output_bins,
        "weakness_ratio": _finite(ch.weakness_ratio()),
    }


def cmd_capacity(cfg):
    ch = _channel(cfg)
    return _capacity_record(ch, blahut_arimoto_capacity(ch, cfg.tol))


def cmd_bound(cfg):
    ch = _channel(cfg)
    return {
        "eigenvalues": ch.operator.eigenvalues.tolist(),
        "sigma": ch.sigma,
        "power_budget": power_budget(ch.operator),
        "upper_bound_bits": capacity_upper_bound(ch),
    }


def cmd_entropy(cfg):
    ch = _channel(cfg)
    gm = output_distribution(_state(cfg, ch.dim), ch)
    return {
        "weights": gm.weights.tolist(),
        "means": gm.means.tolist(),
        "sigma": gm.sigma,
        "entropy_bits": mixture_entropy(gm),
    }


def cmd_channel_map(cfg):
    ch = _channel(cfg)
    rho = _state(cfg, ch.dim)
    return {
        "eigenvalues": ch.operator.eigenvalues.tolist(),
        "sigma": ch.sigma,
        "damping": damping_matrix(ch).tolist(),
        "output": _matrix_pairs(apply_weak_channel(rho, ch).matrix),
    }


def cmd_simulate(cfg):
    ch = _channel(cfg)
    _require(cfg, "rate")
    cap = blahut_arimoto_capacity(ch, cfg.tol)
    probs = cfg.probs if cfg.probs is not None else cap.input_distribution
    exp = CodingExperimentConfig(ch, probs, cfg.n, cfg.rate, cfg.codebooks, cfg.trials, cfg.seed)
    res = estimate_error_probability(exp, chi_bits=cap.capacity_bits)
    out = asdict(res)
    out["capacity_bits"] = cap.capacity_bits
    out["input_distribution"] = np.asarray(exp.input_distribution).tolist()
    out["note"] = FANO_NOTE
    return out


def cmd_eavesdrop(cfg):
    _require(cfg, "eigenvalues", "sigma_eve")
    op = LetterOperator(cfg.eigenvalues)
    return asdict(tradeoff_sweep(_ensemble(cfg, op), op, [cfg.sigma_eve])[0])


def cmd_sweep(cfg):
    _require(cfg, "eigenvalues", "sigma_grid")
    op = LetterOperator(cfg.eigenvalues)
    return {"points": [asdict(p) for p in tradeoff_sweep(_ensemble(cfg, op), op, cfg.sigma_grid)]}


def cmd_placement(cfg):
    _require(cfg, "d", "power", "sigma")
    rng = np.random.default_rng(cfg.seed)
    op, res = optimize_eigenvalue_placement(cfg.d, cfg.power, NeedleSpec(cfg.sigma), cfg.restarts, rng, cfg.tol)
    return _capacity_record(ChannelSpec(op, NeedleSpec(cfg.sigma)), res)


HANDLERS = {
    "capacity": cmd_capacity,
    "bound": cmd_bound,
    "entropy": cmd_entropy,
    "channel-map": cmd_channel_map,
    "simulate": cmd_simulate,
    "eavesdrop": cmd_eavesdrop,
    "sweep": cmd_sweep,
    "placement": cmd_placement,
}


# ---------------------------------------------------------------- output

def _round12(obj):
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.12g}") if math.isfinite(x) else None
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_round12(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v):
    if isinstance(v, list):
        return ";".join(_csv_cell(x) for x in v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return "" if v is None else str(v)


def _csv_rows(command, result):
    if command == "sweep":
        return list(SWEEP_COLUMNS), [[p[c] for c in SWEEP_COLUMNS] for p in result["points"]]
    if command == "channel-map":
        rows = []
        for i, row in enumerate(result["output"]):
            for j, (re_, im_) in enumerate(row):
                rows.append([i, j, re_, im_, result["damping"][i][j]])
        return ["i", "j", "re", "im", "damping"], rows
    header = list(result)
    return header, [[result[k] for k in header]]


def render(command, config, result, fmt):
    """Serialise a result; identical inputs give identical text."""
    result = _round12(result)
    if fmt == "json":
        doc = {"command": command, "config": _round12(config), "result": result}
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        header, rows = _csv_rows(command, result)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()
    raise InvalidArgs(f"unknown format {fmt!r}")


def emit(command, config, result, fmt="json", path=None, stream=None):
    text = render(command, config, result, fmt)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)
    return text


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = load_config(argv)
        thread_cap()
        if cfg.format not in ("json", "csv"):
            raise InvalidArgs(f"format must be json or csv, got {cfg.format!r}")
        result = HANDLERS[cfg.command](cfg)
        emit(cfg.command, cfg.public(), result, cfg.format, cfg.output, stdout)
    except _ParseError as exc:
        print(f"weakchan: error: {exc}", file=stderr)
        return 2
    except ValidationError as exc:
        print(f"weakchan: invalid configuration: {exc}", file=stderr)
        return 2
    except (TypeError, ValueError) as exc:
        print(f"weakchan: invalid configuration: {exc}", file=stderr)
        return 2
    except NumericalError as exc:
        print(f"weakchan: numerical failure: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"weakchan: I/O error: {exc}", file=stderr)
        return 1
    return 0


def main():
    sys.exit(run())


__all__ = ["RunConfig", "emit", "render", "run", "main", "kernels"]
