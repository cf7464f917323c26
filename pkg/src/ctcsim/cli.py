"""Command-line front end: ``ctcsim {davies,deutsch,unproven,pctc,sweep,conjecture}``.

Exit codes: 0 success, 2 argument/validation error, 3 unsupported ambiguity,
4 zero post-selection probability, 5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import analysis, deutsch, pctc
from .channels import DaviesParams, davies_apply, davies_superoperator, gibbs_state, is_cptp
from .gates import fig1_unitary, fig5_unitary
from .errors import UnsupportedAmbiguityError, ZeroPostselectionError
from .qmat import bloch_from_state, check_density, parse_state, trace_distance, von_neumann_entropy

EXIT_OK, EXIT_USAGE, EXIT_AMBIGUOUS, EXIT_ZERO_POST, EXIT_IO = 0, 2, 3, 4, 5

CONFIG_KEYS = {"p", "A", "G", "omega", "t", "state", "circuit", "input", "trials", "seed", "out", "precision", "rank_tol"}
PARAM_DEFAULTS = {"p": "0", "A": "0", "G": "0", "omega": "1", "t": "0"}
CSV_COLUMNS = ("p", "A", "G", "omega", "t", "Q_minus", "Q_zero", "R_numeric", "R_paper", "R_discrepancy")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    precision: int = 15
    rank_tol: float = deutsch.RANK_TOL

    def __post_init__(self):
        if not 6 <= self.precision <= 17:
            raise UsageError(f"precision must be in [6, 17], got {self.precision}")
        if self.seed < 0:
            raise UsageError(f"seed must be non-negative, got {self.seed}")


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _settings(args) -> dict:
    merged = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = str(v)
    return merged


def _float(s: str, name: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"{name}: expected a number, got {s!r}") from None


def _int(s: str, name: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"{name}: expected an integer, got {s!r}") from None


def run_config(cfg: dict) -> RunConfig:
    seed = cfg.get("seed", os.environ.get("CTCSIM_SEED", "0"))
    return RunConfig(
        seed=_int(seed, "seed"),
        precision=_int(cfg.get("precision", "15"), "precision"),
        rank_tol=_float(cfg.get("rank_tol", repr(deutsch.RANK_TOL)), "rank_tol"),
    )


def davies_params(cfg: dict) -> DaviesParams:
    vals = {k: _float(cfg.get(k, PARAM_DEFAULTS[k]), k) for k in PARAM_DEFAULTS}
    try:
        return DaviesParams(**vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_grid(s: str, name: str):
    """``"x"``, ``"x1,x2,..."`` or ``"start:stop:count"``."""
    s = s.strip()
    if name == "G" and s.replace(" ", "") == "A/2":
        return "A/2"
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise UsageError(f"{name}: range must be start:stop:count, got {s!r}")
        return {"start": _float(parts[0], name), "stop": _float(parts[1], name), "count": _int(parts[2], name)}
    return [_float(v, name) for v in s.split(",")]


def _state(s: str, name: str) -> np.ndarray:
    try:
        return check_density(parse_state(s), name)
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from None


def fmt(x: float, precision: int) -> str:
    return f"{float(x) + 0.0:.{precision - 1}e}"


def fmt_matrix(m: np.ndarray, precision: int) -> str:
    rows = []
    for row in np.asarray(m):
        cells = []
        for z in row:
            im = z.imag
            cells.append(f"{fmt(z.real, precision)}{'-' if im < 0 else '+'}{fmt(abs(im), precision)}j")
        rows.append("  [" + ", ".join(cells) + "]")
    return "\n".join(rows)


def _print_params(d: DaviesParams, prec: int) -> None:
    print("params: " + ", ".join(f"{k}={fmt(getattr(d, k), prec)}" for k in PARAM_DEFAULTS))


def cmd_davies(cfg: dict, rc: RunConfig) -> int:
    d = davies_params(cfg)
    rho = _state(cfg.get("state", "0"), "state")
    if rho.shape != (2, 2):
        raise UsageError("state must be a single qubit")
    out = davies_apply(d, rho)
    report = is_cptp(davies_superoperator(d))
    _print_params(d, rc.precision)
    print("state:")
    print(fmt_matrix(out, rc.precision))
    print("bloch: " + " ".join(fmt(v, rc.precision) for v in bloch_from_state(out)))
    print(f"cptp: {report.status} (min Choi eigenvalue {fmt(report.min_choi_eigenvalue, rc.precision)})")
    print(f"gibbs_distance: {fmt(trace_distance(out, gibbs_state(d.p)), rc.precision)}")
    return EXIT_OK


def _print_deutsch(res: deutsch.DeutschResult, prec: int) -> None:
    sol = res.solution_set
    print(f"dimension: {sol.dimension}")
    print(f"selection: {res.selection}")
    if sol.dimension == 1:
        lo, hi = sol.feasible_interval
        print("family_direction: " + " ".join(fmt(v, prec) for v in sol.null_directions[0]))
        print(f"feasible_interval: [{fmt(lo, prec)}, {fmt(hi, prec)}]")
    print("tau:")
    print(fmt_matrix(res.tau, prec))
    print(f"tau_entropy: {fmt(von_neumann_entropy(res.tau), prec)}")
    print("rho_f:")
    print(fmt_matrix(res.rho_f, prec))


def _noise(cfg: dict) -> Optional[DaviesParams]:
    d = davies_params(cfg)
    return None if d.t == 0 else d


def cmd_deutsch(cfg: dict, rc: RunConfig) -> int:
    circuit = cfg.get("circuit", "deutsch_fig1")
    d = _noise(cfg)
    if circuit == "unproven_fig5":
        u, rho_i = fig5_unitary(), deutsch.unproven_input()
    elif circuit == "deutsch_fig1":
        u, rho_i = fig1_unitary(), _state(cfg.get("input", "minus"), "input")
        if rho_i.shape != (2, 2):
            raise UsageError("input must be a single qubit")
    else:
        raise UsageError(f"circuit must be deutsch_fig1 or unproven_fig5 here, got {circuit!r}")
    res = deutsch.solve_deutsch(u, rho_i, d, rank_tol=rc.rank_tol)
    if res.selection == "ambiguous":
        raise UnsupportedAmbiguityError(f"solution family of dimension {res.solution_set.dimension}")
    print(f"circuit: {circuit}")
    if d is not None:
        _print_params(d, rc.precision)
    _print_deutsch(res, rc.precision)
    return EXIT_OK


def cmd_unproven(cfg: dict, rc: RunConfig) -> int:
    return cmd_deutsch({**cfg, "circuit": "unproven_fig5"}, rc)


def cmd_pctc(cfg: dict, rc: RunConfig) -> int:
    d = davies_params(cfg)
    rho = _state(cfg.get("input", "1"), "input")
    if rho.shape != (2, 2):
        raise UsageError("input must be a single qubit")
    res = pctc.pctc_output(rho, d)
    _print_params(d, rc.precision)
    print("rho_f:")
    print(fmt_matrix(res.rho_f, rc.precision))
    print(f"postselection_weight: {fmt(res.postselection_weight, rc.precision)}")
    return EXIT_OK


def sweep_spec(cfg: dict) -> analysis.SweepSpec:
    grids = {k: parse_grid(cfg.get(k, PARAM_DEFAULTS[k]), k) for k in PARAM_DEFAULTS}
    return analysis.SweepSpec(
        circuit=cfg.get("circuit", "deutsch_fig1"), input_state=cfg.get("input", "minus"), output_path=cfg.get("out"), **grids
    )


def sweep_csv(records, precision: int) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        d = r.params
        vals = (d.p, d.A, d.G, d.omega, d.t, r.q_minus, r.q_zero, r.r_numeric, r.r_paper_formula, r.r_discrepancy)
        lines.append(",".join(fmt(v, precision) for v in vals))
    return "\n".join(lines) + "\n"


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def cmd_sweep(cfg: dict, rc: RunConfig) -> int:
    spec = sweep_spec(cfg)
    try:
        records = analysis.sweep(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(spec.output_path, sweep_csv(records, rc.precision))
    if spec.output_path not in (None, "-"):
        print(f"rows: {len(records)} -> {spec.output_path}")
    return EXIT_OK


def cmd_conjecture(cfg: dict, rc: RunConfig) -> int:
    trials = _int(cfg.get("trials", "1000"), "trials")
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    rep = analysis.conjecture_harness(trials, rc.seed)
    text = json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n"
    out = cfg.get("out")
    if out:
        _write(out, text)
    print(f"trials: {rep.trials} seed: {rep.seed} violations: {rep.violations} max_excess: {fmt(rep.max_violation, rc.precision)}")
    return EXIT_OK


COMMANDS = {
    "davies": cmd_davies,
    "deutsch": cmd_deutsch,
    "unproven": cmd_unproven,
    "pctc": cmd_pctc,
    "sweep": cmd_sweep,
    "conjecture": cmd_conjecture,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("--precision", type=int, help="significant digits in output (6-17, default 15)")
    common.add_argument("--seed", type=int, help="RNG seed (fallback: $CTCSIM_SEED, then 0)")
    common.add_argument("--out", help="output file")
    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--p", help="Gibbs excited-state weight in [0, 1/2]")
    params.add_argument("--A", help="energy relaxation rate")
    params.add_argument("--G", help="dephasing rate, G >= A/2")
    params.add_argument("--omega", help="qubit level splitting")
    params.add_argument("--t", help="exposure time")

    parser = argparse.ArgumentParser(prog="ctcsim", description="Qubit CTC circuits under Davies thermal noise.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("davies", parents=[common, params], help="apply a Davies map to a qubit state")
    p.add_argument("--state", help="0, 1, plus, minus or a Bloch triple x,y,z")
    p = sub.add_parser("deutsch", parents=[common, params], help="solve a D-CTC circuit")
    p.add_argument("--circuit", help="deutsch_fig1 (default) or unproven_fig5")
    p.add_argument("--input", help="CR input for deutsch_fig1 (default minus)")
    sub.add_parser("unproven", parents=[common, params], help="solve the unproven-theorem D-CTC circuit")
    p = sub.add_parser("pctc", parents=[common, params], help="post-selected CTC output")
    p.add_argument("--input", help="system input (default 1)")
    p = sub.add_parser("sweep", parents=[common, params], help="distinguishability sweep to CSV")
    p.add_argument("--circuit", help="deutsch_fig1")
    p = sub.add_parser("conjecture", parents=[common], help="randomized never-enhancement search")
    p.add_argument("--trials", type=int, help="number of random trials (default 1000)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _settings(args)
        rc = run_config(cfg)
        return COMMANDS[args.command](cfg, rc)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedAmbiguityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except ZeroPostselectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_POST
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
