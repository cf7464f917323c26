"""Distinguishability figures of merit for the noisy Deutsch distinguishing circuit."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .channels import DaviesParams, davies_apply
from .deutsch import fig1_noiseless_reference, fig1_solve, solve_deutsch
from .gates import fig1_unitary
from .qmat import named_state, projector, random_pure_ket, trace_distance

PARAM_NAMES = ("p", "A", "G", "omega", "t")
CIRCUITS = ("deutsch_fig1", "pctc_fig4", "unproven_fig5")


def _shape_factor(d: DaviesParams) -> float:
    # (e^{At} - 1) e^{-Gt} sqrt(8 e^{2Gt} + 1) / (2 e^{At} - 1), overflow-safe
    y = math.exp(-d.A * d.t)
    return (1 - y) / (2 - y) * math.sqrt(8.0 + math.exp(-2 * d.G * d.t))


def q_minus_closed(d: DaviesParams) -> float:
    """Distance between noisy and noiseless outputs for input ``|->``."""
    return math.sqrt(2) / 2 * _shape_factor(d) * abs(d.p - 1)


def q_zero_closed(d: DaviesParams) -> float:
    """Distance between noisy and noiseless outputs for input ``|0>``."""
    return math.sqrt(2) / 2 * d.p * _shape_factor(d)


def q_numeric(label: str, d: DaviesParams) -> float:
    """Solve the circuit numerically and measure the distance to its noiseless output."""
    return trace_distance(fig1_solve(label, d).rho_f, fig1_noiseless_reference(label))


def r_numeric(d: DaviesParams) -> float:
    """Trace distance between the circuit outputs for inputs ``|0>`` and ``|->``."""
    return trace_distance(fig1_solve("zero", d).rho_f, fig1_solve("minus", d).rho_f)


def r_printed_formula(d: DaviesParams) -> float:
    """Literal evaluation of the circulated closed form for R.

    Kept for discrepancy reporting only; it gives 4/3 at ``t = 0`` where the
    true distance is 1, and exceeds 1 on the ``A = 0`` plane.
    """
    a, g, t, p = d.A, d.G, d.t, d.p
    eat = math.exp(a * t)
    bracket = (1 - 4 * p + 4 * p * p) * (2 * eat * eat - 4 * eat + 2) + 4 * math.exp(2 * t * g)
    return math.exp(-t * g) / (4 * eat - 1) * bracket


@dataclass(frozen=True)
class DistinguishabilityRecord:
    params: DaviesParams
    q_minus: float
    q_zero: float
    r_numeric: float
    r_paper_formula: float
    inputs: tuple[str, str] = ("zero", "minus")

    @property
    def r_discrepancy(self) -> float:
        return self.r_paper_formula - self.r_numeric


def distinguishability(d: DaviesParams) -> DistinguishabilityRecord:
    out_zero = fig1_solve("zero", d).rho_f
    out_minus = fig1_solve("minus", d).rho_f
    return DistinguishabilityRecord(
        params=d,
        q_minus=trace_distance(out_minus, fig1_noiseless_reference("minus")),
        q_zero=trace_distance(out_zero, fig1_noiseless_reference("zero")),
        r_numeric=trace_distance(out_zero, out_minus),
        r_paper_formula=r_printed_formula(d),
    )


Grid = Union[float, Sequence[float], dict]


def expand_grid(g: Grid) -> np.ndarray:
    """Scalar, explicit list, or ``{"start", "stop", "count"}`` to a 1-d array."""
    if isinstance(g, dict):
        start, stop, count = float(g["start"]), float(g["stop"]), int(g["count"])
        if count < 1:
            raise ValueError(f"grid count must be >= 1, got {count}")
        if start > stop:
            raise ValueError(f"grid start {start} > stop {stop}")
        if count == 1:
            return np.array([start])
        return np.linspace(start, stop, count)
    vals = np.atleast_1d(np.asarray(g, dtype=float))
    if vals.size == 0:
        raise ValueError("empty grid")
    return vals


@dataclass
class SweepSpec:
    """Parameter grid for :func:`sweep`.

    Each of ``p, A, G, omega, t`` is a scalar, a list of values or a
    ``{"start", "stop", "count"}`` dict. Points are emitted with ``t`` varying
    fastest, then ``omega``, ``G``, ``A`` and ``p``. ``G`` may be the string
    ``"A/2"`` to pin it to the positivity boundary.
    """

    p: Grid = 0.25
    A: Grid = 1.0
    G: Grid = 1.0
    omega: Grid = 1.0
    t: Grid = field(default_factory=lambda: {"start": 0.0, "stop": 5.0, "count": 51})
    circuit: str = "deutsch_fig1"
    input_state: str = "minus"
    output_path: Optional[str] = None

    def points(self) -> list[DaviesParams]:
        if self.circuit != "deutsch_fig1":
            raise ValueError(f"sweeps are defined for circuit 'deutsch_fig1' only, got {self.circuit!r}")
        g_half = isinstance(self.G, str) and self.G.replace(" ", "") == "A/2"
        axes = [expand_grid(self.p), expand_grid(self.A), [None] if g_half else expand_grid(self.G)]
        axes += [expand_grid(self.omega), expand_grid(self.t)]
        pts = []
        for p, a, g, w, t in itertools.product(*axes):
            g = a / 2 if g is None else g
            try:
                pts.append(DaviesParams(p=p, A=a, G=g, omega=w, t=t))
            except ValueError as exc:
                raise ValueError(f"invalid grid point p={p}, A={a}, G={g}, omega={w}, t={t}: {exc}") from None
        return pts


def sweep(spec: SweepSpec) -> list[DistinguishabilityRecord]:
    return [distinguishability(d) for d in spec.points()]


def threshold_crossing(d: DaviesParams, t_max: float = 20.0, level: float = math.sqrt(2) / 2) -> Optional[float]:
    """First time at which ``r_numeric`` drops to ``level``, or None if it stays above up to ``t_max``."""
    from scipy.optimize import brentq

    def f(t):
        return r_numeric(d.replace(t=t)) - level

    ts = np.linspace(0.0, t_max, 401)
    vals = [f(t) for t in ts]
    for k in range(len(ts) - 1):
        if vals[k] > 0 >= vals[k + 1]:
            return brentq(f, ts[k], ts[k + 1], xtol=1e-12)
    return None


@dataclass(frozen=True)
class ConjectureReport:
    trials: int
    seed: int
    max_violation: float
    violating_pairs: tuple = ()
    contractivity_max_excess: float = -math.inf
    rejected_pairs: int = 0

    @property
    def violations(self) -> int:
        return len(self.violating_pairs)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "contractivity_max_excess": self.contractivity_max_excess,
            "rejected_pairs": self.rejected_pairs,
            "violating_pairs": [dict(v) for v in self.violating_pairs],
        }


def _sample_params(rng: np.random.Generator) -> DaviesParams:
    a = rng.uniform(0.05, 3.0)
    return DaviesParams(
        p=rng.uniform(0.0, 0.5),
        A=a,
        G=a / 2 + rng.uniform(0.0, 3.0),
        omega=rng.uniform(0.1, 3.0),
        t=rng.uniform(0.01, 5.0),
    )


def _fig1_output(rho: np.ndarray, d: DaviesParams) -> np.ndarray:
    return solve_deutsch(fig1_unitary(), rho, d).rho_f


def conjecture_harness(trials: int, seed: int, tol: float = 1e-9, min_overlap: float = 1e-6) -> ConjectureReport:
    """Random search for thermal noise enhancing output distinguishability.

    Each trial draws two Haar-random pure inputs and one valid Davies map with
    ``A > 0``. The distance between the two circuit outputs under that map is
    compared with the distance under the same map at ``A = 0``; an excess
    above ``tol`` is a violation. Trial ``k`` uses the RNG stream
    ``SeedSequence([seed, k])`` so results do not depend on execution order.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    worst = -math.inf
    worst_contract = -math.inf
    violating = []
    rejected = 0
    for k in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
        while True:
            psi1, psi2 = random_pure_ket(rng), random_pure_ket(rng)
            if abs(np.vdot(psi1, psi2)) ** 2 >= min_overlap:
                break
            rejected += 1
        d = _sample_params(rng)
        ref = d.replace(A=0.0)
        rho1, rho2 = projector(psi1), projector(psi2)
        noisy = trace_distance(_fig1_output(rho1, d), _fig1_output(rho2, d))
        dephased = trace_distance(_fig1_output(rho1, ref), _fig1_output(rho2, ref))
        excess = noisy - dephased
        worst = max(worst, excess)
        contract = trace_distance(davies_apply(d, rho1), davies_apply(d, rho2)) - trace_distance(rho1, rho2)
        worst_contract = max(worst_contract, contract)
        if excess > tol:
            violating.append(
                (
                    ("trial", k),
                    ("p", d.p),
                    ("A", d.A),
                    ("G", d.G),
                    ("omega", d.omega),
                    ("t", d.t),
                    ("distance_noisy", noisy),
                    ("distance_dephased", dephased),
                )
            )
    return ConjectureReport(
        trials=trials,
        seed=seed,
        max_violation=worst,
        violating_pairs=tuple(violating),
        contractivity_max_excess=worst_contract,
        rejected_pairs=rejected,
    )


def input_distance() -> float:
    """Distance between the circuit inputs ``|0>`` and ``|->``, ``sqrt(2)/2``."""
    return trace_distance(named_state("0"), named_state("minus"))
