"""Deutsch (D-CTC) consistency condition with optional Davies noise.

The chronology-violating (CV) qubit must satisfy ``tau = D(Lambda(tau))``
where ``Lambda(tau) = Tr_CR[U (rho_i kron tau) U^dag]`` and ``D`` is the
Davies map applied on the way back in time. For fixed ``rho_i`` the map is
linear and trace preserving in ``tau``, so in Bloch coordinates it is an
affine map ``r -> M r + c`` and the fixed points are the solutions of
``(I - M) r = c`` that lie inside the unit ball.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .channels import DaviesParams, QuantumChannel, compose, davies_superoperator, vec, unvec
from .errors import ConvergenceError, InfeasibleFixedPointError, UnsupportedAmbiguityError
from .gates import fig1_unitary, fig5_unitary
from .qmat import (
    IDENTITY_2,
    PAULIS,
    TOL_POS,
    bloch_from_state,
    check_density,
    ket_bra,
    named_state,
    partial_trace,
    partial_trace_3q_keep_last,
    state_from_bloch,
    trace_out_last,
    von_neumann_entropy,
)

RANK_TOL = 1e-9


def _joint(u, rho_i, tau):
    u = np.asarray(u, dtype=complex)
    rho_i = np.asarray(rho_i, dtype=complex)
    tau = np.asarray(tau, dtype=complex)
    if tau.shape != (2, 2):
        raise ValueError(f"CV state must be 2x2, got shape {tau.shape}")
    d = rho_i.shape[0] * 2
    if u.shape != (d, d):
        raise ValueError(f"unitary of shape {u.shape} does not act on CR dim {rho_i.shape[0]} x CV dim 2")
    return u @ np.kron(rho_i, tau) @ u.conj().T


def lambda_map(u: np.ndarray, rho_i: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """CV marginal after the joint unitary: ``Tr_CR[U (rho_i kron tau) U^dag]``."""
    x = _joint(u, rho_i, tau)
    if x.shape == (4, 4):
        return partial_trace(x, keep="CV")
    if x.shape == (8, 8):
        return partial_trace_3q_keep_last(x)
    raise ValueError(f"unsupported joint dimension {x.shape[0]}")


def deutsch_output(u: np.ndarray, rho_i: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """CR output ``Tr_CV[U (rho_i kron tau) U^dag]``."""
    x = _joint(u, rho_i, tau)
    if x.shape == (4, 4):
        return partial_trace(x, keep="CR")
    return trace_out_last(x)


def lambda_channel(u: np.ndarray, rho_i: np.ndarray) -> QuantumChannel:
    return QuantumChannel.from_function(lambda tau: lambda_map(u, rho_i, tau))


def noisy_consistency_map(u: np.ndarray, rho_i: np.ndarray, d: Optional[DaviesParams] = None) -> QuantumChannel:
    """Superoperator of ``D o Lambda`` as a function of the CV state.

    With ``d=None`` the noiseless map ``Lambda`` is returned.
    """
    lam = lambda_channel(u, rho_i)
    if d is None:
        return lam
    return compose(davies_superoperator(d), lam)


def bloch_affine(ch: QuantumChannel) -> tuple[np.ndarray, np.ndarray]:
    """``(M, c)`` such that the channel maps Bloch vector ``r`` to ``M r + c``."""
    if ch.dim != 2:
        raise ValueError("Bloch parameterization needs a qubit channel")
    out_id = ch(IDENTITY_2)
    dev = max(abs(np.trace(out_id) - 2), *(abs(np.trace(ch(s))) for s in PAULIS))
    if dev > 1e-10:
        raise ValueError(f"map is not trace preserving (deviation {dev:.3g})")
    c = np.array([np.trace(s @ out_id).real / 2 for s in PAULIS])
    m = np.array([[np.trace(sk @ ch(sj)).real / 2 for sj in PAULIS] for sk in PAULIS])
    return m, c


@dataclass(frozen=True)
class CtcSolutionSet:
    """Fixed points ``r = particular + sum_k s_k n_k`` inside the Bloch ball.

    ``null_directions`` has shape ``(dimension, 3)`` with orthonormal rows.
    For a one-parameter family ``feasible_interval`` is the closed range of
    ``s`` keeping the state positive; otherwise it is ``None``.
    """

    particular: np.ndarray
    null_directions: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    feasible_interval: Optional[tuple[float, float]] = None
    dimension: int = 0

    @property
    def unique(self) -> bool:
        return self.dimension == 0

    def bloch(self, s=()) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if s.size != self.dimension:
            raise ValueError(f"need {self.dimension} family coordinates, got {s.size}")
        r = np.array(self.particular, dtype=float)
        if self.dimension:
            r = r + s @ self.null_directions
        return r

    def member(self, s=()) -> np.ndarray:
        """Density operator at family coordinates ``s``."""
        if self.dimension == 1 and self.feasible_interval is not None:
            lo, hi = self.feasible_interval
            s0 = float(np.atleast_1d(s)[0])
            if not lo - 1e-12 <= s0 <= hi + 1e-12:
                raise ValueError(f"s = {s0} outside feasible interval [{lo}, {hi}]")
        return state_from_bloch(_clip_ball(self.bloch(s)))

    def contains(self, rho: np.ndarray, tol: float = 1e-10) -> bool:
        r = bloch_from_state(rho)
        delta = r - self.particular
        if self.dimension:
            coords = self.null_directions @ delta
            delta = delta - coords @ self.null_directions
        else:
            coords = np.zeros(0)
        if np.linalg.norm(delta) > tol:
            return False
        if self.dimension == 1 and self.feasible_interval is not None:
            lo, hi = self.feasible_interval
            return lo - tol <= coords[0] <= hi + tol
        return np.linalg.norm(r) <= 1 + tol


def _clip_ball(r: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(r)
    return r / n if n > 1 else r


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def solve_fixed_point(ch: QuantumChannel, rank_tol: float = RANK_TOL) -> CtcSolutionSet:
    """All fixed points of a trace-preserving qubit map.

    Singular values of ``I - M`` below ``rank_tol`` count as null directions;
    the particular solution is the minimum-norm least-squares solution.
    """
    m, c = bloch_affine(ch)
    k = np.eye(3) - m
    uu, sv, vt = np.linalg.svd(k)
    keep = sv >= rank_tol
    r0 = vt[keep].T @ ((uu[:, keep].T @ c) / sv[keep])
    resid = np.linalg.norm(k @ r0 - c)
    if resid > max(1e-9, rank_tol):
        raise InfeasibleFixedPointError(f"consistency equations are inconsistent (residual {resid:.3g})")
    null = np.array([_canonical_sign(v) for v in vt[~keep]]).reshape(-1, 3)
    dim = null.shape[0]
    norm0 = float(np.linalg.norm(r0))
    interval = None
    if dim == 1:
        b = float(null[0] @ r0)
        disc = b * b - (norm0**2 - 1.0)
        if disc < -TOL_POS:
            raise InfeasibleFixedPointError("solution line misses the Bloch ball")
        half = math.sqrt(max(disc, 0.0))
        interval = (-b - half, -b + half)
    elif norm0 > 1 + TOL_POS:
        raise InfeasibleFixedPointError(f"fixed point has |r| = {norm0:.12g} > 1")
    return CtcSolutionSet(particular=r0, null_directions=null, feasible_interval=interval, dimension=dim)


def select_max_entropy(s: CtcSolutionSet) -> np.ndarray:
    """Member of the solution set with the largest von Neumann entropy.

    For a qubit the entropy decreases strictly with the Bloch radius, so on a
    line family the answer is the feasible point closest to the origin: the
    orthogonal projection ``s* = -n . r0`` clipped to the feasible interval.
    """
    if s.dimension == 0:
        return s.member()
    if s.dimension > 1:
        raise UnsupportedAmbiguityError(f"solution family of dimension {s.dimension}; max-entropy selection supports <= 1")
    lo, hi = s.feasible_interval
    best = min(max(-float(s.null_directions[0] @ s.particular), lo), hi)
    return s.member(best)


def _qubit_vec_distance(v1: np.ndarray, v2: np.ndarray) -> float:
    # trace distance of 2x2 Hermitian matrices stored column-stacked (a, c, b, d)
    dv = v1 - v2
    mean = 0.5 * (dv[0] + dv[3]).real
    rad = math.hypot(0.5 * (dv[0] - dv[3]).real, abs(dv[2]))
    return max(abs(mean), rad)


def fixed_point_iterate(
    ch: QuantumChannel,
    start: Optional[np.ndarray] = None,
    tol: float = 1e-12,
    max_iter: int = 10**6,
) -> np.ndarray:
    """Iterate ``tau <- ch(tau)`` until successive iterates are ``tol`` close in trace distance."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if ch.dim != 2:
        raise ValueError("fixed_point_iterate supports qubit maps only")
    s = ch.superop
    v = vec(IDENTITY_2 / 2 if start is None else check_density(start, "start"))
    resid = math.inf
    for _ in range(max_iter):
        nxt = s @ v
        resid = _qubit_vec_distance(nxt, v)
        v = nxt
        if resid < tol:
            out = unvec(v)
            return 0.5 * (out + out.conj().T)
    raise ConvergenceError(f"no convergence after {max_iter} iterations (last step {resid:.3g})", resid)


@dataclass(frozen=True)
class DeutschResult:
    """``selection`` is ``"unique"``, ``"max_entropy_selected"`` or ``"ambiguous"``."""

    tau: np.ndarray
    rho_f: np.ndarray
    solution_set: CtcSolutionSet
    selection: str

    @property
    def entropy(self) -> float:
        return von_neumann_entropy(self.tau)


def solve_deutsch(
    u: np.ndarray, rho_i: np.ndarray, d: Optional[DaviesParams] = None, rank_tol: float = RANK_TOL
) -> DeutschResult:
    """Solve the (noisy) consistency condition and compute the CR output.

    A one-parameter family is resolved with the maximum-entropy rule. Larger
    families are reported as ``"ambiguous"`` with the minimum-norm member.
    """
    rho_i = check_density(rho_i, "rho_i")
    sol = solve_fixed_point(noisy_consistency_map(u, rho_i, d), rank_tol)
    if sol.dimension == 0:
        tau, how = sol.member(), "unique"
    elif sol.dimension == 1:
        tau, how = select_max_entropy(sol), "max_entropy_selected"
    else:
        tau, how = state_from_bloch(_clip_ball(sol.particular)), "ambiguous"
    return DeutschResult(tau=tau, rho_f=deutsch_output(u, rho_i, tau), solution_set=sol, selection=how)


FIG1_INPUTS = ("minus", "zero")


def fig1_noiseless_reference(label: str) -> np.ndarray:
    """Noiseless outputs: ``|1><1|`` for input ``|->`` and ``|0><0|`` for ``|0>``."""
    return {"minus": named_state("1"), "zero": named_state("0")}[_fig1_label(label)]


def _fig1_label(label: str) -> str:
    label = {"-": "minus", "0": "zero"}.get(label, label)
    if label not in FIG1_INPUTS:
        raise ValueError(f"closed forms exist for inputs {FIG1_INPUTS}, got {label!r}")
    return label


def fig1_solve(rho_i, d: Optional[DaviesParams] = None) -> DeutschResult:
    """Distinguishing circuit; ``rho_i`` is a density operator or a state label."""
    if isinstance(rho_i, str):
        rho_i = named_state(rho_i)
    return solve_deutsch(fig1_unitary(), rho_i, d)


def unproven_input() -> np.ndarray:
    """CR input ``|0>_B |0>_M``."""
    return ket_bra("00", "00")


def unproven_solve(d: Optional[DaviesParams] = None) -> DeutschResult:
    return solve_deutsch(fig5_unitary(), unproven_input(), d)


def _closed_form_parts(d: DaviesParams):
    y = math.exp(-d.A * d.t)
    e1 = np.exp(-d.t * (1j * d.omega + d.A + d.G))
    e2 = np.exp(-d.t * (1j * d.omega + d.G))
    return d.p, y, e1, e2


def _qubit(m00, m01) -> np.ndarray:
    return np.array([[m00, m01], [np.conj(m01), 1 - m00]], dtype=complex)


def closed_form_tau(label: str, d: DaviesParams) -> np.ndarray:
    """Analytic CV fixed point of the noisy distinguishing circuit for input ``|->`` or ``|0>``."""
    p, y, e1, e2 = _closed_form_parts(d)
    if _fig1_label(label) == "minus":
        t00 = -2 * (p * y - y - p + 1) / (y - 2)
        t01 = (p * e1 - e2 * p - e1 + e2) / (y - 2)
    else:
        t00 = -(2 * p * y - y - 2 * p + 2) / (y - 2)
        t01 = p * (e1 - e2) / (y - 2)
    return _qubit(t00, t01)


def closed_form_rho_f(label: str, d: DaviesParams) -> np.ndarray:
    p, y, e1, e2 = _closed_form_parts(d)
    sq2 = math.sqrt(2)
    if _fig1_label(label) == "minus":
        f00 = -2 * (p * y - y - p + 1) / (y - 2)
        f01 = -0.5 * (p * e1 - e2 * p - e1 + e2) * sq2 / (y - 2)
    else:
        f00 = -(2 * p * y - y - 2 * p + 2) / (y - 2)
        f01 = 0.5 * p * (e1 - e2) * sq2 / (y - 2)
    return _qubit(f00, f01)
