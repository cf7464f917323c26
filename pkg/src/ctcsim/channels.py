"""Davies weak-coupling thermal channel on a single qubit.

Superoperators use the column-stacking convention::

    vec([[a, b],
         [c, d]]) = (a, c, b, d)

so that ``vec(A X B) = (B^T kron A) vec(X)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .qmat import TOL_POS, matrix_unit


def vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    d = int(round(math.sqrt(v.size)))
    return v.reshape((d, d), order="F")


@dataclass(frozen=True)
class DaviesParams:
    """Parameters ``(p, A, G, omega, t)`` of a Davies map.

    ``p`` is the excited-state Gibbs weight, ``A`` the energy-relaxation rate,
    ``G`` the dephasing rate, ``omega`` the level splitting and ``t`` the
    exposure time. Construction enforces ``G >= A/2 >= 0`` and ``p in [0, 1/2]``;
    use :meth:`unchecked` to build parameters outside that region.
    """

    p: float
    A: float
    G: float
    omega: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        for name in ("p", "A", "G", "omega", "t"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not 0.0 <= self.p <= 0.5:
            raise ValueError(f"p = {self.p} outside [0, 1/2]")
        if self.A < 0:
            raise ValueError(f"A = {self.A} violates A >= 0")
        if self.G < self.A / 2:
            raise ValueError(f"G = {self.G}, A = {self.A} violates G >= A/2")
        if self.t < 0:
            raise ValueError(f"t = {self.t} must be non-negative")

    @classmethod
    def unchecked(cls, p, A, G, omega=1.0, t=0.0) -> "DaviesParams":
        """Build parameters without validation (for probing invalid channels)."""
        obj = object.__new__(cls)
        for name, v in zip(("p", "A", "G", "omega", "t"), (p, A, G, omega, t)):
            object.__setattr__(obj, name, float(v))
        return obj

    def replace(self, **changes) -> "DaviesParams":
        fields = dict(p=self.p, A=self.A, G=self.G, omega=self.omega, t=self.t)
        fields.update(changes)
        return DaviesParams(**fields)

    @property
    def relaxed_fraction(self) -> float:
        """``1 - exp(-A t)``."""
        return -math.expm1(-self.A * self.t)

    @property
    def coherence_factor(self) -> complex:
        """Multiplier of the ``|1><0|`` element, ``exp(i omega t - G t)``."""
        return complex(np.exp(1j * self.omega * self.t - self.G * self.t))


def temperature_to_p(omega: float, T: float) -> float:
    """Excited-state weight ``1 / (1 + exp(omega / T))`` of a qubit at temperature ``T``.

    ``T = 0`` gives 0 and ``T = inf`` gives 1/2.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    if T == 0:
        return 0.0
    if math.isinf(T):
        return 0.5
    x = omega / T
    if x > 700:
        return math.exp(-x)
    return 1.0 / (1.0 + math.exp(x))


def gibbs_state(p: float) -> np.ndarray:
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"p = {p} outside [0, 1/2]")
    return np.diag([1.0 - p, p]).astype(complex)


def davies_basis_action(params: DaviesParams) -> dict:
    """Images of the four matrix units ``|i><j|`` under the Davies map."""
    p, x, f = params.p, params.relaxed_fraction, params.coherence_factor
    e00, e01, e10, e11 = (matrix_unit(i, j, 2) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))
    return {
        (1, 1): (1 - (1 - p) * x) * e11 + (1 - p) * x * e00,
        (1, 0): f * e10,
        (0, 1): np.conj(f) * e01,
        (0, 0): p * x * e11 + (1 - x * p) * e00,
    }


def davies_apply(params: DaviesParams, rho: np.ndarray) -> np.ndarray:
    """Apply the Davies map by linear extension of its action on matrix units."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"Davies map acts on one qubit, got shape {rho.shape}")
    images = davies_basis_action(params)
    return sum(rho[i, j] * images[i, j] for (i, j) in images)


@dataclass(frozen=True)
class QuantumChannel:
    """Linear map on ``d x d`` operators stored as a ``d^2 x d^2`` superoperator."""

    superop: np.ndarray

    def __post_init__(self):
        s = np.array(self.superop, dtype=complex)
        n = s.shape[0]
        d = int(round(math.sqrt(n)))
        if s.ndim != 2 or s.shape != (n, n) or d * d != n:
            raise ValueError(f"superoperator must be d^2 x d^2, got shape {s.shape}")
        s.setflags(write=False)
        object.__setattr__(self, "superop", s)

    @property
    def dim(self) -> int:
        return int(round(math.sqrt(self.superop.shape[0])))

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return unvec(self.superop @ vec(rho))

    @classmethod
    def identity(cls, dim: int = 2) -> "QuantumChannel":
        return cls(np.eye(dim * dim, dtype=complex))

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], dim: int = 2) -> "QuantumChannel":
        """Tabulate a linear map by evaluating it on every matrix unit."""
        cols = [vec(fn(matrix_unit(i, j, dim))) for j in range(dim) for i in range(dim)]
        return cls(np.column_stack(cols))

    def choi(self) -> np.ndarray:
        """Choi matrix ``sum_ij |i><j| kron E(|i><j|)``."""
        d = self.dim
        out = np.zeros((d * d, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                out += np.kron(matrix_unit(i, j, d), self(matrix_unit(i, j, d)))
        return out

    def dual(self, x: np.ndarray) -> np.ndarray:
        """Heisenberg-picture action ``E^dag(X)``."""
        return unvec(self.superop.conj().T @ vec(x))


def davies_superoperator(params: DaviesParams) -> QuantumChannel:
    p, x, f = params.p, params.relaxed_fraction, params.coherence_factor
    # rows/cols ordered (00, 10, 01, 11) by column stacking
    s = np.array(
        [
            [1 - p * x, 0, 0, (1 - p) * x],
            [0, f, 0, 0],
            [0, 0, np.conj(f), 0],
            [p * x, 0, 0, 1 - (1 - p) * x],
        ],
        dtype=complex,
    )
    return QuantumChannel(s)


def compose(ch1: QuantumChannel, ch2: QuantumChannel) -> QuantumChannel:
    """``ch1 o ch2``: apply ``ch2`` first."""
    if ch1.dim != ch2.dim:
        raise ValueError(f"cannot compose channels on dimensions {ch1.dim} and {ch2.dim}")
    return QuantumChannel(ch1.superop @ ch2.superop)


@dataclass(frozen=True)
class CptpReport:
    """Outcome of :func:`is_cptp`.

    ``status`` is ``"valid"``, ``"trace_violation"`` or ``"cp_violation"``.
    ``trace_deviation`` is ``max |E^dag(I) - I|`` and ``min_choi_eigenvalue``
    the smallest Choi eigenvalue.
    """

    status: str
    trace_deviation: float
    min_choi_eigenvalue: float

    @property
    def valid(self) -> bool:
        return self.status == "valid"


def is_cptp(ch: QuantumChannel, tp_tol: float = 1e-12, cp_tol: float = TOL_POS) -> CptpReport:
    eye = np.eye(ch.dim, dtype=complex)
    delta = float(np.max(np.abs(ch.dual(eye) - eye)))
    choi = ch.choi()
    lam_min = float(np.linalg.eigvalsh((choi + choi.conj().T) / 2)[0])
    if delta > tp_tol:
        status = "trace_violation"
    elif lam_min < -cp_tol:
        status = "cp_violation"
    else:
        status = "valid"
    return CptpReport(status, delta, lam_min)

