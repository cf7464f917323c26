"""Post-selected teleportation (P-CTC) circuit with a thermally disturbed Bell pair.

Qubits are ordered (SYS, C, B). The resource ``chi_CB`` is ``|Phi><Phi|``
with the Davies map applied to C only, the circuit applies the distinguishing
unitary to (SYS, C), and (C, B) is post-selected on ``|Phi>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import DaviesParams, davies_apply
from .errors import ZeroPostselectionError
from .gates import pctc_system_unitary
from .qmat import IDENTITY_2, check_density, is_pure, ket_bra, matrix_unit, named_state

ZERO_WEIGHT = 1e-14


def bell_ket() -> np.ndarray:
    """``|Phi> = (|00> + |11>) / sqrt(2)``."""
    return np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def bell_projector() -> np.ndarray:
    phi = bell_ket()
    return np.outer(phi, phi.conj())


@dataclass(frozen=True)
class BellCoefficients:
    """Entries of the noisy Bell state, normalized so that they sum to one.

    ``a0, b0, a1, b1`` weight ``|00>, |10>, |01>, |11>`` (C first). ``c`` is
    ``exp(-i omega t - G t) / 2``, the ``<00|chi|11>`` entry; ``<11|chi|00>``
    is its conjugate.
    """

    a0: float
    a1: float
    b0: float
    b1: float
    c: complex

    def matrix(self) -> np.ndarray:
        return (
            self.a0 * ket_bra("00", "00")
            + self.b0 * ket_bra("10", "10")
            + self.c * ket_bra("00", "11")
            + np.conj(self.c) * ket_bra("11", "00")
            + self.a1 * ket_bra("01", "01")
            + self.b1 * ket_bra("11", "11")
        )


def bell_coefficients(d: DaviesParams) -> BellCoefficients:
    x = d.relaxed_fraction
    p = d.p
    return BellCoefficients(
        a0=(1 - x * p) / 2,
        a1=(1 - p) * x / 2,
        b0=p * x / 2,
        b1=(1 - (1 - p) * x) / 2,
        c=complex(np.exp(-1j * d.omega * d.t - d.G * d.t)) / 2,
    )


def noisy_bell(d: DaviesParams) -> np.ndarray:
    """``(D kron I)|Phi><Phi|`` on (C, B)."""
    # |Phi><Phi| = 1/2 sum_ij |i><j| kron |i><j|
    return sum(
        0.5 * np.kron(davies_apply(d, matrix_unit(i, j, 2)), matrix_unit(i, j, 2))
        for i in range(2)
        for j in range(2)
    )


@dataclass(frozen=True)
class PctcResult:
    rho_f: np.ndarray
    postselection_weight: float

    @property
    def unnormalized(self) -> np.ndarray:
        return self.postselection_weight * self.rho_f


def _normalize(raw: np.ndarray) -> PctcResult:
    raw = 0.5 * (raw + raw.conj().T)
    w = float(np.trace(raw).real)
    if w < ZERO_WEIGHT:
        raise ZeroPostselectionError(f"postselection probability zero (weight {w:.3g})")
    return PctcResult(rho_f=raw / w, postselection_weight=w)


def pctc_unnormalized(rho_i: np.ndarray, d: DaviesParams) -> np.ndarray:
    """``Tr_CB{|Phi><Phi|_CB U [rho_i kron chi_CB] U^dag}`` before renormalization."""
    rho_i = np.asarray(rho_i, dtype=complex)
    if rho_i.shape != (2, 2):
        raise ValueError(f"system input must be a qubit, got shape {rho_i.shape}")
    u = pctc_system_unitary()
    x = u @ np.kron(rho_i, noisy_bell(d)) @ u.conj().T
    proj = np.kron(IDENTITY_2, bell_projector())
    y = (proj @ x).reshape(2, 4, 2, 4)
    return np.trace(y, axis1=1, axis2=3)


def pctc_output(rho_i: np.ndarray, d: DaviesParams) -> PctcResult:
    return _normalize(pctc_unnormalized(check_density(rho_i, "rho_i"), d))


def l_operators() -> tuple[np.ndarray, ...]:
    """Sandwiches ``<Phi|_CB U |xy>_CB`` as operators on SYS.

    Returned in the order ``L_I .. L_VI`` for ``xy = 00, 10, 00, 11, 01, 11``.
    """
    u = pctc_system_unitary()
    phi = bell_ket()

    def sandwich(bits: str) -> np.ndarray:
        ket_cb = np.zeros(4, dtype=complex)
        ket_cb[int(bits, 2)] = 1.0
        bra = np.kron(IDENTITY_2, phi.conj()[None, :])  # 2 x 8
        ket = np.kron(IDENTITY_2, ket_cb[:, None])  # 8 x 2
        return bra @ u @ ket

    return tuple(sandwich(b) for b in ("00", "10", "00", "11", "01", "11"))


def pctc_output_via_l(rho_i: np.ndarray, d: DaviesParams) -> PctcResult:
    """Same as :func:`pctc_output` for a pure input, assembled from the six L-terms."""
    rho_i = check_density(rho_i, "rho_i")
    if rho_i.shape != (2, 2) or not is_pure(rho_i):
        raise ValueError("the L-operator decomposition needs a pure single-qubit input")
    k = bell_coefficients(d)
    l1, l2, l3, l4, l5, l6 = l_operators()

    def term(w, left, right):
        return w * left @ rho_i @ right.conj().T

    raw = (
        term(k.a0, l1, l1)
        + term(k.b0, l2, l2)
        + term(k.c, l3, l4)
        + term(np.conj(k.c), l4, l3)
        + term(k.a1, l5, l5)
        + term(k.b1, l6, l6)
    )
    return _normalize(raw)


def quoted_unnormalized_output(label: str, d: DaviesParams) -> np.ndarray:
    """Closed-form diagonal outputs for inputs ``|1>`` and ``|+>`` with normalization dropped.

    These are the expressions circulated for this circuit. They agree with
    :func:`pctc_output` when ``A t = 0`` but not for ``A t > 0``: the relative
    weight of the two diagonal entries differs (see README).
    """
    x = d.relaxed_fraction
    p = d.p
    if label in ("1", "one"):
        return np.diag([0.5 * (1 - p) * x, 0.5 * (1 + (2 * p - 1) * x)]).astype(complex)
    if label in ("plus", "+"):
        return np.diag([0.5 * (1 + (1 - 2 * p) * x), 0.5 * p * x]).astype(complex)
    raise ValueError(f"closed form only for inputs '1' and 'plus', got {label!r}")


def distinguishing_pair(d: DaviesParams) -> tuple[PctcResult, PctcResult]:
    """Outputs for the non-orthogonal inputs ``|1>`` and ``|+>``."""
    return pctc_output(named_state("1"), d), pctc_output(named_state("plus"), d)

