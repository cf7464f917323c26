"""Unitaries for the three CTC circuits.

Qubit 0 is the leftmost tensor factor. The Deutsch distinguishing circuit
acts on (CR, CV), the unproven-theorem circuit on (B, M, T) and the
post-selected circuit on (SYS, C, B).
"""
from __future__ import annotations

import numpy as np

from .qmat import IDENTITY_2, KETS, matrix_unit, tensor

TOL_UNITARY = 1e-12


def check_unitary(u: np.ndarray, tol: float = TOL_UNITARY) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if dev > tol:
        raise ValueError(f"matrix is not unitary (max |U^dag U - I| = {dev:.3g})")
    return u


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _permutation_unitary(nqubits: int, fn) -> np.ndarray:
    """Unitary mapping basis state ``bits`` to ``fn(bits)`` (bits as a list, qubit 0 first)."""
    dim = 2**nqubits
    u = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (nqubits - 1 - q)) & 1 for q in range(nqubits)]
        out = fn(list(bits))
        row = int("".join(map(str, out)), 2)
        u[row, col] = 1.0
    return u


def _check_qubits(nqubits: int, *qs: int) -> None:
    if len(set(qs)) != len(qs):
        raise ValueError(f"qubit indices must be distinct, got {qs}")
    for q in qs:
        if not 0 <= q < nqubits:
            raise ValueError(f"qubit index {q} out of range for {nqubits} qubits")


def swap(q1: int = 0, q2: int = 1, nqubits: int = 2) -> np.ndarray:
    _check_qubits(nqubits, q1, q2)

    def fn(b):
        b[q1], b[q2] = b[q2], b[q1]
        return b

    return _permutation_unitary(nqubits, fn)


def cnot(control: int, target: int, nqubits: int) -> np.ndarray:
    _check_qubits(nqubits, control, target)

    def fn(b):
        b[target] ^= b[control]
        return b

    return _permutation_unitary(nqubits, fn)


def controlled_hadamard() -> np.ndarray:
    """Hadamard on qubit 1 controlled by qubit 0."""
    return tensor(matrix_unit(0, 0, 2), IDENTITY_2) + tensor(matrix_unit(1, 1, 2), hadamard())


def fig1_unitary() -> np.ndarray:
    """Distinguishing-circuit coupling ``H_C SWAP`` on (CR, CV).

    Equivalently ``|00><00| + |01><10| + |1+><01| + |1-><11|``.
    """
    return controlled_hadamard() @ swap()


def fig1_unitary_projector_form() -> np.ndarray:
    k0, k1, kp, km = KETS["0"], KETS["1"], KETS["plus"], KETS["minus"]

    def kb(ket, bra):
        return np.outer(ket, bra.conj())

    return (
        kb(tensor(k0, k0), tensor(k0, k0))
        + kb(tensor(k0, k1), tensor(k1, k0))
        + kb(tensor(k1, kp), tensor(k0, k1))
        + kb(tensor(k1, km), tensor(k1, k1))
    )


def fig5_factors() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(SWAP_MT, CNOT_BM, CNOT_TB)`` on (B, M, T)."""
    return swap(1, 2, 3), cnot(0, 1, 3), cnot(2, 0, 3)


def fig5_unitary() -> np.ndarray:
    """Unproven-theorem coupling; ``CNOT_TB`` acts first, ``SWAP_MT`` last."""
    swap_mt, cnot_bm, cnot_tb = fig5_factors()
    return swap_mt @ cnot_bm @ cnot_tb


def pctc_system_unitary() -> np.ndarray:
    """:func:`fig1_unitary` on (SYS, C) with identity on the Bell partner B."""
    return tensor(fig1_unitary(), IDENTITY_2)
