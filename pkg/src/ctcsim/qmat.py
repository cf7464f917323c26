"""Dense complex matrix primitives for one-, two- and three-qubit states.

Conventions
-----------
Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Basis ordering is big-endian: in ``|ij>`` the first label ``i`` is the most
significant bit, so ``|ij>`` has index ``2*i + j``. Two-qubit objects are
ordered (CR, CV); three-qubit objects are ordered (B, M, T).
"""
from __future__ import annotations

import numpy as np

TOL_HERM = 1e-12
TOL_TRACE = 1e-12
TOL_POS = 1e-10
TOL_NORM = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
IDENTITY_2 = np.eye(2, dtype=complex)

_SQ2 = np.sqrt(2.0)
KETS = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "plus": np.array([1, 1], dtype=complex) / _SQ2,
    "minus": np.array([1, -1], dtype=complex) / _SQ2,
}
_ALIASES = {"zero": "0", "one": "1", "+": "plus", "-": "minus"}


def matrix_unit(i: int, j: int, dim: int) -> np.ndarray:
    """Return ``|i><j|`` as a ``dim x dim`` matrix."""
    if not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"matrix unit ({i}, {j}) out of range for dimension {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def ket_bra(row: str, col: str) -> np.ndarray:
    """Matrix unit written with bit strings, e.g. ``ket_bra("01", "10") = |01><10|``."""
    if len(row) != len(col) or not set(row + col) <= {"0", "1"}:
        raise ValueError(f"bad bit labels {row!r}, {col!r}")
    return matrix_unit(int(row, 2), int(col, 2), 2 ** len(row))


def tensor(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left to right."""
    if not mats:
        raise ValueError("tensor() needs at least one operand")
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def _require_shape(x: np.ndarray, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {x.shape}")
    return x


def partial_trace(x: np.ndarray, keep: str) -> np.ndarray:
    """Reduce a two-qubit (CR, CV) operator to one of its qubits.

    ``keep="CV"`` traces out the CR qubit (``Tr_CR X``), ``keep="CR"`` traces
    out the CV qubit (``Tr_CV X``). Entries are the explicit two-term sums
    ``x(ij, kl) = <ij|X|kl>``.
    """
    x = _require_shape(x, 4)

    def e(row: str, col: str) -> complex:
        return x[int(row, 2), int(col, 2)]

    if keep == "CV":
        return np.array(
            [
                [e("00", "00") + e("10", "10"), e("00", "01") + e("10", "11")],
                [e("01", "00") + e("11", "10"), e("01", "01") + e("11", "11")],
            ],
            dtype=complex,
        )
    if keep == "CR":
        return np.array(
            [
                [e("00", "00") + e("01", "01"), e("00", "10") + e("01", "11")],
                [e("10", "00") + e("11", "01"), e("10", "10") + e("11", "11")],
            ],
            dtype=complex,
        )
    raise ValueError(f"keep must be 'CR' or 'CV', got {keep!r}")


def partial_trace_3q_keep_last(x: np.ndarray) -> np.ndarray:
    """Trace out the two leading qubits (B, M) of a three-qubit operator."""
    x = _require_shape(x, 8)
    out = np.zeros((2, 2), dtype=complex)
    for m in range(2):
        for n in range(2):
            # four-coefficient sum over the (B, M) labels
            out[m, n] = sum(x[4 * b + 2 * c + m, 4 * b + 2 * c + n] for b in range(2) for c in range(2))
    return out


def hermitian_eigenvalues(m: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dag| = {dev:.3g})")
    return np.linalg.eigvalsh((m + m.conj().T) / 2)


def check_density(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    """Validate a density operator and return it as a complex array.

    Raises ValueError when ``rho`` is not square with power-of-two dimension,
    Hermitian, unit-trace and numerically positive.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {rho.shape}")
    d = rho.shape[0]
    if d < 2 or d & (d - 1):
        raise ValueError(f"{name}: dimension {d} is not a power of two")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > TOL_HERM:
        raise ValueError(f"{name}: not Hermitian (deviation {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1) > TOL_TRACE:
        raise ValueError(f"{name}: trace {tr.real:.15g} != 1")
    lam = np.linalg.eigvalsh(rho)
    if lam[0] < -TOL_POS:
        raise ValueError(f"{name}: negative eigenvalue {lam[0]:.3g}")
    return rho


def is_density(rho: np.ndarray) -> bool:
    try:
        check_density(rho)
    except ValueError:
        return False
    return True


def nqubits(rho: np.ndarray) -> int:
    return int(np.log2(np.asarray(rho).shape[0]))


def projector(psi: np.ndarray) -> np.ndarray:
    """``|psi><psi|`` for a unit vector ``psi``."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm2 = np.vdot(psi, psi).real
    if abs(norm2 - 1) > TOL_NORM:
        raise ValueError(f"state vector has squared norm {norm2:.15g}, expected 1")
    return np.outer(psi, psi.conj())


def named_ket(label: str) -> np.ndarray:
    """One of ``0, 1, plus, minus`` (aliases ``zero, one, +, -``)."""
    key = _ALIASES.get(label, label)
    try:
        return KETS[key].copy()
    except KeyError:
        raise ValueError(f"unknown state label {label!r}; use one of {sorted(KETS)}") from None


def named_state(label: str) -> np.ndarray:
    return projector(named_ket(label))


def is_pure(rho: np.ndarray, tol: float = 1e-10) -> bool:
    rho = np.asarray(rho, dtype=complex)
    return abs(np.trace(rho @ rho).real - 1.0) < tol


def trace_distance(rho: np.ndarray, xi: np.ndarray) -> float:
    """Half the trace norm of ``rho - xi``."""
    rho = np.asarray(rho, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    if rho.shape != xi.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {xi.shape}")
    lam = hermitian_eigenvalues(rho - xi)
    return 0.5 * float(np.sum(np.abs(lam)))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits, ``-sum(l * log2(l))`` with ``0 log 0 = 0``."""
    lam = hermitian_eigenvalues(rho)
    if lam[0] < -TOL_POS:
        raise ValueError(f"negative eigenvalue {lam[0]:.3g}; not a density operator")
    lam = np.clip(lam, 0.0, None)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)) + 0.0)


def bloch_from_state(rho: np.ndarray) -> np.ndarray:
    """Bloch vector ``r`` with ``rho = (I + r . sigma) / 2``."""
    rho = _require_shape(rho, 2)
    return np.array([np.trace(rho @ s).real for s in PAULIS])


def state_from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
    if np.linalg.norm(r) > 1 + TOL_POS:
        raise ValueError(f"|r| = {np.linalg.norm(r):.15g} exceeds 1")
    return 0.5 * (IDENTITY_2 + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z)


def parse_state(spec) -> np.ndarray:
    """Density operator from a label (``"minus"``) or a Bloch triple.

    Strings of the form ``"x,y,z"`` are read as Bloch triples.
    """
    if isinstance(spec, str):
        if "," in spec:
            return state_from_bloch([float(v) for v in spec.split(",")])
        return named_state(spec)
    return state_from_bloch(spec)


def random_pure_ket(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Random full-rank density operator (Ginibre ensemble)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def trace_out_last(x: np.ndarray) -> np.ndarray:
    """Trace out the last qubit of an ``n``-qubit operator."""
    x = np.asarray(x, dtype=complex)
    d = x.shape[0] // 2
    if x.shape != (2 * d, 2 * d) or d < 1:
        raise ValueError(f"expected a 2d x 2d matrix, got shape {x.shape}")
    return np.trace(x.reshape(d, 2, d, 2), axis1=1, axis2=3)
