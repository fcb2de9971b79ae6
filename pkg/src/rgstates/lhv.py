"""Stabilizer formalism, the graph-state Bell operator, and classical bounds.

Pauli strings are kept in binary symplectic form (x-bits, z-bits, sign) with
X-before-Z site ordering, so that XZ = -iY.  The classical bound maximizes
the Bell operator over all noncontextual +-1 assignments to the local X, Y,
Z observables; each stabilizer element's assignment value is a parity
function of the assignment bits, so all 8^n values come out of one
Walsh-Hadamard transform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .graph import Graph, serialize_graph
from .witness import (DEFAULT_BRACKET, DEFAULT_THRESHOLD_TOL, WitnessEvaluation,
                      _overlap_at_level, find_threshold)

MAX_BELL_QUBITS = 10
MAX_LHV_QUBITS = 8


@dataclass(frozen=True)
class StabilizerElement:
    """Hermitian Pauli string in binary symplectic form with a +-1 sign."""

    n: int
    x_bits: int
    z_bits: int
    sign: int


@dataclass(frozen=True)
class LhvAssignment:
    """Deterministic +-1 values for the local X, Y, Z observables of each qubit."""

    a_x: tuple[int, ...]
    a_y: tuple[int, ...]
    a_z: tuple[int, ...]

    def __post_init__(self):
        for vals in (self.a_x, self.a_y, self.a_z):
            if len(vals) != len(self.a_x) or any(v not in (-1, 1) for v in vals):
                raise ValueError("assignments must be +-1 per qubit, equal lengths")


def stabilizer_element(g: Graph, j_mask: int) -> StabilizerElement:
    """Product of the generators X_i Z_N(i) over the vertices in ``j_mask``."""
    if not 0 <= j_mask < (1 << g.n):
        raise ValueError(f"vertex subset {j_mask:#x} out of range for n={g.n}")
    x = z = 0
    phase = 0  # exponent of i in the X-before-Z normal form
    for i in range(g.n):
        if (j_mask >> i) & 1:
            phase = (phase + 2 * ((z >> i) & 1)) % 4
            x ^= 1 << i
            z ^= g.adjacency[i]
    y_sites = (x & z).bit_count()
    k = (phase - y_sites) % 4
    assert k % 2 == 0, "stabilizer product must resolve to a real sign"
    return StabilizerElement(g.n, x, z, 1 if k == 0 else -1)


def _bit_parity(values: np.ndarray) -> np.ndarray:
    v = values.astype(np.uint32).copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(np.int8)


def stabilizer_matrix(elem: StabilizerElement) -> np.ndarray:
    """Dense complex matrix of a stabilizer element."""
    dim = 1 << elem.n
    idx = np.arange(dim, dtype=np.uint32)
    phase = elem.sign * (1j) ** ((elem.x_bits & elem.z_bits).bit_count() % 4)
    col_signs = 1.0 - 2.0 * _bit_parity(idx & np.uint32(elem.z_bits))
    m = np.zeros((dim, dim), dtype=complex)
    m[idx ^ np.uint32(elem.x_bits), idx] = phase * col_signs
    return m


def apply_stabilizer(elem: StabilizerElement, vec: np.ndarray) -> np.ndarray:
    """Apply a stabilizer element to a state vector without building its matrix."""
    idx = np.arange(len(vec), dtype=np.uint32)
    phase = elem.sign * (1j) ** ((elem.x_bits & elem.z_bits).bit_count() % 4)
    col_signs = 1.0 - 2.0 * _bit_parity(idx & np.uint32(elem.z_bits))
    out = np.zeros(len(vec), dtype=complex)
    out[idx ^ np.uint32(elem.x_bits)] = phase * col_signs * vec
    return out


def bell_operator_matrix(g: Graph) -> np.ndarray:
    """Average of all 2^n stabilizer elements; equals the graph-state projector."""
    if g.n > MAX_BELL_QUBITS:
        raise SizeLimitError(f"Bell operator capped at n={MAX_BELL_QUBITS}, got {g.n}")
    dim = 1 << g.n
    idx = np.arange(dim, dtype=np.uint32)
    acc = np.zeros((dim, dim), dtype=complex)
    for j_mask in range(dim):
        elem = stabilizer_element(g, j_mask)
        phase = elem.sign * (1j) ** ((elem.x_bits & elem.z_bits).bit_count() % 4)
        col_signs = 1.0 - 2.0 * _bit_parity(idx & np.uint32(elem.z_bits))
        acc[idx ^ np.uint32(elem.x_bits), idx] += phase * col_signs
    acc /= dim
    assert np.abs(acc.imag).max() < 1e-12
    return np.ascontiguousarray(acc.real)


def _assignment_bit_mask(elem: StabilizerElement) -> int:
    """Bit positions (3k, 3k+1, 3k+2) = (X, Y, Z) of qubit k in assignment space."""
    mask = 0
    for k in range(elem.n):
        x_k = (elem.x_bits >> k) & 1
        z_k = (elem.z_bits >> k) & 1
        if x_k and not z_k:
            mask |= 1 << (3 * k)
        elif x_k and z_k:
            mask |= 1 << (3 * k + 1)
        elif z_k:
            mask |= 1 << (3 * k + 2)
    return mask


def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    size = len(a)
    h = 1
    while h < size:
        a = a.reshape(size // (2 * h), 2, h)
        top = a[:, 0, :].copy()
        a[:, 0, :] = top + a[:, 1, :]
        a[:, 1, :] = top - a[:, 1, :]
        a = a.reshape(size)
        h *= 2
    return a


def bell_expectation_lhv(g: Graph, assignment: LhvAssignment) -> float:
    """Value of the Bell operator under one noncontextual assignment."""
    if len(assignment.a_x) != g.n:
        raise ValueError(f"assignment is for {len(assignment.a_x)} qubits, graph has {g.n}")
    total = 0
    for j_mask in range(1 << g.n):
        elem = stabilizer_element(g, j_mask)
        value = elem.sign
        for k in range(g.n):
            x_k = (elem.x_bits >> k) & 1
            z_k = (elem.z_bits >> k) & 1
            if x_k and not z_k:
                value *= assignment.a_x[k]
            elif x_k and z_k:
                value *= assignment.a_y[k]
            elif z_k:
                value *= assignment.a_z[k]
        total += value
    return total / (1 << g.n)


def lhv_bound(g: Graph) -> float:
    """Classical bound D(g): max |<B>| over all 8^n noncontextual assignments.

    Every assignment value is sign_J * (-1)^(mask_J . b) summed over J, so a
    single Walsh-Hadamard transform over the 3n assignment bits evaluates
    the whole search space exactly.
    """
    if g.n > MAX_LHV_QUBITS:
        raise SizeLimitError(f"LHV search capped at n={MAX_LHV_QUBITS}, got {g.n}")
    weights = np.zeros(1 << (3 * g.n), dtype=np.int64)
    for j_mask in range(1 << g.n):
        elem = stabilizer_element(g, j_mask)
        weights[_assignment_bit_mask(elem)] += elem.sign
    transformed = _walsh_hadamard(weights)
    return float(np.abs(transformed).max()) / (1 << g.n)


def lhv_witness_value(g: Graph, p: float, level, d: float,
                      graph_spec: str | None = None) -> WitnessEvaluation:
    """Expectation of the LHV witness D(g)*1 - |g><g| on the randomized state.

    A negative value excludes any local-hidden-variable description.
    """
    if not 0.0 < d <= 1.0:
        raise ValueError(f"classical bound must be in (0, 1], got {d}")
    ov = _overlap_at_level(g, p, level)
    return WitnessEvaluation(
        graph_spec=graph_spec if graph_spec is not None else serialize_graph(g),
        p=p,
        level=str(level),
        overlap_value=ov,
        witness_value=d - ov,
        constant_term=d,
    )


def lhv_threshold(g: Graph, level=2, d: float | None = None,
                  tol: float = DEFAULT_THRESHOLD_TOL, bracket=DEFAULT_BRACKET):
    """Randomness threshold above which the LHV witness turns negative.

    ``d`` defaults to the brute-force classical bound; None when the witness
    has no zero crossing on the bracket.
    """
    bound = lhv_bound(g) if d is None else d
    if not 0.0 < bound <= 1.0:
        raise ValueError(f"classical bound must be in (0, 1], got {bound}")
    return find_threshold(lambda p: bound - _overlap_at_level(g, p, level),
                          bracket=bracket, tol=tol)
