"""Randomized-graph density matrices, partial transpose, negativity, and rank.

All density matrices here are real symmetric in the computational basis
(every spanning-subgraph projector is), so storage is real float64 and the
single numerical kernel is the symmetric eigendecomposition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SizeLimitError
from .graph import EdgeMask, Graph, subgraph_from_mask
from .state import empty_overlap

MAX_DENSITY_QUBITS = 12
MAX_DENSITY_EDGES = 24
MAX_DIMENSION_EDGES = 20
RANK_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Dense real symmetric 2^n x 2^n operator with unit trace."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        dim = 1 << self.n
        if self.entries.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix for n={self.n}")
        if not np.allclose(self.entries, self.entries.T, atol=1e-12, rtol=0):
            raise ValueError("density matrix is not symmetric")
        if abs(float(np.trace(self.entries)) - 1.0) > 1e-12:
            raise ValueError("density matrix trace differs from 1")

    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


@dataclass(frozen=True)
class Bipartition:
    """Proper bipartition of n qubits; ``side_a`` is a vertex bitmask."""

    n: int
    side_a: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if not 0 < self.side_a < full:
            raise ValueError("side_a must be a nonempty proper vertex subset")

    @property
    def side_b(self) -> int:
        return ((1 << self.n) - 1) ^ self.side_a


def _edge_excitations(g: Graph) -> np.ndarray:
    """Row k = indicator over basis strings that edge k is fully excited."""
    idx = np.arange(1 << g.n, dtype=np.uint32)
    exc = np.empty((g.edge_count, 1 << g.n), dtype=np.uint8)
    for k, (i, j) in enumerate(g.edges):
        exc[k] = ((idx >> i) & (idx >> j) & 1).astype(np.uint8)
    return exc


def _check_density_caps(g: Graph):
    if g.n > MAX_DENSITY_QUBITS:
        raise SizeLimitError(
            f"dense matrices capped at n={MAX_DENSITY_QUBITS}, got {g.n}")
    if g.edge_count > MAX_DENSITY_EDGES:
        raise SizeLimitError(
            f"subgraph mixtures capped at |E|={MAX_DENSITY_EDGES}, got {g.edge_count}")


def subgraph_mixture(g: Graph, weights) -> DensityMatrix:
    """Mixture sum(w_m |F_m><F_m|) over edge-mask keys of ``weights``.

    ``weights`` maps mask bits (int) to probabilities summing to 1.
    """
    _check_density_caps(g)
    exc = _edge_excitations(g)
    dim = 1 << g.n
    rho = np.zeros((dim, dim))
    for mask in sorted(weights):
        w = weights[mask]
        if w == 0.0:
            continue
        on = [k for k in range(g.edge_count) if (mask >> k) & 1]
        if on:
            parity = np.bitwise_xor.reduce(exc[on], axis=0)
            signs = 1.0 - 2.0 * parity
        else:
            signs = np.ones(dim)
        rho += w * np.outer(signs, signs)
    rho /= dim
    return DensityMatrix(g.n, rho)


def randomize(g: Graph, p: float) -> DensityMatrix:
    """Binomial mixture of all spanning-subgraph projectors of ``g``.

    Each edge of ``g`` is kept independently with probability ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"randomness parameter must be in [0, 1], got {p}")
    _check_density_caps(g)
    e = g.edge_count
    weights = {}
    for mask in range(1 << e):
        k = mask.bit_count()
        w = p ** k * (1.0 - p) ** (e - k)
        if w:
            weights[mask] = w
    return subgraph_mixture(g, weights)


def randomized_bell(p: float) -> DensityMatrix:
    """Two-qubit randomized Bell state: explicit 4x4 matrix in 1 and 1-2p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"randomness parameter must be in [0, 1], got {p}")
    q = 1.0 - 2.0 * p
    m = np.array([
        [1.0, 1.0, 1.0, q],
        [1.0, 1.0, 1.0, q],
        [1.0, 1.0, 1.0, q],
        [q, q, q, 1.0],
    ]) / 4.0
    return DensityMatrix(2, m)


def partial_transpose(rho: DensityMatrix, cut: Bipartition) -> np.ndarray:
    """Transpose the side-A tensor factors of ``rho``; involutive."""
    if cut.n != rho.n:
        raise ValueError(f"bipartition is for n={cut.n}, matrix has n={rho.n}")
    n = rho.n
    t = rho.entries.reshape([2] * (2 * n))
    perm = list(range(2 * n))
    for q in range(n):
        if (cut.side_a >> q) & 1:
            row_ax = n - 1 - q
            col_ax = 2 * n - 1 - q
            perm[row_ax], perm[col_ax] = perm[col_ax], perm[row_ax]
    return np.ascontiguousarray(t.transpose(perm).reshape(1 << n, 1 << n))


def negativity(rho: DensityMatrix, cut: Bipartition) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    evals = np.linalg.eigvalsh(partial_transpose(rho, cut))
    return float(-evals[evals < 0.0].sum())


def _symmetric_rank(matrix: np.ndarray, tol: float) -> int:
    evals = np.linalg.eigvalsh(matrix)
    top = float(evals[-1])
    if top <= 0.0:
        return 0
    return int(np.count_nonzero(evals > tol * top))


def numerical_rank(rho: DensityMatrix, tol: float = RANK_TOL) -> int:
    """Number of eigenvalues above ``tol`` relative to the largest one."""
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return _symmetric_rank(rho.entries, tol)


def subgraph_space_dimension(g: Graph) -> int:
    """Dimension of the span of all spanning-subgraph states of ``g``.

    Computed as the numerical rank of the 2^|E| Gram matrix, whose entries
    are exact dyadic overlaps; never materializes 2^n-dimensional vectors.
    """
    e = g.edge_count
    if e > MAX_DIMENSION_EDGES:
        raise SizeLimitError(
            f"Gram construction capped at |E|={MAX_DIMENSION_EDGES}, got {e}")
    if g.n > MAX_DENSITY_QUBITS:
        raise SizeLimitError(
            f"Gram construction capped at n={MAX_DENSITY_QUBITS}, got {g.n}")
    # <F_i|F_j> depends only on the XOR of the two edge masks.
    overlaps = np.array([
        empty_overlap(subgraph_from_mask(g, EdgeMask(m, e)))
        for m in range(1 << e)
    ])
    masks = np.arange(1 << e)
    gram = overlaps[masks[:, None] ^ masks[None, :]]
    return _symmetric_rank(gram, RANK_TOL)


def export_density(rho: DensityMatrix, base_path, *, p: float, graph_spec: str):
    """Write ``<base>.csv`` (row-major entries) and ``<base>.json`` header."""
    base = Path(base_path)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    lines = [",".join(f"{v:.12g}" for v in row) for row in rho.entries]
    csv_path.write_text("\n".join(lines) + "\n")
    json_path.write_text(json.dumps(
        {"n": rho.n, "p": p, "graph_spec": graph_spec}, separators=(",", ":")) + "\n")
    return csv_path, json_path
