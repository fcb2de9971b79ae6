"""Pure graph-state vectors in sign representation and exact overlaps.

A graph state's computational-basis amplitudes are all +-2^(-n/2); only the
sign pattern is stored.  Overlaps are therefore exact dyadic rationals,
accumulated as integers and divided by 2^n at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphSpecError, SizeLimitError
from .graph import Graph, generate, symmetric_difference

MAX_STATE_QUBITS = 20


@dataclass(frozen=True)
class GraphStateVector:
    """Sign pattern of a graph state over the 2^n computational basis strings."""

    n: int
    signs: np.ndarray  # int8, entries in {+1, -1}, signs[0] == +1


def graph_state_vector(g: Graph) -> GraphStateVector:
    """Sign at basis string x = parity of edges with both endpoints set in x."""
    if g.n > MAX_STATE_QUBITS:
        raise SizeLimitError(f"state vectors capped at n={MAX_STATE_QUBITS}, got {g.n}")
    idx = np.arange(1 << g.n, dtype=np.uint32)
    parity = np.zeros(1 << g.n, dtype=np.uint8)
    for i, j in g.edges:
        parity ^= ((idx >> i) & (idx >> j) & 1).astype(np.uint8)
    signs = (1 - 2 * parity.astype(np.int8)).astype(np.int8)
    return GraphStateVector(g.n, signs)


def _gray_signed_sum(adjacency) -> int:
    """Sum of (-1)^(excited-edge count) over all basis strings.

    Walks the basis in Gray-code order; each step flips one bit and updates
    the excited-edge parity from that bit's currently-set neighbors.
    """
    n = len(adjacency)
    total = 1  # x = 0 contributes +1
    parity = 0
    x = 0
    for k in range(1, 1 << n):
        b = (k & -k).bit_length() - 1
        x ^= 1 << b
        parity ^= (adjacency[b] & x).bit_count() & 1
        total += 1 - (parity << 1)
    return total


def empty_overlap(g: Graph) -> float:
    """Amplitude of ``|g>`` on the uniform (empty-graph) state, 2^-n * sum of signs."""
    if g.n > MAX_STATE_QUBITS:
        raise SizeLimitError(f"overlap capped at n={MAX_STATE_QUBITS}, got {g.n}")
    return _gray_signed_sum(g.adjacency) / (1 << g.n)


def overlap(g: Graph, f: Graph) -> float:
    """Scalar product <g|f>, reduced to the empty-graph overlap of g XOR f."""
    if g.n != f.n:
        raise ValueError(f"qubit counts differ: {g.n} != {f.n}")
    return empty_overlap(symmetric_difference(g, f))


def closed_form_overlap_sq(spec: str) -> float:
    """Squared empty-graph overlap for paths, cycles, and stars.

    path:n -> 1/2^(2*floor(n/2)); cycle:2k -> 1/2^(2k-2); odd cycles -> 0;
    star:n -> 1/4.
    """
    g = generate(spec)  # validates sizes
    family = spec.strip().split(":", 1)[0]
    n = g.n
    if family == "path":
        return 1.0 / (1 << (2 * (n // 2)))
    if family == "cycle":
        return 0.0 if n % 2 else 1.0 / (1 << (n - 2))
    if family == "star":
        if n < 2:
            raise GraphSpecError("star overlap closed form needs n >= 2")
        return 0.25
    raise GraphSpecError(f"no closed-form overlap for family {family!r}")
