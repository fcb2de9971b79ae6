"""Monte Carlo simulation of the probabilistic edge-creation channel.

The per-edge gates all commute, so a preparation run is sampled directly as
an edge bitmask with independent Bernoulli(p) bits.  Shots are drawn in
fixed-size batches whose Philox streams are keyed by (seed, batch index),
making parallel and serial runs bitwise identical.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .graph import EdgeMask, Graph
from .density import DensityMatrix, subgraph_mixture

MAX_SAMPLE_EDGES = 63
BATCH_SHOTS = 1 << 14


@dataclass(frozen=True)
class PreparationSample:
    """Edge-mask histogram from repeated preparation runs."""

    shots: int
    seed: int
    counts: dict  # EdgeMask -> occurrence count

    @property
    def width(self) -> int:
        return next(iter(self.counts)).width

    def mask_counts(self) -> dict[int, int]:
        return {mask.bits: c for mask, c in self.counts.items()}


def _batch_masks(seed: int, batch: int, size: int, p: float, n_edges: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=[seed, batch]))
    kept = rng.random((size, n_edges)) < p
    weights = np.uint64(1) << np.arange(n_edges, dtype=np.uint64)
    return (kept.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def sample_preparation(g: Graph, p: float, shots: int, seed: int,
                       threads: int = 1) -> PreparationSample:
    """Draw ``shots`` independent edge masks, each edge kept with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"randomness parameter must be in [0, 1], got {p}")
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    if not 0 <= seed < (1 << 64):
        raise ValueError("seed must be a 64-bit unsigned integer")
    e = g.edge_count
    if e > MAX_SAMPLE_EDGES:
        raise SizeLimitError(f"sampling capped at |E|={MAX_SAMPLE_EDGES}, got {e}")

    batches = [(b, min(BATCH_SHOTS, shots - b * BATCH_SHOTS))
               for b in range((shots + BATCH_SHOTS - 1) // BATCH_SHOTS)]

    def run(batch_and_size):
        b, size = batch_and_size
        masks, freq = np.unique(_batch_masks(seed, b, size, p, e), return_counts=True)
        return dict(zip(masks.tolist(), freq.tolist()))

    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run, batches))
    else:
        partials = [run(item) for item in batches]

    totals: dict[int, int] = {}
    for part in partials:
        for bits, c in part.items():
            totals[bits] = totals.get(bits, 0) + c
    counts = {EdgeMask(bits, e): c for bits, c in sorted(totals.items())}
    return PreparationSample(shots=shots, seed=seed, counts=counts)


def empirical_state(sample: PreparationSample, g: Graph) -> DensityMatrix:
    """Frequency-weighted mixture of the sampled subgraph projectors."""
    widths = {mask.width for mask in sample.counts}
    if widths != {g.edge_count}:
        raise ValueError(
            f"sample mask width {widths} does not match |E|={g.edge_count}")
    weights = {mask.bits: c / sample.shots for mask, c in sample.counts.items()}
    return subgraph_mixture(g, weights)


def sample_to_json(sample: PreparationSample, *, graph_spec: str, p: float) -> str:
    """Serialize a sample with hex-keyed mask counts."""
    counts = {hex(mask.bits): c for mask, c in sorted(
        sample.counts.items(), key=lambda kv: kv[0].bits)}
    return json.dumps({
        "graph_spec": graph_spec,
        "p": p,
        "shots": sample.shots,
        "seed": sample.seed,
        "counts": counts,
    }, separators=(",", ":"))
