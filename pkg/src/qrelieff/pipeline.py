"""The quantum feature-selection pipeline: amplitude encoding of every sample,
swap-test similarity read out through amplitude estimation, and Grover-based
nearest-neighbor search per class.  Weight update and selection are shared
with the classical core.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import (
    AEOutcome,
    EncodingLayout,
    Preparation,
    ae_distribution_for_amplitude,
    amplitude_estimate,
    encode_sample,
    encode_sample_gates,
    modal_outcome,
    quantum_extreme_search,
    swap_flag,
    swap_test_gates,
    swap_test_state,
)
from .errors import ConfigError, QReliefFError
from .relieff import (
    FeatureStats,
    IterationRecord,
    NeighborSet,
    NormalizedDataset,
    RunConfig,
    pick_sequence,
    update_weights,
)
from .rng import RngStream
from .statevector import GateOp, StateVector, swap


@dataclass
class PipelineConfig(RunConfig):
    """RunConfig plus the quantum execution knobs."""

    mode: str = "exact"
    shots: int = 1024
    ae_bits: int = 6
    ae_circuit: str = "reduced"

    def __post_init__(self):
        super().__post_init__()
        if self.mode not in ("exact", "sampled"):
            raise ConfigError(f"mode must be 'exact' or 'sampled', got {self.mode!r}")
        if self.mode == "sampled" and self.shots < 1:
            raise ConfigError(f"shots must be >= 1 in sampled mode, got {self.shots}")
        if not 1 <= self.ae_bits <= 10:
            raise ConfigError(f"ae_bits must lie in [1, 10], got {self.ae_bits}")
        if self.ae_circuit not in ("reduced", "full"):
            raise ConfigError(
                f"ae_circuit must be 'reduced' or 'full', got {self.ae_circuit!r}"
            )


@dataclass
class SimilarityRecord:
    """One swap-test + estimation reading for a (picked, candidate) pair."""

    sample: int
    s_raw: float
    outcome: AEOutcome
    excluded: bool = False
    noise_clamped: bool = False

    @property
    def s_quantized(self) -> int:
        return self.outcome.y

    def as_dict(self):
        return {
            "sample": self.sample,
            "s_raw": self.s_raw,
            "y": self.outcome.y,
            "s_quantized": self.s_quantized,
            "excluded": self.excluded,
            "noise_clamped": self.noise_clamped,
        }


@dataclass
class SimilarityTable:
    """Per-class similarity records for one picked sample."""

    picked: int
    records: dict[int, list[SimilarityRecord]] = field(default_factory=dict)

    def as_dict(self):
        return {
            "picked": self.picked,
            "classes": {
                str(c): [r.as_dict() for r in recs]
                for c, recs in sorted(self.records.items())
            },
        }


def prepare_states(nd: NormalizedDataset) -> list[StateVector]:
    """One encoded state per sample, with a ceil(log2 M)-bit sample register."""
    index_bits = max(1, math.ceil(math.log2(nd.n_samples)))
    return [
        encode_sample(nd.samples[q], q, index_bits) for q in range(nd.n_samples)
    ]


def _swap_test_p1(
    u_state: StateVector,
    v_state: StateVector,
    layout: EncodingLayout,
    cfg: PipelineConfig,
    rng: RngStream | None,
) -> float:
    """P(ancilla=1) of the swap test over feature-index + flag + data registers.

    The sample-index registers stay out of the controlled swaps; they factor
    out of the overlap.  In sampled mode the probability is estimated from
    finite ancilla shots.
    """
    data_qubits = range(2 + layout.n_feature_qubits)  # data, flag, feature index
    state = swap_test_state(swap_flag(u_state), v_state, data_qubits)
    ancilla = 2 * u_state.n_qubits
    if cfg.mode == "exact":
        return state.probability_one(ancilla)
    if rng is None:
        raise QReliefFError("sampled mode needs an rng stream")
    counts = state.sample([ancilla], cfg.shots, rng)
    return counts.get("1", 0) / cfg.shots


def _pipeline_layout(u_state: StateVector, n_features: int) -> EncodingLayout:
    feature_qubits = EncodingLayout(n_features, 0).n_feature_qubits
    return EncodingLayout(n_features, u_state.n_qubits - 2 - feature_qubits)


def _shift_gates(gates, offset: int):
    return [
        GateOp(
            g.kind,
            tuple(t + offset for t in g.targets),
            tuple((q + offset, pol) for q, pol in g.controls),
            g.angle,
        )
        for g in gates
    ]


def _full_circuit_outcome(
    nd_rows_uv, sample_indices, layout: EncodingLayout, cfg: PipelineConfig,
    rng: RngStream | None,
) -> AEOutcome:
    """Amplitude-estimate the swap-test ancilla on the genuine circuit.

    Returns the t-bit reading of the ancilla amplitude a = P(1); only
    available for power-of-two feature counts (the encoding must be unitary).
    """
    (u_row, v_row), (u_idx, v_idx) = nd_rows_uv, sample_indices
    m = layout.n_qubits
    b_gates = encode_sample_gates(v_row, v_idx, layout.index_bits)
    a_gates = encode_sample_gates(u_row, u_idx, layout.index_bits) + [swap(0, 1)]
    data_qubits = range(2 + layout.n_feature_qubits)
    gates = list(b_gates) + _shift_gates(a_gates, m) + swap_test_gates(m, data_qubits)
    prep = Preparation(tuple(gates), 2 * m + 1, 2 * m)
    dist = amplitude_estimate(prep, cfg.ae_bits, mode="full")
    if cfg.mode == "exact" or rng is None:
        return modal_outcome(dist, cfg.ae_bits)
    y = rng.choice_weighted(dist / dist.sum())
    return AEOutcome(min(y, (1 << cfg.ae_bits) - y), cfg.ae_bits)


def _quantize_similarity(s: float, t: int) -> AEOutcome:
    """Nearest t-bit estimation grid point to a known similarity."""
    m = round((1 << t) * math.asin(math.sqrt(s)) / math.pi)
    return AEOutcome(min(max(m, 0), 1 << (t - 1)), t)


def quantum_similarity(
    u_state: StateVector,
    v_state: StateVector,
    n_features: int,
    cfg: PipelineConfig,
    rng: RngStream | None = None,
    rows=None,
    sample_indices=None,
) -> SimilarityRecord:
    """Similarity s = (1 - 2 P(1)) N^2 of two encoded samples, plus its t-bit
    amplitude-estimation reading.

    The default path runs the swap test (exact or shots-estimated ancilla),
    recovers s, and estimates the algebraically equivalent single-qubit
    amplitude sqrt(s); the ``full`` circuit path amplitude-estimates the
    swap-test ancilla itself and converts that reading back to an s grid
    point.  Sampling noise can push the raw estimate outside [0, 1]; it is
    clamped and flagged rather than propagated.
    """
    layout = _pipeline_layout(u_state, n_features)
    p1 = _swap_test_p1(u_state, v_state, layout, cfg, rng)
    s = (1.0 - 2.0 * p1) * n_features**2
    clamped = not 0.0 <= s <= 1.0
    s = min(max(s, 0.0), 1.0)
    if cfg.ae_circuit == "full":
        if rows is None or sample_indices is None:
            raise QReliefFError("full-circuit estimation needs the raw sample rows")
        ae = _full_circuit_outcome(rows, sample_indices, layout, cfg, rng)
        s_full = min(max((1.0 - 2.0 * ae.a_hat) * n_features**2, 0.0), 1.0)
        outcome = _quantize_similarity(s_full, cfg.ae_bits)
    else:
        dist = ae_distribution_for_amplitude(round(s, 15), cfg.ae_bits)
        outcome = modal_outcome(dist, cfg.ae_bits)
    return SimilarityRecord(-1, s, outcome, noise_clamped=clamped)


def build_similarity_table(
    states: list[StateVector],
    nd: NormalizedDataset,
    u: int,
    cfg: PipelineConfig,
    rng: RngStream | None,
) -> SimilarityTable:
    """Swap-test every sample against the picked one, grouped by class.

    The picked sample keeps a record (marked excluded) so the trace stays
    complete.  Each pair owns an rng substream keyed by its sample index.
    """
    table = SimilarityTable(u)
    for c in range(nd.n_classes):
        recs = []
        for q in nd.class_members(c):
            sub = rng.substream(int(q)) if rng is not None else None
            rec = quantum_similarity(
                states[u],
                states[q],
                nd.n_features,
                cfg,
                sub,
                rows=(nd.samples[u], nd.samples[q]),
                sample_indices=(u, int(q)),
            )
            rec.sample = int(q)
            rec.excluded = int(q) == u
            recs.append(rec)
        table.records[c] = recs
    return table


def quantum_neighbors(
    table: SimilarityTable,
    labels: np.ndarray,
    k: int,
    order: str,
    rng: RngStream,
) -> NeighborSet:
    """Grover extreme search over each class's quantized similarities.

    ``max`` order searches for the largest quantized values (nearest under
    cosine-squared semantics); ties resolve to the lower sample index, matching
    the classical comparison on the same quantized keys.
    """
    if order not in ("max", "min"):
        raise ConfigError(f"neighbor order must be 'max' or 'min', got {order!r}")
    u_class = int(labels[table.picked])
    hits: list[int] = []
    misses: dict[int, list[int]] = {}
    for c, recs in sorted(table.records.items()):
        candidates = [r for r in recs if not r.excluded]
        if c == u_class and not candidates:
            raise QReliefFError(
                f"class {c} has no sample other than the picked one"
            )
        if not candidates:
            misses[c] = []
            continue
        values = [r.s_quantized for r in candidates]
        k_eff = min(k, len(candidates))
        positions = quantum_extreme_search(
            values, k_eff, order, rng.substream(int(c))
        )
        chosen = [candidates[p].sample for p in positions]
        if c == u_class:
            hits = chosen
        else:
            misses[c] = chosen
    return NeighborSet(table.picked, hits, misses)


@dataclass
class QReliefFResult:
    average_weights: np.ndarray
    iterations: list[IterationRecord]
    tables: list[SimilarityTable]

    def selected(self, tau: float) -> list[int]:
        from .relieff import select_features

        return select_features(self.average_weights, tau)


def qrelieff_run(
    nd: NormalizedDataset,
    cfg: PipelineConfig,
    rng: RngStream,
    stats: FeatureStats | None = None,
) -> QReliefFResult:
    """The full quantum loop: encode, swap-test + estimate, Grover neighbor
    search, shared weight update; returns the 1/T averaged weights and a trace
    sufficient to re-derive them offline.
    """
    if stats is None:
        stats = FeatureStats.from_matrix(nd.samples)
    states = prepare_states(nd)
    wt = np.zeros(nd.n_features)
    trace: list[IterationRecord] = []
    tables: list[SimilarityTable] = []
    picks = pick_sequence(cfg, nd.n_samples, rng)
    for t, u in enumerate(picks):
        sim_rng = rng.substream(1, t) if cfg.mode == "sampled" else None
        table = build_similarity_table(states, nd, u, cfg, sim_rng)
        nb = quantum_neighbors(
            table, nd.labels, cfg.k, cfg.neighbor_order, rng.substream(2, t)
        )
        wt = update_weights(wt, u, nb, nd, stats)
        trace.append(IterationRecord(u, nb, wt.copy()))
        tables.append(table)
    return QReliefFResult(wt / cfg.T, trace, tables)
