"""Composable sub-circuits of the quantum feature-selection pipeline.

Register layout for encoded samples (least-significant bit first):

* bit 0            data qubit (feature-value rotation target)
* bit 1            flag qubit, prepared |1>
* bits 2 .. n+1    feature-index register (n = ceil(log2 N), at least 1)
* bits n+2 ..      sample-index register (optional)

``swap_flag`` exchanges bits 0 and 1, turning the encoded layout
``...|flag>|data>`` into ``...|data>|flag>`` so a subsequent swap test
overlaps the data of one sample with the flag of another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError, NoSolutionError, QReliefFError
from .rng import RngStream
from .statevector import (
    GateOp,
    StateVector,
    h,
    phase,
    ry,
    swap,
    x,
    zero_state,
)


# ---------------------------------------------------------------------------
# comparator and bounded uniform superposition
# ---------------------------------------------------------------------------

def cmp_flag(state: StateVector, index_register, bound: int, flag: int) -> StateVector:
    """Set ``flag`` on every basis branch whose index-register value is >= bound.

    The bound is held classically; the index register is unchanged.  The flag
    qubit must be clear on every branch with nonzero amplitude.
    """
    index_register = [int(q) for q in index_register]
    for q in index_register:
        state._check_qubit(q)
    state._check_qubit(flag)
    if flag in index_register:
        raise QReliefFError("flag qubit overlaps index register")
    if not 1 <= bound <= (1 << len(index_register)):
        raise QReliefFError(
            f"bound {bound} outside [1, {1 << len(index_register)}]"
        )
    idx = np.arange(state.dim)
    flag_set = ((idx >> flag) & 1) == 1
    if np.sum(np.abs(state.amplitudes[flag_set]) ** 2) > 1e-12:
        raise QReliefFError("flag qubit is not clear before comparison")
    values = np.zeros(state.dim, dtype=np.int64)
    for j, q in enumerate(index_register):
        values |= ((idx >> q) & 1) << j
    dst = np.where(values >= bound, idx ^ (1 << flag), idx)
    amps = np.zeros_like(state.amplitudes)
    amps[dst] = state.amplitudes
    return StateVector(state.n_qubits, amps)


def uniform_mod_n(n: int, bound: int) -> StateVector:
    """(1/sqrt(bound)) * sum_{i<bound} |i> on ``n`` qubits.

    Realized as H^n on a fresh register, a comparison against the bound into a
    scratch flag, and exact postselection of the flag-clear branch.
    """
    if not 1 <= bound <= (1 << n):
        raise QReliefFError(f"bound {bound} outside [1, {1 << n}]")
    if bound == (1 << n):
        state = zero_state(n)
        return state.apply_all(h(q) for q in range(n))
    state = zero_state(n + 1)  # qubit n is the comparison flag
    state = state.apply_all(h(q) for q in range(n))
    state = cmp_flag(state, range(n), bound, n)
    state = state.postselect(n, 0)
    # the flag is |0> exactly; drop it
    return StateVector(n, state.amplitudes[: 1 << n])


# ---------------------------------------------------------------------------
# amplitude encoding of one sample
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EncodingLayout:
    """Qubit positions of one encoded sample."""

    n_features: int
    index_bits: int

    @property
    def data(self) -> int:
        return 0

    @property
    def flag(self) -> int:
        return 1

    @property
    def feature_qubits(self) -> tuple[int, ...]:
        return tuple(range(2, 2 + self.n_feature_qubits))

    @property
    def n_feature_qubits(self) -> int:
        return max(1, math.ceil(math.log2(self.n_features)))

    @property
    def sample_qubits(self) -> tuple[int, ...]:
        lo = 2 + self.n_feature_qubits
        return tuple(range(lo, lo + self.index_bits))

    @property
    def n_qubits(self) -> int:
        return 2 + self.n_feature_qubits + self.index_bits


def _check_feature_vector(v: np.ndarray):
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise QReliefFError(f"feature vector norm {np.linalg.norm(v)} is not 1")
    if np.any(v < 0):
        raise QReliefFError("feature values must be nonnegative")


def _multiplexed_ry_gates(v: np.ndarray, layout: EncodingLayout) -> list[GateOp]:
    """Ry(2 asin v_i) on the data qubit, conditioned on feature index == i."""
    gates = []
    for i, vi in enumerate(v):
        controls = [
            (q, (i >> j) & 1) for j, q in enumerate(layout.feature_qubits)
        ]
        gates.append(ry(2.0 * math.asin(min(float(vi), 1.0)), layout.data, controls))
    return gates


def encode_sample(v, sample_index: int = 0, index_bits: int = 0) -> StateVector:
    """Encode a unit-norm feature vector as an amplitude-superposition state.

    The result is ``(1/sqrt(N)) |q> sum_i |i> |1> (sqrt(1-v_i^2)|0> + v_i|1>)``
    in the layout documented at module top.
    """
    v = np.asarray(v, dtype=float)
    _check_feature_vector(v)
    layout = EncodingLayout(len(v), index_bits)
    if index_bits and not 0 <= sample_index < (1 << index_bits):
        raise QReliefFError(f"sample index {sample_index} needs more than {index_bits} bits")
    feats = uniform_mod_n(layout.n_feature_qubits, len(v))
    amps = feats.amplitudes
    # local value flag*2 + data = 2, i.e. |flag=1, data=0>
    full = np.kron(amps, np.array([0.0, 0.0, 1.0, 0.0], dtype=complex))
    if index_bits:
        sample = np.zeros(1 << index_bits, dtype=complex)
        sample[sample_index] = 1.0
        full = np.kron(sample, full)
    state = StateVector(layout.n_qubits, full)
    return state.apply_all(_multiplexed_ry_gates(v, layout))


def encode_sample_gates(v, sample_index: int = 0, index_bits: int = 0) -> list[GateOp]:
    """The unitary gate list realizing :func:`encode_sample`.

    Only available when the feature count is a power of two (the bounded
    superposition otherwise needs postselection, which is not unitary).
    """
    v = np.asarray(v, dtype=float)
    _check_feature_vector(v)
    layout = EncodingLayout(len(v), index_bits)
    if len(v) != (1 << layout.n_feature_qubits):
        raise QReliefFError(
            "gate-list encoding requires a power-of-two feature count"
        )
    gates = [x(layout.flag)]
    for j, q in enumerate(layout.sample_qubits):
        if (sample_index >> j) & 1:
            gates.append(x(q))
    gates.extend(h(q) for q in layout.feature_qubits)
    gates.extend(_multiplexed_ry_gates(v, layout))
    return gates


def swap_flag(state: StateVector) -> StateVector:
    """Exchange the flag and data qubits of an encoded sample."""
    return state.apply(swap(0, 1))


# ---------------------------------------------------------------------------
# swap test
# ---------------------------------------------------------------------------

def swap_test_state(a: StateVector, b: StateVector, swap_qubits=None) -> StateVector:
    """Composite state after the swap-test circuit; ancilla is the top qubit.

    Register B occupies bits 0..m-1, register A bits m..2m-1, the ancilla bit
    2m.  ``swap_qubits`` selects which qubit pairs are exchanged (default all);
    excluding a pair is only meaningful when the excluded registers factor out.
    """
    if a.n_qubits != b.n_qubits:
        raise QReliefFError("swap test requires equal register widths")
    m = a.n_qubits
    if swap_qubits is None:
        swap_qubits = range(m)
    anc = 2 * m
    amps = np.kron(np.array([1.0, 0.0], dtype=complex), np.kron(a.amplitudes, b.amplitudes))
    state = StateVector(2 * m + 1, amps)
    state = state.apply(h(anc))
    for q in swap_qubits:
        state = state.apply(swap(m + q, q, controls=[(anc, 1)]))
    return state.apply(h(anc))


def swap_test(a: StateVector, b: StateVector, swap_qubits=None) -> float:
    """Exact P(ancilla = 1) = 1/2 - |<A|B>|^2 / 2 of the swap-test circuit."""
    state = swap_test_state(a, b, swap_qubits)
    return state.probability_one(2 * a.n_qubits)


def swap_test_gates(m: int, swap_qubits=None) -> list[GateOp]:
    """Gate list of the swap test on two m-qubit registers plus top ancilla."""
    if swap_qubits is None:
        swap_qubits = range(m)
    anc = 2 * m
    gates = [h(anc)]
    gates.extend(swap(m + q, q, controls=[(anc, 1)]) for q in swap_qubits)
    gates.append(h(anc))
    return gates


# ---------------------------------------------------------------------------
# Grover-Long amplitude amplification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroverPlan:
    """Iteration count and phase of one phase-matched Grover search."""

    n: int
    space_size: int
    marked_estimate: int
    J: int
    eta: float
    phi: float


def grover_plan(n: int, marked_estimate: int) -> GroverPlan:
    """Phase-matched plan for a search over 2**n items with a known marked count.

    J is the smallest nonnegative integer with 4J+2 >= pi/eta, and the phase
    follows the matching condition phi = 2 asin(sin(pi/(4J+2)) / sin(eta)).
    """
    space = 1 << n
    if marked_estimate == 0:
        raise NoSolutionError("no marked elements to search for")
    if not 1 <= marked_estimate <= space:
        raise QReliefFError(f"marked count {marked_estimate} outside [1, {space}]")
    eta = math.asin(math.sqrt(marked_estimate / space))
    J = max(0, math.ceil((math.pi / eta - 2.0) / 4.0 - 1e-12))
    arg = math.sin(math.pi / (4 * J + 2)) / math.sin(eta)
    phi = 2.0 * math.asin(min(arg, 1.0))
    return GroverPlan(n, space, marked_estimate, J, eta, phi)


def _oracle_mask(oracle, dim: int) -> np.ndarray:
    if isinstance(oracle, np.ndarray) and oracle.dtype == bool:
        if oracle.shape != (dim,):
            raise QReliefFError("oracle mask length does not match state")
        return oracle
    return np.fromiter((bool(oracle(i)) for i in range(dim)), dtype=bool, count=dim)


def grover_iterate(
    state: StateVector, plan: GroverPlan, oracle, w_gates
) -> StateVector:
    """One generalized Grover iteration G = -W I0 W^-1 O.

    ``oracle`` is a pure predicate over basis indices (or a boolean mask); the
    marked branches pick up phase e^{i phi}, as does the all-zeros branch after
    undoing the preparation ``w_gates``.
    """
    mask = _oracle_mask(oracle, state.dim)
    w_gates = list(w_gates)
    state = state.phase_on_indices(mask, plan.phi)
    state = state.apply_all(g.inverse() for g in reversed(w_gates))
    zeros = np.zeros(state.dim, dtype=bool)
    zeros[0] = True
    state = state.phase_on_indices(zeros, plan.phi)
    state = state.apply_all(w_gates)
    return StateVector(state.n_qubits, -state.amplitudes)


def grover_search_state(plan: GroverPlan, oracle, w_gates=None) -> StateVector:
    """W|0> followed by the plan's J iterations."""
    if w_gates is None:
        w_gates = [h(q) for q in range(plan.n)]
    state = zero_state(plan.n).apply_all(w_gates)
    for _ in range(plan.J):
        state = grover_iterate(state, plan, oracle, w_gates)
    return state


# ---------------------------------------------------------------------------
# quantum Fourier transform
# ---------------------------------------------------------------------------

def _dft_matrix(t: int, inverse: bool) -> np.ndarray:
    dim = 1 << t
    sign = -1.0 if inverse else 1.0
    jk = np.outer(np.arange(dim), np.arange(dim))
    return np.exp(sign * 2j * math.pi * jk / dim) / math.sqrt(dim)


def qft(state: StateVector, register) -> StateVector:
    """Discrete Fourier transform on the register's value space."""
    register = list(register)
    if not register:
        raise QReliefFError("empty register")
    return state.apply_unitary(_dft_matrix(len(register), inverse=False), register)


def inverse_qft(state: StateVector, register) -> StateVector:
    """Exact inverse discrete Fourier transform on the register's value space."""
    register = list(register)
    if not register:
        raise QReliefFError("empty register")
    return state.apply_unitary(_dft_matrix(len(register), inverse=True), register)


# ---------------------------------------------------------------------------
# amplitude estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Preparation:
    """A unitary preparation circuit with a designated flag qubit.

    The estimated amplitude is the probability of reading 1 on ``flag`` after
    running ``gates`` on |0...0>.
    """

    gates: tuple
    n_qubits: int
    flag: int


def reduced_preparation(a: float) -> Preparation:
    """Single-qubit preparation Ry(2 asin sqrt(a)) with the same flag amplitude."""
    if not -1e-12 <= a <= 1.0 + 1e-12:
        raise QReliefFError(f"amplitude {a} outside [0, 1]")
    a = min(max(a, 0.0), 1.0)
    return Preparation((ry(2.0 * math.asin(math.sqrt(a)), 0),), 1, 0)


@dataclass(frozen=True)
class AEOutcome:
    """One amplitude-estimation reading: y in [0, 2^t) with a = sin^2(pi y / 2^t)."""

    y: int
    t: int

    @property
    def a_hat(self) -> float:
        return math.sin(math.pi * self.y / (1 << self.t)) ** 2


def _controlled_grover_op(state: StateVector, prep: Preparation, control: int) -> StateVector:
    """Apply G = -A S0 A^-1 S_chi controlled on ``control``."""
    gates = list(prep.gates)
    ctrl = [(control, 1)]
    idx = np.arange(state.dim)
    on = ((idx >> control) & 1) == 1
    # S_chi: phase flip on flag = 1 branches
    state = state.apply(phase(math.pi, prep.flag, controls=ctrl))
    for g in reversed(gates):
        inv = g.inverse()
        state = state.apply(
            GateOp(inv.kind, inv.targets, inv.controls + ((control, 1),), inv.angle)
        )
    # S0: phase flip on the all-zero branch of the preparation register
    prep_bits = (1 << prep.n_qubits) - 1
    state = state.phase_on_indices(on & ((idx & prep_bits) == 0), math.pi)
    for g in gates:
        state = state.apply(
            GateOp(g.kind, g.targets, g.controls + ((control, 1),), g.angle)
        )
    # the leading minus sign of G, controlled
    return state.phase_on_indices(on, math.pi)


def amplitude_estimate(prep: Preparation, t: int, mode: str = "reduced") -> np.ndarray:
    """Exact outcome distribution of t-bit amplitude estimation.

    ``reduced`` mode replaces the preparation by the algebraically equivalent
    single-qubit rotation with the same flag amplitude; ``full`` mode runs the
    given circuit under the controlled Grover powers.  Returns the probability
    of each y in [0, 2^t); the estimate for outcome y is sin^2(pi y / 2^t).
    """
    if t < 1:
        raise ConfigError(f"readout qubit count must be >= 1, got {t}")
    if mode not in ("reduced", "full"):
        raise ConfigError(f"unknown amplitude-estimation mode {mode!r}")
    if not 0 <= prep.flag < prep.n_qubits:
        raise QReliefFError("preparation has no valid flag qubit")
    if mode == "reduced":
        a = zero_state(prep.n_qubits).apply_all(prep.gates).probability_one(prep.flag)
        prep = reduced_preparation(a)
    p = prep.n_qubits
    state = zero_state(p + t).apply_all(prep.gates)
    readout = list(range(p, p + t))
    state = state.apply_all(h(q) for q in readout)
    for j, q in enumerate(readout):
        for _ in range(1 << j):
            state = _controlled_grover_op(state, prep, q)
    state = inverse_qft(state, readout)
    return state.marginal_probabilities(readout)


@lru_cache(maxsize=4096)
def ae_distribution_for_amplitude(a: float, t: int) -> np.ndarray:
    """Memoized reduced-mode estimation distribution for a scalar amplitude."""
    dist = amplitude_estimate(reduced_preparation(a), t, mode="reduced")
    dist.setflags(write=False)
    return dist


def fold_distribution(dist: np.ndarray) -> np.ndarray:
    """Collapse y and 2^t - y (the same estimate) onto y <= 2^(t-1)."""
    half = len(dist) // 2
    folded = np.zeros(half + 1)
    folded[0] = dist[0]
    folded[half] = dist[half]
    for m in range(1, half):
        folded[m] = dist[m] + dist[len(dist) - m]
    return folded


def modal_outcome(dist: np.ndarray, t: int) -> AEOutcome:
    """The most probable canonical reading min(y, 2^t - y); ties go low."""
    folded = fold_distribution(dist)
    return AEOutcome(int(np.argmax(folded)), t)


# ---------------------------------------------------------------------------
# quantum extreme search (threshold-walking Grover)
# ---------------------------------------------------------------------------

def quantum_extreme_search(values, k: int, direction: str, rng: RngStream) -> list[int]:
    """Positions of the k extreme values, ordered by (value, position).

    Maintains a threshold pivot (initially the first element), Grover-searches
    for elements strictly beyond it with a plan built from the known marked
    count, and moves the pivot to the measured element until nothing beats it.
    The result equals the classical top-k under (value, ascending position)
    ordering in the requested direction.
    """
    values = [int(v) for v in values]
    if not values:
        raise QReliefFError("empty value table")
    if not 1 <= k <= len(values):
        raise QReliefFError(f"k={k} outside [1, {len(values)}]")
    if direction not in ("min", "max"):
        raise ConfigError(f"direction must be 'min' or 'max', got {direction!r}")
    sign = 1 if direction == "min" else -1

    def key(i):
        return (sign * values[i], i)

    n = max(1, math.ceil(math.log2(len(values))))
    remaining = list(range(len(values)))
    found = []
    for _ in range(k):
        pivot = remaining[0]
        while True:
            marked = [i for i in remaining if key(i) < key(pivot)]
            if not marked:
                break
            mask = np.zeros(1 << n, dtype=bool)
            mask[marked] = True
            plan = grover_plan(n, len(marked))
            state = grover_search_state(plan, mask)
            reading = state.sample(range(n), 1, rng)
            measured = int(next(iter(reading))[::-1], 2)
            if mask[measured]:
                pivot = measured
            # a failed reading (vanishing probability) just repeats the search
        found.append(pivot)
        remaining.remove(pivot)
    return found
