"""Exact complex-amplitude simulation of multi-qubit registers.

Conventions used throughout the package:

* Qubit ``j`` is the least-significant bit ``j`` of the basis index, i.e.
  basis index of a bitstring ``b`` is ``sum(b_j * 2**j)``.
* Gate application is functional: every operation returns a new
  :class:`StateVector`; inputs are never mutated.
* Probabilities are exact (computed from amplitudes); sampling is opt-in
  through :meth:`StateVector.sample`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, PostselectionError, QReliefFError
from .rng import RngStream

MAX_QUBITS = 28  # 2**28 complex128 amplitudes = 4 GiB
NORM_TOL = 1e-9

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def _ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * phi)]], dtype=complex)


def _normalize_controls(controls) -> tuple[tuple[int, int], ...]:
    """Accept ints (control on one) or (qubit, polarity) pairs."""
    out = []
    for c in controls:
        if isinstance(c, tuple):
            q, pol = c
        else:
            q, pol = c, 1
        if pol not in (0, 1):
            raise QReliefFError(f"control polarity must be 0 or 1, got {pol}")
        out.append((int(q), int(pol)))
    return tuple(out)


@dataclass(frozen=True)
class GateOp:
    """One primitive gate: H, X, Ry(theta), Phase(phi) or SWAP.

    ``controls`` is a tuple of ``(qubit, polarity)`` pairs; polarity 1 means
    the gate acts when the control is |1>, polarity 0 when it is |0>.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in ("h", "x", "ry", "phase", "swap"):
            raise QReliefFError(f"unknown gate kind {self.kind!r}")
        n_targets = 2 if self.kind == "swap" else 1
        if len(self.targets) != n_targets:
            raise QReliefFError(f"{self.kind} expects {n_targets} target(s)")
        ctrl_qubits = {q for q, _ in self.controls}
        if ctrl_qubits & set(self.targets):
            raise QReliefFError("controls overlap targets")
        if len(set(self.targets)) != len(self.targets):
            raise QReliefFError("duplicate target qubits")

    def inverse(self) -> "GateOp":
        if self.kind in ("ry", "phase"):
            return GateOp(self.kind, self.targets, self.controls, -self.angle)
        return self  # H, X and SWAP are involutions

    def matrix(self) -> np.ndarray:
        """The uncontrolled single- (or two-) qubit matrix."""
        if self.kind == "h":
            return _H
        if self.kind == "x":
            return _X
        if self.kind == "ry":
            return _ry_matrix(self.angle)
        if self.kind == "phase":
            return _phase_matrix(self.angle)
        # swap
        m = np.eye(4, dtype=complex)
        m[[1, 2]] = m[[2, 1]]
        return m


def h(target: int, controls=()) -> GateOp:
    return GateOp("h", (target,), _normalize_controls(controls))


def x(target: int, controls=()) -> GateOp:
    return GateOp("x", (target,), _normalize_controls(controls))


def ry(theta: float, target: int, controls=()) -> GateOp:
    return GateOp("ry", (target,), _normalize_controls(controls), float(theta))


def phase(phi: float, target: int, controls=()) -> GateOp:
    return GateOp("phase", (target,), _normalize_controls(controls), float(phi))


def swap(a: int, b: int, controls=()) -> GateOp:
    return GateOp("swap", (a, b), _normalize_controls(controls))


class StateVector:
    """2**n_qubits complex amplitudes; the simulator's single source of truth."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray, _checked: bool = False):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (1 << n_qubits,):
            raise QReliefFError(
                f"amplitude vector of length {amplitudes.size} does not match "
                f"{n_qubits} qubits"
            )
        if not _checked:
            norm = np.sum(np.abs(amplitudes) ** 2)
            if abs(norm - 1.0) > NORM_TOL:
                raise QReliefFError(f"state norm {norm} deviates from 1")
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    # -- basics --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def _check_qubit(self, q: int):
        if not 0 <= q < self.n_qubits:
            raise QReliefFError(f"qubit index {q} out of range for {self.n_qubits} qubits")

    def _control_mask(self, controls) -> np.ndarray:
        idx = np.arange(self.dim)
        mask = np.ones(self.dim, dtype=bool)
        for q, pol in controls:
            self._check_qubit(q)
            mask &= ((idx >> q) & 1) == pol
        return mask

    # -- gate application ----------------------------------------------------

    def apply(self, gate: GateOp) -> "StateVector":
        """Return U|self> where U is the gate extended by identity."""
        for q in gate.targets:
            self._check_qubit(q)
        mask = self._control_mask(gate.controls)
        amps = self.amplitudes.copy()
        idx = np.arange(self.dim)
        if gate.kind == "swap":
            a, b = gate.targets
            sel = mask & (((idx >> a) & 1) == 1) & (((idx >> b) & 1) == 0)
            src = idx[sel]
            dst = src ^ ((1 << a) | (1 << b))
            amps[src], amps[dst] = amps[dst], amps[src].copy()
        elif gate.kind == "phase":
            (t,) = gate.targets
            sel = mask & (((idx >> t) & 1) == 1)
            amps[sel] *= np.exp(1j * gate.angle)
        else:
            (t,) = gate.targets
            u = gate.matrix()
            sel = mask & (((idx >> t) & 1) == 0)
            i0 = idx[sel]
            i1 = i0 | (1 << t)
            a0, a1 = amps[i0], amps[i1].copy()
            amps[i0] = u[0, 0] * a0 + u[0, 1] * a1
            amps[i1] = u[1, 0] * a0 + u[1, 1] * a1
        # unitary by construction; skip the norm re-check
        return StateVector(self.n_qubits, amps, _checked=True)

    def apply_all(self, gates) -> "StateVector":
        state = self
        for g in gates:
            state = state.apply(g)
        return state

    def apply_unitary(self, u: np.ndarray, targets, controls=()) -> "StateVector":
        """Apply an arbitrary unitary on the subspace spanned by ``targets``.

        ``targets[0]`` is the least-significant bit of the sub-register value,
        consistent with the global bit order.
        """
        targets = [int(t) for t in targets]
        for t in targets:
            self._check_qubit(t)
        k = len(targets)
        u = np.asarray(u, dtype=complex)
        if u.shape != (1 << k, 1 << k):
            raise QReliefFError("unitary dimension does not match target register")
        mask = self._control_mask(_normalize_controls(controls))
        idx = np.arange(self.dim)
        target_bits = 0
        for t in targets:
            target_bits |= 1 << t
        # offsets of each sub-register value within the full index space
        sub = np.arange(1 << k)
        offs = np.zeros(1 << k, dtype=np.int64)
        for j, t in enumerate(targets):
            offs |= ((sub >> j) & 1) << t
        base = idx[(idx & target_bits) == 0]
        rows = mask[base]  # controls do not involve targets, constant per block
        amps = self.amplitudes.copy()
        block = amps[base[rows, None] + offs[None, :]]
        amps[base[rows, None] + offs[None, :]] = block @ u.T
        return StateVector(self.n_qubits, amps, _checked=True)

    def phase_on_indices(self, sel: np.ndarray, phi: float) -> "StateVector":
        """Multiply amplitudes at the selected basis indices by e^{i phi}.

        ``sel`` is a boolean mask over basis indices (a diagonal phase gate).
        """
        amps = self.amplitudes.copy()
        amps[sel] *= np.exp(1j * phi)
        return StateVector(self.n_qubits, amps, _checked=True)

    # -- measurement ---------------------------------------------------------

    def probability_one(self, qubit: int) -> float:
        """Exact probability of reading 1 on ``qubit``."""
        self._check_qubit(qubit)
        idx = np.arange(self.dim)
        sel = ((idx >> qubit) & 1) == 1
        return float(np.sum(np.abs(self.amplitudes[sel]) ** 2))

    def postselect(self, qubit: int, outcome: int) -> "StateVector":
        """Project on ``qubit == outcome`` and renormalize."""
        self._check_qubit(qubit)
        if outcome not in (0, 1):
            raise QReliefFError(f"outcome must be 0 or 1, got {outcome}")
        idx = np.arange(self.dim)
        keep = ((idx >> qubit) & 1) == outcome
        amps = np.where(keep, self.amplitudes, 0.0)
        p = np.sum(np.abs(amps) ** 2)
        if p <= 1e-12:
            raise PostselectionError(
                f"branch qubit {qubit} = {outcome} has probability {p}"
            )
        return StateVector(self.n_qubits, amps / math.sqrt(p), _checked=True)

    def marginal_probabilities(self, qubits) -> np.ndarray:
        """Exact marginal distribution over the listed qubits.

        Entry ``v`` is the probability of reading sub-register value ``v``,
        with ``qubits[0]`` as its least-significant bit.
        """
        qubits = [int(q) for q in qubits]
        if not qubits:
            raise QReliefFError("empty qubit list")
        for q in qubits:
            self._check_qubit(q)
        idx = np.arange(self.dim)
        key = np.zeros(self.dim, dtype=np.int64)
        for j, q in enumerate(qubits):
            key |= ((idx >> q) & 1) << j
        probs = np.abs(self.amplitudes) ** 2
        return np.bincount(key, weights=probs, minlength=1 << len(qubits))

    def sample(self, qubits, shots: int, rng: RngStream) -> dict[str, int]:
        """Draw ``shots`` i.i.d. readings of the listed qubits.

        Keys are bitstrings with ``qubits[i]`` at string position ``i``.
        Deterministic under a fixed rng.
        """
        if shots < 1:
            raise QReliefFError("shots must be >= 1")
        probs = self.marginal_probabilities(qubits)
        probs = probs / probs.sum()
        counts = rng.multinomial(shots, probs)
        out = {}
        for v, c in enumerate(counts):
            if c:
                bits = "".join(str((v >> j) & 1) for j in range(len(qubits)))
                out[bits] = int(c)
        return out


def zero_state(n_qubits: int) -> StateVector:
    """|0...0> on ``n_qubits`` qubits."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(
            f"qubit count {n_qubits} outside supported range [1, {MAX_QUBITS}]"
        )
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def basis_state(n_qubits: int, index: int) -> StateVector:
    """|index> on ``n_qubits`` qubits."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(
            f"qubit count {n_qubits} outside supported range [1, {MAX_QUBITS}]"
        )
    if not 0 <= index < (1 << n_qubits):
        raise QReliefFError(f"basis index {index} out of range")
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    if a.n_qubits != b.n_qubits:
        raise QReliefFError(
            f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
