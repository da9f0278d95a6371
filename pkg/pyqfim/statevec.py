# This file is part of pyqfim. See LICENSE file for license information.
"""Dense pure states of N qubits and the symmetric (Dicke) basis.

Qubit 1 is the most significant bit of a basis index, so the amplitude
listing of a state reads like the ket labels |q1 q2 ... qN>. Bit 0 is
spin up: a basis string with k ones belongs to m = N/2 - k.
"""

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.special import comb

from pyqfim import config
from pyqfim.errors import (
    InvalidSizeError,
    NormalizationError,
    NotSymmetricError,
    QubitIndexError,
)

NORM_TOL = 1e-12
SYMMETRY_TOL = 1e-10

log = logging.getLogger(__name__)

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _frozen(values):
    array = np.array(values, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class QubitState:
    """Normalized amplitude vector over the 2**n_qubits basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        """Validate shape and norm and freeze the amplitudes."""
        if self.n_qubits < 1:
            raise InvalidSizeError(
                "n_qubits must be positive, got {}".format(self.n_qubits)
            )
        amplitudes = _frozen(self.amplitudes).reshape(-1)
        amplitudes.setflags(write=False)
        if amplitudes.size != 2**self.n_qubits:
            raise InvalidSizeError(
                "{} qubits need {} amplitudes, got {}".format(
                    self.n_qubits, 2**self.n_qubits, amplitudes.size
                )
            )
        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if not abs(norm_sq - 1.0) <= NORM_TOL:
            raise NormalizationError(
                "state norm squared is {!r}, expected 1".format(norm_sq)
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dim(self):
        """Return the Hilbert space dimension."""
        return self.amplitudes.size

    def tensor(self):
        """Return a writable copy shaped (2,) * n_qubits."""
        return np.array(self.amplitudes).reshape((2,) * self.n_qubits)

    @classmethod
    def from_tensor(cls, tensor):
        """Build a state from a (2,) * n array."""
        return cls(tensor.ndim, tensor.reshape(-1))

    @classmethod
    def normalized(cls, n_qubits, amplitudes):
        """Build a state after dividing the amplitudes by their norm."""
        amplitudes = np.asarray(amplitudes, dtype=complex)
        return cls(n_qubits, amplitudes / np.linalg.norm(amplitudes))

    def __repr__(self):
        """Show qubit count and amplitudes."""
        return "QubitState(n_qubits={}, amplitudes={})".format(
            self.n_qubits, np.array2string(self.amplitudes, precision=6)
        )


@dataclass(frozen=True, eq=False)
class DickeDecomposition:
    """Projection of a state onto the symmetric subspace.

    coefficients[k] is the amplitude on |j, m = j - k>, i.e. on the
    normalized symmetric sum of basis strings with k ones.
    """

    n_qubits: int
    coefficients: np.ndarray
    residual_norm: float = 0.0

    def __post_init__(self):
        """Validate length and total weight."""
        coefficients = _frozen(self.coefficients).reshape(-1)
        coefficients.setflags(write=False)
        if coefficients.size != self.n_qubits + 1:
            raise InvalidSizeError(
                "{} qubits need {} Dicke coefficients, got {}".format(
                    self.n_qubits, self.n_qubits + 1, coefficients.size
                )
            )
        if self.residual_norm < 0:
            raise ValueError("residual_norm must be non-negative")
        weight = float(np.vdot(coefficients, coefficients).real)
        total = weight + self.residual_norm**2
        if not abs(total - 1.0) <= NORM_TOL:
            raise NormalizationError(
                "Dicke weight plus residual is {!r}, expected 1".format(total)
            )
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def j(self):
        """Return the total spin N/2."""
        return self.n_qubits / 2

    @property
    def m_values(self):
        """Return m for each coefficient, from +j down to -j."""
        return [self.j - k for k in range(self.n_qubits + 1)]

    def coefficient(self, m):
        """Return the amplitude on |j, m>."""
        k = self.j - m
        if k != int(k) or not 0 <= k <= self.n_qubits:
            raise ValueError(
                "m={} is not a projection of j={}".format(m, self.j)
            )
        return complex(self.coefficients[int(k)])


def check_size(n, minimum=1):
    """Raise InvalidSizeError unless minimum <= n <= configured maximum."""
    limit = config.max_qubits()
    if not isinstance(n, (int, np.integer)) or n < minimum or n > limit:
        raise InvalidSizeError(
            "qubit count must be an integer in [{}, {}], got {!r}".format(
                minimum, limit, n
            )
        )


def hamming_weights(n_qubits):
    """Return the number of 1-bits of every basis index."""
    indices = np.arange(2**n_qubits)
    weights = np.zeros(indices.size, dtype=int)
    for bit in range(n_qubits):
        weights += (indices >> bit) & 1
    return weights


def basis_state(bits: str) -> QubitState:
    """Return the computational basis state for a bit string like '010'."""
    n = len(bits)
    check_size(n)
    amplitudes = np.zeros(2**n, dtype=complex)
    amplitudes[int(bits, 2)] = 1.0
    return QubitState(n, amplitudes)


def plus_state(n: int) -> QubitState:
    """Return |+> on each of n qubits."""
    check_size(n)
    return QubitState(n, np.full(2**n, 2.0 ** (-n / 2), dtype=complex))


def ghz_state(n: int) -> QubitState:
    """Return (|0...0> + |1...1>)/sqrt(2)."""
    check_size(n, minimum=2)
    amplitudes = np.zeros(2**n, dtype=complex)
    amplitudes[0] = amplitudes[-1] = 1 / np.sqrt(2)
    return QubitState(n, amplitudes)


def _check_qubits(state, qubits):
    qubits = list(qubits)
    for qubit in qubits:
        if not isinstance(qubit, (int, np.integer)) or not (
            1 <= qubit <= state.n_qubits
        ):
            raise QubitIndexError(
                "qubit {!r} outside 1..{}".format(qubit, state.n_qubits)
            )
    return qubits


def apply_cz(state: QubitState, targets: Iterable[int]) -> QubitState:
    """Apply a multi-controlled Z to the given qubits.

    The amplitude of every basis string with all target bits set is
    negated. Two targets give CZ, k+1 targets give C^kZ.

    Args:
        state: input state
        targets: 1-based qubit indices, at least two distinct ones

    Returns:
        the new state

    """
    targets = set(_check_qubits(state, targets))
    if len(targets) < 2:
        raise QubitIndexError(
            "C^kZ needs at least two distinct targets, got {}".format(
                sorted(targets)
            )
        )
    n = state.n_qubits
    mask = sum(1 << (n - q) for q in targets)
    indices = np.arange(state.dim)
    signs = np.where((indices & mask) == mask, -1.0, 1.0)
    return QubitState(n, state.amplitudes * signs)


def apply_single_qubit(
    state: QubitState, qubit: int, matrix: np.ndarray
) -> QubitState:
    """Apply a 2x2 matrix to one qubit without forming the full operator."""
    (qubit,) = _check_qubits(state, [qubit])
    tensor = state.tensor()
    axis = qubit - 1
    tensor = np.tensordot(matrix, tensor, axes=([1], [axis]))
    tensor = np.moveaxis(tensor, 0, axis)
    return QubitState.from_tensor(tensor)


def rotation_matrix(axis: Sequence[float], angle: float) -> np.ndarray:
    """Return exp(-i angle n.sigma / 2) for a unit vector n."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    generator = sum(a * PAULI[name] for a, name in zip(axis, "xyz"))
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * generator


def collective_rotation(
    state: QubitState, axis: Sequence[float], angle: float
) -> QubitState:
    """Rotate every qubit by the same angle about the same axis."""
    matrix = rotation_matrix(axis, angle)
    for qubit in range(1, state.n_qubits + 1):
        state = apply_single_qubit(state, qubit, matrix)
    return state


def flip_all(state: QubitState) -> QubitState:
    """Apply X to every qubit, mapping |j, m> to |j, -m>."""
    return QubitState(state.n_qubits, state.amplitudes[::-1])


def permute_qubits(state: QubitState, order: Sequence[int]) -> QubitState:
    """Reorder qubits; new qubit i is old qubit order[i-1] (1-based)."""
    order = _check_qubits(state, order)
    if sorted(order) != list(range(1, state.n_qubits + 1)):
        raise QubitIndexError("{} is not a permutation".format(order))
    tensor = np.transpose(state.tensor(), [q - 1 for q in order])
    return QubitState.from_tensor(np.ascontiguousarray(tensor))


def equal_up_to_phase(a: QubitState, b: QubitState, tol=1e-12) -> bool:
    """Return True when a and b differ at most by a global phase."""
    if a.n_qubits != b.n_qubits:
        return False
    return abs(abs(np.vdot(a.amplitudes, b.amplitudes)) - 1.0) <= tol


def random_state(n: int, rng: np.random.Generator) -> QubitState:
    """Return a random state from normalized complex Gaussian amplitudes."""
    check_size(n)
    amplitudes = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return QubitState.normalized(n, amplitudes)


def to_dicke(state: QubitState) -> DickeDecomposition:
    """Project a state onto the symmetric Dicke basis.

    Returns:
        DickeDecomposition whose residual_norm is the norm of the part of
        the state outside the symmetric subspace

    """
    n = state.n_qubits
    weights = hamming_weights(n)
    amplitudes = state.amplitudes
    sums = np.bincount(
        weights, weights=amplitudes.real, minlength=n + 1
    ) + 1j * np.bincount(weights, weights=amplitudes.imag, minlength=n + 1)
    norms = np.sqrt(comb(n, np.arange(n + 1)))
    coefficients = sums / norms
    symmetric_part = coefficients[weights] / norms[weights]
    residual = float(np.linalg.norm(state.amplitudes - symmetric_part))
    if residual <= SYMMETRY_TOL:
        residual = 0.0
    else:
        # absorb rounding so the decomposition weight stays exactly normalized
        weight = float(np.vdot(coefficients, coefficients).real)
        residual = float(np.sqrt(max(0.0, 1.0 - weight)))
    return DickeDecomposition(n, coefficients, residual)


def from_dicke(decomposition: DickeDecomposition) -> QubitState:
    """Lift a symmetric Dicke decomposition back to the qubit basis."""
    if decomposition.residual_norm > SYMMETRY_TOL:
        raise NotSymmetricError(
            "only symmetric states can be lifted, residual norm is "
            "{:.3e}".format(decomposition.residual_norm)
        )
    n = decomposition.n_qubits
    check_size(n)
    weights = hamming_weights(n)
    norms = np.sqrt(comb(n, np.arange(n + 1)))
    amplitudes = decomposition.coefficients[weights] / norms[weights]
    return QubitState(n, amplitudes)


def state_to_json(state: QubitState) -> dict:
    """Return the JSON-ready form {"n_qubits", "amplitudes": [[re, im]]}."""
    return {
        "n_qubits": state.n_qubits,
        "amplitudes": [
            [float(a.real), float(a.imag)] for a in state.amplitudes
        ],
    }


def state_from_json(data: dict, tol: Optional[float] = None) -> QubitState:
    """Build a state from its JSON form.

    Args:
        data: mapping with n_qubits and amplitudes as [re, im] pairs
        tol: largest accepted deviation of the norm from 1; states within
             it are renormalized only if they miss the 1e-12 invariant

    Returns:
        the state

    """
    tol = NORM_TOL if tol is None else tol
    try:
        n = int(data["n_qubits"])
        pairs = data["amplitudes"]
        amplitudes = np.array([complex(re, im) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError("malformed state JSON: {}".format(e)) from e
    check_size(n)
    if amplitudes.size != 2**n:
        raise InvalidSizeError(
            "{} qubits need {} amplitudes, got {}".format(
                n, 2**n, amplitudes.size
            )
        )
    norm = float(np.linalg.norm(amplitudes))
    if not abs(norm - 1.0) <= tol:
        raise NormalizationError(
            "state norm is {!r}, off by more than {}".format(norm, tol)
        )
    if abs(norm**2 - 1.0) > NORM_TOL:
        log.debug("renormalizing input state with norm %r", norm)
        amplitudes = amplitudes / norm
    return QubitState(n, amplitudes)


def dumps_state(state: QubitState) -> str:
    """Serialize a state to JSON text; floats round-trip exactly."""
    return json.dumps(state_to_json(state))


def loads_state(text: str, tol: Optional[float] = None) -> QubitState:
    """Parse JSON text produced by dumps_state."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError("state is not valid JSON: {}".format(e)) from e
    return state_from_json(data, tol=tol)
