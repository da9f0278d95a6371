# This file is part of pyqfim. See LICENSE file for license information.
"""Pure-state concurrence across bipartitions.

For a cut M|M' of a pure state, E = sqrt(2 (1 - tr rho_M^2)). The purity
is computed from the state reshaped into a 2^|M| x 2^|M'| matrix, so the
full density matrix is never formed.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import numpy as np

from pyqfim.errors import InvalidSizeError, QubitIndexError
from pyqfim.statevec import QubitState

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConcurrenceReport:
    """Concurrence per labelled cut and their sum."""

    per_cut: Dict[str, float] = field(default_factory=dict)

    @property
    def total(self) -> float:
        """Return the sum of E over the reported cuts."""
        return math.fsum(self.per_cut.values())


def _subset(state, subset):
    subset = set(subset)
    for qubit in subset:
        if not isinstance(qubit, (int, np.integer)) or not (
            1 <= qubit <= state.n_qubits
        ):
            raise QubitIndexError(
                "qubit {!r} outside 1..{}".format(qubit, state.n_qubits)
            )
    if not subset or len(subset) == state.n_qubits:
        raise QubitIndexError(
            "a cut needs a non-empty proper subset of the qubits, got "
            "{}".format(sorted(subset))
        )
    return sorted(subset)


def purity(state: QubitState, subset: Iterable[int]) -> float:
    """Return tr(rho_M^2) for the qubits in subset (1-based)."""
    keep = _subset(state, subset)
    rest = [q for q in range(1, state.n_qubits + 1) if q not in keep]
    tensor = np.transpose(state.tensor(), [q - 1 for q in keep + rest])
    matrix = tensor.reshape(2 ** len(keep), -1)
    if matrix.shape[0] > matrix.shape[1]:
        matrix = matrix.T
    # rho_M and rho_M' share their non-zero spectrum; use the smaller one
    reduced = matrix @ matrix.conj().T
    return float(np.sum(np.abs(reduced) ** 2))


def concurrence_cut(state: QubitState, subset: Iterable[int]) -> float:
    """Return E = sqrt(2 (1 - tr rho_M^2)) for the cut subset|rest."""
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity(state, subset))))


def cut_label(n_qubits: int, subset: Iterable[int]) -> str:
    """Return a label such as '1|23' for the cut subset|rest."""
    subset = sorted(subset)
    rest = [q for q in range(1, n_qubits + 1) if q not in subset]
    sep = "" if n_qubits < 10 else ","
    return "{}|{}".format(
        sep.join(map(str, subset)), sep.join(map(str, rest))
    )


def bipartitions(n_qubits: int, all_cuts=False) -> List[Tuple[int, ...]]:
    """Return the M side of the single-qubit cuts or of every cut.

    With all_cuts each unordered bipartition appears once, with M the
    smaller side, or the side holding qubit 1 when both are equal.
    """
    if not all_cuts:
        return [(q,) for q in range(1, n_qubits + 1)]
    qubits = range(1, n_qubits + 1)
    cuts = []
    for size in range(1, n_qubits // 2 + 1):
        for subset in itertools.combinations(qubits, size):
            if 2 * size == n_qubits and 1 not in subset:
                continue
            cuts.append(subset)
    return cuts


def total_concurrence(
    state: QubitState, all_cuts: bool = False
) -> ConcurrenceReport:
    """Return E for every single-qubit cut, or for every cut.

    Raises:
        InvalidSizeError: for a single qubit, which has no cut

    """
    if state.n_qubits < 2:
        raise InvalidSizeError("concurrence needs at least two qubits")
    cuts = bipartitions(state.n_qubits, all_cuts)
    log.debug("computing concurrence over %d cuts", len(cuts))
    return ConcurrenceReport(
        {
            cut_label(state.n_qubits, subset): concurrence_cut(state, subset)
            for subset in cuts
        }
    )


def report_to_json(report: ConcurrenceReport) -> dict:
    """Return {"cuts": {label: E}, "total": sum}."""
    return {"cuts": dict(report.per_cut), "total": report.total}
