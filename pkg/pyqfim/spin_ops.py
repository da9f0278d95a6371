# This file is part of pyqfim. See LICENSE file for license information.
"""Collective spin moments, the mean-spin frame and Fisher information.

For a pure state and a collective rotation generator J_n the quantum
Fisher information is F_Q = 4 Var(J_n). The best phase sensitivity comes
from the direction n perpendicular to the mean spin with the largest
variance; chi^2 = N / F_Q below 1 flags multipartite entanglement.

J_alpha = sum_i sigma_alpha^(i) / 2 is applied to the state tensor axis by
axis, so no 2^n x 2^n operator is ever formed.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from pyqfim import config
from pyqfim.errors import SingularFrameError
from pyqfim.statevec import QubitState

AXES = "xyz"
NO_SENSITIVITY_TOL = 1e-12
FLAG_TOL = 1e-9
MIN_GRID_POINTS = 64
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

log = logging.getLogger(__name__)


def _degenerate_tol(tol):
    if tol is None:
        return float(config.setting("spin_ops", "degenerate_tol"))
    return tol


def _along(tensor, axis, values):
    shape = [1] * tensor.ndim
    shape[axis] = 2
    return tensor * np.asarray(values).reshape(shape)


def _pauli(tensor, axis, name):
    """Apply one Pauli matrix to one tensor axis."""
    if name == "x":
        return np.flip(tensor, axis)
    if name == "y":
        return _along(np.flip(tensor, axis), axis, (-1j, 1j))
    return _along(tensor, axis, (1.0, -1.0))


def collective_action(state: QubitState) -> np.ndarray:
    """Return the rows J_x|psi>, J_y|psi>, J_z|psi> as a (3, 2**n) array."""
    tensor = state.tensor()
    rows = []
    for name in AXES:
        total = sum(_pauli(tensor, axis, name) for axis in range(tensor.ndim))
        rows.append(0.5 * np.reshape(total, -1))
    return np.array(rows)


@dataclass(frozen=True, eq=False)
class CollectiveMoments:
    """First and second moments of the collective spin.

    second_moments holds the symmetrized <(J_a J_b + J_b J_a)/2> and
    covariance the matrix Gamma = second_moments - mean mean^T.
    """

    n_qubits: int
    mean: np.ndarray
    second_moments: np.ndarray

    @property
    def covariance(self) -> np.ndarray:
        """Return the symmetric covariance matrix Gamma."""
        return self.second_moments - np.outer(self.mean, self.mean)

    def variance(self, direction) -> float:
        """Return Var(J.u) for a unit vector u."""
        direction = np.asarray(direction, dtype=float)
        return float(direction @ self.covariance @ direction)


def collective_moments(state: QubitState) -> CollectiveMoments:
    """Return <J> and the symmetrized second moments of a state."""
    psi = state.amplitudes
    action = collective_action(state)
    mean = np.array([np.vdot(psi, row).real for row in action])
    second = (action.conj() @ action.T).real
    second = 0.5 * (second + second.T)
    return CollectiveMoments(state.n_qubits, mean, second)


@dataclass(frozen=True, eq=False)
class SpinFrame:
    """Spherical coordinates of the mean spin and its perpendicular plane.

    n1 and n2 span the plane perpendicular to the mean spin direction u,
    with n2 x n1 = u. When the mean spin nearly vanishes the frame is
    degenerate: theta = phi = 0 and u = z by convention.
    """

    theta: float
    phi: float
    R: float
    r: float
    n1: np.ndarray
    n2: np.ndarray
    degenerate: bool

    @property
    def direction(self) -> np.ndarray:
        """Return the unit vector of the mean spin."""
        return np.array(
            [
                math.sin(self.theta) * math.cos(self.phi),
                math.sin(self.theta) * math.sin(self.phi),
                math.cos(self.theta),
            ]
        )


def azimuth(x, y, r):
    """Return phi in [0, 2pi) from cos(phi) = x/r and the sign of y."""
    base = math.acos(min(1.0, max(-1.0, x / r)))
    return base if y >= 0 else 2 * math.pi - base


def spin_frame(
    moments: CollectiveMoments, tol: Optional[float] = None
) -> SpinFrame:
    """Return the mean-spin frame.

    Args:
        moments: collective moments of the state
        tol: mean spin length below which the frame is degenerate;
             defaults to spin_ops.degenerate_tol from the configuration

    Returns:
        SpinFrame

    """
    tol = _degenerate_tol(tol)
    x, y, z = (float(v) for v in moments.mean)
    R = math.sqrt(x * x + y * y + z * z)
    r = math.hypot(x, y)
    degenerate = R < tol
    if degenerate:
        theta = 0.0
    else:
        theta = math.atan2(r, z)
    if degenerate or r < tol:
        # mean spin on the z axis: the azimuth is free, pick phi = 0
        phi = 0.0
        n1 = np.array([0.0, -1.0, 0.0])
        n2 = np.array([-math.cos(theta), 0.0, math.sin(theta)])
    else:
        phi = azimuth(x, y, r)
        n1 = np.array([y / r, -x / r, 0.0])
        n2 = np.array([-z * x, -z * y, r * r]) / (R * r)
    return SpinFrame(theta, phi, R, r, n1, n2, degenerate)


def variance_from_quadratics(total, difference, anticommutator) -> float:
    """Largest variance in the perpendicular plane.

    Args:
        total: <J_n1^2 + J_n2^2>
        difference: <J_n1^2 - J_n2^2>
        anticommutator: <J_n1 J_n2 + J_n2 J_n1>
    """
    return 0.5 * total + 0.5 * math.hypot(difference, anticommutator)


def perp_quadratics(
    moments: CollectiveMoments, frame: SpinFrame
) -> Tuple[float, float, float]:
    """Return <J_n1^2 + J_n2^2>, <J_n1^2 - J_n2^2>, <{J_n1, J_n2}>.

    Raises:
        SingularFrameError: if the frame is degenerate

    """
    if frame.degenerate:
        raise SingularFrameError(
            "perpendicular plane undefined for mean spin length "
            "{:.3e}".format(frame.R)
        )
    second = moments.second_moments
    a = float(frame.n1 @ second @ frame.n1)
    c = float(frame.n2 @ second @ frame.n2)
    b = float(frame.n1 @ second @ frame.n2)
    return a + c, a - c, 2 * b


def symmetric_eigvalsh3(matrix) -> np.ndarray:
    """Return the ascending eigenvalues of a real symmetric 3x3 matrix.

    Closed-form trigonometric solution of the characteristic cubic.
    """
    a = np.asarray(matrix, dtype=float)
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    if p1 == 0:
        return np.sort(np.diag(a))
    q = np.trace(a) / 3
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2
    p = math.sqrt((p2 + 2 * p1) / 6)
    b = (a - q * np.eye(3)) / p
    half_det = min(1.0, max(-1.0, np.linalg.det(b) / 2))
    angle = math.acos(half_det) / 3
    largest = q + 2 * p * math.cos(angle)
    smallest = q + 2 * p * math.cos(angle + 2 * math.pi / 3)
    middle = 3 * q - largest - smallest
    return np.array([smallest, middle, largest])


def max_perp_variance(moments: CollectiveMoments, frame: SpinFrame) -> float:
    """Return the largest variance of J.n over n perpendicular to <J>.

    A degenerate frame has no preferred plane, so the maximum is taken
    over all directions: the largest eigenvalue of the covariance.
    """
    if frame.degenerate:
        log.debug("degenerate frame (R=%.3e), maximizing over sphere", frame.R)
        return float(symmetric_eigvalsh3(moments.covariance)[-1])
    covariance = moments.covariance
    a = float(frame.n1 @ covariance @ frame.n1)
    c = float(frame.n2 @ covariance @ frame.n2)
    b = float(frame.n1 @ covariance @ frame.n2)
    return variance_from_quadratics(a + c, a - c, 2 * b)


@dataclass(frozen=True)
class MetricReport:
    """Phase-estimation figures of merit of one state.

    chi_squared and delta_theta_qcr are infinite when no_sensitivity is
    set, i.e. when F_Q vanishes.
    """

    n: int
    f_q: float
    chi_squared: float
    v_f: float
    var_max: float
    delta_theta_qcr: float
    degenerate_frame: bool
    shot_noise_beaten: bool
    heisenberg_attained: bool
    no_sensitivity: bool


def report_from_variance(n, var_max, degenerate) -> MetricReport:
    """Derive every figure of merit from the maximal variance."""
    f_q = 4.0 * var_max
    no_sensitivity = f_q < NO_SENSITIVITY_TOL
    if no_sensitivity:
        chi_squared = delta_theta = math.inf
    else:
        chi_squared = n / f_q
        delta_theta = 1.0 / math.sqrt(f_q)
    return MetricReport(
        n=n,
        f_q=f_q,
        chi_squared=chi_squared,
        v_f=math.sqrt(max(f_q, 0.0)),
        var_max=var_max,
        delta_theta_qcr=delta_theta,
        degenerate_frame=degenerate,
        shot_noise_beaten=f_q > n + FLAG_TOL,
        heisenberg_attained=abs(f_q - n * n) <= FLAG_TOL,
        no_sensitivity=no_sensitivity,
    )


def metric_report(
    state: QubitState, tol: Optional[float] = None
) -> MetricReport:
    """Compute F_Q, chi^2 and the derived metrology quantities."""
    moments = collective_moments(state)
    frame = spin_frame(moments, tol)
    var_max = max_perp_variance(moments, frame)
    return report_from_variance(state.n_qubits, var_max, frame.degenerate)


def _fibonacci_sphere(points):
    index = np.arange(points)
    z = 1.0 - (2 * index + 1) / points
    rho = np.sqrt(1.0 - z * z)
    angle = GOLDEN_ANGLE * index
    return np.column_stack([rho * np.cos(angle), rho * np.sin(angle), z])


def brute_force_max_variance(
    state: QubitState, grid_points: int, tol: Optional[float] = None
) -> float:
    """Maximize Var(J.u) over a grid of directions.

    The grid is a half circle in the perpendicular plane for a regular
    frame and a Fibonacci sphere for a degenerate one. This is an
    independent check of max_perp_variance, not a production path.
    """
    if grid_points < MIN_GRID_POINTS:
        raise ValueError(
            "grid_points must be at least {}, got {}".format(
                MIN_GRID_POINTS, grid_points
            )
        )
    psi = state.amplitudes
    action = collective_action(state)
    mean = np.array([np.vdot(psi, row).real for row in action])
    frame = spin_frame(collective_moments(state), tol)
    if frame.degenerate:
        directions = _fibonacci_sphere(grid_points)
    else:
        t = np.pi * np.arange(grid_points) / grid_points
        directions = np.outer(np.cos(t), frame.n1) + np.outer(
            np.sin(t), frame.n2
        )
    projected = directions @ action
    second = np.einsum("ij,ij->i", projected.conj(), projected).real
    variances = second - (directions @ mean) ** 2
    return float(variances.max())


def report_to_json(report: MetricReport) -> dict:
    """Return the JSON-ready form of a report; infinities become None."""
    finite = not report.no_sensitivity
    return {
        "n": report.n,
        "f_q": report.f_q,
        "chi2": report.chi_squared if finite else None,
        "v_f": report.v_f,
        "var_max": report.var_max,
        "delta_theta_qcr": report.delta_theta_qcr if finite else None,
        "degenerate_frame": report.degenerate_frame,
        "shot_noise_beaten": report.shot_noise_beaten,
        "heisenberg_attained": report.heisenberg_attained,
        "no_sensitivity": report.no_sensitivity,
    }
