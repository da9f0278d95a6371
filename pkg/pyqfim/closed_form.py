# This file is part of pyqfim. See LICENSE file for license information.
"""The general 3-qubit symmetric state and its closed-form moments.

A symmetric state of three qubits is written in the spin-3/2 basis as::

    alpha e^{i mu} |3/2, 3/2> + gamma e^{i eta} |3/2, 1/2>
        + delta |3/2, -1/2> + beta e^{i nu} |3/2, -3/2>

with real, signed amplitudes. The closed forms below give the mean spin
and the quadratic moments in the perpendicular plane without building the
state. They are a cross-check: chi_squared_param always goes through the
operator path in spin_ops.
"""

import logging
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import yaml

from pyqfim import config, spin_ops
from pyqfim.errors import InfeasibleSpecError, SingularFrameError
from pyqfim.statevec import DickeDecomposition, QubitState, from_dicke
from pyqfim.util import reduce_phase

SQRT3 = math.sqrt(3.0)
NORM_TOL = 1e-12
AMPLITUDES = ("alpha", "beta", "gamma", "delta")
PHASES = ("mu", "nu", "eta")
TYPO_LEDGER = Path(__file__).parent / "typo_ledger.yaml"

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpinParams:
    """Amplitudes and phases of the general symmetric 3-qubit state.

    Phases are reduced to [0, 2pi) on construction.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    mu: float = 0.0
    nu: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        """Check normalization and reduce the phases."""
        norm_sq = sum(getattr(self, name) ** 2 for name in AMPLITUDES)
        if not abs(norm_sq - 1.0) <= NORM_TOL:
            raise InfeasibleSpecError(
                "alpha^2 + beta^2 + gamma^2 + delta^2 = {!r}, expected "
                "1".format(norm_sq)
            )
        for name in PHASES:
            phase = getattr(self, name)
            if not math.isfinite(phase):
                raise InfeasibleSpecError(
                    "{} must be finite, got {!r}".format(name, phase)
                )
            object.__setattr__(self, name, reduce_phase(phase))

    @property
    def coefficients(self) -> np.ndarray:
        """Return the amplitudes on m = 3/2, 1/2, -1/2, -3/2."""
        return np.array(
            [
                self.alpha * np.exp(1j * self.mu),
                self.gamma * np.exp(1j * self.eta),
                self.delta,
                self.beta * np.exp(1j * self.nu),
            ]
        )


GRAPH_PARAMS = SpinParams(
    -1 / math.sqrt(8), 1 / math.sqrt(8), -math.sqrt(3 / 8), math.sqrt(3 / 8)
)
HYPERGRAPH_PARAMS = SpinParams(
    -1 / math.sqrt(8), 1 / math.sqrt(8), math.sqrt(3 / 8), math.sqrt(3 / 8)
)
GHZ_PARAMS = SpinParams(1 / math.sqrt(2), 1 / math.sqrt(2), 0.0, 0.0)


def realize(params: SpinParams) -> QubitState:
    """Return the 3-qubit state described by the parameters."""
    return from_dicke(DickeDecomposition(3, params.coefficients))


def _brackets(p):
    """Return the four trigonometric combinations the moments share."""
    gb, ad = p.gamma * p.beta, p.alpha * p.delta
    ag, bd = p.alpha * p.gamma, p.beta * p.delta
    k1 = gb * math.cos(p.nu - p.eta) + ad * math.cos(p.mu)
    k2 = gb * math.sin(p.nu - p.eta) - ad * math.sin(p.mu)
    l1 = ag * math.cos(p.eta - p.mu) - bd * math.cos(p.nu)
    l2 = ag * math.sin(p.eta - p.mu) - bd * math.sin(p.nu)
    return k1, k2, l1, l2


def closed_form_moments(params: SpinParams) -> np.ndarray:
    """Return (<J_x>, <J_y>, <J_z>) from the closed-form expressions."""
    p = params
    jx = (
        SQRT3 * p.alpha * p.gamma * math.cos(p.eta - p.mu)
        + 2 * p.gamma * p.delta * math.cos(p.eta)
        + SQRT3 * p.beta * p.delta * math.cos(p.nu)
    )
    jy = (
        SQRT3 * p.alpha * p.gamma * math.sin(p.eta - p.mu)
        - 2 * p.gamma * p.delta * math.sin(p.eta)
        + SQRT3 * p.beta * p.delta * math.sin(p.nu)
    )
    jz = 0.5 * (3 * (p.alpha**2 - p.beta**2) + p.gamma**2 - p.delta**2)
    return np.array([jx, jy, jz])


def closed_form_second_moments(params: SpinParams) -> np.ndarray:
    """Return the symmetrized <(J_a J_b + J_b J_a)/2> matrix."""
    s = params.alpha**2 + params.beta**2
    k1, k2, l1, l2 = _brackets(params)
    return np.array(
        [
            [1.75 - s + SQRT3 * k1, SQRT3 * k2, SQRT3 * l1],
            [SQRT3 * k2, 1.75 - s - SQRT3 * k1, SQRT3 * l2],
            [SQRT3 * l1, SQRT3 * l2, 0.25 + 2 * s],
        ]
    )


def _regular_mean(params, tol):
    if tol is None:
        tol = float(config.setting("spin_ops", "degenerate_tol"))
    x, y, z = closed_form_moments(params)
    R = math.sqrt(x * x + y * y + z * z)
    r = math.hypot(x, y)
    if R < tol or r < tol:
        raise SingularFrameError(
            "closed forms divide by R = {:.3e} and r = {:.3e}; use the "
            "operator path".format(R, r)
        )
    return x, y, z, R, r


def printed_quadratics(
    params: SpinParams, tol: Optional[float] = None
) -> Tuple[float, float, float]:
    """Evaluate the published perpendicular quadratics term by term.

    The anticommutator comes out with the sign it has for the axis
    -n1; see closed_form_quadratics.

    Raises:
        SingularFrameError: when R or r is below tol

    """
    p = params
    x, y, z, R, r = _regular_mean(p, tol)
    s = p.alpha**2 + p.beta**2
    k1, k2, l1, l2 = _brackets(p)
    R2, r2 = R * R, r * r
    twice_z = 3 * (p.alpha**2 - p.beta**2) + p.gamma**2 - p.delta**2
    weight = 1 + twice_z**2 / (4 * R2)
    total = (
        (1.75 - s) * weight
        + r2 / R2 * (0.25 + 2 * s)
        + SQRT3 / R2 * (y * y - x * x) * k1
        - 2 * SQRT3 / R2 * x * y * k2
        - 2 * SQRT3 / R2 * y * z * l2
        - 2 * SQRT3 / R2 * z * x * l1
    )
    difference = (
        r2 / R2 * (1.5 - 3 * s)
        + SQRT3 * weight * (y * y - x * x) / r2 * k1
        - 2 * SQRT3 * weight * x * y / r2 * k2
        + 2 * SQRT3 / R2 * y * z * l2
        + 2 * SQRT3 / R2 * z * x * l1
    )
    anticommutator = (
        4 * SQRT3 * x * y * z / (R * r2) * k1
        + 2 * SQRT3 * z * (y * y - x * x) / (R * r2) * k2
        - 2 * SQRT3 / R * y * l1
        + 2 * SQRT3 / R * x * l2
    )
    return total, difference, anticommutator


def closed_form_quadratics(
    params: SpinParams, tol: Optional[float] = None
) -> Tuple[float, float, float]:
    """Return <J_n1^2 + J_n2^2>, <J_n1^2 - J_n2^2>, <{J_n1, J_n2}>.

    Same frame as spin_ops.spin_frame. The published anticommutator is
    negated to match n1 = (sin phi, -cos phi, 0).

    Raises:
        SingularFrameError: when R or r is below tol

    """
    total, difference, anticommutator = printed_quadratics(params, tol)
    return total, difference, -anticommutator


def closed_form_max_variance(
    params: SpinParams, tol: Optional[float] = None
) -> float:
    """Return the maximal perpendicular variance from the closed forms."""
    return spin_ops.variance_from_quadratics(
        *closed_form_quadratics(params, tol)
    )


def param_report(params: SpinParams) -> spin_ops.MetricReport:
    """Return the metric report of the realized state."""
    return spin_ops.metric_report(realize(params))


def chi_squared_param(params: SpinParams) -> float:
    """Return chi^2 of the realized state via the operator path."""
    return param_report(params).chi_squared


def flip_params(params: SpinParams) -> SpinParams:
    """Return the parameters of the state with every qubit X-flipped.

    The flip maps m to -m; the global phase is fixed so the -1/2
    amplitude stays real.
    """
    p = params
    return SpinParams(
        alpha=p.beta,
        beta=p.alpha,
        gamma=p.delta,
        delta=p.gamma,
        mu=p.nu - p.eta,
        nu=p.mu - p.eta,
        eta=-p.eta,
    )


def rotate_params_z(params: SpinParams, angle: float) -> SpinParams:
    """Return the parameters of the state rotated by angle about z."""
    p = params
    return replace(
        p, mu=p.mu - 2 * angle, nu=p.nu + angle, eta=p.eta - angle
    )


def conjugate_params(params: SpinParams) -> SpinParams:
    """Return the parameters of the complex conjugate state."""
    p = params
    return replace(p, mu=-p.mu, nu=-p.nu, eta=-p.eta)


def printed_frame_axes(theta, phi):
    """Return n1 and n2 exactly as published."""
    n1 = np.array([math.sin(phi), math.cos(phi), 0.0])
    n2 = np.array(
        [
            -math.cos(theta) * math.cos(phi),
            -math.cos(phi) * math.sin(phi),
            math.sin(theta),
        ]
    )
    return n1, n2


def corrected_frame_axes(theta, phi):
    """Return the orthonormal n1 and n2 used by spin_ops."""
    n1 = np.array([math.sin(phi), -math.cos(phi), 0.0])
    n2 = np.array(
        [
            -math.cos(theta) * math.cos(phi),
            -math.cos(theta) * math.sin(phi),
            math.sin(theta),
        ]
    )
    return n1, n2


def printed_polar_angle(mean, theta):
    """Evaluate the published self-referential polar angle at theta.

    Returns NaN where the arccos argument leaves [-1, 1].
    """
    x, y, z = mean
    R = math.sqrt(x * x + y * y + z * z)
    argument = z / (R * math.sin(theta))
    if abs(argument) > 1:
        return math.nan
    return math.acos(argument)


def load_typo_ledger(path: Optional[Path] = None):
    """Return the list of documented corrections to the published formulas.

    Each entry has the keys term, printed, corrected and evidence; evidence
    names the test that fails for the printed form and passes for the
    corrected one.
    """
    path = path or TYPO_LEDGER
    with open(path, encoding="utf-8") as stream:
        ledger = yaml.safe_load(stream)
    entries = ledger.get("corrections", []) if ledger else []
    for entry in entries:
        missing = {"term", "printed", "corrected", "evidence"} - set(entry)
        if missing:
            raise ValueError(
                "typo ledger entry {} lacks {}".format(
                    entry.get("term", "?"), ", ".join(sorted(missing))
                )
            )
    return entries


def params_to_json(params: SpinParams) -> dict:
    """Return the parameter JSON object."""
    return asdict(params)


def params_from_json(data: dict, tol: float = NORM_TOL) -> SpinParams:
    """Build parameters from their JSON object.

    Missing phases default to 0. Amplitudes whose squared norm is off by
    at most tol are rescaled; larger deviations raise InfeasibleSpecError.
    """
    unknown = set(data) - set(AMPLITUDES) - set(PHASES)
    if unknown:
        raise ValueError(
            "unknown parameter(s): {}".format(", ".join(sorted(unknown)))
        )
    try:
        amplitudes = [float(data[name]) for name in AMPLITUDES]
        phases = [float(data.get(name, 0.0)) for name in PHASES]
    except KeyError as e:
        raise ValueError("missing parameter {}".format(e)) from None
    except (TypeError, ValueError) as e:
        raise ValueError("parameters must be numbers: {}".format(e)) from e
    norm_sq = sum(a * a for a in amplitudes)
    if NORM_TOL < abs(norm_sq - 1.0) <= tol:
        log.debug("rescaling amplitudes with norm squared %r", norm_sq)
        scale = 1 / math.sqrt(norm_sq)
        amplitudes = [a * scale for a in amplitudes]
    return SpinParams(*amplitudes, *phases)
