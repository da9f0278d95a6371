# This file is part of pyqfim. See LICENSE file for license information.
"""Parameter and phase sweeps of chi^2 over the general 3-qubit state.

A sweep varies one parameter over a grid while one amplitude is solved
from the normalization constraint with an explicit sign. Every grid point
goes through the operator path (spin_ops.metric_report), so the sweep
and a state built directly from a graph agree to rounding.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.optimize as optimize

from pyqfim import config, spin_ops
from pyqfim.closed_form import AMPLITUDES, PHASES, SpinParams, realize
from pyqfim.entanglement import total_concurrence
from pyqfim.errors import InfeasibleSpecError, RangeDomainError
from pyqfim.util import format_sig, grid

VARIABLES = ("delta", "gamma") + PHASES
RADICAND_TOL = 1e-12
CSV_DIGITS = 12
SWEEP_COLUMNS = (
    "varied_name",
    "varied_value",
    "dependent_name",
    "dependent_value",
    "chi2",
    "f_q",
)
PHASE_SWEEP_COLUMNS = ("phase_name", "phase_value") + SWEEP_COLUMNS
CONCURRENCE_COLUMN = "concurrence"
ORDER_TOL = 1e-9

log = logging.getLogger(__name__)


def _check_range(start, stop, step):
    if not all(math.isfinite(v) for v in (start, stop)):
        raise InfeasibleSpecError(
            "range bounds must be finite, got {!r}..{!r}".format(start, stop)
        )
    if start > stop:
        raise InfeasibleSpecError(
            "range start {!r} exceeds stop {!r}".format(start, stop)
        )
    if step is not None and not (math.isfinite(step) and step > 0):
        raise InfeasibleSpecError(
            "grid step must be positive, got {!r}".format(step)
        )


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional slice through the parameter space.

    Args:
        name: label used for CSV files and reports
        vary: parameter on the grid, one of delta, gamma, mu, nu, eta
        start: first grid value
        stop: last grid value, included when it lies on the grid
        dependent: amplitude solved from the normalization constraint
        sign: sign of the dependent amplitude, +1 or -1
        step: grid spacing; None uses the configured default
        fixed: values of the remaining parameters; phases default to 0
    """

    name: str
    vary: str
    start: float
    stop: float
    dependent: Optional[str] = None
    sign: int = 1
    step: Optional[float] = None
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        """Validate the slice."""
        if self.vary not in VARIABLES:
            raise InfeasibleSpecError(
                "cannot vary {!r}; choose one of {}".format(
                    self.vary, ", ".join(VARIABLES)
                )
            )
        _check_range(self.start, self.stop, self.step)
        if self.sign not in (1, -1):
            raise InfeasibleSpecError(
                "sign must be +1 or -1, got {!r}".format(self.sign)
            )
        unknown = set(self.fixed) - set(AMPLITUDES) - set(PHASES)
        if unknown:
            raise InfeasibleSpecError(
                "unknown fixed parameters: {}".format(
                    ", ".join(sorted(unknown))
                )
            )
        if self.vary in self.fixed:
            raise InfeasibleSpecError(
                "{} is both varied and fixed".format(self.vary)
            )
        if self.vary in AMPLITUDES and self.dependent is None:
            raise InfeasibleSpecError(
                "varying an amplitude needs a dependent amplitude"
            )
        if self.dependent is not None:
            if self.dependent not in AMPLITUDES:
                raise InfeasibleSpecError(
                    "dependent {!r} is not an amplitude".format(
                        self.dependent
                    )
                )
            if self.dependent == self.vary or self.dependent in self.fixed:
                raise InfeasibleSpecError(
                    "dependent {} must be neither varied nor fixed".format(
                        self.dependent
                    )
                )
        missing = [
            name
            for name in AMPLITUDES
            if name not in (self.vary, self.dependent)
            and name not in self.fixed
        ]
        if missing:
            raise InfeasibleSpecError(
                "amplitudes {} must be fixed".format(", ".join(missing))
            )

    @property
    def grid_step(self) -> float:
        """Return the step, falling back to the configured default."""
        if self.step is not None:
            return self.step
        key = "amplitude_step" if self.vary in AMPLITUDES else "phase_step"
        return config.setting("sweep", key)

    def grid(self) -> List[float]:
        """Return the grid values in increasing order."""
        return grid(self.start, self.stop, self.grid_step)


@dataclass(frozen=True)
class SweepRow:
    """chi^2 and F_Q at one grid point.

    concurrence is the total single-qubit-cut concurrence, set only when
    the sweep was asked for it.
    """

    varied: float
    dependent: Optional[float]
    chi2: float
    f_q: float
    concurrence: Optional[float] = None


def _csv_number(value):
    return "" if value is None else format_sig(value, CSV_DIGITS)


def _has_concurrence(rows):
    return bool(rows) and all(row.concurrence is not None for row in rows)


def _best_index(chi2, kind):
    if kind == "min":
        return int(np.argmin(chi2))
    if kind == "max":
        return int(np.argmax(chi2))
    raise ValueError("kind must be 'min' or 'max', got {!r}".format(kind))


@dataclass(frozen=True)
class SweepResult:
    """Rows of a sweep, sorted by the varied value.

    argmin and argmax return (varied value, chi^2); ties go to the smaller
    varied value.
    """

    spec: SweepSpec
    rows: Tuple[SweepRow, ...]

    @property
    def chi2_values(self) -> np.ndarray:
        """Return chi^2 of every row."""
        return np.array([row.chi2 for row in self.rows])

    def best(self, kind: str) -> SweepRow:
        """Return the row with the smallest or largest chi^2."""
        return self.rows[_best_index(self.chi2_values, kind)]

    @property
    def argmin(self) -> Tuple[float, float]:
        """Return (varied value, chi^2) at the smallest chi^2."""
        row = self.best("min")
        return row.varied, row.chi2

    @property
    def argmax(self) -> Tuple[float, float]:
        """Return (varied value, chi^2) at the largest chi^2."""
        row = self.best("max")
        return row.varied, row.chi2

    def to_csv(self) -> str:
        """Return the rows as CSV with a header line."""
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        extra = _has_concurrence(self.rows)
        writer.writerow(
            SWEEP_COLUMNS + ((CONCURRENCE_COLUMN,) if extra else ())
        )
        for row in self.rows:
            fields = self._fields(row)
            if extra:
                fields.append(_csv_number(row.concurrence))
            writer.writerow(fields)
        return stream.getvalue()

    def _fields(self, row):
        return [
            self.spec.vary,
            _csv_number(row.varied),
            self.spec.dependent or "",
            _csv_number(row.dependent),
            _csv_number(row.chi2),
            _csv_number(row.f_q),
        ]


def evaluate(
    spec: SweepSpec, value: float, concurrence: bool = False
) -> SweepRow:
    """Solve the constraint at one value of the varied parameter.

    With concurrence the row also carries the total concurrence of the
    realized state.

    Raises:
        RangeDomainError: when the dependent amplitude would be imaginary

    """
    values = dict.fromkeys(PHASES, 0.0)
    values.update(spec.fixed)
    values[spec.vary] = value
    dependent = None
    if spec.dependent is not None:
        radicand = 1.0 - math.fsum(
            values[name] ** 2 for name in AMPLITUDES if name != spec.dependent
        )
        if radicand < -RADICAND_TOL:
            raise RangeDomainError(spec.vary, value, radicand)
        dependent = spec.sign * math.sqrt(max(radicand, 0.0))
        values[spec.dependent] = dependent
    state = realize(SpinParams(**values))
    report = spin_ops.metric_report(state)
    total = total_concurrence(state).total if concurrence else None
    return SweepRow(value, dependent, report.chi_squared, report.f_q, total)


def run_sweep(spec: SweepSpec, concurrence: bool = False) -> SweepResult:
    """Evaluate chi^2 on every grid point of spec."""
    points = spec.grid()
    log.debug("sweep %s: %d grid points", spec.name, len(points))
    return SweepResult(
        spec, tuple(evaluate(spec, v, concurrence) for v in points)
    )


@dataclass(frozen=True)
class PhaseSweepSpec:
    """Two-dimensional grid: one phase times an amplitude slice.

    The amplitude slice carries the other phases in its fixed values.
    """

    name: str
    phase: str
    start: float
    stop: float
    amplitude: SweepSpec
    step: Optional[float] = None

    def __post_init__(self):
        """Validate the phase axis against the amplitude slice."""
        if self.phase not in PHASES:
            raise InfeasibleSpecError(
                "phase axis must be one of {}, got {!r}".format(
                    ", ".join(PHASES), self.phase
                )
            )
        if self.amplitude.vary not in AMPLITUDES:
            raise InfeasibleSpecError(
                "second axis must be an amplitude, got {!r}".format(
                    self.amplitude.vary
                )
            )
        if self.phase in self.amplitude.fixed:
            raise InfeasibleSpecError(
                "{} is both swept and fixed".format(self.phase)
            )
        _check_range(self.start, self.stop, self.step)

    def grid(self) -> List[float]:
        """Return the phase grid values in increasing order."""
        step = self.step
        if step is None:
            step = config.setting("sweep", "phase_step")
        return grid(self.start, self.stop, step)

    def at_phase(self, value: float) -> SweepSpec:
        """Return the amplitude slice with the phase set to value."""
        fixed = dict(self.amplitude.fixed)
        fixed[self.phase] = value
        return replace(self.amplitude, fixed=fixed)


@dataclass(frozen=True)
class PhaseSweepResult:
    """Rows of a phase sweep as (phase value, amplitude row) pairs.

    Rows are ordered by phase, then by the varied amplitude; argmin and
    argmax return (phase value, varied value, chi^2) and break ties
    toward the earlier row.
    """

    spec: PhaseSweepSpec
    rows: Tuple[Tuple[float, SweepRow], ...]

    @property
    def chi2_values(self) -> np.ndarray:
        """Return chi^2 of every row."""
        return np.array([row.chi2 for _, row in self.rows])

    def _best(self, kind):
        phase, row = self.rows[_best_index(self.chi2_values, kind)]
        return phase, row.varied, row.chi2

    @property
    def argmin(self) -> Tuple[float, float, float]:
        """Return (phase, varied value, chi^2) at the smallest chi^2."""
        return self._best("min")

    @property
    def argmax(self) -> Tuple[float, float, float]:
        """Return (phase, varied value, chi^2) at the largest chi^2."""
        return self._best("max")

    def to_csv(self) -> str:
        """Return the grid as CSV with a header line."""
        amplitude = self.spec.amplitude
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        extra = _has_concurrence([row for _, row in self.rows])
        writer.writerow(
            PHASE_SWEEP_COLUMNS + ((CONCURRENCE_COLUMN,) if extra else ())
        )
        for phase, row in self.rows:
            fields = [
                self.spec.phase,
                _csv_number(phase),
                amplitude.vary,
                _csv_number(row.varied),
                amplitude.dependent or "",
                _csv_number(row.dependent),
                _csv_number(row.chi2),
                _csv_number(row.f_q),
            ]
            if extra:
                fields.append(_csv_number(row.concurrence))
            writer.writerow(fields)
        return stream.getvalue()


def run_phase_sweep(
    spec: PhaseSweepSpec, concurrence: bool = False
) -> PhaseSweepResult:
    """Evaluate chi^2 on the full phase times amplitude grid."""
    phases = spec.grid()
    log.debug("phase sweep %s: %d phase values", spec.name, len(phases))
    rows = []
    for phase in phases:
        slice_ = run_sweep(spec.at_phase(phase), concurrence)
        rows.extend((phase, row) for row in slice_.rows)
    return PhaseSweepResult(spec, tuple(rows))


def concurrence_order_violations(
    rows: Sequence[SweepRow], tol: float = ORDER_TOL
) -> List[Tuple[SweepRow, SweepRow]]:
    """Find rows where more concurrence comes with less Fisher information.

    Returns (row, witness) pairs: row has a concurrence larger than the
    witness by more than tol, yet an F_Q smaller by more than tol. The
    witness is the row of largest F_Q among the less entangled ones. An
    empty list means F_Q never decreases as concurrence grows.

    Raises:
        ValueError: when a row carries no concurrence

    """
    if not _has_concurrence(rows):
        raise ValueError("rows need concurrence; sweep with concurrence")
    ordered = sorted(rows, key=lambda row: row.concurrence)
    violations = []
    witness = None
    below = 0
    for row in ordered:
        while ordered[below].concurrence < row.concurrence - tol:
            candidate = ordered[below]
            if witness is None or candidate.f_q > witness.f_q:
                witness = candidate
            below += 1
        if witness is not None and witness.f_q > row.f_q + tol:
            violations.append((row, witness))
    log.debug(
        "%d of %d rows lose F_Q as concurrence grows",
        len(violations),
        len(rows),
    )
    return violations


@dataclass(frozen=True)
class Extremum:
    """Located minimum or maximum of chi^2 along a sweep.

    boundary is set when the best grid point is the first or last one;
    such points are not refined.
    """

    value: float
    chi2: float
    boundary: bool
    kind: str = "min"


def locate_extremum(
    spec: SweepSpec,
    refine_tol: Optional[float] = None,
    kind: str = "min",
    result: Optional[SweepResult] = None,
) -> Extremum:
    """Find the grid extremum and refine it by golden-section search.

    Args:
        spec: the sweep to search
        refine_tol: width of the final bracket in the varied parameter;
            None uses the configured default
        kind: 'min' or 'max'
        result: an already computed run_sweep(spec), to avoid a rerun

    Returns:
        Extremum at the refined point, or at the grid point when it lies
        on the range boundary or the bracket is flat

    """
    if refine_tol is None:
        refine_tol = config.setting("sweep", "refine_tol")
    if not refine_tol > 0:
        raise InfeasibleSpecError(
            "refine_tol must be positive, got {!r}".format(refine_tol)
        )
    result = result or run_sweep(spec)
    sign = 1.0 if kind == "min" else -1.0
    index = _best_index(result.chi2_values, kind)
    row = result.rows[index]
    if index in (0, len(result.rows) - 1):
        log.debug(
            "%s of %s on the range boundary at %r", kind, spec.name, row.varied
        )
        return Extremum(row.varied, row.chi2, True, kind)

    # Golden-section tolerance is relative; shifting the bracket to start
    # at 1 makes it an absolute width in the parameter.
    shift = result.rows[index - 1].varied - 1.0
    bracket = tuple(
        result.rows[i].varied - shift for i in (index - 1, index, index + 1)
    )

    def objective(x):
        return sign * evaluate(spec, x + shift).chi2

    try:
        x_best, f_best, calls = optimize.golden(
            objective, brack=bracket, tol=refine_tol / 2, full_output=True
        )
    except ValueError as error:
        log.debug("keeping grid %s of %s: %s", kind, spec.name, error)
        return Extremum(row.varied, row.chi2, False, kind)
    if f_best > sign * row.chi2:
        return Extremum(row.varied, row.chi2, False, kind)
    log.debug("refined %s of %s in %d evaluations", kind, spec.name, calls)
    return Extremum(float(x_best + shift), float(sign * f_best), False, kind)


@dataclass(frozen=True)
class PublishedExtremum:
    """A published minimum or maximum along a named sweep."""

    sweep: str
    kind: str
    chi2: float
    location: float
    chi2_tol: float
    location_tol: float


@dataclass(frozen=True)
class PublishedPoint:
    """A published chi^2 at one parameter value of a named sweep."""

    sweep: str
    label: str
    value: float
    chi2: float
    tol: float


@dataclass(frozen=True)
class Reproduction:
    """Sweeps behind one published table or figure, plus its numbers.

    global_max is (published chi^2, tolerance) for the largest chi^2 over
    every sweep; entangled requests the check that every chi^2 is below 1.
    """

    name: str
    sweeps: Tuple[SweepSpec, ...] = ()
    phase_sweeps: Tuple[PhaseSweepSpec, ...] = ()
    extrema: Tuple[PublishedExtremum, ...] = ()
    points: Tuple[PublishedPoint, ...] = ()
    global_max: Optional[Tuple[float, float]] = None
    entangled: bool = True


AnyResult = Union[SweepResult, PhaseSweepResult]


@dataclass(frozen=True)
class Check:
    """Verdict of one published value against ours."""

    name: str
    paper: float
    ours: float
    tolerance: float
    passed: bool

    @classmethod
    def within(cls, name, published, ours, tolerance):
        """Return a check that passes when |ours - published| <= tolerance."""
        passed = math.isfinite(ours) and abs(ours - published) <= tolerance
        return cls(name, published, ours, tolerance, passed)


def run_reproduction(target: Reproduction) -> Dict[str, AnyResult]:
    """Run every sweep of target, keyed by sweep name in order."""
    results: Dict[str, AnyResult] = {}
    for spec in target.sweeps:
        results[spec.name] = run_sweep(spec)
    for phase_spec in target.phase_sweeps:
        results[phase_spec.name] = run_phase_sweep(phase_spec)
    return results


def compare_to_paper(
    target: Reproduction,
    results: Optional[Dict[str, AnyResult]] = None,
    refine_tol: Optional[float] = None,
) -> List[Check]:
    """Compare located extrema and marked points with published values."""
    if results is None:
        results = run_reproduction(target)
    specs = {spec.name: spec for spec in target.sweeps}
    checks = []
    for published in target.extrema:
        spec = specs[published.sweep]
        found = locate_extremum(
            spec, refine_tol, published.kind, results[spec.name]
        )
        label = "{} {}".format(spec.name, published.kind)
        checks.append(
            Check.within(
                label + " chi2", published.chi2, found.chi2, published.chi2_tol
            )
        )
        checks.append(
            Check.within(
                label + " location",
                published.location,
                found.value,
                published.location_tol,
            )
        )
    for point in target.points:
        row = evaluate(specs[point.sweep], point.value)
        checks.append(
            Check.within(
                "{} {}".format(point.sweep, point.label),
                point.chi2,
                row.chi2,
                point.tol,
            )
        )
    if results and (target.global_max or target.entangled):
        largest = float(
            max(np.max(result.chi2_values) for result in results.values())
        )
        if target.global_max:
            expected, tol = target.global_max
            checks.append(
                Check.within(target.name + " max chi2", expected, largest, tol)
            )
        if target.entangled:
            checks.append(
                Check(
                    target.name + " all chi2 < 1",
                    1.0,
                    largest,
                    0.0,
                    largest < 1,
                )
            )
    return checks
