# This file is part of pyqfim. See LICENSE file for license information.
"""Parameter regimes of the published tables and figures.

Tables and the figure-5 panels fix alpha = -1/sqrt(8), beta = 1/sqrt(8)
and all phases at 0, so gamma^2 + delta^2 = 3/4. The phase figures fix
alpha = beta = 1/2, sweep one phase over [0, 2pi) with the other two at
each of 0, pi/2 and pi, and sweep delta (figure 6) or gamma (figure 7).
"""

import itertools
import math
from dataclasses import replace

from pyqfim.closed_form import PHASES
from pyqfim.sweep import (
    PhaseSweepSpec,
    PublishedExtremum,
    PublishedPoint,
    Reproduction,
    SweepSpec,
)
from pyqfim.util import TWO_PI

TABLE_FIXED = {"alpha": -1 / math.sqrt(8), "beta": 1 / math.sqrt(8)}
TABLE_STOP = 0.8660
MARKED = math.sqrt(3 / 8)

PHASE_FIXED = {"alpha": 0.5, "beta": 0.5}
PHASE_STOP = math.sqrt(0.5)
PHASE_STEP = math.pi / 30
PHASE_AMPLITUDE_STEP = 0.01
PHASE_VALUES = (("0", 0.0), ("pi2", math.pi / 2), ("pi", math.pi))

TABLE1A = SweepSpec(
    name="table1a",
    vary="delta",
    start=0.0,
    stop=TABLE_STOP,
    dependent="gamma",
    sign=1,
    fixed=TABLE_FIXED,
)
TABLE1B = SweepSpec(
    name="table1b",
    vary="gamma",
    start=0.0,
    stop=TABLE_STOP,
    dependent="delta",
    sign=1,
    fixed=TABLE_FIXED,
)
TABLE2A = replace(TABLE1A, name="table2a", sign=-1)
TABLE2B = replace(TABLE1B, name="table2b", start=-TABLE_STOP, stop=0.0)

# panels a and b carry the graph state (gamma < 0), c and d the hypergraph
FIG5 = (
    replace(TABLE2A, name="fig5a"),
    replace(TABLE2B, name="fig5b"),
    replace(TABLE1A, name="fig5c"),
    replace(TABLE1B, name="fig5d"),
)


def phase_panels(prefix, vary, dependent):
    """Return the 27 phase panels for one swept amplitude.

    Each phase is swept in turn while the other two take every pair of
    values from PHASE_VALUES.
    """
    panels = []
    for phase in PHASES:
        others = [name for name in PHASES if name != phase]
        for values in itertools.product(PHASE_VALUES, repeat=2):
            fixed = dict(PHASE_FIXED)
            label = [prefix, phase]
            for name, (token, value) in zip(others, values):
                fixed[name] = value
                label.append(name + token)
            amplitude = SweepSpec(
                name="_".join(label),
                vary=vary,
                start=0.0,
                stop=PHASE_STOP,
                dependent=dependent,
                step=PHASE_AMPLITUDE_STEP,
                fixed=fixed,
            )
            panels.append(
                PhaseSweepSpec(
                    name=amplitude.name,
                    phase=phase,
                    start=0.0,
                    stop=TWO_PI - PHASE_STEP,
                    step=PHASE_STEP,
                    amplitude=amplitude,
                )
            )
    return tuple(panels)


FIG6 = phase_panels("fig6", "delta", "gamma")
FIG7 = phase_panels("fig7", "gamma", "delta")

SWEEPS = {
    spec.name: spec for spec in (TABLE1A, TABLE1B, TABLE2A, TABLE2B) + FIG5
}
PHASE_SWEEPS = {spec.name: spec for spec in FIG6 + FIG7}


def _table_extrema(sweep, maximum, minimum, location_tol):
    """Published (chi2, location, chi2 tolerance) of the max and min."""
    return tuple(
        PublishedExtremum(sweep, kind, chi2, location, chi2_tol, location_tol)
        for kind, (chi2, location, chi2_tol) in (
            ("max", maximum),
            ("min", minimum),
        )
    )


HYPERGRAPH_CHI2 = 0.6400
GRAPH_CHI2 = 0.3333
POINT_TOL = 1e-4

TARGETS = {
    "table1": Reproduction(
        name="table1",
        sweeps=(TABLE1A, TABLE1B),
        extrema=_table_extrema(
            "table1a", (0.795775, 0.4960, 2e-3), (0.399956, 0.2260, 2e-3), 5e-3
        )
        + _table_extrema(
            "table1b", (0.795598, 0.7100, 2e-3), (0.399955, 0.8360, 2e-3), 5e-3
        ),
        points=(
            PublishedPoint(
                "table1a", "hypergraph", MARKED, HYPERGRAPH_CHI2, POINT_TOL
            ),
            PublishedPoint(
                "table1b", "hypergraph", MARKED, HYPERGRAPH_CHI2, POINT_TOL
            ),
        ),
    ),
    "table2": Reproduction(
        name="table2",
        sweeps=(TABLE2A, TABLE2B),
        extrema=_table_extrema(
            "table2a", (0.45758, 0.0, 2e-3), (0.33333, 0.61237, 1e-4), 1e-3
        )
        + _table_extrema(
            "table2b",
            (0.45758, -0.0030, 2e-3),
            (0.33333, -0.61237, 1e-4),
            1e-3,
        ),
        points=(
            PublishedPoint("table2a", "graph", MARKED, GRAPH_CHI2, POINT_TOL),
            PublishedPoint("table2b", "graph", -MARKED, GRAPH_CHI2, POINT_TOL),
        ),
    ),
    "fig5": Reproduction(
        name="fig5",
        sweeps=FIG5,
        points=(
            PublishedPoint("fig5a", "graph", MARKED, GRAPH_CHI2, POINT_TOL),
            PublishedPoint("fig5b", "graph", -MARKED, GRAPH_CHI2, POINT_TOL),
            PublishedPoint(
                "fig5c", "hypergraph", MARKED, HYPERGRAPH_CHI2, POINT_TOL
            ),
            PublishedPoint(
                "fig5d", "hypergraph", MARKED, HYPERGRAPH_CHI2, POINT_TOL
            ),
        ),
    ),
    "fig6": Reproduction(
        name="fig6", phase_sweeps=FIG6, global_max=(0.95, 0.01)
    ),
    "fig7": Reproduction(
        name="fig7", phase_sweeps=FIG7, global_max=(0.95, 0.01)
    ),
}


def target(name: str) -> Reproduction:
    """Return the reproduction named name.

    Raises:
        KeyError: naming the known targets

    """
    try:
        return TARGETS[name]
    except KeyError:
        raise KeyError(
            "unknown target {!r}; choose one of {}".format(
                name, ", ".join(TARGETS)
            )
        ) from None
