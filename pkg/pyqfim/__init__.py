# This file is part of pyqfim. See LICENSE file for license information.
"""Quantum Fisher information of multi-qubit states."""

import logging

from pyqfim.closed_form import SpinParams, chi_squared_param, realize
from pyqfim.entanglement import total_concurrence
from pyqfim.hypergraph import Hypergraph, build_state, parse_hypergraph
from pyqfim.spin_ops import metric_report
from pyqfim.statevec import QubitState, ghz_state
from pyqfim.sweep import SweepSpec, locate_extremum, run_sweep

__all__ = [
    "Hypergraph",
    "QubitState",
    "SpinParams",
    "SweepSpec",
    "build_state",
    "chi_squared_param",
    "ghz_state",
    "locate_extremum",
    "metric_report",
    "parse_hypergraph",
    "realize",
    "run_sweep",
    "total_concurrence",
]

logging.getLogger(__name__).addHandler(logging.NullHandler())
