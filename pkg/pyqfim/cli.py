# This file is part of pyqfim. See LICENSE file for license information.
"""Command-line interface.

stdout carries data only; diagnostics go to stderr. Exit codes are 0 on
success, 2 for usage and parse errors, 3 for an infeasible parameter or
sweep specification and 4 for an unnormalized input state.
"""

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from pyqfim import config, entanglement, presets, spin_ops
from pyqfim.closed_form import params_from_json, realize
from pyqfim.errors import (
    InfeasibleSpecError,
    NormalizationError,
    QfimError,
)
from pyqfim.hypergraph import build_state, edges_from_cli, parse_hypergraph
from pyqfim.statevec import dumps_state, ghz_state, loads_state
from pyqfim.sweep import (
    PhaseSweepSpec,
    SweepSpec,
    compare_to_paper,
    concurrence_order_violations,
    locate_extremum,
    run_phase_sweep,
    run_reproduction,
    run_sweep,
)
from pyqfim.util import format_sig, safe_int

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_UNNORMALIZED = 4
INPUT_NORM_TOL = 1e-6
TABLE_DIGITS = 6

log = logging.getLogger(__name__)


class UsageError(QfimError):
    """Command line that names no usable input."""


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _table(rows):
    """Align (label, value) rows into two columns."""
    cells = [
        (
            str(label),
            format_sig(value, TABLE_DIGITS)
            if isinstance(value, float)
            else str(value),
        )
        for label, value in rows
    ]
    width = max((len(label) for label, _ in cells), default=0)
    return "".join(
        "{}  {}\n".format(label.ljust(width), value) for label, value in cells
    )


def _grid_table(header, rows):
    cells = [header] + [
        [
            format_sig(v, TABLE_DIGITS) if isinstance(v, float) else str(v)
            for v in row
        ]
        for row in rows
    ]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return "".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
        + "\n"
        for row in cells
    )


def _emit(text, out=None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(data):
    return json.dumps(data, indent=2) + "\n"


def _format(args):
    if args.format:
        return args.format
    if args.out:
        return "json"
    return "table" if sys.stdout.isatty() else "json"


def _read_state(args):
    """Return the state named by exactly one input option."""
    if args.graph is not None or args.hypergraph is not None:
        hypergraph = parse_hypergraph(
            args.graph if args.graph is not None else args.hypergraph
        )
        if args.graph is not None and not hypergraph.is_graph:
            raise UsageError(
                "--graph edges must have exactly two vertices; use "
                "--hypergraph"
            )
        return build_state(hypergraph)
    if args.edges is not None:
        if args.vertices is None:
            raise UsageError("--edges needs --vertices")
        return build_state(
            parse_hypergraph(edges_from_cli(args.edges, args.vertices))
        )
    if args.ghz is not None:
        return ghz_state(args.ghz)
    if args.params is not None:
        data = _json_object(args.params, "--params")
        return realize(params_from_json(data, tol=INPUT_NORM_TOL))
    if getattr(args, "state_file", None) is not None:
        text = Path(args.state_file).read_text(encoding="utf-8")
        return loads_state(text, tol=INPUT_NORM_TOL)
    if getattr(args, "stdin", False):
        return loads_state(sys.stdin.read(), tol=INPUT_NORM_TOL)
    raise UsageError("no input state given")


def cmd_state(args):
    """Print the state JSON, or its amplitudes as a table."""
    state = _read_state(args)
    if _format(args) == "table":
        rows = [
            (
                format(index, "0{}b".format(state.n_qubits)),
                "{} {}".format(
                    format_sig(float(a.real), TABLE_DIGITS),
                    format_sig(float(a.imag), TABLE_DIGITS),
                ),
            )
            for index, a in enumerate(state.amplitudes)
        ]
        _emit(_table(rows), args.out)
    else:
        _emit(dumps_state(state) + "\n", args.out)
    return 0


def _concurrence(state, all_cuts):
    if state.n_qubits < 2:
        return None
    return entanglement.total_concurrence(state, all_cuts)


def cmd_metrics(args):
    """Print F_Q, chi^2 and the derived quantities plus concurrence."""
    state = _read_state(args)
    report = spin_ops.metric_report(state)
    concurrence = _concurrence(state, args.all_cuts)
    data = {"metrics": spin_ops.report_to_json(report)}
    if args.grid:
        data["metrics"]["brute_force_var_max"] = (
            spin_ops.brute_force_max_variance(state, args.grid)
        )
    data["concurrence"] = (
        entanglement.report_to_json(concurrence) if concurrence else None
    )
    if _format(args) == "json":
        _emit(_dumps(data), args.out)
        return 0
    rows = [(key, _blank(value)) for key, value in data["metrics"].items()]
    if concurrence:
        rows.extend(
            ("E " + label, value)
            for label, value in concurrence.per_cut.items()
        )
        rows.append(("E total", concurrence.total))
    _emit(_table(rows), args.out)
    return 0


def _blank(value):
    return "-" if value is None else value


def cmd_concurrence(args):
    """Print the concurrence of each cut and the total."""
    state = _read_state(args)
    report = entanglement.total_concurrence(state, args.all_cuts)
    if _format(args) == "json":
        _emit(_dumps(entanglement.report_to_json(report)), args.out)
    else:
        rows = list(report.per_cut.items()) + [("total", report.total)]
        _emit(_table(rows), args.out)
    return 0


def _json_object(text, flag):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError("{} is not valid JSON: {}".format(flag, e)) from None
    if not isinstance(data, dict):
        raise UsageError("{} must be a JSON object".format(flag))
    return data


def _sweep_spec(args):
    if args.preset:
        try:
            spec = presets.SWEEPS[args.preset]
        except KeyError:
            raise UsageError(
                "unknown preset {!r}; choose one of {}".format(
                    args.preset, ", ".join(presets.SWEEPS)
                )
            ) from None
    else:
        if None in (args.vary, args.start, args.stop):
            raise UsageError("give --preset or --vary, --start and --stop")
        spec = SweepSpec(
            name=args.name,
            vary=args.vary,
            start=args.start,
            stop=args.stop,
            dependent=args.dependent,
            sign=-1 if args.sign == "-" else 1,
            fixed=_json_object(args.fixed, "--fixed") if args.fixed else {},
        )
    if args.step is not None:
        spec = replace(spec, step=args.step)
    return spec


def _row_json(row):
    data = {
        "varied_value": row.varied,
        "dependent_value": row.dependent,
        "chi2": _finite(row.chi2),
        "f_q": row.f_q,
    }
    if row.concurrence is not None:
        data["concurrence"] = row.concurrence
    return data


def _order_json(rows):
    violations = concurrence_order_violations(rows)
    return {
        "count": len(violations),
        "first": [
            {"concurrence": row.concurrence, "f_q": row.f_q}
            for row in violations[0]
        ]
        if violations
        else None,
    }


def _with_concurrence(header, cells, rows, concurrence):
    if not concurrence:
        return header, cells
    header = header + ["E total"]
    cells = [line + [row.concurrence] for line, row in zip(cells, rows)]
    return header, cells


def _extremum_json(extremum):
    return {
        "value": extremum.value,
        "chi2": _finite(extremum.chi2),
        "boundary": extremum.boundary,
    }


def cmd_sweep(args):
    """Run a one-dimensional sweep and report its extrema."""
    spec = _sweep_spec(args)
    result = run_sweep(spec, args.concurrence)
    fmt = _format(args)
    if fmt == "csv":
        _emit(result.to_csv(), args.out)
        return 0
    extrema = {
        kind: locate_extremum(spec, args.refine_tol, kind, result)
        for kind in ("min", "max")
    }
    if fmt == "json":
        data = {
            "name": spec.name,
            "varied_name": spec.vary,
            "dependent_name": spec.dependent,
            "rows": [_row_json(row) for row in result.rows],
            "minimum": _extremum_json(extrema["min"]),
            "maximum": _extremum_json(extrema["max"]),
        }
        if args.concurrence:
            data["concurrence_order"] = _order_json(result.rows)
        _emit(_dumps(data), args.out)
        return 0
    header, cells = _with_concurrence(
        [spec.vary, spec.dependent or "-", "chi2", "f_q"],
        [
            [row.varied, _blank(row.dependent), row.chi2, row.f_q]
            for row in result.rows
        ],
        result.rows,
        args.concurrence,
    )
    text = _grid_table(header, cells)
    text += "\n" + _table(
        [
            ("{} {}".format(kind, name), getattr(extremum, name))
            for kind, extremum in extrema.items()
            for name in ("value", "chi2", "boundary")
        ]
    )
    _emit(text, args.out)
    return 0


def _phase_sweep_spec(args):
    if args.preset:
        try:
            spec = presets.PHASE_SWEEPS[args.preset]
        except KeyError:
            raise UsageError(
                "unknown preset {!r}; see the fig6_* and fig7_* "
                "panels".format(args.preset)
            ) from None
        if args.step is not None:
            spec = replace(
                spec, amplitude=replace(spec.amplitude, step=args.step)
            )
    else:
        if args.phase is None:
            raise UsageError("give --preset or --phase")
        spec = PhaseSweepSpec(
            name=args.name,
            phase=args.phase,
            start=args.phase_start,
            stop=args.phase_stop,
            amplitude=_sweep_spec(args),
        )
    if args.phase_step is not None:
        spec = replace(spec, step=args.phase_step)
    return spec


def cmd_phase_sweep(args):
    """Run a phase times amplitude sweep."""
    spec = _phase_sweep_spec(args)
    result = run_phase_sweep(spec, args.concurrence)
    fmt = _format(args)
    if fmt == "csv":
        _emit(result.to_csv(), args.out)
        return 0
    amplitude = spec.amplitude
    if fmt == "json":
        rows = []
        for phase, row in result.rows:
            item = {"phase_value": phase}
            item.update(_row_json(row))
            rows.append(item)
        data = {
            "name": spec.name,
            "phase_name": spec.phase,
            "varied_name": amplitude.vary,
            "dependent_name": amplitude.dependent,
            "rows": rows,
            "argmin": dict(zip(("phase", "value", "chi2"), result.argmin)),
            "argmax": dict(zip(("phase", "value", "chi2"), result.argmax)),
        }
        if args.concurrence:
            data["concurrence_order"] = _order_json(
                [row for _, row in result.rows]
            )
        _emit(_dumps(data), args.out)
        return 0
    header, cells = _with_concurrence(
        [
            spec.phase,
            amplitude.vary,
            amplitude.dependent or "-",
            "chi2",
            "f_q",
        ],
        [
            [phase, row.varied, _blank(row.dependent), row.chi2, row.f_q]
            for phase, row in result.rows
        ],
        [row for _, row in result.rows],
        args.concurrence,
    )
    text = _grid_table(header, cells)
    _emit(text, args.out)
    return 0


def summary(checks):
    """Return the verdict table of a reproduction."""
    rows = [
        [
            check.name,
            check.paper,
            check.ours,
            check.tolerance,
            "PASS" if check.passed else "FAIL",
        ]
        for check in checks
    ]
    passed = sum(check.passed for check in checks)
    return _grid_table(
        ["check", "published", "ours", "tolerance", "verdict"], rows
    ) + "{} of {} checks passed\n".format(passed, len(checks))


def cmd_reproduce(args):
    """Rerun one table or figure and compare with published values.

    The exit code is 0 whatever the verdicts.
    """
    target = presets.target(args.target)
    if args.step is not None:
        target = replace(
            target,
            sweeps=tuple(replace(s, step=args.step) for s in target.sweeps),
            phase_sweeps=tuple(
                replace(p, amplitude=replace(p.amplitude, step=args.step))
                for p in target.phase_sweeps
            ),
        )
    results = run_reproduction(target)
    checks = compare_to_paper(target, results, args.refine_tol)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, result in results.items():
            path = out / "{}.csv".format(name)
            path.write_text(result.to_csv(), encoding="utf-8")
            log.debug("wrote %s", path)
    else:
        for name, result in results.items():
            sys.stdout.write("# {}\n".format(name))
            sys.stdout.write(result.to_csv())
    sys.stdout.write(summary(checks))
    return 0


def _add_state_sources(parser, files=True):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--graph", help='edge list, e.g. "3; 1 2; 2 3; 3 1"')
    group.add_argument("--hypergraph", help='edge list, e.g. "3; 1 2 3"')
    group.add_argument("--edges", help='edges as "1 2,2 3" with --vertices')
    group.add_argument("--ghz", type=int, metavar="N", help="GHZ state")
    group.add_argument(
        "--params", help="JSON object of alpha, beta, gamma, delta, mu..."
    )
    if files:
        group.add_argument("--state-file", help="state JSON file")
        group.add_argument(
            "--stdin", action="store_true", help="read state JSON from stdin"
        )
    parser.add_argument("--vertices", type=int, help="vertex count")


def _add_sweep_options(parser):
    parser.add_argument("--preset", help="named preset sweep")
    parser.add_argument("--name", default="sweep", help="sweep label")
    parser.add_argument("--vary", help="delta, gamma, mu, nu or eta")
    parser.add_argument("--start", type=float)
    parser.add_argument("--stop", type=float)
    parser.add_argument("--dependent", help="amplitude solved by the norm")
    parser.add_argument("--sign", choices=("+", "-"), default="+")
    parser.add_argument(
        "--fixed", help='JSON object, e.g. {"alpha": 0.5, "beta": 0.5}'
    )
    parser.add_argument("--step", type=float, help="amplitude grid step")
    parser.add_argument(
        "--concurrence",
        action="store_true",
        help="add the total concurrence of every grid point",
    )


def _add_output(parser, formats):
    parser.add_argument("--out", help="write to this file")
    parser.add_argument("--format", choices=formats)


def build_parser():
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="pyqfim",
        description="Quantum Fisher information of multi-qubit states",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--config", help="pyqfim.toml to use")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    state = commands.add_parser("state", help="build and print a state")
    _add_state_sources(state, files=False)
    _add_output(state, ("json", "table"))
    state.set_defaults(func=cmd_state)

    metrics = commands.add_parser("metrics", help="F_Q, chi^2, concurrence")
    _add_state_sources(metrics)
    metrics.add_argument("--all-cuts", action="store_true")
    metrics.add_argument(
        "--grid",
        type=int,
        metavar="POINTS",
        help="also maximize the variance by brute force on a grid",
    )
    _add_output(metrics, ("json", "table"))
    metrics.set_defaults(func=cmd_metrics)

    conc = commands.add_parser("concurrence", help="concurrence per cut")
    _add_state_sources(conc)
    conc.add_argument("--all-cuts", action="store_true")
    _add_output(conc, ("json", "table"))
    conc.set_defaults(func=cmd_concurrence)

    sweep = commands.add_parser("sweep", help="one-dimensional sweep")
    _add_sweep_options(sweep)
    sweep.add_argument("--refine-tol", type=float)
    _add_output(sweep, ("json", "csv", "table"))
    sweep.set_defaults(func=cmd_sweep)

    phase = commands.add_parser("phase-sweep", help="phase x amplitude grid")
    _add_sweep_options(phase)
    phase.add_argument("--phase", help="mu, nu or eta")
    phase.add_argument("--phase-start", type=float, default=0.0)
    phase.add_argument(
        "--phase-stop", type=float, default=2 * math.pi - math.pi / 30
    )
    phase.add_argument("--phase-step", type=float)
    _add_output(phase, ("json", "csv", "table"))
    phase.set_defaults(func=cmd_phase_sweep)

    reproduce = commands.add_parser(
        "reproduce", help="rerun a published table or figure"
    )
    reproduce.add_argument("target", choices=list(presets.TARGETS))
    reproduce.add_argument("--out", help="directory for the CSV files")
    reproduce.add_argument("--step", type=float, help="amplitude grid step")
    reproduce.add_argument("--refine-tol", type=float)
    reproduce.set_defaults(func=cmd_reproduce)
    return parser


def _use_config(path):
    if not Path(path).is_file():
        raise UsageError("config file {} not found".format(path))
    os.environ[config.CONFIG_ENV] = str(path)
    config.default_config.cache_clear()


def main(argv=None):
    """Run the command line and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return safe_int(e.code) or 0
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.config:
            _use_config(args.config)
        return args.func(args)
    except NormalizationError as e:
        code, error = EXIT_UNNORMALIZED, e
    except InfeasibleSpecError as e:
        code, error = EXIT_INFEASIBLE, e
    except (QfimError, ValueError, KeyError, OSError) as e:
        code, error = EXIT_USAGE, e
    message = error.args[0] if isinstance(error, KeyError) else error
    print("pyqfim: error: {}".format(message), file=sys.stderr)
    return code
