# This file is part of pyqfim. See LICENSE file for license information.
"""Exceptions raised by pyqfim."""


class QfimError(Exception):
    """Base class for errors raised by pyqfim itself."""


class InvalidSizeError(QfimError, ValueError):
    """Qubit count outside the supported range."""


class QubitIndexError(QfimError, ValueError):
    """Qubit index outside 1..n, or an unusable set of indices."""


class NormalizationError(QfimError, ValueError):
    """State vector whose norm is not 1 within tolerance."""


class NotSymmetricError(QfimError, ValueError):
    """State with weight outside the symmetric (Dicke) subspace."""


class SingularFrameError(QfimError, ValueError):
    """Closed-form moments requested where R or r vanishes."""


class InfeasibleSpecError(QfimError, ValueError):
    """Parameters or sweep specification that cannot be realized."""


class RangeDomainError(InfeasibleSpecError):
    """Sweep constraint has no real solution at some grid value."""

    def __init__(self, name, value, radicand):
        """Record the offending grid value.

        Args:
            name: name of the varied parameter
            value: grid value at which the constraint fails
            radicand: the negative quantity under the square root
        """
        super().__init__(
            "constraint infeasible at {}={!r}: dependent amplitude squared "
            "would be {:.3e}".format(name, value, radicand)
        )
        self.name = name
        self.value = value


class HypergraphError(QfimError, ValueError):
    """Invalid hypergraph or malformed edge-list text."""

    def __init__(self, message, line=None, col=None):
        """Attach an optional source location to the message.

        Args:
            message: description of the problem
            line: 1-based line in the parsed text, if known
            col: 1-based column in the parsed text, if known
        """
        if line is not None:
            message = "{} (line {}, column {})".format(message, line, col)
        super().__init__(message)
        self.line = line
        self.col = col
