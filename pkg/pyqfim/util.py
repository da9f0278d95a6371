# This file is part of pyqfim. See LICENSE file for license information.
"""Small helpers shared across modules."""

import collections.abc
import math

TWO_PI = 2.0 * math.pi


def update_nested(mapping, update):
    """Update mapping with update value at given update key.

    Example:
      defaults = {'sweep': {'amplitude_step': 1e-4, 'refine_tol': 1e-6}}
      update = {'sweep': {'amplitude_step': 1e-3}}
      update_nested(defaults, update)
      defaults == {'sweep': {'amplitude_step': 1e-3, 'refine_tol': 1e-6}}
    """
    for key, value in update.items():
        if isinstance(value, collections.abc.Mapping):
            mapping[key] = update_nested(mapping.get(key, {}), value)
        else:
            mapping[key] = value
    return mapping


def reduce_phase(phase):
    """Reduce an angle in radians to [0, 2π)."""
    reduced = math.fmod(phase, TWO_PI)
    if reduced < 0:
        reduced += TWO_PI
    # fmod of a tiny negative value can round up to exactly 2π
    if reduced >= TWO_PI:
        reduced = 0.0
    return reduced


def safe_int(possible_int):
    """Create an int as safely as possible.

    Args:
        possible_int: variable to create into a integer

    Returns:
        integer or None

    """
    try:
        return int(possible_int)
    except (ValueError, TypeError):
        return None


def format_sig(value, digits):
    """Format a float with the given number of significant digits."""
    if value is None:
        return ""
    return "{:.{}g}".format(value, digits)


def grid(start, stop, step):
    """Return the points start, start+step, ... not exceeding stop.

    Points are computed as start + k*step so the grid is reproducible
    bit for bit; a stop that lies on the grid up to rounding is included.
    """
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]
