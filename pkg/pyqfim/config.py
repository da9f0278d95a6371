"""Deal with configuration file."""
import copy
import functools
import logging
import math
import os
from io import StringIO
from pathlib import Path
from typing import Any, MutableMapping, Optional, Union

import toml

from pyqfim.util import update_nested

# Order matters here. Local should take precedence over global.
CONFIG_PATHS = [
    Path("~/.config/pyqfim.toml").expanduser(),
    Path("/etc/pyqfim.toml"),
]
CONFIG_ENV = "QFIM_CONFIG"
MAX_QUBITS_ENV = "QFIM_MAX_QUBITS"

ConfigFile = Union[Path, StringIO]
log = logging.getLogger(__name__)


class Config(dict):
    """Override dict to allow raising a more meaningful KeyError."""

    def __getitem__(self, key):
        """Provide more meaningful KeyError on access."""
        try:
            return super().__getitem__(key)
        except KeyError:
            raise KeyError(
                "{} must be defined in pyqfim.toml to make this "
                "call".format(key)
            ) from None


DEFAULTS = Config(
    statevec=Config(max_qubits=20),
    spin_ops=Config(degenerate_tol=1e-9),
    sweep=Config(
        amplitude_step=1e-4, phase_step=math.pi / 500, refine_tol=1e-6
    ),
)


def parse_config(
    config_file: Optional[ConfigFile] = None,
) -> MutableMapping[str, Any]:
    """Find the relevant TOML, load it over the defaults, and return it.

    The search order is the explicit config_file, the QFIM_CONFIG
    environment variable, ~/.config/pyqfim.toml and /etc/pyqfim.toml.
    When none of them exists the built-in defaults are returned.
    """
    possible_configs = []
    if config_file:
        possible_configs.append(config_file)
    if os.environ.get(CONFIG_ENV):
        possible_configs.append(Path(os.environ[CONFIG_ENV]))
    possible_configs.extend(CONFIG_PATHS)
    config = copy.deepcopy(DEFAULTS)
    for path in possible_configs:
        try:
            loaded = toml.load(path, _dict=Config)
        except FileNotFoundError:
            continue
        except toml.TomlDecodeError as e:
            raise ValueError(
                "Could not parse configuration file pointed to by "
                "{}".format(path)
            ) from e
        log.debug("Loaded configuration from %s", path)
        return update_nested(config, loaded)
    log.debug("No configuration file found, using defaults")
    return config


@functools.lru_cache(maxsize=None)
def default_config() -> MutableMapping[str, Any]:
    """Return the configuration found on the search path, loaded once."""
    return parse_config()


def max_qubits(config=None) -> int:
    """Return the largest qubit count a dense state may have.

    QFIM_MAX_QUBITS takes precedence over the configuration file and is
    read on every call.
    """
    override = os.environ.get(MAX_QUBITS_ENV)
    if override:
        try:
            value = int(override)
        except ValueError:
            raise ValueError(
                "{} must be an integer, got {!r}".format(
                    MAX_QUBITS_ENV, override
                )
            ) from None
        if value < 1:
            raise ValueError(
                "{} must be positive, got {}".format(MAX_QUBITS_ENV, value)
            )
        return value
    config = config if config is not None else default_config()
    return int(config["statevec"]["max_qubits"])


def setting(section, key, config=None):
    """Return one value from the configuration, e.g. setting('sweep', ...)."""
    config = config if config is not None else default_config()
    return config[section][key]
