# This file is part of pyqfim. See LICENSE file for license information.
"""Allow running the command line as python -m pyqfim."""
import sys

from pyqfim.cli import main

sys.exit(main())
