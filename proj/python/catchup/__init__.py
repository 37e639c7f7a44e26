"""Missing-grade imputation, evaluation and rescue decisions."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
