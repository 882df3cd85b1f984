"""Least-squares twin SVM with a statevector simulation of its quantum pipeline."""

from ._qtsvm import *  # noqa: F401,F403
from ._qtsvm import __doc__  # noqa: F401
