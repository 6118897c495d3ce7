"""Coherence, purity and correlation quantifiers for density matrices.

States are passed as complex numpy arrays and validated on every call.
"""

from ._core import *  # noqa: F401,F403
from ._core import CohpureError, ConvergenceError, DomainError, ValidationError, __doc__  # noqa: F401

MENU_DISTANCES = ("rel_entropy", "trace_norm", "schatten_2", "one_minus_fidelity")
