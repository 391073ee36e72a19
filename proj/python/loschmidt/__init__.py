"""Exact dephasing of a central qubit coupled to a transverse-field Ising ring.

Quasiparticle-exact Loschmidt echo, time-local master-equation rates, and
non-Markovianity measures (trace-distance growth, RHP entanglement decay,
Fisher-information flow), plus a dense small-ring oracle for cross-checks.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
