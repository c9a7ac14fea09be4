"""Two-qubit correlation measures for the NMR dimer.

Thin wrapper over the C++ extension; see ``help(qcorr._qcorr)``.
"""
from ._qcorr import *  # noqa: F401,F403
from ._qcorr import __version__  # noqa: F401
