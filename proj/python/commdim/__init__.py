"""Communication matrix toolkit.

Builds communication matrices (the antidistinguishability family and small
gate examples), verifies their qubit implementations, and sandwiches the
nonnegative rank (classical dimension) between face-counting lower bounds and
NMF upper bounds, with majorization and shared-randomness accounting on top.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
