"""Geometry of two-party, two-setting, binary-outcome correlations.

Local polytope, quantum body and no-signaling polytope; the quadric
(iterated CHSH) bounds on quantum correlations; the maximally violating
boundary family; and local-plus-PR-box decompositions.
"""

from .errors import *  # noqa: F401,F403
from .geometry import *  # noqa: F401,F403
from .quantum import *  # noqa: F401,F403
from .decomposition import *  # noqa: F401,F403

__version__ = "0.1.0"
