"""Presented quantum groups G(A,B|C,D) and verification of their structure."""

from .presentation import *  # noqa: F401,F403
from .appendix import *  # noqa: F401,F403
from .maps import *  # noqa: F401,F403
from .morphism import *  # noqa: F401,F403
from .star import *  # noqa: F401,F403
