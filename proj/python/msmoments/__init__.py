"""Prime sums, zeta-zero sums, the explicit formula and short-interval moments."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
