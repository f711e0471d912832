from ._d1q2 import *  # noqa: F401,F403
from ._d1q2 import __doc__  # noqa: F401
