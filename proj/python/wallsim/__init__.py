from ._wallsim import *  # noqa: F401,F403
from ._wallsim import __doc__  # noqa: F401
