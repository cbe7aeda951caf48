from ._censcore import *  # noqa: F401,F403
from ._censcore import __doc__  # noqa: F401
