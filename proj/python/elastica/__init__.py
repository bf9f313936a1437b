from ._elastica import *  # noqa: F401,F403
from ._elastica import __doc__  # noqa: F401
