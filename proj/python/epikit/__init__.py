"""Epidemic modeling toolkit bindings.

The compiled extension lives inside this package in an installed wheel and
next to it on the interpreter path during development builds.
"""

try:
    from ._epikit import *  # noqa: F401,F403
    from ._epikit import __doc__  # noqa: F401
except ImportError:  # development layout: extension on sys.path
    from _epikit import *  # noqa: F401,F403
    from _epikit import __doc__  # noqa: F401

__version__ = "0.1.0"
