"""Gowers norms of bounded multiplicative functions in progressions.

Thin wrapper over the compiled extension; see the individual docstrings.
"""

try:
    from ._gnap import *  # noqa: F401,F403
    from ._gnap import __version__  # noqa: F401
except ImportError:  # extension on sys.path rather than inside the package
    from _gnap import *  # noqa: F401,F403
    from _gnap import __version__  # noqa: F401
