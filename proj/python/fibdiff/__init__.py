"""Fibonacci cut-and-project diffraction toolkit."""

try:
    from ._fibdiff import *  # noqa: F401,F403  (wheel layout)
except ImportError:
    from _fibdiff import *  # noqa: F401,F403  (build-tree layout)

__version__ = "0.1.0"
