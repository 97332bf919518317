"""Fourier analysis on the Heisenberg group: Schrodinger transforms, fusion,
dual convolution, the z-derivation and exact h3 extraction."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401


def passed(records):
    """True when every record returned by run_suite passed."""
    return all(r["pass"] for r in records)
