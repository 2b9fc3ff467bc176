"""Viscous Orr-Sommerfeld spectra and inviscid Rayleigh resonances of 2D shear flows.

Thin wrapper around the compiled extension; everything lives in
``hydrospec._core``.
"""

from hydrospec._core import *  # noqa: F401,F403
from hydrospec._core import __version__  # noqa: F401
