"""Exact intersection theory for low-degree branched covers of the line.

Subpackages build on each other: exact coefficients over the function field
in the genus (``coeffs``), truncated graded rings (``gring``), Chern and
Chern-character calculus for virtual bundles (``bundles``), towers of
projective and Grassmann bundles with pushforward (``spaces``), jet-bundle
constructions (``jets``), graded linear algebra modulo an ideal (``ideals``),
and the three cover-degree pipelines (``hurwitz3``, ``hurwitz4``,
``hurwitz5``) behind the ``hurwitz-chow`` command line tool.
"""

from .coeffs import GenusPoly, GenusRational
from .gring import KERNEL_KIND, GradedClass, RingCtx, ring_new

__all__ = [
    "GenusPoly",
    "GenusRational",
    "GradedClass",
    "RingCtx",
    "ring_new",
    "KERNEL_KIND",
]

__version__ = "0.1.0"
