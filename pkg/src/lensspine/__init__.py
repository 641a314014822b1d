"""Lens space spines, Farey geodesics and rotation distance in polygon flip graphs."""

from .arith import continued_fraction, euclid_subtractive, euclid_trace, mod_inverse
from .triangulation import Triangulation, enumerate_all, fan, flip, mirror, rotate

__all__ = [
    "Triangulation",
    "continued_fraction",
    "enumerate_all",
    "euclid_subtractive",
    "euclid_trace",
    "fan",
    "flip",
    "mirror",
    "mod_inverse",
    "rotate",
]
