"""Spectra of composition operators induced by automorphisms of the unit disk."""

__version__ = "0.1.0"

from .mobius import (  # noqa: E402
    DiskAutomorphism,
    classify,
    compose,
    derivative,
    evaluate,
    fixed_points,
    inverse,
    make_automorphism,
)
from .normalform import normal_form  # noqa: E402
from .spectra import SpaceDescriptor, predict_spectrum  # noqa: E402

__all__ = [
    "DiskAutomorphism",
    "classify",
    "compose",
    "derivative",
    "evaluate",
    "fixed_points",
    "inverse",
    "make_automorphism",
    "normal_form",
    "predict_spectrum",
    "SpaceDescriptor",
]
