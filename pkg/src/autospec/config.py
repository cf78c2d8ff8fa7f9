"""Numerical tolerances.

Every threshold used for a decision or a residual check lives here so that
reports can echo them and the CLI can override them.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    unimodular: float = 1e-12       # |lambda| == 1 on construction
    identity: float = 1e-12         # lambda == -1 and a == 0
    pole: float = 1e-14             # |1 - conj(a) z| below this is a pole
    boundary: float = 1e-9          # |z| == 1 for fixed points
    parabolic_band: float = 1e-9    # half-width of the trace test band
    root_coincide: float = 1e-5     # double-root test inside the band
    translation: float = 1e-8       # spread of the chart increment
    conjugacy: float = 1e-8         # normal-form residual
    order: float = 1e-9             # |lambda^m - 1| for root-of-unity detection
    resolvent: float = 1e-9         # resolvent identity residual
    verify: float = 1e-8            # eigen-identity residual in cli verify

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)

    def override(self, **changes: float) -> "Tolerances":
        unknown = set(changes) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **{k: float(v) for k, v in changes.items()})


DEFAULT_TOL = Tolerances()
