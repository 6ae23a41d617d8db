"""Feasibility instance container.

An instance asks whether Ax = b admits x >= 0, with x additionally
integer when the domain is "ip".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .linalg import matrix, vector

LP = "lp"
IP = "ip"
DOMAINS = (LP, IP)


@dataclass(frozen=True)
class FeasInstance:
    a: np.ndarray
    b: np.ndarray
    domain: str = LP

    def __post_init__(self):
        object.__setattr__(self, "a", matrix(self.a))
        object.__setattr__(self, "b", vector(self.b))
        if self.a.shape[0] != self.b.shape[0]:
            raise UsageError(
                f"matrix has {self.a.shape[0]} rows but right-hand side has "
                f"{self.b.shape[0]} entries"
            )
        if self.domain not in DOMAINS:
            raise UsageError(f"domain must be one of {DOMAINS}, got {self.domain!r}")

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]
