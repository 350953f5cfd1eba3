from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class HyperbolicParams:
    """Scale pair (a+, a-) of the hyperbolic gamma function.

    Derived quantities are properties so they can never go stale.
    """

    a_plus: float = 1.0
    a_minus: float = 1.0

    def __post_init__(self):
        if not (self.a_plus > 0 and self.a_minus > 0):
            raise ValueError("a_plus and a_minus must be positive")
        if not (math.isfinite(self.a_plus) and math.isfinite(self.a_minus)):
            raise ValueError("a_plus and a_minus must be finite")

    @property
    def alpha(self) -> float:
        return 2 * math.pi / (self.a_plus * self.a_minus)

    @property
    def a(self) -> float:
        return (self.a_plus + self.a_minus) / 2

    @property
    def a_s(self) -> float:
        return min(self.a_plus, self.a_minus)

    @property
    def a_l(self) -> float:
        return max(self.a_plus, self.a_minus)

    def scale(self, delta: int) -> float:
        """a_delta for delta = +1 or -1."""
        return self.a_plus if delta > 0 else self.a_minus

    def swapped(self) -> HyperbolicParams:
        return HyperbolicParams(self.a_minus, self.a_plus)

    def scaled(self, lam: float) -> HyperbolicParams:
        return HyperbolicParams(lam * self.a_plus, lam * self.a_minus)

    def as_dict(self) -> dict:
        return {"a_plus": self.a_plus, "a_minus": self.a_minus}
