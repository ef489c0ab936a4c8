"""Input descriptions shared by every problem family."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class InputSpec:
    """Valid range of one numeric input: [low, high], integer or real."""

    low: float
    high: float
    integer: bool

    def clamp(self, value):
        if value < self.low:
            return self.low
        if value > self.high:
            return self.high
        return value

    def draw(self, rng):
        if self.integer:
            return rng.randint(int(self.low), int(self.high))
        return rng.uniform(self.low, self.high)
