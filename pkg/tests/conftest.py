"""Shared test helpers.

FakeRng feeds hand-picked draws to code under test so single-geometry
traces can be checked against hand-derived values.  SpyRng wraps the
real stream and records consumption, for draw-accounting checks.
"""

from __future__ import annotations

import math

from spatialgen.rng import RngState


class FakeRng(RngState):
    """RngState whose unit draws come from a fixed script.

    Exhausting the script raises IndexError, which makes a test that
    consumes more draws than it scripted fail loudly.
    """

    def __init__(self, draws):
        super().__init__(0)
        self.remaining = list(draws)

    def next_unit(self) -> float:
        return self.remaining.pop(0)

    def take_units(self, n: int) -> list:
        return [self.next_unit() for _ in range(n)]


class SpyRng(RngState):
    """Real stream that counts draws and records uniform() bound pairs."""

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self.draws = 0
        self.uniform_calls: list[tuple[float, float, float]] = []

    def next_unit(self) -> float:
        self.draws += 1
        return super().next_unit()

    def take_units(self, n: int) -> list:
        self.draws += n
        return RngState.take_units(self, n)

    def uniform(self, a: float, b: float) -> float:
        value = super().uniform(a, b)
        self.uniform_calls.append((a, b, value))
        return value


TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0))


def inside_triangle(x: float, y: float, tol: float = 1e-12) -> bool:
    """Barycentric containment test against TRIANGLE with tolerance."""
    (x1, y1), (x2, y2), (x3, y3) = TRIANGLE
    det = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3)
    a = ((y2 - y3) * (x - x3) + (x3 - x2) * (y - y3)) / det
    b = ((y3 - y1) * (x - x3) + (x1 - x3) * (y - y3)) / det
    return min(a, b, 1.0 - a - b) >= -tol
