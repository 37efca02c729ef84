"""Closed hyperbolic intervals and validated partitions.

An interval [lo, hi] requires lo to precede hi in the partial order; it is
degenerate when hi - lo has a (near-)zero component.  A partition is a
chain of points from lo to hi whose consecutive differences lie strictly
inside the nonnegative cone (both components positive), stored internally
as the two projected real grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    EndpointMismatchError,
    NotChainError,
    NotComparableError,
    ReversedBoundsError,
    StepDegenerateError,
)
from .numbers import DEFAULT_TOL, DOrdering, Hyperbolic, d_compare


@dataclass(frozen=True)
class DInterval:
    """Closed hyperbolic interval [lo, hi]."""

    lo: Hyperbolic
    hi: Hyperbolic

    def __post_init__(self) -> None:
        lo = Hyperbolic._coerce(self.lo)
        hi = Hyperbolic._coerce(self.hi)
        if lo is None or hi is None:
            raise TypeError("interval endpoints must be hyperbolic values")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        order = d_compare(lo, hi, 0.0)
        if order is DOrdering.INCOMPARABLE:
            raise NotComparableError(f"endpoints incomparable: {lo} vs {hi}")
        if order is DOrdering.GREATER:
            raise ReversedBoundsError(f"endpoints reversed: {lo} after {hi}")

    def length(self) -> Hyperbolic:
        return self.hi - self.lo

    def is_degenerate(self, tol: float = DEFAULT_TOL) -> bool:
        d = self.length()
        return d.v1 <= tol or d.v2 <= tol

    def contains(self, tau: Hyperbolic, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.lo.v1 - tol <= tau.v1 <= self.hi.v1 + tol
            and self.lo.v2 - tol <= tau.v2 <= self.hi.v2 + tol
        )

    def project(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """The two real component intervals."""
        return ((self.lo.v1, self.hi.v1), (self.lo.v2, self.hi.v2))

    def __str__(self) -> str:
        return f"[{self.lo} , {self.hi}]"


def _insert_midpoints(grid: np.ndarray) -> np.ndarray:
    out = np.empty(2 * grid.size - 1, dtype=float)
    out[0::2] = grid
    out[1::2] = 0.5 * (grid[:-1] + grid[1:])
    return out


class DPartition:
    """A validated chain lo = p0 < p1 < ... < pn = hi with nondegenerate steps.

    Stored as the two projected real grids; `points` materializes the
    hyperbolic chain on demand.  Instances are treated as immutable.
    """

    __slots__ = ("interval", "_grid1", "_grid2")

    def __init__(self, interval: DInterval, grid1: np.ndarray, grid2: np.ndarray, *, _validated: bool = False):
        self.interval = interval
        self._grid1 = np.asarray(grid1, dtype=float)
        self._grid2 = np.asarray(grid2, dtype=float)
        if not _validated:
            self._validate(DEFAULT_TOL)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_points(
        interval: DInterval,
        points: Sequence[Hyperbolic],
        tol: float = DEFAULT_TOL,
    ) -> "DPartition":
        pts = [Hyperbolic._coerce(p) for p in points]
        if any(p is None for p in pts) or len(pts) < 2:
            raise ValueError("need at least two hyperbolic partition points")
        g1 = np.array([p.v1 for p in pts], dtype=float)
        g2 = np.array([p.v2 for p in pts], dtype=float)
        part = DPartition(interval, g1, g2, _validated=True)
        part._validate(tol)
        return part

    @staticmethod
    def trivial(interval: DInterval, tol: float = DEFAULT_TOL) -> "DPartition":
        """The two-point partition {lo, hi}; rejects degenerate intervals."""
        return DPartition.from_points(interval, [interval.lo, interval.hi], tol)

    @staticmethod
    def from_projections(
        interval: DInterval,
        grid1: Sequence[float],
        grid2: Sequence[float],
        tol: float = DEFAULT_TOL,
    ) -> "DPartition":
        """Pair two equal-length real partitions into a hyperbolic one."""
        g1 = np.asarray(grid1, dtype=float)
        g2 = np.asarray(grid2, dtype=float)
        if g1.shape != g2.shape:
            raise ValueError("component grids must have equal length")
        part = DPartition(interval, g1, g2, _validated=True)
        part._validate(tol)
        return part

    def _validate(self, tol: float) -> None:
        g1, g2 = self._grid1, self._grid2
        if g1.ndim != 1 or g1.size < 2 or g1.shape != g2.shape:
            raise ValueError("partition needs at least two points per component")
        lo, hi = self.interval.lo, self.interval.hi
        if (
            abs(g1[0] - lo.v1) > tol
            or abs(g2[0] - lo.v2) > tol
            or abs(g1[-1] - hi.v1) > tol
            or abs(g2[-1] - hi.v2) > tol
        ):
            raise EndpointMismatchError(
                f"partition spans [{g1[0]} | {g2[0]}] .. [{g1[-1]} | {g2[-1]}], "
                f"interval is {self.interval}"
            )
        d1, d2 = np.diff(g1), np.diff(g2)
        if np.any(d1 < -tol) or np.any(d2 < -tol):
            raise NotChainError("consecutive points are reversed or incomparable")
        if np.any(d1 <= tol) or np.any(d2 <= tol):
            raise StepDegenerateError("a partition step has a vanishing component")

    # -- accessors --------------------------------------------------------------

    @property
    def points(self) -> list[Hyperbolic]:
        return [Hyperbolic(a, b) for a, b in zip(self._grid1, self._grid2)]

    @property
    def n_steps(self) -> int:
        return self._grid1.size - 1

    def __len__(self) -> int:
        return self._grid1.size

    def __iter__(self) -> Iterator[Hyperbolic]:
        return iter(self.points)

    def project(self) -> tuple[np.ndarray, np.ndarray]:
        """The two real component partitions as arrays (copies)."""
        return self._grid1.copy(), self._grid2.copy()

    def step_lengths(self) -> list[Hyperbolic]:
        d1, d2 = np.diff(self._grid1), np.diff(self._grid2)
        return [Hyperbolic(a, b) for a, b in zip(d1, d2)]

    def mesh(self) -> Hyperbolic:
        """Supremum of the step lengths."""
        d1, d2 = np.diff(self._grid1), np.diff(self._grid2)
        return Hyperbolic(float(d1.max()), float(d2.max()))

    def refine_dyadic(self, levels: int = 1) -> "DPartition":
        """Insert componentwise midpoints of every step, `levels` times."""
        if levels < 1:
            raise ValueError("levels must be >= 1")
        g1, g2 = self._grid1, self._grid2
        for _ in range(levels):
            g1, g2 = _insert_midpoints(g1), _insert_midpoints(g2)
        return DPartition(self.interval, g1, g2, _validated=True)

    def is_refinement_of(self, other: "DPartition") -> bool:
        """True when every point of `other` occurs in this partition."""
        mine = set(zip(self._grid1.tolist(), self._grid2.tolist()))
        return all((a, b) in mine for a, b in zip(other._grid1, other._grid2))

    def __repr__(self) -> str:
        return f"DPartition({self.interval}, {self.n_steps} steps)"
