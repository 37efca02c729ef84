"""Bicomplex and hyperbolic arithmetic in idempotent coordinates.

Bicomplex numbers are z1 + i2*z2 with z1, z2 complex over i1, governed by
i1**2 = i2**2 = -1 and j = i1*i2 with j**2 = 1.  Setting e1 = (1+j)/2 and
e2 = (1-j)/2 gives orthogonal idempotents (e1*e2 = 0, e1+e2 = 1) and every
bicomplex number splits as w1*e1 + w2*e2 with complex w1, w2.  All ring
operations act componentwise on (w1, w2), so that is the stored form here;
the cartesian pair (z1, z2) is a derived view.

Hyperbolic numbers x + j*y are the sub-ring with real idempotent
coefficients (v1, v2) = (x+y, x-y).  They carry the partial order induced
by the nonnegative cone {v1 >= 0 and v2 >= 0}, a hyperbolic-valued modulus
(|v1|, |v2|), and a componentwise supremum for finite sets.

All values are immutable and every operation is pure, so instances can be
shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .errors import NonInvertibleError

#: Absolute tolerance for zero / degeneracy / order tests.
DEFAULT_TOL = 1e-12


class DOrdering(Enum):
    """Outcome of comparing two hyperbolic numbers under the partial order."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class Classification(Enum):
    """Ring-theoretic kind of a bicomplex number."""

    ZERO = "zero"
    ZERO_DIVISOR = "zero-divisor"
    UNIT = "unit"


def _require_finite(*parts: float) -> None:
    for p in parts:
        if not math.isfinite(p):
            raise ValueError(f"non-finite component: {p!r}")


@dataclass(frozen=True)
class BiComplex:
    """A bicomplex number stored as its two complex idempotent components."""

    w1: complex
    w2: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "w1", complex(self.w1))
        object.__setattr__(self, "w2", complex(self.w2))
        _require_finite(self.w1.real, self.w1.imag, self.w2.real, self.w2.imag)

    # -- constructors / views ------------------------------------------------

    @staticmethod
    def from_cartesian(z1: complex, z2: complex = 0j) -> "BiComplex":
        """Build from the cartesian pair: z1 + i2*z2."""
        z1, z2 = complex(z1), complex(z2)
        return BiComplex(z1 - 1j * z2, z1 + 1j * z2)

    @property
    def z1(self) -> complex:
        return (self.w1 + self.w2) / 2

    @property
    def z2(self) -> complex:
        return 1j * (self.w1 - self.w2) / 2

    def to_cartesian(self) -> tuple[complex, complex]:
        return (self.z1, self.z2)

    # -- ring operations -----------------------------------------------------

    @staticmethod
    def _coerce(other: "BiComplexLike") -> "BiComplex | None":
        if isinstance(other, BiComplex):
            return other
        if isinstance(other, Hyperbolic):
            return other.to_bicomplex()
        if isinstance(other, (int, float, complex)):
            c = complex(other)
            return BiComplex(c, c)
        return None

    def __add__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiComplex(self.w1 + o.w1, self.w2 + o.w2)

    __radd__ = __add__

    def __sub__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiComplex(self.w1 - o.w1, self.w2 - o.w2)

    def __rsub__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiComplex(o.w1 - self.w1, o.w2 - self.w2)

    def __mul__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiComplex(self.w1 * o.w1, self.w2 * o.w2)

    __rmul__ = __mul__

    def __truediv__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: "BiComplexLike") -> "BiComplex":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> "BiComplex":
        return BiComplex(-self.w1, -self.w2)

    def __pow__(self, n: int) -> "BiComplex":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return BiComplex(self.w1**n, self.w2**n)

    def inverse(self, tol: float = DEFAULT_TOL) -> "BiComplex":
        """Componentwise reciprocal; rejects zero divisors and zero."""
        if self.classify(tol) is not Classification.UNIT:
            raise NonInvertibleError(f"not invertible: {self}")
        return BiComplex(1 / self.w1, 1 / self.w2)

    # -- structure -----------------------------------------------------------

    def d_modulus(self) -> "Hyperbolic":
        """Hyperbolic-valued modulus: componentwise complex modulus."""
        return Hyperbolic(abs(self.w1), abs(self.w2))

    def classify(self, tol: float = DEFAULT_TOL) -> Classification:
        z1 = abs(self.w1) <= tol
        z2 = abs(self.w2) <= tol
        if z1 and z2:
            return Classification.ZERO
        if z1 or z2:
            return Classification.ZERO_DIVISOR
        return Classification.UNIT

    def is_hyperbolic(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.w1.imag) <= tol and abs(self.w2.imag) <= tol

    def to_hyperbolic(self, tol: float = DEFAULT_TOL) -> "Hyperbolic":
        if not self.is_hyperbolic(tol):
            raise ValueError(f"not a hyperbolic value: {self}")
        return Hyperbolic(self.w1.real, self.w2.real)

    def isclose(self, other: "BiComplexLike", tol: float = 1e-9) -> bool:
        o = self._coerce(other)
        return o is not None and abs(self.w1 - o.w1) <= tol and abs(self.w2 - o.w2) <= tol

    def __repr__(self) -> str:
        return f"BiComplex({self.w1!r}, {self.w2!r})"

    def __str__(self) -> str:
        return format_idempotent(self)


@dataclass(frozen=True)
class Hyperbolic:
    """A hyperbolic number as its two real idempotent coefficients."""

    v1: float
    v2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "v1", float(self.v1))
        object.__setattr__(self, "v2", float(self.v2))
        _require_finite(self.v1, self.v2)

    @staticmethod
    def from_real(r: float) -> "Hyperbolic":
        return Hyperbolic(r, r)

    @staticmethod
    def from_cartesian(x: float, y: float) -> "Hyperbolic":
        """Build from x + j*y form."""
        return Hyperbolic(x + y, x - y)

    @property
    def x(self) -> float:
        return (self.v1 + self.v2) / 2

    @property
    def y(self) -> float:
        return (self.v1 - self.v2) / 2

    def to_bicomplex(self) -> BiComplex:
        return BiComplex(complex(self.v1), complex(self.v2))

    @staticmethod
    def _coerce(other: "HyperbolicLike") -> "Hyperbolic | None":
        if isinstance(other, Hyperbolic):
            return other
        if isinstance(other, (int, float)):
            return Hyperbolic.from_real(float(other))
        return None

    def __add__(self, other: "HyperbolicLike") -> "Hyperbolic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(self.v1 + o.v1, self.v2 + o.v2)

    __radd__ = __add__

    def __sub__(self, other: "HyperbolicLike") -> "Hyperbolic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(self.v1 - o.v1, self.v2 - o.v2)

    def __rsub__(self, other: "HyperbolicLike") -> "Hyperbolic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(o.v1 - self.v1, o.v2 - self.v2)

    def __mul__(self, other: "HyperbolicLike") -> "Hyperbolic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(self.v1 * o.v1, self.v2 * o.v2)

    __rmul__ = __mul__

    def __neg__(self) -> "Hyperbolic":
        return Hyperbolic(-self.v1, -self.v2)

    def d_modulus(self) -> "Hyperbolic":
        return Hyperbolic(abs(self.v1), abs(self.v2))

    def in_nonneg_cone(self, tol: float = DEFAULT_TOL) -> bool:
        """Membership in the cone of componentwise-nonnegative values."""
        return self.v1 >= -tol and self.v2 >= -tol

    def classify(self, tol: float = DEFAULT_TOL) -> Classification:
        return self.to_bicomplex().classify(tol)

    def min_component(self) -> float:
        return min(self.v1, self.v2)

    def max_component(self) -> float:
        return max(self.v1, self.v2)

    def isclose(self, other: "HyperbolicLike", tol: float = 1e-9) -> bool:
        o = self._coerce(other)
        return o is not None and abs(self.v1 - o.v1) <= tol and abs(self.v2 - o.v2) <= tol

    def __repr__(self) -> str:
        return f"Hyperbolic({self.v1!r}, {self.v2!r})"

    def __str__(self) -> str:
        return f"[{_fmt_float(self.v1)} | {_fmt_float(self.v2)}]"


BiComplexLike = Union[BiComplex, Hyperbolic, complex, float, int]
HyperbolicLike = Union[Hyperbolic, float, int]

ZERO = BiComplex(0, 0)
ONE = BiComplex(1, 1)
E1 = BiComplex(1, 0)
E2 = BiComplex(0, 1)
J = BiComplex(1, -1)
I1 = BiComplex(1j, 1j)
I2 = BiComplex(-1j, 1j)

H_ZERO = Hyperbolic(0.0, 0.0)
H_ONE = Hyperbolic(1.0, 1.0)


# -- order and supremum ------------------------------------------------------


def d_compare(a: HyperbolicLike, b: HyperbolicLike, tol: float = DEFAULT_TOL) -> DOrdering:
    """Compare a and b under the cone partial order, with tolerance.

    Equal when both component differences are within tol; incomparable when
    the differences have strictly opposite signs beyond tol.
    """
    ah, bh = Hyperbolic._coerce(a), Hyperbolic._coerce(b)
    if ah is None or bh is None:
        raise TypeError("d_compare expects hyperbolic (or real) values")
    d1, d2 = bh.v1 - ah.v1, bh.v2 - ah.v2
    s1 = 0 if abs(d1) <= tol else (1 if d1 > 0 else -1)
    s2 = 0 if abs(d2) <= tol else (1 if d2 > 0 else -1)
    if s1 == 0 and s2 == 0:
        return DOrdering.EQUAL
    if s1 >= 0 and s2 >= 0:
        return DOrdering.LESS
    if s1 <= 0 and s2 <= 0:
        return DOrdering.GREATER
    return DOrdering.INCOMPARABLE


def d_leq(a: HyperbolicLike, b: HyperbolicLike, tol: float = DEFAULT_TOL) -> bool:
    """True when a precedes or equals b in the partial order."""
    return d_compare(a, b, tol) in (DOrdering.LESS, DOrdering.EQUAL)


def sup_d(values: Iterable[HyperbolicLike]) -> Hyperbolic:
    """Componentwise supremum of a finite, nonempty collection."""
    vs = [Hyperbolic._coerce(v) for v in values]
    if not vs or any(v is None for v in vs):
        raise ValueError("sup_d needs a nonempty collection of hyperbolic values")
    return Hyperbolic(max(v.v1 for v in vs), max(v.v2 for v in vs))


def d_modulus(a: BiComplexLike) -> Hyperbolic:
    """Hyperbolic-valued modulus of a bicomplex (or hyperbolic) number."""
    if isinstance(a, Hyperbolic):
        return a.d_modulus()
    o = BiComplex._coerce(a)
    if o is None:
        raise TypeError("d_modulus expects a bicomplex-like value")
    return o.d_modulus()


def classify(a: BiComplexLike, tol: float = DEFAULT_TOL) -> Classification:
    """Zero / zero-divisor / unit classification."""
    if isinstance(a, Hyperbolic):
        return a.classify(tol)
    o = BiComplex._coerce(a)
    if o is None:
        raise TypeError("classify expects a bicomplex-like value")
    return o.classify(tol)


# -- textual rendering ---------------------------------------------------------


def _fmt_float(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return repr(float(x))


def _fmt_complex(z: complex) -> str:
    re, im = _fmt_float(z.real), _fmt_float(abs(z.imag))
    sign = "-" if z.imag < 0 else "+"
    return f"{re}{sign}{im}*i1"


def format_cartesian(a: BiComplex) -> str:
    """Render as "a+b*i1 + (c+d*i1)*i2"; parseable by the expression language."""
    return f"{_fmt_complex(a.z1)} + ({_fmt_complex(a.z2)})*i2"


def format_idempotent(a: BiComplex) -> str:
    """Render as "[w1 | w2]"; parseable by the expression language."""
    return f"[{_fmt_complex(a.w1)} | {_fmt_complex(a.w2)}]"
