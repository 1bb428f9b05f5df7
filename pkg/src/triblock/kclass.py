"""Numerical Grothendieck-group classes on a Del Pezzo surface.

A class is the triple (rank, c1, 2*ch2) of Chern characters; the doubled
second character keeps every computation in plain integers.  Classes of
genuine sheaves satisfy the parity 2*ch2 == c1.K (mod 2), which makes the
Euler pairing below integral; :func:`chi` checks that parity on the fly and
treats a violation as an internal bug rather than bad user input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .picard import DivisorClass, Surface, canonical_class, intersect

HOM = "hom"
EXT = "ext"
ZERO = "zero"


class InvariantViolationError(RuntimeError):
    """An arithmetic identity that must hold internally failed to hold."""


@dataclass(frozen=True)
class KClass:
    """A numerical class (rank, c1, 2*ch2); supports formal Z-linear algebra."""

    surface: Surface
    rank: int
    c1: DivisorClass
    ch2x2: int

    def __post_init__(self) -> None:
        if self.c1.surface != self.surface:
            raise ValueError("c1 lives on a different surface")

    def __add__(self, other: "KClass") -> "KClass":
        if not isinstance(other, KClass):
            return NotImplemented
        if other.surface != self.surface:
            raise ValueError("cannot add classes on different surfaces")
        return KClass(
            self.surface, self.rank + other.rank, self.c1 + other.c1, self.ch2x2 + other.ch2x2
        )

    def __sub__(self, other: "KClass") -> "KClass":
        if not isinstance(other, KClass):
            return NotImplemented
        if other.surface != self.surface:
            raise ValueError("cannot subtract classes on different surfaces")
        return KClass(
            self.surface, self.rank - other.rank, self.c1 - other.c1, self.ch2x2 - other.ch2x2
        )

    def __neg__(self) -> "KClass":
        return KClass(self.surface, -self.rank, -self.c1, -self.ch2x2)

    def __mul__(self, scalar: int) -> "KClass":
        if not isinstance(scalar, int):
            return NotImplemented
        return KClass(self.surface, scalar * self.rank, scalar * self.c1, scalar * self.ch2x2)

    __rmul__ = __mul__

    @property
    def is_exceptional(self) -> bool:
        """Whether rank*ch2x2 == 1 + c1^2 - rank^2 (rank 0: c1^2 == -1)."""
        c1sq = intersect(self.c1, self.c1)
        if self.rank == 0:
            return c1sq == -1
        return self.rank * self.ch2x2 == 1 + c1sq - self.rank * self.rank


def degree(e: KClass) -> int:
    """Degree against the anticanonical polarization, d = c1.(-K)."""
    return -intersect(e.c1, canonical_class(e.surface))


def slope(e: KClass):
    """d/rank as an exact Fraction; +infinity for rank zero."""
    if e.rank == 0:
        return inf
    return Fraction(degree(e), e.rank)


def chi(e: KClass, f: KClass) -> int:
    """Euler pairing chi(E, F), by Riemann-Roch on the numerical invariants."""
    if e.surface != f.surface:
        raise ValueError("cannot pair classes on different surfaces")
    twice = (
        2 * e.rank * f.rank
        + (e.rank * degree(f) - f.rank * degree(e))
        + (e.rank * f.ch2x2 + f.rank * e.ch2x2)
        - 2 * intersect(e.c1, f.c1)
    )
    if twice % 2:
        raise InvariantViolationError(
            f"Euler pairing is not integral on {e} x {f}; "
            "a class violates the sheaf parity 2*ch2 == c1.K (mod 2)"
        )
    return twice // 2


def chi_minus(e: KClass, f: KClass) -> int:
    """The antisymmetrized pairing chi(E,F) - chi(F,E) = r(E)d(F) - r(F)d(E)."""
    if e.surface != f.surface:
        raise ValueError("cannot pair classes on different surfaces")
    return e.rank * degree(f) - f.rank * degree(e)


def twist(e: KClass, d: DivisorClass) -> KClass:
    """The class of E tensored with the line bundle O(d)."""
    if d.surface != e.surface:
        raise ValueError("twisting divisor lives on a different surface")
    return KClass(
        e.surface,
        e.rank,
        e.c1 + e.rank * d,
        e.ch2x2 + 2 * intersect(e.c1, d) + e.rank * intersect(d, d),
    )


def line_bundle(d: DivisorClass) -> KClass:
    return KClass(d.surface, 1, d, intersect(d, d))


def torsion_class(surface: Surface, curve: DivisorClass, m: int) -> KClass:
    """Class of O_C(m) for a minus-one curve C; rank 0, c1 = C, 2*ch2 = 2m + 1.

    Normalized so that chi(O, O_C(m)) == m + 1.
    """
    if curve.surface != surface:
        raise ValueError("curve class lives on a different surface")
    k = canonical_class(surface)
    if intersect(curve, curve) != -1 or intersect(curve, k) != -1:
        raise ValueError("not a minus-one curve class")
    return KClass(surface, 0, curve, 2 * m + 1)


def exceptional_ch2(surface: Surface, rank: int, c1: DivisorClass) -> int:
    """The unique 2*ch2 making (rank, c1) exceptional, when it exists."""
    if c1.surface != surface:
        raise ValueError("c1 lives on a different surface")
    if rank == 0:
        raise ValueError("no exceptional class with these (r, c1): rank must be nonzero")
    num = 1 + intersect(c1, c1) - rank * rank
    if num % rank:
        raise ValueError("no exceptional class with these (r, c1)")
    return num // rank


def exceptional_class(surface: Surface, rank: int, c1: DivisorClass) -> KClass:
    """Convenience constructor pairing (rank, c1) with its forced 2*ch2."""
    return KClass(surface, rank, c1, exceptional_ch2(surface, rank, c1))


def classify_pair(e: KClass, f: KClass) -> str:
    """Sort an exceptional pair by slope: 'hom' (<), 'ext' (>) or 'zero' (=)."""
    se, sf = slope(e), slope(f)
    if se < sf:
        return HOM
    if se > sf:
        return EXT
    return ZERO
