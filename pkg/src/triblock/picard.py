"""Integral Picard-lattice arithmetic for Del Pezzo surfaces.

Two families of surfaces are supported: the plane blown up in r points
(0 <= r <= 8) and the smooth quadric.  For the blown-up plane the lattice
carries the basis (l0, l1, ..., lr) with l0^2 = 1, li^2 = -1 and all mixed
products zero; for the quadric the basis (f1, f2) of the two rulings with
f1^2 = f2^2 = 0 and f1.f2 = 1.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

PLANE = "plane"
QUADRIC = "quadric"

MINUS_ONE = "minus-one"
ROOT = "root"


class LatticeMismatchError(ValueError):
    """Raised when classes living on different lattices are combined."""


@dataclass(frozen=True)
class Surface:
    """A Del Pezzo surface, identified by its Picard lattice."""

    kind: str
    blowups: int = 0

    @classmethod
    def plane(cls, blowups: int = 0) -> "Surface":
        """The projective plane blown up in ``blowups`` general points."""
        if not 0 <= blowups <= 8:
            raise ValueError(f"blowups must be between 0 and 8, got {blowups}")
        return cls(PLANE, blowups)

    @classmethod
    def quadric(cls) -> "Surface":
        return cls(QUADRIC, 0)

    @classmethod
    def from_name(cls, name: str) -> "Surface":
        """Inverse of :attr:`name`; accepts ``P2``, ``X1`` .. ``X8``, ``quadric``."""
        if name == "P2":
            return cls.plane(0)
        if name == "quadric":
            return cls.quadric()
        if len(name) == 2 and name[0] == "X" and name[1].isdigit() and name[1] != "0":
            return cls.plane(int(name[1]))
        raise ValueError(f"unknown surface name: {name!r}")

    @property
    def name(self) -> str:
        if self.kind == QUADRIC:
            return "quadric"
        return "P2" if self.blowups == 0 else f"X{self.blowups}"

    @property
    def picard_rank(self) -> int:
        return 2 if self.kind == QUADRIC else self.blowups + 1

    @property
    def k_squared(self) -> int:
        """Self-intersection of the canonical class."""
        return 8 if self.kind == QUADRIC else 9 - self.blowups

    @property
    def k0_rank(self) -> int:
        """Rank of the Grothendieck group, i.e. 2 + picard rank."""
        return 12 - self.k_squared

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class DivisorClass:
    """An integral divisor class, stored as coordinates in the fixed basis."""

    surface: Surface
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.surface.picard_rank:
            raise ValueError(
                f"expected {self.surface.picard_rank} coordinates on "
                f"{self.surface}, got {len(self.coords)}"
            )

    @classmethod
    def zero(cls, surface: Surface) -> "DivisorClass":
        return cls(surface, (0,) * surface.picard_rank)

    @classmethod
    def from_coords(cls, surface: Surface, coords) -> "DivisorClass":
        return cls(surface, tuple(int(c) for c in coords))

    @classmethod
    def basis(cls, surface: Surface, i: int) -> "DivisorClass":
        """The i-th basis vector (l_i on a blown-up plane, f_{i+1} on the quadric)."""
        n = surface.picard_rank
        if not 0 <= i < n:
            raise ValueError(f"basis index {i} out of range for {surface}")
        return cls(surface, tuple(1 if j == i else 0 for j in range(n)))

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _require_same_surface(self, other)
        return DivisorClass(
            self.surface, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _require_same_surface(self, other)
        return DivisorClass(
            self.surface, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(-a for a in self.coords))

    def __mul__(self, scalar: int) -> "DivisorClass":
        if not isinstance(scalar, int):
            return NotImplemented
        return DivisorClass(self.surface, tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _require_same_surface(a: DivisorClass, b: DivisorClass) -> None:
    if a.surface != b.surface:
        raise LatticeMismatchError(
            f"incompatible lattices: {a.surface} and {b.surface}"
        )


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Intersection number of two divisor classes on the same surface."""
    _require_same_surface(a, b)
    if a.surface.kind == QUADRIC:
        return a.coords[0] * b.coords[1] + a.coords[1] * b.coords[0]
    head = a.coords[0] * b.coords[0]
    return head - sum(x * y for x, y in zip(a.coords[1:], b.coords[1:]))


def canonical_class(surface: Surface) -> DivisorClass:
    """The canonical class K in the fixed basis."""
    if surface.kind == QUADRIC:
        return DivisorClass(surface, (-2, -2))
    return DivisorClass(surface, (-3,) + (1,) * surface.blowups)


def embed(d: DivisorClass, into: Surface) -> DivisorClass:
    """Push a class from a less-blown-up plane into a more-blown-up one.

    The inclusion pads with zeros on the exceptional coordinates of the extra
    blowups; it preserves intersection numbers and sends canonical class to
    canonical class only up to the new exceptional directions, so callers who
    care about K must re-read it on the target surface.
    """
    if d.surface.kind != PLANE or into.kind != PLANE:
        raise LatticeMismatchError("incompatible lattices: embedding requires plane surfaces")
    if into.blowups < d.surface.blowups:
        raise LatticeMismatchError(
            f"incompatible lattices: cannot embed {d.surface} into smaller {into}"
        )
    pad = (0,) * (into.blowups - d.surface.blowups)
    return DivisorClass(into, d.coords + pad)


def _bounded_vectors(count: int, total: int, square_total: int) -> Iterator[tuple[int, ...]]:
    # Integer vectors b of given length with sum(b) == total and
    # sum(b*b) == square_total.  Prunes with Cauchy-Schwarz at every node:
    # any completion satisfies total^2 <= count * square_total.
    if square_total < 0:
        return
    if count == 0:
        if total == 0 and square_total == 0:
            yield ()
        return
    if total * total > count * square_total:
        return
    top = isqrt(square_total)
    for b in range(-top, top + 1):
        for rest in _bounded_vectors(count - 1, total - b, square_total - b * b):
            yield (b,) + rest


def enumerate_classes(
    surface: Surface, kind: str, *, bound_multiplier: int = 1
) -> tuple[DivisorClass, ...]:
    """All minus-one curve classes (e^2 = e.K = -1) or roots (s^2 = -2, s.K = 0).

    The search is a bounded exhaustion: on a plane with r blowups the degree
    coordinate ranges over |a| <= 3*(r+1)*bound_multiplier, on the quadric both
    coordinates range over |u| <= 4*bound_multiplier.  The defaults already
    exceed the support of either system; ``bound_multiplier`` exists so tests
    can double the box and confirm the result set is stable.
    """
    if kind not in (MINUS_ONE, ROOT):
        raise ValueError(f"kind must be {MINUS_ONE!r} or {ROOT!r}, got {kind!r}")
    if bound_multiplier < 1:
        raise ValueError("bound_multiplier must be a positive integer")
    self_sq, k_dot = (-1, -1) if kind == MINUS_ONE else (-2, 0)
    found = []
    if surface.kind == QUADRIC:
        top = 4 * bound_multiplier
        for u in range(-top, top + 1):
            for v in range(-top, top + 1):
                if 2 * u * v == self_sq and -2 * (u + v) == k_dot:
                    found.append(DivisorClass(surface, (u, v)))
    else:
        r = surface.blowups
        top = 3 * (r + 1) * bound_multiplier
        for a in range(-top, top + 1):
            # e = a*l0 + sum(b_i l_i); the two defining equations pin the
            # linear and quadratic symmetric functions of the b_i.
            b_sum = -3 * a - k_dot
            b_square_sum = a * a - self_sq
            for b in _bounded_vectors(r, b_sum, b_square_sum):
                found.append(DivisorClass(surface, (a,) + b))
    return tuple(sorted(found, key=lambda d: d.coords))
