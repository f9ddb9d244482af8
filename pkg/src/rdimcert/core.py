"""Graded dimensions: the dimension shadow of a complex of vector spaces.

Grading is cohomological.  ``k[0]`` is ``{0: 1}``, and the shift ``k[s]``
lives in degree ``-s``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DomainError

__all__ = [
    "GradedDimension",
    "ZERO",
    "UNIT",
    "gd_shift",
    "gd_tensor",
    "gd_dual",
    "gd_sum",
    "euler_char",
]


class GradedDimension:
    """Finitely supported map ``degree -> multiplicity``.

    Zero multiplicities are never stored, so two values are equal exactly
    when their entries agree key by key.  Instances are immutable.
    """

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[int, int] = {}
        for deg, mult in entries:
            if int(deg) != deg or int(mult) != mult:
                raise DomainError(f"non-integer entry {deg!r}: {mult!r}")
            if mult < 0:
                raise DomainError(f"negative multiplicity {mult} in degree {deg}")
            if mult:
                acc[int(deg)] = acc.get(int(deg), 0) + int(mult)
        object.__setattr__(self, "_items", tuple(sorted(acc.items())))

    def __setattr__(self, name, value):
        raise AttributeError("GradedDimension is immutable")

    @classmethod
    def concentrated(cls, degree: int, mult: int = 1) -> GradedDimension:
        return cls({degree: mult})

    @property
    def entries(self) -> dict[int, int]:
        return dict(self._items)

    def __getitem__(self, degree: int) -> int:
        for d, m in self._items:
            if d == degree:
                return m
        return 0

    def __iter__(self):
        return iter(self._items)

    def degrees(self) -> list[int]:
        return [d for d, _ in self._items]

    def total(self) -> int:
        return sum(m for _, m in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        if isinstance(other, GradedDimension):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == GradedDimension(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other):
        return gd_sum(self, other)

    def __mul__(self, other):
        return gd_tensor(self, other)

    def __repr__(self):
        return f"GradedDimension({dict(self._items)!r})"

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for deg, mult in self._items:
            space = "k" if mult == 1 else f"k^{mult}"
            parts.append(f"{space}[{-deg}]")
        return " ⊕ ".join(parts)

    def to_json(self) -> dict[str, int]:
        return {str(d): m for d, m in self._items}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> GradedDimension:
        return cls({int(k): v for k, v in data.items()})


ZERO = GradedDimension()
UNIT = GradedDimension({0: 1})


def gd_shift(g: GradedDimension, s: int) -> GradedDimension:
    """Apply the triangulated shift ``[s]``: ``result[d] = g[d + s]``."""
    return GradedDimension((d - s, m) for d, m in g)


def gd_tensor(g: GradedDimension, h: GradedDimension) -> GradedDimension:
    # a GradedDimension sums repeated degrees on construction
    return GradedDimension((i + j, a * b) for i, a in g for j, b in h)


def gd_dual(g: GradedDimension) -> GradedDimension:
    return GradedDimension((-d, m) for d, m in g)


def gd_sum(*gs: GradedDimension) -> GradedDimension:
    return GradedDimension(item for g in gs for item in g)


def euler_char(g: GradedDimension) -> int:
    return sum(m if d % 2 == 0 else -m for d, m in g)
