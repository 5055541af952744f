"""Roots-of-unity subgroups, unit circles and quadratics over the unit circle."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BadTowerIndex, NotADivisor, NotInSubfield, SpecMismatch, \
    ZeroCoefficient, ZeroInput
from .field import FieldElement, GF2Field, TowerView


@dataclass(frozen=True)
class SubgroupDesc:
    """The cyclic subgroup of order ``s`` of the multiplicative group."""

    field: GF2Field
    s: int

    def __post_init__(self):
        if self.s < 1 or self.field.n_units % self.s:
            raise NotADivisor(f"{self.s} does not divide {self.field.n_units}")

    @property
    def coset_generator(self) -> int:
        return self.field.pow(self.field.generator, self.field.n_units // self.s)

    def array(self) -> np.ndarray:
        """Members ``h^k`` for ``k = 0..s-1``, ``h`` the coset generator."""
        f = self.field
        if f.has_tables:
            exp, _ = f.tables()
            return exp[np.arange(self.s, dtype=np.int64) * (f.n_units // self.s)].copy()
        out = np.empty(self.s, dtype=np.int64)
        h = self.coset_generator
        acc = 1
        for k in range(self.s):
            out[k] = acc
            acc = f.mul(acc, h)
        return out


def subgroup_array(field: GF2Field, s: int) -> np.ndarray:
    return SubgroupDesc(field, s).array()


def subgroup_elements(field: GF2Field, s: int) -> list[FieldElement]:
    """The ``s``-th roots of unity, in increasing generator-power order."""
    return [FieldElement(int(v), field) for v in subgroup_array(field, s)]


def unit_circle(tower: TowerView, level: int) -> np.ndarray:
    """mu_{Q+1} with ``Q = q^level`` as an int array."""
    if level not in (1, 2):
        raise BadTowerIndex(f"level must be 1 or 2, got {level}")
    return subgroup_array(tower.ambient, (1 << (tower.n * level)) + 1)


def admissible_c(tower: TowerView) -> np.ndarray:
    """mu_{q^2+1} without 1."""
    mu = unit_circle(tower, 2)
    return mu[mu != 1]


def in_unit_circle(x: FieldElement, tower: TowerView, level: int) -> bool:
    if level not in (1, 2):
        raise BadTowerIndex(f"level must be 1 or 2, got {level}")
    if x.field != tower.ambient:
        raise SpecMismatch("element is not in the tower's ambient field")
    if x.value == 0:
        return False
    return x.field.pow(x.value, (1 << (tower.n * level)) + 1) == 1


def polar_decompose(x: FieldElement, tower: TowerView,
                    level: int) -> tuple[FieldElement, FieldElement]:
    """Split ``x = lam * y`` with ``lam^(Q+1) = 1`` and ``y`` in GF(Q)*.

    ``y`` is the square root of the norm ``x^(Q+1)``.
    """
    if level not in (1, 2):
        raise BadTowerIndex(f"level must be 1 or 2, got {level}")
    if x.field != tower.ambient:
        raise SpecMismatch("element is not in the tower's ambient field")
    if x.value == 0:
        raise ZeroInput("0 has no polar decomposition")
    f = x.field
    top = 2 * level * tower.n
    if not f.in_subfield(x.value, top):
        raise NotInSubfield(f"{x.hex()} is not in GF(2^{top})")
    Q = 1 << (tower.n * level)
    y = f.sqrt(f.pow(x.value, Q + 1))
    lam = f.mul(x.value, f.inv(y))
    return FieldElement(lam, f), FieldElement(y, f)


# -- quadratics x^2 + a x + b over GF(2^(2m)) --------------------------------

_artin_lock = threading.Lock()
_artin_tables: dict[GF2Field, np.ndarray] = {}


def artin_schreier_table(field: GF2Field) -> np.ndarray:
    """``table[w]`` = smallest ``t`` with ``t^2 + t = w``, or -1 if none."""
    with _artin_lock:
        table = _artin_tables.get(field)
        if table is None:
            t = field.elements()
            w = field.mul(t, t) ^ t
            table = np.full(field.size, np.iinfo(np.int64).max, dtype=np.int64)
            np.minimum.at(table, w, t)
            table[table == np.iinfo(np.int64).max] = -1
            table.setflags(write=False)
            _artin_tables[field] = table
        return table


def solve_quadratic(field: GF2Field, a: int, b: int) -> list[int]:
    """All roots of ``x^2 + a x + b`` in the field, ascending; ``a != 0``."""
    w = field.mul(b, field.inv(field.mul(a, a)))
    t = int(artin_schreier_table(field)[w])
    if t < 0:
        return []
    return sorted({field.mul(a, t), field.mul(a, t ^ 1)})


class UnitCircleRoots(NamedTuple):
    count: int
    roots: tuple[FieldElement, ...]
    predicted_count: int
    no_roots_in_field: bool


def circle_root_classification(field: GF2Field, a: int, b: int, m: int) -> int:
    """Predicted number of unit-circle roots of ``x^2 + a x + b``.

    Valid under the hypothesis that ``b / a^2`` has absolute trace 0.
    """
    Q = 1 << m
    f = field
    special = f.pow(a, 1 - Q)
    if b == special:
        return 2 if f.trace(f.inv(f.pow(a, 1 + Q)), 1, m) == 1 else 0
    bn = f.pow(b, 1 + Q)
    lhs = (f.mul(1 ^ bn, 1 ^ f.pow(a, 1 + Q) ^ bn)
           ^ f.mul(f.mul(a, a), f.pow(b, Q))
           ^ f.mul(f.pow(a, 2 * Q), b))
    return 1 if lhs == 0 else 0


def unit_circle_quadratic(a: FieldElement, b: FieldElement,
                          m: int) -> UnitCircleRoots:
    """Roots of ``x^2 + a x + b`` on the unit circle of GF(2^(2m)).

    ``count``/``roots`` come from solving the quadratic and filtering by
    ``x^(2^m + 1) = 1``; ``predicted_count`` is the closed-form classification.
    When ``b / a^2`` has trace 1 the quadratic has no roots in the field at
    all and both counts are 0 with ``no_roots_in_field`` set.
    """
    if a.field != b.field:
        raise SpecMismatch(f"{a.field!r} vs {b.field!r}")
    f = a.field
    if f.degree != 2 * m:
        raise BadTowerIndex(f"field degree {f.degree} is not 2*{m}")
    if a.value == 0 or b.value == 0:
        raise ZeroCoefficient("coefficients must be nonzero")
    w = f.mul(b.value, f.inv(f.mul(a.value, a.value)))
    if f.trace(w) != 0:
        return UnitCircleRoots(0, (), 0, True)
    Q = 1 << m
    on_circle = tuple(FieldElement(r, f)
                      for r in solve_quadratic(f, a.value, b.value)
                      if f.pow(r, Q + 1) == 1)
    return UnitCircleRoots(len(on_circle), on_circle,
                           circle_root_classification(f, a.value, b.value, m), False)
