"""Primitive collections, invariant curves and minimal rational components."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import wraps
from itertools import combinations
from typing import Optional

from . import lattice
from .errors import CriterionMismatch, NonIntegralRelation, NotFano, NotPrimitive
from .fan import Cone, Fan, Wall, _require_validated, locate_point


def _memoized(fn):
    # results are cached on the (immutable) fan instance
    @wraps(fn)
    def wrapper(fan):
        key = fn.__name__
        if key not in fan._memo:
            fan._memo[key] = fn(fan)
        return fan._memo[key]
    return wrapper


@dataclass(frozen=True)
class PrimitiveCollection:
    """A minimal non-face together with its primitive relation.

    ``sum(rays) == sum(c * r for c, r in zip(relation_coeffs, relation_cone))``
    with all coefficients positive integers.
    """

    ray_ids: Cone
    sum: tuple
    relation_cone: Cone
    relation_coeffs: tuple
    degree: int

    @property
    def order(self) -> int:
        return len(self.ray_ids)

    @property
    def is_zero_sum(self) -> bool:
        return not self.relation_cone


@dataclass(frozen=True)
class MinimalComponent:
    collection: PrimitiveCollection

    @property
    def order(self) -> int:
        return self.collection.order

    @property
    def degree(self) -> int:
        # anticanonical degree of a member curve
        return self.collection.order

    @property
    def p(self) -> int:
        return self.order - 2

    @property
    def vmrt_dim(self) -> int:
        return self.p

    @property
    def locus_dim(self) -> int:
        return self.p + 1


@dataclass(frozen=True)
class WallCurve:
    """Torus-invariant curve of a wall.

    ``relation_coeffs[i]`` is the coefficient of ``wall.ray_ids[i]`` in
    ``u_left + sum(a_i u_i) + u_right = 0``; these are also the degrees of
    the normal bundle summands.
    """

    wall: Wall
    relation_coeffs: tuple

    @property
    def anticanonical_degree(self) -> int:
        return 2 + sum(self.relation_coeffs)

    @property
    def splitting_type(self) -> tuple:
        return tuple(sorted(self.relation_coeffs, reverse=True))

    @property
    def is_standard(self) -> bool:
        return all(a in (0, 1) for a in self.relation_coeffs)


def _is_minimal_non_face(faces, ray_ids) -> bool:
    if ray_ids in faces:
        return False
    k = len(ray_ids)
    return all(sub in faces for sub in combinations(ray_ids, k - 1))


def primitive_relation(fan: Fan, ray_ids) -> PrimitiveCollection:
    _require_validated(fan)
    ids = tuple(sorted(set(ray_ids)))
    if len(ids) < 2 or not _is_minimal_non_face(fan.faces, ids):
        raise NotPrimitive(f"{ids} is not a primitive collection")
    s = lattice.add(*fan.vectors(ids))
    loc = locate_point(fan, s)
    coeffs = []
    for r, x in zip(loc.cone, loc.coefficients):
        if x > 0:
            if x.denominator != 1:
                raise NonIntegralRelation(f"relation for {ids} has coefficient {x}")
            coeffs.append(int(x))
    return PrimitiveCollection(ids, s, loc.face, tuple(coeffs), len(ids) - sum(coeffs))


@_memoized
def primitive_collections(fan: Fan) -> tuple:
    """All primitive collections, sorted by order and then lexicographically.

    Every minimal non-face P is ``F + {v}`` with ``F = P - {v}`` a face and
    ``v = max(P)``, so extending each face by a larger ray finds each
    collection exactly once.
    """
    _require_validated(fan)
    faces = fan.faces
    found = []
    for f in faces:
        start = f[-1] + 1 if f else 0
        for v in range(start, fan.n_rays):
            cand = f + (v,)
            if _is_minimal_non_face(faces, cand):
                found.append(cand)
    found.sort(key=lambda c: (len(c), c))
    return tuple(primitive_relation(fan, c) for c in found)


@_memoized
def minimal_components(fan: Fan) -> tuple:
    """Minimal components, one per zero-sum primitive collection."""
    return tuple(MinimalComponent(pc) for pc in primitive_collections(fan) if pc.is_zero_sum)


@_memoized
def wall_curves(fan: Fan) -> tuple:
    _require_validated(fan)
    out = []
    for w in fan.walls:
        u0 = fan.rays[w.left_ray]
        un = fan.rays[w.right_ray]
        b = lattice.solve_in_basis(fan.vectors(w.ray_ids), lattice.add(u0, un))
        if b is None or any(x.denominator != 1 for x in b):
            raise NonIntegralRelation(f"wall {w.ray_ids} has no integral relation")
        out.append(WallCurve(w, tuple(-int(x) for x in b)))
    return tuple(out)


def projectivity_system(fan: Fan) -> lattice.StrictLPSystem:
    """One variable per ray; one positivity row ``D . C > 0`` per invariant curve."""
    rows = []
    for wc in wall_curves(fan):
        row = [0] * fan.n_rays
        row[wc.wall.left_ray] += 1
        row[wc.wall.right_ray] += 1
        for r, a in zip(wc.wall.ray_ids, wc.relation_coeffs):
            row[r] += a
        rows.append(row)
    return lattice.StrictLPSystem(fan.n_rays, rows)


@_memoized
def ample_divisor(fan: Fan) -> Optional[tuple]:
    """Coefficients of a torus-invariant ample divisor, or ``None`` if the fan is not projective."""
    system = projectivity_system(fan)
    anticanonical = tuple(Fraction(1) for _ in range(fan.n_rays))
    if system.satisfied_by(anticanonical):
        return anticanonical
    return lattice.lp_strict_feasible(system)


def is_projective(fan: Fan) -> bool:
    return ample_divisor(fan) is not None


@_memoized
def is_fano(fan: Fan) -> bool:
    """Anticanonical class positive on every invariant curve, cross-checked.

    The second route requires every primitive relation to have positive
    degree; disagreement raises :class:`CriterionMismatch`.
    """
    by_walls = all(wc.anticanonical_degree > 0 for wc in wall_curves(fan)) and is_projective(fan)
    by_relations = all(pc.degree > 0 for pc in primitive_collections(fan))
    if by_walls != by_relations:
        raise CriterionMismatch(
            f"wall criterion says {by_walls}, primitive relations say {by_relations}")
    return by_walls


def pseudo_index(fan: Fan) -> int:
    """Smallest anticanonical degree of an invariant curve on a Fano fan."""
    if not is_fano(fan):
        raise NotFano("pseudo-index is only defined for Fano fans")
    return min(wc.anticanonical_degree for wc in wall_curves(fan))
