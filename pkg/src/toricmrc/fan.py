"""Smooth complete fans: construction, validation, queries and operations."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from . import lattice
from .errors import (DimensionTooSmall, InvalidFan, MalformedFan, NotACone,
                     NotComplete, UnknownBuiltin)

Cone = tuple  # strictly increasing tuple of ray indices; () is the zero cone


class Failure(NamedTuple):
    kind: str
    indices: tuple
    message: str


# which of the three report flags each failure kind clears
_FAILURE_GROUP = {
    "wrong_arity": "smooth",
    "degenerate_cone": "smooth",
    "singular_cone": "smooth",
    "duplicate_ray": "axioms",
    "duplicate_cone": "axioms",
    "unused_ray": "axioms",
    "face_mismatch": "axioms",
    "open_wall": "complete",
    "overfull_wall": "complete",
    "disconnected": "complete",
}


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)

    def add(self, kind, indices, message):
        self.failures.append(Failure(kind, tuple(indices), message))

    def _group_ok(self, group):
        return not any(_FAILURE_GROUP[f.kind] == group for f in self.failures)

    @property
    def smooth_ok(self) -> bool:
        return self._group_ok("smooth")

    @property
    def axioms_ok(self) -> bool:
        return self._group_ok("axioms")

    @property
    def complete_ok(self) -> bool:
        return self._group_ok("complete")

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Wall:
    """A codimension-one cone together with the two maximal cones through it.

    ``left_ray`` / ``right_ray`` are the rays of ``left_cone`` /
    ``right_cone`` that are not on the wall.
    """

    ray_ids: Cone
    left_cone: Cone
    right_cone: Cone
    left_ray: int
    right_ray: int


class Location(NamedTuple):
    cone: Cone
    coefficients: tuple
    face: Cone


@dataclass(frozen=True, eq=False)
class Fan:
    """Immutable smooth complete fan.  Build it with :func:`build_fan`."""

    dim: int
    rays: tuple
    max_cones: tuple
    name: Optional[str] = None
    validated: bool = field(default=False, repr=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(combinations(c, k))
        return frozenset(out)

    @cached_property
    def _inverses(self) -> dict:
        return {c: lattice.inverse([self.rays[i] for i in c]) for c in self.max_cones}

    @cached_property
    def walls(self) -> tuple:
        incident = defaultdict(list)
        for c in self.max_cones:
            for w in combinations(c, self.dim - 1):
                incident[w].append(c)
        out = []
        for w in sorted(incident):
            left, right = incident[w]
            out.append(Wall(w, left, right,
                            _other_ray(left, w), _other_ray(right, w)))
        return tuple(out)

    def vectors(self, ray_ids) -> list:
        return [self.rays[i] for i in ray_ids]

    def coordinates(self, cone: Cone, point) -> tuple:
        """Coefficients of ``point`` in the basis given by a maximal cone."""
        inv = self._inverses[cone]
        return tuple(sum(Fraction(point[i]) * inv[i][j] for i in range(self.dim))
                     for j in range(self.dim))


def _other_ray(cone, wall):
    (r,) = set(cone) - set(wall)
    return r


# -- validation ---------------------------------------------------------------

def _canonical_input(n, ray_vectors, cone_sets):
    if n < 1:
        raise MalformedFan(f"dimension must be positive, got {n}")
    rays = []
    for i, v in enumerate(ray_vectors):
        v = tuple(int(c) for c in v)
        if len(v) != n:
            raise MalformedFan(f"ray {i} has {len(v)} coordinates, expected {n}")
        rays.append(lattice.normalize_primitive(v)[0])
    if not cone_sets:
        raise MalformedFan("at least one maximal cone is required")
    cones = []
    for j, c in enumerate(cone_sets):
        c = tuple(int(i) for i in c)
        for i in c:
            if not 0 <= i < len(rays):
                raise MalformedFan(f"cone {j} refers to ray {i}, which does not exist")
        if len(set(c)) != len(c):
            raise MalformedFan(f"cone {j} repeats a ray index")
        cones.append(tuple(sorted(c)))
    return rays, cones


def _separates(fan_inv, rays, c1, c2, shared):
    """True if the dual functional of ``c1`` off ``shared`` is negative on ``c2`` off ``shared``."""
    inv = fan_inv[c1]
    off = [pos for pos, r in enumerate(c1) if r not in shared]
    h = [sum(inv[i][pos] for pos in off) for i in range(len(inv))]
    return all(lattice.dot(h, rays[r]) < 0 for r in c2 if r not in shared)


def _meets_outside_shared(inverses, rays, c1, c2, shared):
    """Exact test whether cone(c1) and cone(c2) share a point outside cone(shared)."""
    inv = inverses[c1]
    n = len(c1)
    # coordinates of c2's rays in the basis of c1
    m = [[sum(Fraction(rays[r][i]) * inv[i][j] for i in range(n)) for j in range(n)]
         for r in c2]
    off = [pos for pos, r in enumerate(c1) if r not in shared]
    # variables: mu (n), slack for each lambda_j >= 0 (n), surplus (1)
    a, b = [], []
    for j in range(n):
        row = [m[k][j] for k in range(n)] + [0] * (n + 1)
        row[n + j] = -1
        a.append(row)
        b.append(0)
    row = [sum(m[k][j] for j in off) for k in range(n)] + [0] * n + [-1]
    a.append(row)
    b.append(1)
    return lattice.nonnegative_solution(a, b) is not None


def validate_fan(n: int, ray_vectors: Sequence, max_cone_index_sets: Sequence) -> ValidationReport:
    """Check smoothness, the fan axioms and completeness; collect every failure.

    Structurally malformed input raises :class:`MalformedFan` instead.
    """
    rays, cones = _canonical_input(n, ray_vectors, max_cone_index_sets)
    return _validate(n, rays, cones)


def _validate(n, rays, cones):
    report = ValidationReport()

    seen = {}
    for i, v in enumerate(rays):
        if v in seen:
            report.add("duplicate_ray", (seen[v], i), f"rays {seen[v]} and {i} are both {v}")
        else:
            seen[v] = i

    seen_cones = {}
    for j, c in enumerate(cones):
        if c in seen_cones:
            report.add("duplicate_cone", (seen_cones[c], j), f"maximal cone {c} listed twice")
        else:
            seen_cones[c] = j
    distinct = list(seen_cones)

    used = {i for c in distinct for i in c}
    for i in range(len(rays)):
        if i not in used:
            report.add("unused_ray", (i,), f"ray {i} lies in no maximal cone")

    full = []
    for c in distinct:
        if len(c) != n:
            report.add("wrong_arity", c, f"cone {c} has {len(c)} rays, expected {n}")
            continue
        mat = [rays[i] for i in c]
        if lattice.determinant(mat) == 0:
            report.add("degenerate_cone", c, f"cone {c} is not full-dimensional")
            continue
        f = lattice.invariant_factors(mat)
        if f != [1] * n:
            report.add("singular_cone", c, f"cone {c} is not smooth (invariant factors {f})")
        full.append(c)

    inverses = {c: lattice.inverse([rays[i] for i in c]) for c in full}
    for c1, c2 in combinations(full, 2):
        shared = set(c1) & set(c2)
        if (_separates(inverses, rays, c1, c2, shared)
                or _separates(inverses, rays, c2, c1, shared)):
            continue
        if _meets_outside_shared(inverses, rays, c1, c2, shared):
            report.add("face_mismatch", (c1, c2),
                       f"cones {c1} and {c2} intersect outside their common face")

    incident = defaultdict(list)
    for c in distinct:
        if len(c) == n:
            for w in combinations(c, n - 1):
                incident[w].append(c)
    for w in sorted(incident):
        k = len(incident[w])
        if k == 1:
            report.add("open_wall", w, f"wall {w} lies in only one maximal cone")
        elif k > 2:
            report.add("overfull_wall", w, f"wall {w} lies in {k} maximal cones")

    nodes = [c for c in distinct if len(c) == n]
    if nodes:
        adj = defaultdict(set)
        for cs in incident.values():
            for a_, b_ in combinations(cs, 2):
                adj[a_].add(b_)
                adj[b_].add(a_)
        reached = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in reached:
                    reached.add(nb)
                    stack.append(nb)
        if len(reached) != len(nodes):
            report.add("disconnected", (), "the wall-adjacency graph of maximal cones is disconnected")
    return report


def build_fan(n: int, ray_vectors: Sequence, max_cone_index_sets: Sequence,
              name: Optional[str] = None) -> Fan:
    """Validate the data and return an immutable :class:`Fan`.

    Ray vectors are primitivized on the way in.  On any validation failure
    :class:`InvalidFan` is raised carrying the full :class:`ValidationReport`.
    """
    rays, cones = _canonical_input(n, ray_vectors, max_cone_index_sets)
    report = _validate(n, rays, cones)
    if not report.ok:
        raise InvalidFan(report)
    return Fan(n, tuple(rays), tuple(cones), name=name, validated=True)


def _require_validated(fan):
    if not fan.validated:
        raise NotComplete("operation needs a fan produced by build_fan")


# -- queries ------------------------------------------------------------------

def _canonical_cone(fan, ray_ids) -> Cone:
    c = tuple(sorted(set(ray_ids)))
    for i in c:
        if not 0 <= i < fan.n_rays:
            raise IndexError(f"ray index {i} out of range")
    return c


def is_cone(fan: Fan, ray_ids) -> bool:
    """True iff the rays span a cone of the fan (fans here are simplicial)."""
    return _canonical_cone(fan, ray_ids) in fan.faces


def locate_point(fan: Fan, point) -> Location:
    """Maximal cone containing ``point`` and the face containing it in its relative interior."""
    _require_validated(fan)
    if len(point) != fan.dim:
        raise ValueError("point has the wrong dimension")
    for c in fan.max_cones:
        coeffs = fan.coordinates(c, point)
        if all(x >= 0 for x in coeffs):
            face = tuple(r for r, x in zip(c, coeffs) if x > 0)
            return Location(c, coeffs, face)
    raise NotComplete(f"no maximal cone contains {tuple(point)}")


def picard_number(fan: Fan) -> int:
    return fan.n_rays - fan.dim


# -- operations ---------------------------------------------------------------

def star_subdivide(fan: Fan, target, name: Optional[str] = None) -> Fan:
    """Insert the sum of ``target``'s generators as a new ray (blow-up of the orbit closure)."""
    _require_validated(fan)
    target = _canonical_cone(fan, target)
    if len(target) < 2:
        raise DimensionTooSmall(f"star subdivision needs a cone of dimension >= 2, got {target}")
    if target not in fan.faces:
        raise NotACone(f"{target} is not a cone of the fan")
    new_ray, _ = lattice.normalize_primitive(lattice.add(*fan.vectors(target)))
    new_id = fan.n_rays
    cones = []
    for c in fan.max_cones:
        if set(target) <= set(c):
            for t in target:
                cones.append(tuple(sorted((set(c) - {t}) | {new_id})))
        else:
            cones.append(c)
    return build_fan(fan.dim, fan.rays + (new_ray,), cones, name=name)


def product(a: Fan, b: Fan, name: Optional[str] = None) -> Fan:
    _require_validated(a)
    _require_validated(b)
    rays = [v + (0,) * b.dim for v in a.rays] + [(0,) * a.dim + w for w in b.rays]
    off = a.n_rays
    cones = [ca + tuple(off + i for i in cb) for ca in a.max_cones for cb in b.max_cones]
    if name is None and a.name and b.name:
        name = f"{a.name}*{b.name}"
    return build_fan(a.dim + b.dim, rays, cones, name=name)


# -- built-in catalog ---------------------------------------------------------

def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def projective_space(n: int) -> Fan:
    if n < 1:
        raise ValueError("projective_space needs n >= 1")
    rays = [_unit(n, i) for i in range(n)] + [tuple([-1] * n)]
    cones = list(combinations(range(n + 1), n))
    return build_fan(n, rays, cones, name=f"projective_space({n})")


def del_pezzo_s3() -> Fan:
    """Blow-up of the plane in three torus-fixed points: the hexagon fan."""
    rays = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    cones = [(i, (i + 1) % 6) for i in range(6)]
    return build_fan(2, rays, cones, name="del_pezzo_s3")


def split_bundle(n: int) -> Fan:
    """P(O^(n-1) + O(1)) over P^1.

    Rays ``e1, e2..en, -e1+e2, -(e2+..+en)``: the fibre directions
    ``e2..en, -(e2+..+en)`` form a projective space, and the two base rays
    ``e1`` and ``-e1+e2`` add up to the fibre ray ``e2``.
    """
    if n < 2:
        raise ValueError("split_bundle needs n >= 2")
    y = _unit(n, 0)
    xs = [_unit(n, i) for i in range(1, n)]
    z = lattice.add(lattice.scale(-1, y), xs[0])
    x_last = tuple(-c for c in lattice.add(*xs))
    rays = [y] + xs + [z, x_last]
    fibre = list(range(1, n)) + [n + 1]
    cones = [tuple(sorted(f + (base,))) for f in combinations(fibre, n - 1) for base in (0, n)]
    return build_fan(n, rays, cones, name=f"split_bundle({n})")


# Oda's non-projective threefold.  The seven rays are fixed; e5, e6, e7 lie
# on the edges e3e4, e1e4, e2e4 of the tetrahedron e1e2e3e4.  The three
# quadrilaterals left after cutting off the corner at e4 are split by the
# cyclic choice of diagonals e3e7, e1e5, e2e6, which keeps {e2,e5}, {e3,e6},
# {e1,e7} out of the fan.  This is one valid realization of the figure.
ODA_RAYS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1),
            (-1, -1, 0), (0, -1, -1), (-1, 0, -1)]
ODA_CONES = [
    (0, 1, 2),
    (3, 4, 6), (3, 4, 5), (3, 5, 6),
    (1, 2, 6), (2, 4, 6),
    (0, 2, 4), (0, 4, 5),
    (0, 1, 5), (1, 5, 6),
]


def oda_3fold() -> Fan:
    return build_fan(3, ODA_RAYS, ODA_CONES, name="oda_3fold")


def oda_blowup_e1e3() -> Fan:
    return star_subdivide(oda_3fold(), (0, 2), name="oda_blowup_e1e3")


def oda_blowup_e3e7() -> Fan:
    return star_subdivide(oda_3fold(), (2, 6), name="oda_blowup_e3e7")


def hirzebruch(a: int) -> Fan:
    """Hirzebruch surface F_a: rays e1, e2, -e1 + a e2, -e2."""
    if a < 0:
        raise ValueError("hirzebruch needs a >= 0")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return build_fan(2, rays, cones, name=f"hirzebruch({a})")


def pn_times_p1(n: int) -> Fan:
    """P^(n-1) x P^1, dimension n."""
    if n < 2:
        raise ValueError("pn_times_p1 needs n >= 2")
    return product(projective_space(n - 1), projective_space(1),
                   name=f"pn_times_p1({n})")


def blowup_pn_times_p1(n: int) -> Fan:
    """P^(n-1) x P^1 blown up along the orbit closure of cone(e1, f), a P^(n-2)."""
    base = pn_times_p1(n)
    return star_subdivide(base, (0, n), name=f"blowup_pn_times_p1({n})")


class BuiltinSpec(NamedTuple):
    builder: object
    params: tuple
    description: str


BUILTINS = {
    "projective_space": BuiltinSpec(projective_space, ("n",), "projective space P^n"),
    "del_pezzo_s3": BuiltinSpec(del_pezzo_s3, (), "P^2 blown up in three points (hexagon)"),
    "split_bundle": BuiltinSpec(split_bundle, ("n",), "P(O^(n-1) + O(1)) over P^1"),
    "oda_3fold": BuiltinSpec(oda_3fold, (), "Oda's smooth complete non-projective 3-fold"),
    "oda_blowup_e1e3": BuiltinSpec(oda_blowup_e1e3, (), "oda_3fold blown up along cone(e1,e3)"),
    "oda_blowup_e3e7": BuiltinSpec(oda_blowup_e3e7, (), "oda_3fold blown up along cone(e3,e7)"),
    "hirzebruch": BuiltinSpec(hirzebruch, ("a",), "Hirzebruch surface F_a"),
    "pn_times_p1": BuiltinSpec(pn_times_p1, ("n",), "P^(n-1) x P^1"),
    "blowup_pn_times_p1": BuiltinSpec(blowup_pn_times_p1, ("n",),
                                      "P^(n-1) x P^1 blown up along a P^(n-2)"),
}


def builtin_fan(name: str, *params: int) -> Fan:
    try:
        spec = BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(f"unknown builtin fan {name!r}") from None
    if len(params) != len(spec.params):
        raise ValueError(f"{name} takes {len(spec.params)} parameter(s), got {len(params)}")
    return spec.builder(*params)
