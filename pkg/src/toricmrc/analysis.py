"""Theorem-level checks on a fan and the aggregate report."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import lattice
from .curves import (ample_divisor, is_fano, minimal_components,
                     primitive_collections, pseudo_index, wall_curves)
from .errors import ToricError
from .fan import Fan, picard_number


@dataclass
class BoundsReport:
    n: int
    rho: int
    counts: dict  # p -> number of minimal components of degree p + 2
    lhs: int
    rhs: int
    i_ok: bool
    ii_ok: bool
    iii_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.i_ok and self.ii_ok and self.iii_ok

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def check_bounds(fan: Fan) -> BoundsReport:
    """Counting bounds on minimal components.

    (i)   sum_p n_p (p + 2) <= n + rho
    (ii)  components of degrees p + 2 and q + 2 coexist only if p + q <= n - 2
    (iii) p >= (n - 1) / 2 forces n_p <= 1

    These hold for every smooth complete fan, so a violation signals a bug.
    """
    n = fan.dim
    rho = picard_number(fan)
    comps = minimal_components(fan)
    counts = Counter(c.p for c in comps)
    lhs = sum(k * (p + 2) for p, k in counts.items())
    rhs = n + rho
    violations = []
    i_ok = lhs <= rhs
    if not i_ok:
        violations.append(f"(i) {lhs} > {rhs}")
    ii_ok = True
    for a, b in combinations(comps, 2):
        if a.p + b.p > n - 2:
            ii_ok = False
            violations.append(f"(ii) components {a.collection.ray_ids} and "
                              f"{b.collection.ray_ids}: p+q = {a.p + b.p} > {n - 2}")
    iii_ok = True
    for p, k in sorted(counts.items()):
        if 2 * p >= n - 1 and k > 1:
            iii_ok = False
            violations.append(f"(iii) n_{p} = {k} > 1")
    return BoundsReport(n, rho, dict(sorted(counts.items())), lhs, rhs, i_ok, ii_ok, iii_ok,
                        violations)


@dataclass(frozen=True)
class ComponentCheck:
    ray_ids: tuple
    p: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class ConjectureReport:
    applicable: bool
    n: int
    rho: int
    fano: bool
    per_component: list
    iota: Optional[int] = None
    mukai_rho_ok: Optional[bool] = None
    mukai_iota_ok: Optional[bool] = None

    @property
    def counterexample_candidate(self) -> bool:
        return self.applicable and any(not c.ok for c in self.per_component)

    @property
    def equality(self) -> bool:
        return self.applicable and any(c.equality for c in self.per_component)


def check_conjecture(fan: Fan) -> ConjectureReport:
    """Evaluate rho * (p + 1) <= n (n + 1) / 2 per minimal component.

    Also records rho <= 2n and rho (iota - 1) <= n when the fan is Fano.
    A failure is reported as a counterexample candidate, never raised.
    """
    n = fan.dim
    rho = picard_number(fan)
    fano = is_fano(fan)
    comps = minimal_components(fan)
    rhs = n * (n + 1) // 2
    per = [ComponentCheck(c.collection.ray_ids, c.p, rho * (c.p + 1), rhs) for c in comps]
    report = ConjectureReport(fano and n >= 3 and bool(comps), n, rho, fano, per)
    if fano:
        iota = pseudo_index(fan)
        report.iota = iota
        report.mukai_rho_ok = rho <= 2 * n
        report.mukai_iota_ok = rho * (iota - 1) <= n
    return report


class DegNKind(enum.Enum):
    ProductPn1P1 = "ProductPn1P1"
    SplitBundle = "SplitBundle"
    BlowupOfProduct = "BlowupOfProduct"
    NotApplicable = "NotApplicable"


@dataclass
class DegNClassification:
    kind: DegNKind
    reason: str = ""
    collection: tuple = ()
    rho: Optional[int] = None
    normal: tuple = ()
    positive_side: tuple = ()
    negative_side: tuple = ()
    relations: list = field(default_factory=list)
    alarms: list = field(default_factory=list)


def _hyperplane_normal(vectors) -> tuple:
    """Integer normal of the span of n - 1 independent vectors in Z^n (cofactor expansion)."""
    n = len(vectors[0])
    h = []
    for j in range(n):
        minor = [[v[c] for c in range(n) if c != j] for v in vectors]
        h.append((-1) ** j * lattice.determinant(minor))
    return lattice.normalize_primitive(h)[0]


def classify_degree_n(fan: Fan) -> DegNClassification:
    """Identify a Fano n-fold (n >= 3) with a minimal component of degree n.

    Follows the side-of-hyperplane case split: the rays off the span H of
    the order-n zero-sum collection decide between P^(n-1) x P^1, the split
    bundle, and the blow-up of the product along a P^(n-2).
    """
    n = fan.dim
    na = DegNKind.NotApplicable
    if n < 3:
        return DegNClassification(na, "dimension below 3")
    if not is_fano(fan):
        return DegNClassification(na, "not Fano")
    comps = [c for c in minimal_components(fan) if c.order == n]
    if not comps:
        return DegNClassification(na, "no minimal component of degree n")

    coll = comps[0].collection.ray_ids
    out = DegNClassification(na, collection=coll)
    if len(comps) > 1:
        out.alarms.append(f"{len(comps)} order-n zero-sum collections; expected one")
    xs = fan.vectors(coll)
    h = _hyperplane_normal(xs[:-1])
    out.normal = h
    rest = [r for r in range(fan.n_rays) if r not in coll]
    out.rho = len(rest)
    pos = tuple(r for r in rest if lattice.dot(h, fan.rays[r]) > 0)
    neg = tuple(r for r in rest if lattice.dot(h, fan.rays[r]) < 0)
    out.positive_side, out.negative_side = pos, neg
    on_h = [r for r in rest if lattice.dot(h, fan.rays[r]) == 0]
    if on_h:
        out.alarms.append(f"rays {on_h} lie on the hyperplane of the collection")
    x_index = {fan.rays[r]: r for r in coll}

    def vec(r):
        return fan.rays[r]

    if out.rho == 2:
        if len(pos) != 1 or len(neg) != 1:
            out.alarms.append("expected one ray on each side of the hyperplane")
            out.reason = "inconsistent side split"
            return out
        y, z = pos[0], neg[0]
        s = lattice.add(vec(y), vec(z))
        if not any(s):
            out.kind = DegNKind.ProductPn1P1
            out.relations.append(f"u{y} + u{z} = 0")
        elif s in x_index:
            out.kind = DegNKind.SplitBundle
            out.relations.append(f"u{y} + u{z} = u{x_index[s]}")
        else:
            out.alarms.append(f"u{y} + u{z} = {s} is neither 0 nor a collection ray")
            out.reason = "inconsistent relation"
        return out

    if out.rho == 3:
        out.kind = DegNKind.BlowupOfProduct
        two, one = (pos, neg) if len(pos) == 2 else (neg, pos)
        if len(two) != 2 or len(one) != 1:
            out.alarms.append("expected two rays on one side and one on the other")
            return out
        z = one[0]
        for y1, y2 in (two, two[::-1]):
            if lattice.add(vec(z), vec(y1)) == tuple([0] * n):
                diff = tuple(a - b for a, b in zip(vec(y2), vec(y1)))
                if diff in x_index:
                    out.relations.append(f"u{z} = -u{y1}")
                    out.relations.append(f"u{y1} + u{x_index[diff]} = u{y2}")
                    return out
        out.alarms.append("side rays do not match z = -y1, y1 + x = y2")
        return out

    out.alarms.append(f"rho = {out.rho}; the classification allows only 2 or 3")
    out.reason = "Picard number out of range"
    return out


@dataclass
class AnalysisReport:
    name: Optional[str]
    dim: int
    n_rays: int
    rho: int
    smooth: bool
    fan_axioms: bool
    complete: bool
    projective: Optional[bool] = None
    ample_divisor: Optional[tuple] = None
    fano: Optional[bool] = None
    iota: Optional[int] = None
    n_walls: int = 0
    n_standard_walls: int = 0
    collections: tuple = ()
    components: tuple = ()
    bounds: Optional[BoundsReport] = None
    conjecture: Optional[ConjectureReport] = None
    classification: Optional[DegNClassification] = None
    status: dict = field(default_factory=dict)


def summarize(fan: Fan) -> AnalysisReport:
    """Run every analysis; a section that errors records its message in ``status``."""
    rep = AnalysisReport(fan.name, fan.dim, fan.n_rays, picard_number(fan),
                         fan.validated, fan.validated, fan.validated)

    def section(key, fn):
        try:
            fn()
            rep.status[key] = "ok"
        except ToricError as exc:
            rep.status[key] = f"error: {exc}"

    def curves():
        wcs = wall_curves(fan)
        rep.n_walls = len(wcs)
        rep.n_standard_walls = sum(w.is_standard for w in wcs)

    def collections():
        rep.collections = primitive_collections(fan)
        rep.components = minimal_components(fan)

    def projectivity():
        rep.ample_divisor = ample_divisor(fan)
        rep.projective = rep.ample_divisor is not None

    def fano():
        rep.fano = is_fano(fan)
        if rep.fano:
            rep.iota = pseudo_index(fan)

    def bounds():
        rep.bounds = check_bounds(fan)

    def conjecture():
        rep.conjecture = check_conjecture(fan)

    def classification():
        rep.classification = classify_degree_n(fan)

    section("curves", curves)
    section("collections", collections)
    section("projectivity", projectivity)
    section("fano", fano)
    section("bounds", bounds)
    section("conjecture", conjecture)
    section("classification", classification)
    return rep

