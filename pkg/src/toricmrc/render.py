"""Text rendering of analysis results.

Every renderer builds a list of sections, each a heading plus ordered
``(key, value)`` pairs.  The machine format prints only ``key = value``
lines; the human format adds a heading stating the result each section
applies.
"""
from __future__ import annotations

from fractions import Fraction

from .analysis import AnalysisReport, BoundsReport, ConjectureReport, DegNClassification
from .fan import ValidationReport


def fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(fmt(v) for v in value) + ")"
    return str(value)


def fan_section(rep: AnalysisReport):
    return ("Fan (Picard number = number of rays - dimension)", [
        ("name", rep.name),
        ("dim", rep.dim),
        ("rays", rep.n_rays),
        ("picard_number", rep.rho),
        ("smooth", rep.smooth),
        ("fan_axioms", rep.fan_axioms),
        ("complete", rep.complete),
    ])


def curves_section(rep: AnalysisReport):
    return ("Invariant curves (projective iff some divisor is positive on every wall curve; "
            "Fano iff -K is)", [
        ("walls", rep.n_walls),
        ("standard_walls", rep.n_standard_walls),
        ("projective", rep.projective),
        ("ample_divisor", rep.ample_divisor),
        ("fano", rep.fano),
        ("pseudo_index", rep.iota),
    ])


def collections_section(collections):
    items = [("primitive_collections", len(collections))]
    for i, pc in enumerate(collections):
        k = f"primitive_collection.{i}"
        items += [
            (f"{k}.rays", pc.ray_ids),
            (f"{k}.sum", pc.sum),
            (f"{k}.relation_cone", pc.relation_cone),
            (f"{k}.relation_coeffs", pc.relation_coeffs),
            (f"{k}.degree", pc.degree),
        ]
    return ("Primitive collections (minimal non-faces; sum = positive combination on "
            "the cone containing it, degree = order - coefficient sum)", items)


def components_section(components):
    items = [("minimal_components", len(components))]
    for i, mc in enumerate(components):
        k = f"minimal_component.{i}"
        items += [
            (f"{k}.rays", mc.collection.ray_ids),
            (f"{k}.order", mc.order),
            (f"{k}.degree", mc.degree),
            (f"{k}.vmrt_dim", mc.vmrt_dim),
            (f"{k}.locus_dim", mc.locus_dim),
        ]
    return ("Minimal rational components (one per primitive collection summing to zero; "
            "degree k, VMRT a linear P^(k-2), locus P^(k-1))", items)


def bounds_section(b: BoundsReport):
    counts = " ".join(f"{p}:{k}" for p, k in b.counts.items()) or "none"
    return ("Counting bounds (i) sum n_p (p+2) <= n + rho, (ii) p + q <= n - 2, "
            "(iii) p >= (n-1)/2 => n_p <= 1", [
        ("bounds.n_p", counts),
        ("bounds.i_lhs", b.lhs),
        ("bounds.i_rhs", b.rhs),
        ("bounds.i_equality", b.equality),
        ("bounds.i_ok", b.i_ok),
        ("bounds.ii_ok", b.ii_ok),
        ("bounds.iii_ok", b.iii_ok),
        ("bounds.alarm", not b.ok),
        ("bounds.violations", "; ".join(b.violations) or "none"),
    ])


def conjecture_section(c: ConjectureReport):
    items = [("conjecture.applicable", c.applicable)]
    for i, cc in enumerate(c.per_component):
        k = f"conjecture.component.{i}"
        items += [
            (f"{k}.rays", cc.ray_ids),
            (f"{k}.p", cc.p),
            (f"{k}.lhs", cc.lhs),
            (f"{k}.rhs", cc.rhs),
            (f"{k}.ok", cc.ok),
            (f"{k}.equality", cc.equality),
        ]
    items += [
        ("conjecture.equality", c.equality),
        ("conjecture.iota", c.iota),
        ("conjecture.mukai_rho_ok", c.mukai_rho_ok),
        ("conjecture.mukai_iota_ok", c.mukai_iota_ok),
        ("counterexample_candidate", c.counterexample_candidate),
    ]
    return ("Conjectural bound rho (p+1) <= n (n+1)/2 for Fano n-folds, n >= 3; "
            "Mukai-type bounds rho <= 2n and rho (iota-1) <= n", items)


def classification_section(d: DegNClassification):
    return ("Fano n-folds (n >= 3) with a minimal component of degree n are "
            "P^(n-1) x P^1, P(O^(n-1) + O(1)), or the blow-up of the product along a P^(n-2)", [
        ("classification", d.kind.value),
        ("classification.reason", d.reason or "none"),
        ("classification.collection", d.collection or None),
        ("classification.rho", d.rho),
        ("classification.positive_side", d.positive_side or None),
        ("classification.negative_side", d.negative_side or None),
        ("classification.relations", "; ".join(d.relations) or "none"),
        ("classification.alarms", "; ".join(d.alarms) or "none"),
    ])


def status_section(rep: AnalysisReport):
    return ("Section status", [(f"status.{k}", v) for k, v in rep.status.items()])


def report_sections(rep: AnalysisReport):
    out = [fan_section(rep), curves_section(rep),
           collections_section(rep.collections), components_section(rep.components)]
    if rep.bounds is not None:
        out.append(bounds_section(rep.bounds))
    if rep.conjecture is not None:
        out.append(conjecture_section(rep.conjecture))
    if rep.classification is not None:
        out.append(classification_section(rep.classification))
    out.append(status_section(rep))
    return out


def validation_section(report: ValidationReport):
    items = [
        ("smooth", report.smooth_ok),
        ("fan_axioms", report.axioms_ok),
        ("complete", report.complete_ok),
        ("failures", len(report.failures)),
    ]
    for i, f in enumerate(report.failures):
        items.append((f"failure.{i}", f"{f.kind} {fmt(f.indices)} {f.message}"))
    return ("Validation (every maximal cone unimodular, cones meet in common faces, "
            "every wall in exactly two maximal cones)", items)


def render(sections, form: str = "human") -> str:
    lines = []
    for heading, items in sections:
        if form == "human":
            if lines:
                lines.append("")
            lines.append(f"[{heading}]")
            lines.extend(f"  {k} = {fmt(v)}" for k, v in items)
        else:
            lines.extend(f"{k} = {fmt(v)}" for k, v in items)
    return "\n".join(lines) + "\n"
