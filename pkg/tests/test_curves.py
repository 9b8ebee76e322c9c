from itertools import combinations

import pytest

from toricmrc.curves import (ample_divisor, is_fano, is_projective, minimal_components,
                             primitive_collections, primitive_relation, projectivity_system,
                             pseudo_index, wall_curves)
from toricmrc.errors import NotFano, NotPrimitive
from toricmrc.fan import builtin_fan, is_cone, product, projective_space
from toricmrc.lattice import add, dot, scale

from oracles import minimal_non_faces

E = {i + 1: i for i in range(8)}  # oda labels e1..e7 -> zero-based ids


def p1xp1():
    return product(projective_space(1), projective_space(1))


def wall(fan, ids):
    return next(w for w in wall_curves(fan) if w.wall.ray_ids == tuple(sorted(ids)))


def test_p2_single_collection():
    (pc,) = primitive_collections(projective_space(2))
    assert pc.ray_ids == (0, 1, 2) and pc.sum == (0, 0) and pc.degree == 3
    assert pc.relation_cone == () and pc.relation_coeffs == ()


def test_p1xp1_collections():
    pcs = primitive_collections(p1xp1())
    assert [p.ray_ids for p in pcs] == [(0, 1), (2, 3)]
    assert all(p.is_zero_sum and p.degree == 2 for p in pcs)


def test_p1_degenerate_case():
    fan = projective_space(1)
    (pc,) = primitive_collections(fan)
    assert pc.order == 2 and pc.degree == 2
    (wc,) = wall_curves(fan)
    assert wc.wall.ray_ids == () and wc.anticanonical_degree == 2
    assert pseudo_index(fan) == 2


def test_oda_collections_per_example():
    ids = {p.ray_ids for p in primitive_collections(builtin_fan("oda_3fold"))}
    assert (E[2], E[5]) in ids
    assert (E[1], E[2], E[5]) not in ids


def test_relation_split_bundle_2():
    fan = builtin_fan("split_bundle", 2)  # e1, e2, -e1+e2, -e2
    pc = primitive_relation(fan, {0, 2})
    assert pc.sum == (0, 1) and pc.relation_cone == (1,) and pc.relation_coeffs == (1,)
    assert pc.degree == 1
    assert is_fano(fan)


def test_relation_p3_and_hirzebruch_2():
    assert primitive_relation(projective_space(3), range(4)).degree == 4
    f2 = builtin_fan("hirzebruch", 2)
    pc = primitive_relation(f2, {0, 2})
    assert pc.sum == (0, 2) and pc.relation_coeffs == (2,) and pc.degree == 0


def test_relation_rejects_non_primitive():
    with pytest.raises(NotPrimitive):
        primitive_relation(builtin_fan("oda_3fold"), {E[1], E[2], E[5]})
    with pytest.raises(NotPrimitive):
        primitive_relation(projective_space(2), {0})


@pytest.mark.parametrize("n", range(1, 6))
def test_projective_space_component(n):
    (mc,) = minimal_components(projective_space(n))
    assert mc.degree == n + 1 and mc.vmrt_dim == n - 1 and mc.locus_dim == n


def test_oda_components():
    assert minimal_components(builtin_fan("oda_3fold")) == ()
    (mc,) = minimal_components(builtin_fan("oda_blowup_e3e7"))
    assert mc.order == 2 and mc.vmrt_dim == 0


def test_wall_curves_examples():
    wc = wall(projective_space(2), (0,))
    assert wc.relation_coeffs == (1,) and wc.anticanonical_degree == 3

    oda = builtin_fan("oda_3fold")
    wc = wall(oda, (E[1], E[3]))
    assert {wc.wall.left_ray, wc.wall.right_ray} == {E[2], E[5]}
    assert wc.relation_coeffs == (1, 0) and wc.splitting_type == (1, 0)
    assert wc.is_standard and wc.anticanonical_degree == 3

    wc = wall(builtin_fan("split_bundle", 2), (0,))
    assert wc.anticanonical_degree == 2 and wc.splitting_type == (0,)


def test_fano_examples():
    for n in range(1, 5):
        assert is_fano(projective_space(n))
    assert not is_fano(builtin_fan("hirzebruch", 2))
    assert not is_fano(builtin_fan("oda_3fold"))


def test_projectivity_examples():
    assert is_projective(projective_space(2))
    assert not is_projective(builtin_fan("oda_3fold"))
    assert not is_projective(builtin_fan("oda_blowup_e1e3"))
    assert is_projective(builtin_fan("oda_blowup_e3e7"))


def test_oda_projectivity_system_is_seven_variables_and_infeasible():
    system = projectivity_system(builtin_fan("oda_3fold"))
    assert system.num_vars == 7 and len(system.rows) == 15
    assert ample_divisor(builtin_fan("oda_3fold")) is None


def test_ample_witness_positive_on_walls():
    fan = builtin_fan("oda_blowup_e3e7")
    d = ample_divisor(fan)
    assert projectivity_system(fan).satisfied_by(d)


@pytest.mark.parametrize("fan, iota", [
    (projective_space(2), 3), (projective_space(4), 5), (p1xp1(), 2),
    (builtin_fan("del_pezzo_s3"), 1),
])
def test_pseudo_index(fan, iota):
    assert pseudo_index(fan) == iota


def test_pseudo_index_needs_fano():
    with pytest.raises(NotFano):
        pseudo_index(builtin_fan("hirzebruch", 2))


# -- invariants ---------------------------------------------------------------

def _fans(builtins, fuzz_fans):
    return builtins + fuzz_fans


def test_minimal_non_face_property(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        for pc in primitive_collections(fan):
            assert not is_cone(fan, pc.ray_ids)
            assert all(is_cone(fan, s) for s in combinations(pc.ray_ids, pc.order - 1))


def test_relation_identity(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        for pc in primitive_collections(fan):
            rhs = [0] * fan.dim
            for a, r in zip(pc.relation_coeffs, pc.relation_cone):
                assert a > 0 and isinstance(a, int)
                rhs = add(rhs, scale(a, fan.rays[r]))
            assert add(*fan.vectors(pc.ray_ids)) == tuple(rhs) == pc.sum
            assert pc.degree == pc.order - sum(pc.relation_coeffs)


def test_zero_sum_collections_disjoint(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        comps = minimal_components(fan)
        for a, b in combinations(comps, 2):
            assert not set(a.collection.ray_ids) & set(b.collection.ray_ids)


def test_projective_implies_component(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        if is_projective(fan):
            assert minimal_components(fan)


def test_fano_criteria_agree(builtins, fuzz_fans):
    # is_fano raises CriterionMismatch on disagreement
    for fan in _fans(builtins, fuzz_fans):
        walls_say = all(w.anticanonical_degree > 0 for w in wall_curves(fan)) and is_projective(fan)
        assert is_fano(fan) == walls_say == all(p.degree > 0 for p in primitive_collections(fan))


def test_two_order_two_degree_one_lemma(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        if not is_fano(fan):
            continue
        deg1 = [p for p in primitive_collections(fan) if p.order == 2 and p.degree == 1]
        for x in range(fan.n_rays):
            mine = [p for p in deg1 if x in p.ray_ids]
            assert len(mine) <= 2
            if len(mine) == 2:
                (y,) = set(mine[0].ray_ids) - {x}
                (w,) = set(mine[1].ray_ids) - {x}
                (z,) = mine[0].relation_cone
                (v,) = mine[1].relation_cone
                X, Y, W = fan.rays[x], fan.rays[y], fan.rays[w]
                assert fan.rays[z] == add(X, Y) and W == scale(-1, add(X, Y))
                assert fan.rays[v] == scale(-1, Y)


def test_wall_relations_hold_with_unit_border_coefficients(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        for wc in wall_curves(fan):
            w = wc.wall
            total = add(fan.rays[w.left_ray], fan.rays[w.right_ray],
                        *[scale(a, fan.rays[r]) for a, r in zip(wc.relation_coeffs, w.ray_ids)])
            assert not any(total)
            assert w.left_ray != w.right_ray
            assert wc.is_standard == all(a in (0, 1) for a in wc.relation_coeffs)


def test_collections_match_exhaustive_oracle(builtins, fuzz_fans):
    checked = 0
    for fan in _fans(builtins, fuzz_fans):
        if fan.n_rays <= 12:
            got = [p.ray_ids for p in primitive_collections(fan)]
            assert got == minimal_non_faces(fan.n_rays, fan.max_cones)
            checked += 1
    assert checked > 20


def test_pseudo_index_is_min_wall_degree_and_positive(builtins):
    for fan in builtins:
        if is_fano(fan):
            assert pseudo_index(fan) == min(w.anticanonical_degree for w in wall_curves(fan)) >= 1


def test_ample_divisor_pairs_positively(builtins, fuzz_fans):
    for fan in _fans(builtins, fuzz_fans):
        d = ample_divisor(fan)
        if d is not None:
            for row in projectivity_system(fan).rows:
                assert dot(row, d) > 0
