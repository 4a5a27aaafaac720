"""Null-homotopy decisions and the triangle axioms."""

import random

import pytest

from monocat.category import (MonMorphism, compose, decompose, direct_sum,
                              identity_morphism, make_object, rank_one,
                              zero_morphism)
from monocat.errors import (InvalidWitness, NotExactTriangle,
                            SquaresNotHomotopyCommuting)
from monocat.homotopy import (HomotopyWitness, Triangle, complete_square, cone,
                              cone_maps, factor_through_projective, homotopic,
                              is_iso_in_homotopy, null_homotopy,
                              null_morphism_from_data, octahedron, rotate,
                              stable_hom, standard_triangle, suspend,
                              suspend_morphism, triangle_composite_witnesses,
                              witness_holds)
from monocat.linalg import mat, zeros
from monocat.rings import RingCtx
from monocat.sampling import (random_morphism, random_null_homotopic,
                              random_object)
from oracle_helpers import exhaustive_iso_search, exhaustive_null_homotopy

Z2 = RingCtx.int_local(2, 2)
Z2_1 = RingCtx.int_local(2, 1)
Z2_3 = RingCtx.int_local(2, 3)


def test_identity_of_nonprojective_is_not_null():
    f = rank_one(Z2, 1)
    assert null_homotopy(identity_morphism(f)) is None


def test_identity_of_projective_is_null():
    # when s = t the object is projective, so its identity is null-homotopic
    f = rank_one(Z2_1, 1)
    w = null_homotopy(identity_morphism(f))
    assert w is not None
    assert w.s0.at(0, 0) == 0 and w.s1.at(0, 0) == 1


def test_zero_morphism_witness():
    f = rank_one(Z2, 1)
    w = null_homotopy(zero_morphism(f, f))
    assert w is not None
    assert w.s0.is_zero() and w.s1.is_zero()


def test_null_homotopy_matches_exhaustive_search():
    rng = random.Random(41)
    for trial in range(60):
        t = rng.choice([1, 2, 3])
        ctx = RingCtx.int_local(2, t)
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        psi = random_morphism(src, dst, rng)
        got = null_homotopy(psi)
        want = exhaustive_null_homotopy(psi)
        assert (got is not None) == want
        if got is not None:
            assert witness_holds(psi, got)


def test_generated_null_morphisms_are_detected():
    rng = random.Random(17)
    for trial in range(40):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([1, 2, 3]))
        src = random_object(ctx, rng, 3)
        dst = random_object(ctx, rng, 3)
        psi, w = random_null_homotopic(src, dst, rng)
        assert witness_holds(psi, w)
        assert null_homotopy(psi) is not None


def test_witness_validation_rejects_garbage():
    f = rank_one(Z2, 1)
    psi = identity_morphism(f)
    bad = HomotopyWitness(zeros(Z2, 1, 1), zeros(Z2, 1, 1))
    assert not witness_holds(psi, bad)
    with pytest.raises(InvalidWitness):
        factor_through_projective(psi, bad)


def test_factor_through_projective_round_trip():
    rng = random.Random(29)
    for trial in range(30):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([2, 3]))
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        psi, w = random_null_homotopic(src, dst, rng)
        alpha, beta = factor_through_projective(psi, w)
        assert alpha.dst.is_projective()
        back = compose(beta, alpha)
        assert (back.psi1 - psi.psi1).is_zero()
        assert (back.psi0 - psi.psi0).is_zero()


def test_suspension_laws():
    rng = random.Random(4)
    for trial in range(30):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([1, 2, 3]))
        obj = random_object(ctx, rng, 3)
        s = suspend(obj)
        assert suspend(s).mat.entries == obj.mat.entries
        assert s.svals == tuple(sorted(ctx.t - e for e in obj.svals))
    assert suspend(rank_one(Z2, 1)).mat.entries == mat(Z2, [[-2]]).entries


def test_suspend_morphism_components_swap():
    f = rank_one(Z2, 1)
    idm = identity_morphism(f)
    sm = suspend_morphism(idm)
    assert sm.src == suspend(f) and sm.dst == suspend(f)
    assert sm.psi1.entries == idm.psi0.entries


def test_cone_of_identity_frozen_example():
    f = rank_one(Z2, 1)
    c = cone(identity_morphism(f))
    assert c.mat.entries == mat(Z2, [[2, 1], [0, -2]]).entries
    assert c.is_projective()


def test_partner_of_cone_formula():
    rng = random.Random(12)
    for trial in range(20):
        ctx = RingCtx.int_local(2, rng.choice([2, 3]))
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        psi = random_morphism(src, dst, rng)
        c = cone(psi)
        # omega c^{-1} is the block matrix [[partner(dst), psi1], [0, -src]]
        from monocat.linalg import block
        expect = block(ctx, [[dst.partner_mat, psi.psi1],
                             [None, -src.mat]])
        assert c.partner_mat.entries == expect.entries


def test_tr1_cone_of_identity_projective():
    rng = random.Random(77)
    for trial in range(40):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([1, 2, 3, 4]))
        obj = random_object(ctx, rng, 3)
        assert cone(identity_morphism(obj)).is_projective()


def test_standard_triangle_composites_vanish():
    rng = random.Random(53)
    for trial in range(25):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([1, 2, 3]))
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        tri = standard_triangle(random_morphism(src, dst, rng))
        ws = triangle_composite_witnesses(tri)
        assert ws is not None


def test_cone_of_zero_splits():
    src = rank_one(Z2, 1)
    dst = rank_one(Z2, 2)
    c = cone(zero_morphism(src, dst))
    assert sorted(decompose(c)) == sorted(
        decompose(dst) + decompose(suspend(src)))


def test_tr2_cone_of_inclusion_decomposition():
    rng = random.Random(10)
    for trial in range(25):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([1, 2, 3]))
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        psi = random_morphism(src, dst, rng)
        c, inc, prj = cone_maps(psi)
        c_of_inc = cone(inc)
        want = sorted([0] * dst.n + [ctx.t] * dst.n
                      + [ctx.t - s for s in src.svals])
        assert sorted(decompose(c_of_inc)) == want


def test_rotate_standard_triangle():
    rng = random.Random(31)
    for trial in range(15):
        ctx = RingCtx.int_local(2, rng.choice([2, 3]))
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        tri = standard_triangle(random_morphism(src, dst, rng))
        rot, iso = rotate(tri)
        assert rot.a == tri.b and rot.c == suspend(tri.a)
        assert is_iso_in_homotopy(iso)
        assert triangle_composite_witnesses(rot) is not None


def test_triple_rotation_matches_suspension_objectwise():
    rng = random.Random(59)
    for trial in range(8):
        ctx = RingCtx.int_local(2, 2)
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        tri = standard_triangle(random_morphism(src, dst, rng))
        r = tri
        for _ in range(3):
            r, _ = rotate(r)
        assert decompose(r.a) == decompose(suspend(tri.a))
        assert decompose(r.b) == decompose(suspend(tri.b))
        assert decompose(r.c) == decompose(suspend(tri.c))


def test_rotate_rejects_non_triangle():
    a = rank_one(Z2, 1)
    b = rank_one(Z2, 1)
    # u = v = id, w = 0: the composite v.u = id is not null-homotopic
    bad = Triangle(a, b, b, identity_morphism(a), identity_morphism(b),
                   zero_morphism(b, suspend(a)))
    with pytest.raises(NotExactTriangle):
        rotate(bad)


def test_complete_square_strict_and_homotopy_cases():
    rng = random.Random((61))
    for trial in range(20):
        ctx = RingCtx.int_local(rng.choice([2, 3]), rng.choice([2, 3]))
        a = random_object(ctx, rng, 2)
        b = random_object(ctx, rng, 2)
        b2 = random_object(ctx, rng, 2)
        left = random_morphism(a, a, rng)
        top = random_morphism(a, b, rng)
        bottom = random_morphism(a, b2, rng)
        # build the right comparison as "strict completion plus noise":
        # right . top must agree with bottom . left up to homotopy, so take
        # top = identity-shaped data instead: use square with top arbitrary
        # and right built from a homotopy perturbation of a strict solution.
        # Here: bottom . left ~ right . top with top = id_a.
        ident = identity_morphism(a)
        nu, _ = random_null_homotopic(a, b2, rng)
        right = compose(bottom, left) + nu
        tri, tri2, eta = complete_square(ident, bottom, left, right)
        # both connecting squares must commute strictly
        _, inc1, prj1 = cone_maps(ident)
        _, inc2, prj2 = cone_maps(bottom)
        lhs = compose(eta, inc1)
        rhs = compose(inc2, right)
        assert (lhs.psi1 - rhs.psi1).is_zero()
        assert (lhs.psi0 - rhs.psi0).is_zero()
        lhs2 = compose(prj2, eta)
        rhs2 = compose(suspend_morphism(left), prj1)
        assert (lhs2.psi1 - rhs2.psi1).is_zero()
        assert (lhs2.psi0 - rhs2.psi0).is_zero()


def test_complete_square_rejects_non_commuting():
    a = rank_one(Z2, 1)
    ident = identity_morphism(a)
    # square with left = id, right = 0 around top = bottom = id does not
    # commute up to homotopy (difference is the identity, not null)
    with pytest.raises(SquaresNotHomotopyCommuting):
        complete_square(ident, ident, ident, zero_morphism(a, a))


def test_octahedron_random_pairs():
    rng = random.Random(67)
    for trial in range(12):
        ctx = RingCtx.int_local(2, rng.choice([2, 3]))
        x = random_object(ctx, rng, 2)
        y = random_object(ctx, rng, 2)
        z = random_object(ctx, rng, 2)
        u = random_morphism(x, y, rng)
        v = random_morphism(y, z, rng)
        data = octahedron(u, v)
        assert is_iso_in_homotopy(data.comparison)
        assert triangle_composite_witnesses(data.bottom) is not None


def test_octahedron_identity_pair():
    f = rank_one(Z2, 1)
    data = octahedron(identity_morphism(f), identity_morphism(f))
    assert data.bottom.a.is_projective()
    assert data.bottom.b.is_projective()


def test_is_iso_matches_witness_search():
    rng = random.Random(71)
    for trial in range(25):
        t = rng.choice([1, 2])
        ctx = RingCtx.int_local(2, t)
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        psi = random_morphism(src, dst, rng)
        assert is_iso_in_homotopy(psi) == exhaustive_iso_search(psi)


def test_iso_criterion_basics():
    f = rank_one(Z2, 1)
    assert is_iso_in_homotopy(identity_morphism(f))
    assert not is_iso_in_homotopy(zero_morphism(f, f))


def test_stable_hom_examples():
    f = rank_one(Z2, 1)
    assert stable_hom(f, f).lengths == (1,)
    assert stable_hom(f, rank_one(Z2, 0)).lengths == ()
    assert stable_hom(f, rank_one(Z2, 2)).lengths == ()
    ctx4 = RingCtx.int_local(2, 4)
    src = direct_sum(rank_one(ctx4, 1), rank_one(ctx4, 2))
    dst = rank_one(ctx4, 2)
    assert stable_hom(src, dst).lengths == (1, 2)


def test_stable_hom_counts_homotopy_classes():
    # the number of classes |Hom/~| equals the product of cyclic orders
    rng = random.Random(83)
    for trial in range(10):
        t = rng.choice([1, 2])
        ctx = RingCtx.int_local(2, t)
        src = random_object(ctx, rng, 2)
        dst = random_object(ctx, rng, 2)
        module = stable_hom(src, dst)
        expect = 1
        for ell in module.lengths:
            expect *= 2 ** ell
        from monocat.sampling import all_morphism_params, morphism_from_params
        seen = []
        for params in all_morphism_params(src, dst):
            cand = morphism_from_params(src, dst, params)
            if not any(homotopic(cand, m) for m in seen):
                seen.append(cand)
        assert len(seen) == expect


def test_cone_projective_endpoints():
    rng = random.Random(90)
    for trial in range(10):
        ctx = RingCtx.int_local(2, rng.choice([1, 2, 3]))
        exps_a = [rng.choice([0, ctx.t]) for _ in range(2)]
        exps_b = [rng.choice([0, ctx.t]) for _ in range(2)]
        from monocat.linalg import diag_pi, random_unimodular
        from monocat.category import MonObject
        a = MonObject(ctx, random_unimodular(2, rng.randrange(999), ctx)
                      @ diag_pi(ctx, exps_a))
        b = MonObject(ctx, diag_pi(ctx, exps_b)
                      @ random_unimodular(2, rng.randrange(999), ctx))
        psi = random_morphism(a, b, rng)
        assert cone(psi).is_projective()
