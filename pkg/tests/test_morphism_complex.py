import random
from fractions import Fraction as Q

import pytest

from homleibniz.cochain import random_cochain
from homleibniz.fixtures import (
    abelian_algebra,
    fixture_morphisms,
    identity_morphism,
    leibniz_ff_e,
    vanishing_pair,
)
from homleibniz.linalg import kernel_basis
from homleibniz.morphism_complex import (
    HypothesisNotMet,
    MorphismCochain,
    MorphismComplex,
)


def random_morphism_cochain(mc, p, rng):
    return mc.from_coords(
        p, [Q(rng.randint(-3, 3), rng.choice([1, 1, 2])) for _ in range(mc.total_dim(p))]
    )


def test_abelian_identity_degree_one():
    mc = MorphismComplex(identity_morphism(abelian_algebra(2, 2)))
    assert mc.total_dim(1) == 8
    assert mc.cohomology_dim(1) == 4


def test_ff_e_identity_dims():
    mc = MorphismComplex(identity_morphism(leibniz_ff_e()))
    assert mc.space_dims(1) == (4, 4, 0)
    assert mc.space_dims(2) == (8, 8, 4)
    assert mc.cohomology_dim(1) == 2
    assert mc.cohomology_dim(2) == 1


def test_differential_matches_blockwise_definition():
    rng = random.Random(5)
    for phi in fixture_morphisms():
        mc = MorphismComplex(phi)
        for p in (1, 2):
            c = random_morphism_cochain(mc, p, rng)
            dc = mc.differential(c)
            assert mc.coords(dc) == mc.d_matrix(p).matvec(mc.coords(c))


def test_d_squared_zero_on_random_cochains():
    rng = random.Random(6)
    for phi in fixture_morphisms():
        mc = MorphismComplex(phi)
        for p in (1, 2):
            for _ in range(3):
                c = random_morphism_cochain(mc, p, rng)
                assert mc.differential(mc.differential(c)).is_zero()


def test_degree_one_has_no_w_component():
    mc = MorphismComplex(identity_morphism(leibniz_ff_e()))
    c = mc.zero(1)
    assert c.w is None
    with pytest.raises(ValueError):
        MorphismCochain(1, c.u, c.v, mc.mixed.space(1).zero())


def test_vanishing_pair_satisfies_the_hypotheses_nonvacuously():
    mc = MorphismComplex(vanishing_pair())
    assert mc.space_dims(2) == (1, 1, 1)
    assert mc.left.cohomology_dim(2) == 0
    assert mc.right.cohomology_dim(2) == 0
    assert mc.mixed.cohomology_dim(1) == 0
    assert mc.cohomology_dim(2) == 0
    # the conclusion is not vacuous: there are nonzero cocycles to transfer
    assert kernel_basis(mc.d_matrix(2)).dim == 2


def test_vanishing_transfer_witness_on_spanning_cocycles():
    mc = MorphismComplex(vanishing_pair())
    for vec in kernel_basis(mc.d_matrix(2)).vectors:
        c = mc.from_coords(2, vec)
        w = mc.vanishing_transfer_witness(2, c)
        assert mc.coords(mc.differential(w)) == mc.coords(c)


def test_vanishing_transfer_rejects_non_cocycles():
    mc = MorphismComplex(vanishing_pair())
    rng = random.Random(7)
    for _ in range(20):
        c = random_morphism_cochain(mc, 2, rng)
        if any(x != 0 for x in mc.d_matrix(2).matvec(mc.coords(c))):
            with pytest.raises(ValueError):
                mc.vanishing_transfer_witness(2, c)
            return
    raise AssertionError("no non-cocycle found")


def test_vanishing_transfer_reports_failed_hypotheses():
    mc = MorphismComplex(identity_morphism(leibniz_ff_e()))
    assert mc.left.cohomology_dim(2) == 1  # hypothesis fails here
    c = mc.from_coords(2, kernel_basis(mc.d_matrix(2)).vectors[0])
    with pytest.raises(HypothesisNotMet):
        mc.vanishing_transfer_witness(2, c)


def test_push_pull_land_in_mixed_space():
    rng = random.Random(8)
    for phi in fixture_morphisms():
        mc = MorphismComplex(phi)
        for _ in range(3):
            u = random_cochain(mc.left.space(1), rng)
            v = random_cochain(mc.right.space(1), rng)
            assert mc.mixed.space(1).contains(mc.push(u).coeffs)
            assert mc.mixed.space(1).contains(mc.pull(v).coeffs)
