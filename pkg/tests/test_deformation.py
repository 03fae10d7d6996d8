import random
from collections import Counter
from fractions import Fraction as Q

import pytest

from homleibniz.cochain import ConstraintViolation
from homleibniz.deformation import (
    MorphismDeformation,
    TruncatedDeformation,
    _mixed_index_tuples,
    algebra_order_residual,
    ambient_to_matrix,
    ambient_to_multimap,
    infinitesimal,
    is_valid_through,
    matrix_to_ambient,
    morphism_order_residual,
    multimap_to_ambient,
    multiplicativity_violations,
    obstruction,
    regrouping_identity_check,
    solve_extension,
    sparse_to_ambient,
)
from homleibniz.fixtures import (
    abelian_algebra,
    aff1,
    identity_morphism,
    leibniz_ff_e,
    ternary_fff_e,
    twisted_ff_e,
)
from homleibniz.linalg import Matrix
from homleibniz.morphism_complex import MorphismComplex, pull_tensor, push_tensor


def rand_mm(a, rng, span=2):
    mm = {}
    for key in a.basis_tuples():
        ent = {k: Q(rng.randint(-span, span)) for k in range(a.dim)}
        ent = {k: v for k, v in ent.items() if v}
        if ent:
            mm[key] = ent
    return mm


def abelian_ff_e_deformation():
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    ff_e = {(1, 1): {0: Q(1)}}
    return MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [ff_e]),
        TruncatedDeformation.from_higher(ab, [dict(ff_e)]),
        [phi.matrix, Matrix.zeros(2, 2)],
    )


# ---------------------------------------------------------------------------
# residuals


def test_trivial_deformation_has_zero_residuals():
    for a in (leibniz_ff_e(), aff1(), ternary_fff_e()):
        d = TruncatedDeformation.trivial(a, 3)
        for l in range(4):
            assert algebra_order_residual(d, l) == {}


def test_order_zero_residual_is_the_defining_identity():
    from homleibniz.algebra import HomNaryAlgebra

    broken = HomNaryAlgebra(
        2, 2, ("e", "f"), {(0, 0): {1: Q(1)}, (1, 1): {0: Q(1)}}, Matrix.identity(2)
    )
    assert algebra_order_residual(TruncatedDeformation.trivial(broken), 0) != {}
    assert algebra_order_residual(TruncatedDeformation.trivial(leibniz_ff_e()), 0) == {}


def test_abelian_ff_e_deformation_valid_through_order_one():
    md = abelian_ff_e_deformation()
    assert is_valid_through(md, 1)


def test_mismatched_eta_fails_the_morphism_equation():
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [{(1, 1): {0: Q(1)}}]),
        TruncatedDeformation.trivial(ab, 1),
        [phi.matrix, Matrix.zeros(2, 2)],
    )
    r1, r2, r3 = morphism_order_residual(md, 1)
    assert not r1 and not r2
    assert sorted(r3) == [(1, 1)]


def test_constructor_guards():
    a = leibniz_ff_e()
    with pytest.raises(ValueError):
        TruncatedDeformation(a, [{}])  # order-0 must equal the bracket
    phi = identity_morphism(a)
    with pytest.raises(ValueError):
        MorphismDeformation(
            phi,
            TruncatedDeformation.trivial(a, 1),
            TruncatedDeformation.trivial(a, 2),
            [phi.matrix, Matrix.zeros(2, 2)],
        )


# ---------------------------------------------------------------------------
# regrouping identity


def test_regrouping_identity_on_random_invalid_coefficients():
    rng = random.Random(11)
    algebras = [leibniz_ff_e(), aff1(), twisted_ff_e(2), ternary_fff_e()]
    for trial in range(12):
        a = algebras[trial % len(algebras)]
        d = TruncatedDeformation.from_higher(
            a, [rand_mm(a, rng), rand_mm(a, rng), rand_mm(a, rng)]
        )
        for l in (1, 2, 3):
            assert regrouping_identity_check(d, l) == []


def test_regrouping_rejects_order_zero():
    with pytest.raises(ValueError):
        regrouping_identity_check(TruncatedDeformation.trivial(leibniz_ff_e()), 0)


# ---------------------------------------------------------------------------
# obstruction cochains


def test_trivial_obstruction_vanishes():
    md = MorphismDeformation.trivial(identity_morphism(leibniz_ff_e()), 2)
    for l in (1, 2, 3):
        assert obstruction(md, l).is_zero()


def test_obstruction_requires_validity_below():
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [{(1, 1): {0: Q(1)}}]),
        TruncatedDeformation.trivial(ab, 1),
        [phi.matrix, Matrix.zeros(2, 2)],
    )
    with pytest.raises(ValueError):
        obstruction(md, 2)


def test_primed_sum_set_excludes_order_l_and_counts_once():
    for n in (2, 3):
        for l in (2, 3):
            tuples = _mixed_index_tuples(l, n)
            counts = Counter(tuples)
            assert max(counts.values()) == 1
            for t in tuples:
                assert sum(t) == l
                assert t[0] != l and all(j != l for j in t[1:])


def test_three_sum_decomposition_double_counts_for_ternary():
    # binary: the decomposition agrees with the set reading
    for l in (2, 3):
        assert Counter(_mixed_index_tuples(l, 2, three_sum=True)) == Counter(
            _mixed_index_tuples(l, 2)
        )
    # ternary: tuples with two vanishing inner indices appear twice
    c = Counter(_mixed_index_tuples(2, 3, three_sum=True))
    assert c[(1, 1, 0, 0)] == 2
    assert set(Counter(_mixed_index_tuples(2, 3))) == set(c)


def test_residual_equals_differential_minus_obstruction():
    """The order-l equations are affine with linear part d and constant -F_l:

    res_xi = -(delta u - O1), res_eta = -(delta v - O2),
    res_phi = (push u - pull v - delta w) - O3.
    """
    rng = random.Random(13)
    # over an abelian base any (xi1, xi1, phi1) is valid at order 1, and a
    # non-Leibniz xi1 makes every component of F_2 nonzero
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    xi1 = rand_mm(ab, rng)
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [xi1]),
        TruncatedDeformation.from_higher(ab, [dict(xi1)]),
        [phi.matrix, Matrix(2, 2, [[1, 0], [0, -1]])],
    )
    assert is_valid_through(md, 1)
    L = phi.source
    n, dL = L.arity, L.dim
    mc = MorphismComplex(phi)
    f = obstruction(md, 2)
    fo1 = sparse_to_ambient(f.o1, 2 * n - 1, dL, dL)
    fo2 = sparse_to_ambient(f.o2, 2 * n - 1, dL, dL)
    fo3 = sparse_to_ambient(f.o3, n, dL, dL)
    assert any(fo1) and any(fo3)  # the instance actually exercises the signs
    for _ in range(5):
        xi, eta = rand_mm(L, rng), rand_mm(L, rng)
        w = Matrix(dL, dL, [[Q(rng.randint(-2, 2)) for _ in range(dL)] for _ in range(dL)])
        r1, r2, r3 = morphism_order_residual(md.extended(xi, eta, w), 2)
        u = multimap_to_ambient(xi, n, dL, dL)
        v = multimap_to_ambient(eta, n, dL, dL)
        wv = matrix_to_ambient(w)
        du = mc.left.delta_ambient(2, u)
        dv = mc.right.delta_ambient(2, v)
        third = [
            x - y - z
            for x, y, z in zip(
                push_tensor(phi, u, dL), pull_tensor(phi, 2, v), mc.mixed.delta_ambient(1, wv)
            )
        ]
        assert sparse_to_ambient(r1, 2 * n - 1, dL, dL) == [y - x for x, y in zip(du, fo1)]
        assert sparse_to_ambient(r2, 2 * n - 1, dL, dL) == [y - x for x, y in zip(dv, fo2)]
        assert sparse_to_ambient(r3, n, dL, dL) == [x - y for x, y in zip(third, fo3)]


# ---------------------------------------------------------------------------
# extension solver


def test_trivial_extension_returns_zeros():
    md = MorphismDeformation.trivial(identity_morphism(leibniz_ff_e()), 0)
    xi, eta, phi1 = solve_extension(md, 1)
    # the homogeneous system admits the canonical zero solution
    ext = md.extended(xi, eta, phi1)
    assert is_valid_through(ext, 1)


def test_abelian_ff_e_extends_to_any_order():
    md = abelian_ff_e_deformation()
    assert obstruction(md, 2).is_zero()
    ext = solve_extension(md, 2)
    assert ext is not None
    md2 = md.extended(*ext)
    ext3 = solve_extension(md2, 3)
    assert ext3 is not None
    assert is_valid_through(md2.extended(*ext3), 3)


def test_extension_verdicts_obstructed_instance():
    # a non-Leibniz order-1 bracket over the abelian base cannot extend:
    # the quadratic obstruction must be a coboundary, but delta = 0
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    xi1 = {(0, 1): {0: Q(1)}, (1, 1): {1: Q(1)}}
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [xi1]),
        TruncatedDeformation.from_higher(ab, [dict(xi1)]),
        [phi.matrix, Matrix.zeros(2, 2)],
    )
    assert is_valid_through(md, 1)
    assert not obstruction(md, 2).is_zero()
    assert solve_extension(md, 2) is None


def test_extension_requires_validity():
    ab = abelian_algebra(2, 2)
    phi = identity_morphism(ab)
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(ab, [{(1, 1): {0: Q(1)}}]),
        TruncatedDeformation.trivial(ab, 1),
        [phi.matrix, Matrix.zeros(2, 2)],
    )
    with pytest.raises(ValueError):
        solve_extension(md, 2)


def test_ambient_roundtrips():
    rng = random.Random(17)
    a = ternary_fff_e()
    mm = rand_mm(a, rng)
    vec = multimap_to_ambient(mm, 3, 2, 2)
    assert ambient_to_multimap(vec, 3, 2, 2) == mm
    m = Matrix(2, 3, [[Q(rng.randint(-3, 3)) for _ in range(3)] for _ in range(2)])
    assert ambient_to_matrix(matrix_to_ambient(m), 2, 3) == m


# ---------------------------------------------------------------------------
# infinitesimal


def test_infinitesimal_of_valid_deformation_is_a_cocycle():
    md = abelian_ff_e_deformation()
    c = infinitesimal(md)
    mc = MorphismComplex(md.phi)
    assert mc.differential(c).is_zero()


def test_infinitesimal_reports_twist_incompatibility():
    a = twisted_ff_e(2)
    phi = identity_morphism(a)
    # off-diagonal phi_1 cannot commute with diag(4, 2)
    md = MorphismDeformation(
        phi,
        TruncatedDeformation.trivial(a, 1),
        TruncatedDeformation.trivial(a, 1),
        [phi.matrix, Matrix(2, 2, [[0, 1], [0, 0]])],
    )
    assert is_valid_through(md, 1)
    with pytest.raises(ConstraintViolation):
        infinitesimal(md)


def test_multiplicativity_check_is_optional_and_explicit():
    a = twisted_ff_e(2)
    d = TruncatedDeformation.from_higher(a, [{(0, 1): {1: Q(1)}}])
    bad = multiplicativity_violations(d)
    assert bad and bad[0][0] == 1
    assert multiplicativity_violations(TruncatedDeformation.trivial(a, 2)) == []
