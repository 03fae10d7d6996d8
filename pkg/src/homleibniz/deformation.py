"""Formal one-parameter deformations and the obstruction calculus.

A truncated deformation of an algebra is a list of n-linear coefficient
tensors xi_0..xi_N with xi_0 the original bracket; a morphism deformation
additionally deforms the target bracket and the morphism itself.  Validity
is an order-by-order condition: the order-l structure equations must have
exactly zero residual for every l up to the truncation order.  Coefficients
above the stored order count as zero.

The order-l equations are affine-linear in the order-l coefficient triple;
their linear part is the degree-2 differential of the morphism complex and
their constant part is the obstruction cochain F_l = (O1, O2, O3).
solve_extension exploits exactly that structure, and every returned triple
is re-verified against the direct residual evaluators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (
    HomNaryAlgebra,
    Morphism,
    apply_multimap,
    cadd,
    csub,
    matrix_combo,
    normalize_multimap,
    _basis_combo,
)
from .cochain import DEFAULT_CONVENTION, ConstraintViolation, ambient_dim, _flat
from .linalg import Matrix, Q, solve
from .morphism_complex import MorphismCochain, MorphismComplex, pull_tensor, push_tensor


# ---------------------------------------------------------------------------
# truncated deformations of an algebra


@dataclass
class TruncatedDeformation:
    base: HomNaryAlgebra
    coeffs: list  # multilinear tensors, coeffs[0] = base bracket

    def __post_init__(self):
        self.coeffs = [normalize_multimap(c) for c in self.coeffs]
        if not self.coeffs:
            raise ValueError("a deformation needs at least the order-0 coefficient")
        if self.coeffs[0] != self.base.bracket:
            raise ValueError("order-0 coefficient must equal the base bracket")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def trivial(cls, base, order=0):
        return cls(base, [base.bracket] + [{}] * order)

    @classmethod
    def from_higher(cls, base, higher):
        return cls(base, [base.bracket] + list(higher))

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i <= self.order else {}


def _alpha_cols(a):
    return [a.alpha_combo(i) for i in range(a.dim)]


def algebra_order_residual(d: TruncatedDeformation, l):
    """LHS - RHS of the order-l structure equation on all basis tuples.

    Returns {(x_1..x_n, y_1..y_{n-1}): residual combo}, nonzero entries
    only; an empty dict means the order-l equation holds exactly.
    """
    a = d.base
    n = a.arity
    alpha = _alpha_cols(a)
    out = {}
    for tup in a.basis_tuples(2 * n - 1):
        xs, ys = tup[:n], tup[n:]
        ycols = [alpha[y] for y in ys]
        res = {}
        for i in range(l + 1):
            j = l - i
            fj = apply_multimap(d.coeff(j), [_basis_combo(x) for x in xs])
            if fj:
                for k, v in apply_multimap(d.coeff(i), [fj] + ycols).items():
                    cadd(res, k, v)
        for pos in range(n):
            for j in range(l + 1):
                k_ord = l - j
                inner = apply_multimap(
                    d.coeff(k_ord), [_basis_combo(xs[pos])] + [_basis_combo(y) for y in ys]
                )
                if not inner:
                    continue
                args = [alpha[x] for x in xs]
                args[pos] = inner
                for k, v in apply_multimap(d.coeff(j), args).items():
                    cadd(res, k, -v)
        if res:
            out[tup] = res
    return out


def regrouping_identity_check(d: TruncatedDeformation, l):
    """Verify the split of the order-l equation into its F_l-linear part
    and its quadratic lower-order part.

    Evaluates both sides of the regrouped display independently and checks
    that LHS - RHS equals the full order-l residual on every basis tuple.
    This is an algebraic identity, so it must hold whether or not the
    deformation is valid; a nonempty mismatch list indicates a
    transcription bug, not an invalid deformation.
    """
    if l < 1:
        raise ValueError("regrouping is stated for orders l >= 1")
    a = d.base
    n = a.arity
    alpha = _alpha_cols(a)
    full = algebra_order_residual(d, l)
    mismatches = []
    fl = d.coeff(l)
    for tup in a.basis_tuples(2 * n - 1):
        xs, ys = tup[:n], tup[n:]
        xcols = [_basis_combo(x) for x in xs]
        ycols = [alpha[y] for y in ys]

        lhs = {}
        # [F_l(X), abar(Y)]
        flx = apply_multimap(fl, xcols)
        for k, v in apply_multimap(a.bracket, [flx] + ycols).items():
            cadd(lhs, k, v)
        # F_l([X], abar(Y))
        bx = apply_multimap(a.bracket, xcols)
        for k, v in apply_multimap(fl, [bx] + ycols).items():
            cadd(lhs, k, v)
        for pos in range(n):
            inner_fl = apply_multimap(fl, [xcols[pos]] + [_basis_combo(y) for y in ys])
            args = [alpha[x] for x in xs]
            args[pos] = inner_fl
            for k, v in apply_multimap(a.bracket, args).items():
                cadd(lhs, k, -v)
            inner_b = apply_multimap(
                a.bracket, [xcols[pos]] + [_basis_combo(y) for y in ys]
            )
            args = [alpha[x] for x in xs]
            args[pos] = inner_b
            for k, v in apply_multimap(fl, args).items():
                cadd(lhs, k, -v)

        rhs = {}
        for pos in range(n):
            for j in range(1, l):
                k_ord = l - j
                inner = apply_multimap(
                    d.coeff(k_ord), [xcols[pos]] + [_basis_combo(y) for y in ys]
                )
                if not inner:
                    continue
                args = [alpha[x] for x in xs]
                args[pos] = inner
                for k, v in apply_multimap(d.coeff(j), args).items():
                    cadd(rhs, k, v)
        for i in range(1, l):
            j = l - i
            fj = apply_multimap(d.coeff(j), xcols)
            if fj:
                for k, v in apply_multimap(d.coeff(i), [fj] + ycols).items():
                    cadd(rhs, k, -v)

        if csub(csub(lhs, rhs), full.get(tup, {})):
            mismatches.append(tup)
    return mismatches


# ---------------------------------------------------------------------------
# morphism deformations


@dataclass
class MorphismDeformation:
    phi: Morphism
    xi: TruncatedDeformation
    eta: TruncatedDeformation
    phis: list  # matrices, phis[0] = phi.matrix

    def __post_init__(self):
        if self.xi.base != self.phi.source or self.eta.base != self.phi.target:
            raise ValueError("deformation bases must match the morphism endpoints")
        if not self.phis or self.phis[0] != self.phi.matrix:
            raise ValueError("order-0 morphism coefficient must equal phi")
        if not (self.xi.order == self.eta.order == len(self.phis) - 1):
            raise ValueError("xi, eta and phi coefficient lists must share one order")
        for m in self.phis:
            if m.rows != self.phi.target.dim or m.cols != self.phi.source.dim:
                raise ValueError("phi coefficient shape mismatch")

    @property
    def order(self):
        return len(self.phis) - 1

    @classmethod
    def trivial(cls, phi, order=0):
        zero = Matrix.zeros(phi.target.dim, phi.source.dim)
        return cls(
            phi,
            TruncatedDeformation.trivial(phi.source, order),
            TruncatedDeformation.trivial(phi.target, order),
            [phi.matrix] + [zero] * order,
        )

    def phi_coeff(self, i):
        if 0 <= i <= self.order:
            return self.phis[i]
        return Matrix.zeros(self.phi.target.dim, self.phi.source.dim)

    def phi_col(self, i, j):
        m = self.phi_coeff(i)
        return {r: m.entries[r][j] for r in range(m.rows) if m.entries[r][j]}

    def extended(self, xi_l, eta_l, phi_l):
        return MorphismDeformation(
            self.phi,
            TruncatedDeformation(self.xi.base, self.xi.coeffs + [xi_l]),
            TruncatedDeformation(self.eta.base, self.eta.coeffs + [eta_l]),
            self.phis + [phi_l],
        )


def _compositions(total, parts, bound):
    """All tuples of `parts` nonnegative integers <= bound summing to total."""
    return (
        t
        for t in itertools.product(range(min(total, bound) + 1), repeat=parts)
        if sum(t) == total
    )


def morphism_order_residual(md: MorphismDeformation, l):
    """Residuals of the three order-l equations: the two algebra equations
    and the morphism-compatibility equation, on all basis tuples."""
    res_xi = algebra_order_residual(md.xi, l)
    res_eta = algebra_order_residual(md.eta, l)
    src = md.phi.source
    n = src.arity
    res_phi = {}
    for X in src.basis_tuples():
        res = {}
        for i in range(l + 1):
            j = l - i
            xj = apply_multimap(md.xi.coeff(j), [_basis_combo(x) for x in X])
            if xj:
                for k, v in matrix_combo(md.phi_coeff(i), xj).items():
                    cadd(res, k, v)
        for i in range(l + 1):
            for js in _compositions(l - i, n, l - i):
                args = [md.phi_col(js[r], X[r]) for r in range(n)]
                for k, v in apply_multimap(md.eta.coeff(i), args).items():
                    cadd(res, k, -v)
        if res:
            res_phi[X] = res
    return res_xi, res_eta, res_phi


def is_valid_through(md: MorphismDeformation, order):
    for l in range(order + 1):
        a, b, c = morphism_order_residual(md, l)
        if a or b or c:
            return False
    return True


def multiplicativity_violations(d: TruncatedDeformation):
    """Keys where some coefficient fails alpha o F_i = F_i o alpha^{x n}.

    Whether deformation coefficients must commute with the twist is left
    open here; this check is optional and never folded into validity.
    """
    a = d.base
    out = []
    for i in range(1, d.order + 1):
        fi = d.coeff(i)
        for key in a.basis_tuples():
            lhs = matrix_combo(a.alpha, apply_multimap(fi, [_basis_combo(x) for x in key]))
            rhs = apply_multimap(fi, [a.alpha_combo(x) for x in key])
            if csub(lhs, rhs):
                out.append((i, key))
    return out


# ---------------------------------------------------------------------------
# obstruction cochains


@dataclass
class ObstructionCochain:
    """F_l = (O1, O2, O3): the constant part of the order-l equations.

    o1 and o2 are keyed by (x_1..x_n, y_1..y_{n-1}) basis tuples of the
    source and target; o3 by (x_1..x_n) tuples of the source.  Sparse:
    missing keys mean zero.
    """

    order: int
    o1: dict
    o2: dict
    o3: dict

    def is_zero(self):
        return not (self.o1 or self.o2 or self.o3)


def _quadratic_part(d: TruncatedDeformation, l):
    """sum_{i+j=l, i,j>0} [ xi_i(xi_j(X), abar Y) - sum_k xi_i(..., xi_j(x_k, Y), ...) ]."""
    a = d.base
    n = a.arity
    alpha = _alpha_cols(a)
    out = {}
    for tup in a.basis_tuples(2 * n - 1):
        xs, ys = tup[:n], tup[n:]
        ycols = [alpha[y] for y in ys]
        res = {}
        for i in range(1, l):
            j = l - i
            fj = apply_multimap(d.coeff(j), [_basis_combo(x) for x in xs])
            if fj:
                for k, v in apply_multimap(d.coeff(i), [fj] + ycols).items():
                    cadd(res, k, v)
            for pos in range(n):
                inner = apply_multimap(
                    d.coeff(j), [_basis_combo(xs[pos])] + [_basis_combo(y) for y in ys]
                )
                if not inner:
                    continue
                args = [alpha[x] for x in xs]
                args[pos] = inner
                for k, v in apply_multimap(d.coeff(i), args).items():
                    cadd(res, k, -v)
        if res:
            out[tup] = res
    return out


def _mixed_index_tuples(l, n, three_sum=False):
    """Index tuples (i, j_1..j_n) entering the primed sum of O3.

    The set reading: every tuple with i + sum(j) = l except those
    containing an order-l coefficient (i = l, or some j_r = l), each
    counted once.  A three-sum decomposition sometimes seen in the
    literature counts tuples with several vanishing j_r's once per
    vanishing coordinate (a discrepancy for arity >= 3); it is kept
    behind three_sum for comparison.
    """
    if not three_sum:
        seen = []
        for i in range(l):  # i = l excluded
            for js in _compositions(l - i, n, l):
                if any(j == l for j in js):
                    continue
                seen.append((i,) + js)
        return seen
    out = []
    # first partial sum: i = 1..l-1, one distinguished vanishing j_r
    for i in range(1, l):
        for r in range(n):
            for js in _compositions(l - i, n, l - i):
                if js[r] == 0:
                    out.append((i,) + js)
    # second: i = 0, all j_r <= l-1
    for js in _compositions(l, n, l - 1):
        out.append((0,) + js)
    # third: i = 1..l-1, all j_r > 0
    for i in range(1, l):
        for js in _compositions(l - i, n, l - i):
            if all(j > 0 for j in js):
                out.append((i,) + js)
    return out


def obstruction(md: MorphismDeformation, l, three_sum=False) -> ObstructionCochain:
    """The obstruction cochain F_l for extending an order-(l-1) deformation."""
    if l < 1:
        raise ValueError("obstruction order must be at least 1")
    if not is_valid_through(md, l - 1):
        raise ValueError(f"deformation is not valid through order {l - 1}")
    src = md.phi.source
    n = src.arity
    o1 = _quadratic_part(md.xi, l)
    o2 = _quadratic_part(md.eta, l)
    o3 = {}
    for X in src.basis_tuples():
        res = {}
        for idx in _mixed_index_tuples(l, n, three_sum):
            i, js = idx[0], idx[1:]
            args = [md.phi_col(js[r], X[r]) for r in range(n)]
            for k, v in apply_multimap(md.eta.coeff(i), args).items():
                cadd(res, k, v)
        for i in range(1, l):
            j = l - i
            xj = apply_multimap(md.xi.coeff(j), [_basis_combo(x) for x in X])
            if xj:
                for k, v in matrix_combo(md.phi_coeff(i), xj).items():
                    cadd(res, k, -v)
        if res:
            o3[X] = res
    return ObstructionCochain(l, o1, o2, o3)


# ---------------------------------------------------------------------------
# ambient packing helpers


def multimap_to_ambient(mm, in_dims, d_in, module_dim):
    vec = [Q(0)] * (d_in ** in_dims * module_dim)
    for key, entry in mm.items():
        base = _flat(key, d_in) * module_dim
        for k, v in entry.items():
            vec[base + k] = v
    return vec


def ambient_to_multimap(vec, in_dims, d_in, module_dim):
    mm = {}
    for pos, key in enumerate(itertools.product(range(d_in), repeat=in_dims)):
        entry = {}
        for k in range(module_dim):
            v = vec[pos * module_dim + k]
            if v:
                entry[k] = v
        if entry:
            mm[key] = entry
    return mm


def matrix_to_ambient(m: Matrix):
    vec = []
    for j in range(m.cols):
        vec.extend(m.entries[r][j] for r in range(m.rows))
    return vec


def ambient_to_matrix(vec, rows, cols):
    entries = [[vec[j * rows + r] for j in range(cols)] for r in range(rows)]
    return Matrix(rows, cols, entries)


def sparse_to_ambient(keyed, in_dims, d_in, module_dim):
    return multimap_to_ambient(keyed, in_dims, d_in, module_dim)


# ---------------------------------------------------------------------------
# the extension solver


def solve_extension(md: MorphismDeformation, l, convention=DEFAULT_CONVENTION):
    """Extend a deformation valid through l-1 by one order, or report it
    obstructed.

    The order-l equations are solved as d(xi_l, eta_l, phi_l) = F_l at the
    ambient tensor level, with d assembled from the coboundary operators of
    the morphism complex; the unknowns are not constrained to the
    twist-compatible subspaces.  Any returned triple is re-verified against
    the direct order-l residual evaluators, a disagreement being a hard
    failure.
    """
    if l < 1:
        raise ValueError("extension order must be at least 1")
    if md.order < l - 1:
        raise ValueError(f"deformation must carry coefficients through order {l - 1}")
    if not is_valid_through(md, l - 1):
        raise ValueError(f"deformation is not valid through order {l - 1}")

    mc = MorphismComplex(md.phi, convention)
    L, M = md.phi.source, md.phi.target
    n = L.arity
    amb_u = ambient_dim(L, mc.left.rep, 2)
    amb_v = ambient_dim(M, mc.right.rep, 2)
    amb_w = ambient_dim(L, mc.mixed.rep, 1)
    out_u = ambient_dim(L, mc.left.rep, 3)
    out_v = ambient_dim(M, mc.right.rep, 3)
    out_w = ambient_dim(L, mc.mixed.rep, 2)

    cols = []
    zero_u = [Q(0)] * out_u
    zero_v = [Q(0)] * out_v
    for j in range(amb_u):
        unit = [Q(0)] * amb_u
        unit[j] = Q(1)
        du = mc.left.delta_ambient(2, unit)
        third = push_tensor(md.phi, unit, L.dim)
        cols.append(du + zero_v + third)
    for j in range(amb_v):
        unit = [Q(0)] * amb_v
        unit[j] = Q(1)
        dv = mc.right.delta_ambient(2, unit)
        third = [-x for x in pull_tensor(md.phi, 2, unit)]
        cols.append(zero_u + dv + third)
    for j in range(amb_w):
        unit = [Q(0)] * amb_w
        unit[j] = Q(1)
        dw = mc.mixed.delta_ambient(1, unit)
        cols.append(zero_u + zero_v + [-x for x in dw])

    fl = obstruction(md, l)
    rhs = (
        sparse_to_ambient(fl.o1, 2 * n - 1, L.dim, L.dim)
        + sparse_to_ambient(fl.o2, 2 * n - 1, M.dim, M.dim)
        + sparse_to_ambient(fl.o3, n, L.dim, M.dim)
    )

    rows = out_u + out_v + out_w
    mat = Matrix(rows, len(cols), [[cols[j][i] for j in range(len(cols))] for i in range(rows)])
    x = solve(mat, rhs)
    if x is None:
        return None

    xi_l = ambient_to_multimap(x[:amb_u], n, L.dim, L.dim)
    eta_l = ambient_to_multimap(x[amb_u : amb_u + amb_v], n, M.dim, M.dim)
    phi_l = ambient_to_matrix(x[amb_u + amb_v :], M.dim, L.dim)

    ext = md.extended(xi_l, eta_l, phi_l)
    r1, r2, r3 = morphism_order_residual(ext, l)
    if r1 or r2 or r3:
        raise RuntimeError(
            "solver produced a triple whose order-l residual is nonzero; "
            "the linear system disagrees with the residual oracle"
        )
    return xi_l, eta_l, phi_l


def infinitesimal(md: MorphismDeformation, convention=DEFAULT_CONVENTION) -> MorphismCochain:
    """(xi_1, eta_1, phi_1) as a degree-2 morphism cochain.

    Deformation coefficients are not forced to commute with the twists, so
    membership in the twist-compatible cochain spaces is checked here and a
    ConstraintViolation reported when it fails.
    """
    if md.order < 1:
        raise ValueError("deformation carries no order-1 coefficients")
    mc = MorphismComplex(md.phi, convention)
    L, M = md.phi.source, md.phi.target
    n = L.arity
    u_raw = multimap_to_ambient(md.xi.coeff(1), n, L.dim, L.dim)
    v_raw = multimap_to_ambient(md.eta.coeff(1), n, M.dim, M.dim)
    w_raw = matrix_to_ambient(md.phi_coeff(1))
    try:
        mc.left.space(2).coords(u_raw)
        mc.right.space(2).coords(v_raw)
        mc.mixed.space(1).coords(w_raw)
    except ConstraintViolation as exc:
        raise ConstraintViolation(
            "order-1 coefficients are not twist-compatible; the infinitesimal "
            "does not define a morphism cochain"
        ) from exc
    from .cochain import Cochain

    return MorphismCochain(2, Cochain(mc.left.space(2), u_raw), Cochain(mc.right.space(2), v_raw), Cochain(mc.mixed.space(1), w_raw))
