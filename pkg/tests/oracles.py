"""Independent oracles used by the test suite.

Two deliberately separate implementations:

* the classical right-Leibniz coboundary for binary algebras with identity
  twist, written directly from the textbook formula over raw ambient
  tensors, sharing no code with the production coboundary; and
* a brute-force affine assembly of the order-l deformation equations built
  purely from the residual evaluators, used to cross-check the extension
  solver and the recorded fixture verdicts.
"""

import itertools
from fractions import Fraction as Q

from homleibniz.algebra import _basis_combo, cadd
from homleibniz.deformation import (
    MorphismDeformation,
    TruncatedDeformation,
    morphism_order_residual,
)
from homleibniz.linalg import Matrix, kernel_basis, solve


# ---------------------------------------------------------------------------
# classical Leibniz coboundary (n = 2, alpha = id, adjoint coefficients)


def classical_coboundary(algebra, p, coeffs):
    """(d f)(x_1..x_{p+1}) for a p-cochain given as a flat ambient tensor.

    d f = [x_1, f(x_2..)] + sum_{i>=2} (-1)^i [f(..hat x_i..), x_i]
        + sum_{i<j} (-1)^{j+1} f(x_1.. [x_i,x_j] at slot i .. hat x_j ..)
    """
    assert algebra.arity == 2
    d = algebra.dim

    def f_of(combos):
        out = {}
        for key, c in _expand(combos).items():
            base = 0
            for i in key:
                base = base * d + i
            for k in range(d):
                v = coeffs[base * d + k]
                if v:
                    cadd(out, k, c * v)
        return out

    def br(a, b):
        return algebra.bracket_apply([a, b])

    out = [Q(0)] * (d ** (p + 1) * d)
    for inp in itertools.product(range(d), repeat=p + 1):
        xs = [_basis_combo(i) for i in inp]
        res = {}
        for k, v in br(xs[0], f_of(xs[1:])).items():
            cadd(res, k, v)
        for i in range(1, p + 1):
            sign = Q(-1) ** (i + 1)
            rest = xs[:i] + xs[i + 1 :]
            for k, v in br(f_of(rest), xs[i]).items():
                cadd(res, k, sign * v)
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                sign = Q(-1) ** (j + 2)
                args = xs[:i] + [br(xs[i], xs[j])] + xs[i + 1 : j] + xs[j + 1 :]
                for k, v in f_of(args).items():
                    cadd(res, k, sign * v)
        base = 0
        for i in inp:
            base = base * d + i
        for k, v in res.items():
            out[base * d + k] = v
    return out


def _expand(combos):
    out = {(): Q(1)}
    for c in combos:
        nxt = {}
        for key, coeff in out.items():
            for i, v in c.items():
                cadd(nxt, key + (i,), coeff * v)
        out = nxt
    return out


# ---------------------------------------------------------------------------
# brute-force order-l equation assembly


def triple_slots(phi):
    L, M = phi.source, phi.target
    n = L.arity
    slots = []
    for key in itertools.product(range(L.dim), repeat=n):
        for k in range(L.dim):
            slots.append(("xi", key, k))
    for key in itertools.product(range(M.dim), repeat=n):
        for k in range(M.dim):
            slots.append(("eta", key, k))
    for j in range(L.dim):
        for r in range(M.dim):
            slots.append(("phi", j, r))
    return slots


def triple_from_vector(phi, slots, vec):
    L, M = phi.source, phi.target
    xi, eta = {}, {}
    pm = [[Q(0)] * L.dim for _ in range(M.dim)]
    for (kind, a, b), v in zip(slots, vec):
        if not v:
            continue
        if kind == "xi":
            xi.setdefault(a, {})[b] = v
        elif kind == "eta":
            eta.setdefault(a, {})[b] = v
        else:
            pm[b][a] = v
    return xi, eta, Matrix(M.dim, L.dim, pm)


def residual_vector(md, l):
    L, M = md.phi.source, md.phi.target
    n = L.arity
    r1, r2, r3 = morphism_order_residual(md, l)
    out = []
    for key in itertools.product(range(L.dim), repeat=2 * n - 1):
        ent = r1.get(key, {})
        out.extend(ent.get(k, Q(0)) for k in range(L.dim))
    for key in itertools.product(range(M.dim), repeat=2 * n - 1):
        ent = r2.get(key, {})
        out.extend(ent.get(k, Q(0)) for k in range(M.dim))
    for key in itertools.product(range(L.dim), repeat=n):
        ent = r3.get(key, {})
        out.extend(ent.get(k, Q(0)) for k in range(M.dim))
    return out


def order_l_system(md, l):
    """(A, b) with the order-l equations reading A.c = b in the unknown triple."""
    phi = md.phi
    slots = triple_slots(phi)
    zero = triple_from_vector(phi, slots, [Q(0)] * len(slots))
    base = residual_vector(md.extended(*zero), l)
    cols = []
    for i in range(len(slots)):
        unit = [Q(0)] * len(slots)
        unit[i] = Q(1)
        r = residual_vector(md.extended(*triple_from_vector(phi, slots, unit)), l)
        cols.append([x - y for x, y in zip(r, base)])
    a = Matrix(
        len(base), len(slots), [[cols[j][i] for j in range(len(slots))] for i in range(len(base))]
    )
    return a, [-x for x in base], slots


def oracle_extends(md, l):
    a, b, _ = order_l_system(md, l)
    return solve(a, b) is not None


def random_valid_order1(phi, rng):
    """Random order-1 morphism deformation sampled from the order-1 kernel."""
    base = MorphismDeformation.trivial(phi, 0)
    a, b, slots = order_l_system(base, 1)
    assert all(x == 0 for x in b)
    basis = kernel_basis(a)
    vec = [Q(0)] * len(slots)
    for kv in basis.vectors:
        c = Q(rng.randint(-2, 2), rng.choice([1, 1, 2]))
        if c:
            vec = [x + c * y for x, y in zip(vec, kv)]
    xi1, eta1, phi1 = triple_from_vector(phi, slots, vec)
    return MorphismDeformation(
        phi,
        TruncatedDeformation.from_higher(phi.source, [xi1]),
        TruncatedDeformation.from_higher(phi.target, [eta1]),
        [phi.matrix, phi1],
    )
