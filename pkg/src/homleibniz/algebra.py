"""Finite-dimensional multiplicative n-Hom-Leibniz algebras by structure constants.

An algebra is a basis, a sparse structure-constant tensor for the n-ary
bracket, and a twist endomorphism alpha.  Representations carry n
position-indexed actions; the checkers below evaluate the defining
identities exhaustively on basis tuples and return full violation lists.

Linear data is passed around as sparse "combos":

* element combo: dict {basis index: Fraction}
* tuple combo:   dict {(i1, ..., ik): Fraction}

A bracket / multilinear-map tensor is a dict mapping an input index tuple
of length n to an element combo for the output, missing entries meaning
zero.  Action tensors use keys (j1, ..., j_{n-1}, m): the n-1 algebra
arguments in positional order followed by the module argument, the module
slot sitting at position i for action i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Q

# ---------------------------------------------------------------------------
# combo helpers


def cadd(dst, key, coeff):
    v = dst.get(key, 0) + coeff
    if v:
        dst[key] = v
    else:
        dst.pop(key, None)


def cscale(combo, s):
    if not s:
        return {}
    return {k: v * s for k, v in combo.items()}


def csub(a, b):
    out = dict(a)
    for k, v in b.items():
        cadd(out, k, -v)
    return out


def matrix_combo(mat: Matrix, combo):
    """Apply a matrix to an element combo (columns indexed by basis)."""
    out = {}
    for j, v in combo.items():
        for i in range(mat.rows):
            e = mat.entries[i][j]
            if e:
                cadd(out, i, e * v)
    return out


def tensor_combo(element_combos):
    """Tensor product of element combos, keyed by index tuples."""
    out = {(): Q(1)}
    for c in element_combos:
        nxt = {}
        for key, coeff in out.items():
            for i, v in c.items():
                cadd(nxt, key + (i,), coeff * v)
        out = nxt
    return out


def apply_multimap(mm, arg_combos):
    """Evaluate a multilinear tensor on element combos; returns an element combo."""
    out = {}
    for key, coeff in tensor_combo(arg_combos).items():
        entry = mm.get(key)
        if entry:
            for k, c in entry.items():
                cadd(out, k, coeff * c)
    return out


def normalize_multimap(mm):
    out = {}
    for key, entry in mm.items():
        cleaned = {k: _q(v) for k, v in entry.items() if v}
        if cleaned:
            out[tuple(key)] = cleaned
    return out


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _basis_combo(i):
    return {i: Q(1)}


# ---------------------------------------------------------------------------
# violation reports


@dataclass(frozen=True)
class Violation:
    identity: str
    where: tuple
    residual: tuple  # sorted ((index or tuple, Fraction), ...)

    def __str__(self):
        res = ", ".join(f"{k}: {v}" for k, v in self.residual)
        return f"{self.identity} at {self.where}: residual {{{res}}}"


def _residual_violation(identity, where, residual_combo):
    if not residual_combo:
        return None
    items = tuple(sorted(residual_combo.items()))
    return Violation(identity, where, items)


# ---------------------------------------------------------------------------
# core types


@dataclass
class HomNaryAlgebra:
    arity: int
    dim: int
    basis: tuple
    bracket: dict
    alpha: Matrix

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        self.basis = tuple(self.basis)
        if len(self.basis) != self.dim:
            raise ValueError("basis label count does not match dimension")
        if self.alpha.rows != self.dim or self.alpha.cols != self.dim:
            raise ValueError("alpha must be a dim x dim matrix")
        self.bracket = normalize_multimap(self.bracket)
        for key, entry in self.bracket.items():
            if len(key) != self.arity:
                raise ValueError(f"bracket key {key} does not have arity {self.arity}")
            for idx in key:
                if not 0 <= idx < self.dim:
                    raise ValueError(f"basis index {idx} out of range in bracket key {key}")
            for k in entry:
                if not 0 <= k < self.dim:
                    raise ValueError(f"output index {k} out of range in bracket entry {key}")

    def basis_tuples(self, count=None):
        if count is None:
            count = self.arity
        return itertools.product(range(self.dim), repeat=count)

    def alpha_combo(self, i):
        return {r: self.alpha.entries[r][i] for r in range(self.dim) if self.alpha.entries[r][i]}

    def bracket_apply(self, arg_combos):
        return apply_multimap(self.bracket, arg_combos)


@dataclass
class Morphism:
    source: HomNaryAlgebra
    target: HomNaryAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.source.arity != self.target.arity:
            raise ValueError("source and target arities differ")
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise ValueError("morphism matrix shape must be (target dim) x (source dim)")

    def apply(self, combo):
        return matrix_combo(self.matrix, combo)

    def column(self, j):
        return {r: self.matrix.entries[r][j] for r in range(self.matrix.rows) if self.matrix.entries[r][j]}


@dataclass
class Representation:
    algebra: HomNaryAlgebra
    module_dim: int
    alpha_module: Matrix
    actions: tuple  # n tensors, key (j1..j_{n-1}, m)

    def __post_init__(self):
        n = self.algebra.arity
        if self.module_dim < 1:
            raise ValueError("module dimension must be at least 1")
        if self.alpha_module.rows != self.module_dim or self.alpha_module.cols != self.module_dim:
            raise ValueError("alpha_module must be module_dim x module_dim")
        if len(self.actions) != n:
            raise ValueError(f"expected {n} action tensors")
        self.actions = tuple(normalize_multimap(a) for a in self.actions)
        d = self.algebra.dim
        for a in self.actions:
            for key, entry in a.items():
                if len(key) != n:
                    raise ValueError("action key must list n-1 algebra indices plus the module index")
                for idx in key[:-1]:
                    if not 0 <= idx < d:
                        raise ValueError(f"algebra index out of range in action key {key}")
                if not 0 <= key[-1] < self.module_dim:
                    raise ValueError(f"module index out of range in action key {key}")
                for k in entry:
                    if not 0 <= k < self.module_dim:
                        raise ValueError(f"module output index out of range in action entry {key}")

    def action_apply(self, i, alg_combos, mod_combo):
        """[x1,..,xi, m, x_{i+1},..,x_{n-1}]_i with alg_combos in positional order."""
        out = {}
        for key, coeff in tensor_combo(alg_combos).items():
            for m, mv in mod_combo.items():
                entry = self.actions[i].get(key + (m,))
                if entry:
                    for k, c in entry.items():
                        cadd(out, k, coeff * mv * c)
        return out

    def alpha_module_combo(self, m):
        return {
            r: self.alpha_module.entries[r][m]
            for r in range(self.module_dim)
            if self.alpha_module.entries[r][m]
        }


# ---------------------------------------------------------------------------
# the fundamental identity, with at most one slot in the module

_L = "L"
_M = "M"


def _mixed_alpha(rep, tagged):
    tag, combo = tagged
    if tag == _M:
        out = {}
        for m, v in combo.items():
            for k, c in rep.alpha_module_combo(m).items():
                cadd(out, k, v * c)
        return (_M, out)
    return (_L, matrix_combo(rep.algebra.alpha, combo))


def _mixed_bracket(rep, args):
    """n-ary bracket where at most one argument is tagged as a module element."""
    mod_positions = [i for i, (tag, _) in enumerate(args) if tag == _M]
    if not mod_positions:
        return (_L, rep.algebra.bracket_apply([c for _, c in args]))
    if len(mod_positions) > 1:
        raise ValueError("at most one module argument is allowed")
    i = mod_positions[0]
    alg = [c for j, (tag, c) in enumerate(args) if j != i]
    return (_M, rep.action_apply(i, alg, args[i][1]))


def _identity_residual(rep, xs, ys, module_slot=None):
    """LHS - RHS of the fundamental identity on one basis tuple.

    xs and ys are basis indices; module_slot picks which of the 2n-1
    variables (0..n-1 the x's, n..2n-2 the y's) lies in the module, None
    meaning the pure algebra identity.
    """
    n = rep.algebra.arity

    def var(pos, idx):
        tag = _M if pos == module_slot else _L
        return (tag, _basis_combo(idx))

    x = [var(i, xs[i]) for i in range(n)]
    y = [var(n + j, ys[j]) for j in range(n - 1)]

    inner = _mixed_bracket(rep, x)
    lhs = _mixed_bracket(rep, [inner] + [_mixed_alpha(rep, t) for t in y])

    rhs_tag, rhs = None, {}
    for i in range(n):
        inner_i = _mixed_bracket(rep, [x[i]] + y)
        args = [_mixed_alpha(rep, x[j]) for j in range(n)]
        args[i] = inner_i
        tag, combo = _mixed_bracket(rep, args)
        rhs_tag = tag
        for k, v in combo.items():
            cadd(rhs, k, v)
    assert rhs_tag is None or rhs_tag == lhs[0] or not rhs
    return csub(lhs[1], rhs)


# ---------------------------------------------------------------------------
# checkers


def check_hom_leibniz(a: HomNaryAlgebra):
    """Evaluate the n-Hom-Leibniz identity on every basis tuple; empty iff valid."""
    n = a.arity
    report = []
    for tup in a.basis_tuples(2 * n - 1):
        xs, ys = tup[:n], tup[n:]
        inner = a.bracket_apply([_basis_combo(i) for i in xs])
        lhs = a.bracket_apply([inner] + [a.alpha_combo(j) for j in ys])
        rhs = {}
        for i in range(n):
            inner_i = a.bracket_apply([_basis_combo(xs[i])] + [_basis_combo(j) for j in ys])
            args = [a.alpha_combo(xs[j]) for j in range(n)]
            args[i] = inner_i
            for k, v in a.bracket_apply(args).items():
                cadd(rhs, k, v)
        v = _residual_violation("hom-leibniz", tup, csub(lhs, rhs))
        if v:
            report.append(v)
    report.sort(key=lambda v: v.where)
    return report


def check_multiplicative(a: HomNaryAlgebra):
    """alpha([x1..xn]) = [alpha(x1)..alpha(xn)] on all basis tuples."""
    report = []
    for tup in a.basis_tuples():
        lhs = matrix_combo(a.alpha, a.bracket_apply([_basis_combo(i) for i in tup]))
        rhs = a.bracket_apply([a.alpha_combo(i) for i in tup])
        v = _residual_violation("multiplicative", tup, csub(lhs, rhs))
        if v:
            report.append(v)
    report.sort(key=lambda v: v.where)
    return report


def check_morphism(phi: Morphism):
    """Bracket preservation and phi.alpha = beta.phi, both exact."""
    report = []
    src, tgt = phi.source, phi.target
    for tup in src.basis_tuples():
        lhs = phi.apply(src.bracket_apply([_basis_combo(i) for i in tup]))
        rhs = tgt.bracket_apply([phi.column(i) for i in tup])
        v = _residual_violation("bracket-preservation", tup, csub(lhs, rhs))
        if v:
            report.append(v)
    diff = phi.matrix @ src.alpha - tgt.alpha @ phi.matrix
    if not diff.is_zero():
        bad = {
            (i, j): diff.entries[i][j]
            for i in range(diff.rows)
            for j in range(diff.cols)
            if diff.entries[i][j]
        }
        report.append(Violation("twist-intertwining", (), tuple(sorted(bad.items()))))
    report.sort(key=lambda v: (v.identity, v.where))
    return report


def check_representation(rep: Representation):
    """All 2n-1 module specializations of the fundamental identity."""
    a = rep.algebra
    n = a.arity
    report = []
    for slot in range(2 * n - 1):
        for tup in itertools.product(
            *(
                [range(rep.module_dim) if p == slot else range(a.dim) for p in range(2 * n - 1)]
            )
        ):
            xs, ys = tup[:n], tup[n:]
            res = _identity_residual(rep, xs, ys, module_slot=slot)
            v = _residual_violation(f"representation[slot={slot}]", tup, res)
            if v:
                report.append(v)
    report.sort(key=lambda v: (v.identity, v.where))
    return report


# ---------------------------------------------------------------------------
# constructions


def adjoint_representation(a: HomNaryAlgebra) -> Representation:
    """M = L with alpha_M = alpha; action i is the bracket with the module in slot i."""
    n = a.arity
    actions = []
    for i in range(n):
        tensor = {}
        for key, entry in a.bracket.items():
            # key = (x1..xi, m, x_{i+1}..x_{n-1}) -> stored as (x's..., m)
            alg = key[:i] + key[i + 1 :]
            tensor[alg + (key[i],)] = dict(entry)
        actions.append(tensor)
    return Representation(a, a.dim, a.alpha, tuple(actions))


def pullback_representation(phi: Morphism) -> Representation:
    """Target of phi as a module over the source, acting through phi."""
    bad = check_morphism(phi)
    if bad:
        raise ValueError(f"not a morphism ({len(bad)} violated identities); pullback undefined")
    src, tgt = phi.source, phi.target
    n = src.arity
    actions = []
    for i in range(n):
        tensor = {}
        for alg in itertools.product(range(src.dim), repeat=n - 1):
            for m in range(tgt.dim):
                args = [phi.column(j) for j in alg]
                args = args[:i] + [_basis_combo(m)] + args[i:]
                out = tgt.bracket_apply(args)
                if out:
                    tensor[alg + (m,)] = out
        actions.append(tensor)
    return Representation(src, tgt.dim, tgt.alpha, tuple(actions))


def yau_twist(a: HomNaryAlgebra, t: Matrix) -> HomNaryAlgebra:
    """Twist an ordinary (alpha = id) n-Leibniz algebra by an endomorphism t.

    New bracket is t o bracket, new twist is t; the output is multiplicative
    and satisfies the Hom-Leibniz identity whenever the input does.
    """
    if a.alpha != Matrix.identity(a.dim):
        raise ValueError("yau_twist expects an untwisted (alpha = id) algebra")
    if t.rows != a.dim or t.cols != a.dim:
        raise ValueError("endomorphism matrix shape mismatch")
    for tup in a.basis_tuples():
        lhs = matrix_combo(t, a.bracket_apply([_basis_combo(i) for i in tup]))
        cols = [{r: t.entries[r][i] for r in range(a.dim) if t.entries[r][i]} for i in tup]
        rhs = a.bracket_apply(cols)
        if csub(lhs, rhs):
            raise ValueError(f"t is not an endomorphism of the bracket (fails at {tup})")
    bracket = {}
    for key, entry in a.bracket.items():
        out = matrix_combo(t, dict(entry))
        if out:
            bracket[key] = out
    return HomNaryAlgebra(a.arity, a.dim, a.basis, bracket, t)
