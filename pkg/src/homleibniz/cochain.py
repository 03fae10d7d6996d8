"""Cochain spaces, the coboundary operator, and the sign-calibration harness.

A p-cochain with values in a module M is a linear map on
L tensor (L^{tensor n-1})^{tensor p-1}; its coefficients live in an ambient
space of dimension module_dim * d^(1 + (n-1)(p-1)).  The admissible cochains
are cut out by the twist-compatibility constraint

    alpha_M o f = f o (alpha tensor abar^{tensor p-1}),

with abar acting componentwise on (n-1)-tuples; cochain spaces store a
kernel basis of that constraint.

The coboundary consists of four term groups.  Their unit signs, the slot
order of the bracket on (n-1)-tuples, and two typographically ambiguous
readings are collected in SignConvention; calibrate_convention searches the
finite convention space for those making the composite coboundary vanish
exactly and pins a canonical default.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    cadd,
    matrix_combo,
    tensor_combo,
    _basis_combo,
)
from .linalg import Matrix, Q, coords_in_basis, kernel_basis, rank


class ConstraintViolation(Exception):
    """A coboundary image left the twist-compatible subspace."""


class NotACochainComplex(Exception):
    """delta o delta failed to vanish; invalid convention or invalid input."""


class CalibrationError(Exception):
    """No sign convention satisfies the d-squared-zero battery."""


# ---------------------------------------------------------------------------
# conventions


@dataclass(frozen=True, order=True)
class SignConvention:
    """Resolution of the ambiguities in the coboundary formula.

    sign_a..sign_d multiply the four term groups.  bracket_y_first swaps
    the argument order of the element bracket inside the bracket of
    fundamental objects.  twist_after_hat selects whether slots after the
    removed object in term A still receive abar.  c_full_range selects
    whether the action-on-the-right sum runs over every index or stops one
    short.
    """

    sign_a: int = 1
    sign_b: int = 1
    sign_c: int = 1
    sign_d: int = 1
    bracket_y_first: bool = False
    twist_after_hat: bool = True
    c_full_range: bool = True

    def __post_init__(self):
        for s in (self.sign_a, self.sign_b, self.sign_c, self.sign_d):
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")

    def label(self):
        pm = lambda s: "+" if s == 1 else "-"
        return (
            f"A{pm(self.sign_a)}B{pm(self.sign_b)}C{pm(self.sign_c)}D{pm(self.sign_d)}"
            f"|{'yx' if self.bracket_y_first else 'xy'}"
            f"|{'hat-twisted' if self.twist_after_hat else 'hat-bare'}"
            f"|{'c-full' if self.c_full_range else 'c-short'}"
        )


    @classmethod
    def from_label(cls, label):
        """Inverse of label(); accepts strings like 'A+B+C+D+|xy|hat-twisted|c-full'."""
        try:
            signs, order, hats, crange = label.split("|")
            if len(signs) != 8 or [signs[0], signs[2], signs[4], signs[6]] != list("ABCD"):
                raise ValueError
            sv = {"+": 1, "-": -1}
            sa, sb, sc, sd = (sv[signs[i]] for i in (1, 3, 5, 7))
            yf = {"xy": False, "yx": True}[order]
            th = {"hat-twisted": True, "hat-bare": False}[hats]
            cf = {"c-full": True, "c-short": False}[crange]
        except (ValueError, KeyError):
            raise ValueError(f"cannot parse convention label {label!r}") from None
        return cls(sa, sb, sc, sd, yf, th, cf)


DEFAULT_CONVENTION = SignConvention()


def all_conventions():
    for sa, sb, sc, sd in itertools.product((1, -1), repeat=4):
        for yf in (False, True):
            for th in (True, False):
                for cf in (True, False):
                    yield SignConvention(sa, sb, sc, sd, yf, th, cf)


# ---------------------------------------------------------------------------
# indexing

def input_length(n, p):
    return 1 + (n - 1) * (p - 1)


def input_tuples(algebra, p):
    return itertools.product(range(algebra.dim), repeat=input_length(algebra.arity, p))


def ambient_dim(algebra, rep, p):
    return rep.module_dim * algebra.dim ** input_length(algebra.arity, p)


def _flat(tup, d):
    pos = 0
    for i in tup:
        pos = pos * d + i
    return pos


# ---------------------------------------------------------------------------
# brackets on elements and fundamental objects


def element_bracket(algebra, z_combo, x_combos):
    """[z, x^1, ..., x^{n-1}], the algebra bracket on combos."""
    return algebra.bracket_apply([z_combo] + list(x_combos))


def fundamental_bracket(algebra, x_combos, y_combos, y_first=False):
    """Bracket of fundamental objects as a combo over (n-1)-tuples.

    [X, Y] = sum_k alpha(x^1) x ... x [x^k, y^1..y^{n-1}] x ... x alpha(x^{n-1}),
    with the bracketed slot's argument order controlled by y_first.
    """
    n1 = algebra.arity - 1
    out = {}
    for k in range(n1):
        if y_first:
            slot = algebra.bracket_apply(list(y_combos) + [x_combos[k]])
        else:
            slot = algebra.bracket_apply([x_combos[k]] + list(y_combos))
        factors = [matrix_combo(algebra.alpha, c) for c in x_combos]
        factors[k] = slot
        for key, v in tensor_combo(factors).items():
            cadd(out, key, v)
    return out


# ---------------------------------------------------------------------------
# cochain spaces


class CochainSpace:
    """Twist-compatible p-cochains, as a kernel basis in ambient coordinates."""

    def __init__(self, algebra, rep, degree):
        if degree < 1:
            raise ValueError("cochain degree must be at least 1")
        if rep.algebra != algebra:
            raise ValueError("representation does not belong to the algebra")
        self.algebra = algebra
        self.rep = rep
        self.degree = degree
        self.in_len = input_length(algebra.arity, degree)
        self.ambient = ambient_dim(algebra, rep, degree)
        self.basis = self._constraint_kernel()

    @property
    def dim(self):
        return self.basis.dim

    def _constraint_kernel(self):
        a, rep, p = self.algebra, self.rep, self.degree
        d, m = a.dim, rep.module_dim
        n = a.arity
        rows = []
        alpha_cols = [a.alpha_combo(i) for i in range(d)]
        for inp in itertools.product(range(d), repeat=self.in_len):
            # expand (alpha tensor abar^{p-1}) applied to the basis input
            factors = [alpha_cols[i] for i in inp]
            expanded = tensor_combo(factors)
            for mo in range(m):
                row = [Q(0)] * self.ambient
                # alpha_M o f term
                base = _flat(inp, d) * m
                for mm in range(m):
                    c = rep.alpha_module.entries[mo][mm]
                    if c:
                        row[base + mm] += c
                # - f o (alpha tensor abar...) term
                for key, v in expanded.items():
                    row[_flat(key, d) * m + mo] -= v
                rows.append(row)
        mat = Matrix.from_rows(rows, self.ambient)
        return kernel_basis(mat)

    def coords(self, coeffs):
        c = coords_in_basis(self.basis, coeffs)
        if c is None:
            raise ConstraintViolation(
                f"tensor is not twist-compatible in degree {self.degree}"
            )
        return c

    def contains(self, coeffs):
        return coords_in_basis(self.basis, coeffs) is not None

    def from_coords(self, coords):
        vec = [Q(0)] * self.ambient
        for c, bv in zip(coords, self.basis.vectors):
            if c:
                for i, x in enumerate(bv):
                    if x:
                        vec[i] += c * x
        return Cochain(self, vec)

    def zero(self):
        return Cochain(self, [Q(0)] * self.ambient)


class Cochain:
    """A member of a CochainSpace: ambient coefficient tensor plus its space."""

    def __init__(self, space, coeffs, check=False):
        if len(coeffs) != space.ambient:
            raise ValueError("coefficient length does not match ambient dimension")
        self.space = space
        self.coeffs = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
        if check:
            space.coords(self.coeffs)

    def value(self, inp, out_idx):
        d = self.space.algebra.dim
        return self.coeffs[_flat(inp, d) * self.space.rep.module_dim + out_idx]

    def evaluate(self, input_combo):
        """Apply the cochain to a combo over full input tuples; module combo out."""
        m = self.space.rep.module_dim
        d = self.space.algebra.dim
        out = {}
        for key, v in input_combo.items():
            base = _flat(key, d) * m
            for mo in range(m):
                c = self.coeffs[base + mo]
                if c:
                    cadd(out, mo, v * c)
        return out

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)

    def __add__(self, other):
        assert self.space is other.space
        return Cochain(self.space, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        assert self.space is other.space
        return Cochain(self.space, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scaled(self, c):
        return Cochain(self.space, [c * x for x in self.coeffs])


def cochain_space(algebra, rep, p, convention=None):
    """Assemble C^p; the convention argument is accepted for interface
    symmetry but the constraint does not depend on it."""
    return CochainSpace(algebra, rep, p)


# ---------------------------------------------------------------------------
# the coboundary


def _expand_slots(slot_combos):
    """Tensor-expand slot combos into a dict over flat f-input tuples."""
    out = {}
    items = [list(c.items()) for c in slot_combos]
    if any(not it for it in items):
        return out
    for picks in itertools.product(*items):
        key = []
        coeff = Q(1)
        for k, v in picks:
            if isinstance(k, tuple):
                key.extend(k)
            else:
                key.append(k)
            coeff *= v
        cadd(out, tuple(key), coeff)
    return out


def coboundary_operator(algebra, rep, p, convention=DEFAULT_CONVENTION):
    """Sparse ambient matrix of delta^p, as {column: [(row, coeff), ...]}.

    The operator is linear in the cochain, so one traversal of the degree
    p+1 inputs produces every matrix entry; callers restrict it to the
    twist-compatible bases or apply it to raw tensors as needed.
    """
    n, d, m = algebra.arity, algebra.dim, rep.module_dim
    cv = convention
    alpha_cols = [algebra.alpha_combo(i) for i in range(d)]
    apow = algebra.alpha.power(p - 1)
    apow_cols = [
        {r: apow.entries[r][i] for r in range(d) if apow.entries[r][i]} for i in range(d)
    ]
    # action of a unit module basis vector, per action index and algebra slot expansion
    entries = {}

    def put(row, col, coeff):
        v = entries.get((row, col), 0) + coeff
        if v:
            entries[(row, col)] = v
        else:
            entries.pop((row, col), None)

    def abar(X):
        return tensor_combo([alpha_cols[i] for i in X])

    def bare(X):
        return {tuple(X): Q(1)}

    c_top = p if cv.c_full_range else p - 1

    for inp in itertools.product(range(d), repeat=input_length(n, p + 1)):
        z = inp[0]
        Xs = [inp[1 + r * (n - 1) : 1 + (r + 1) * (n - 1)] for r in range(p)]
        row_base = _flat(inp, d) * m

        def add_diag(expansion, sign):
            # terms that feed f's output straight through: diagonal in the
            # module index
            for key, c in expansion.items():
                col_base = _flat(key, d) * m
                v = sign * c
                for mo in range(m):
                    put(row_base + mo, col_base + mo, v)

        def add_action(expansion, action_idx, alg, sign):
            # terms that feed f's output into a module action
            for mf in range(m):
                acted = rep.action_apply(action_idx, alg, {mf: Q(1)})
                if not acted:
                    continue
                for key, c in expansion.items():
                    col = _flat(key, d) * m + mf
                    for mo, av in acted.items():
                        put(row_base + mo, col, sign * c * av)

        # term A: contract X_i with X_j, drop X_j
        for i in range(1, p):
            for j in range(i + 1, p + 1):
                fb = fundamental_bracket(
                    algebra,
                    [_basis_combo(x) for x in Xs[i - 1]],
                    [_basis_combo(y) for y in Xs[j - 1]],
                    y_first=cv.bracket_y_first,
                )
                slots = [alpha_cols[z]]
                for r in range(1, p + 1):
                    if r == j:
                        continue
                    if r == i:
                        slots.append(fb)
                    elif r < j or cv.twist_after_hat:
                        slots.append(abar(Xs[r - 1]))
                    else:
                        slots.append(bare(Xs[r - 1]))
                add_diag(_expand_slots(slots), cv.sign_a * (-1) ** j)

        # term B: contract z with X_i, drop X_i
        for i in range(1, p + 1):
            zb = element_bracket(
                algebra, _basis_combo(z), [_basis_combo(x) for x in Xs[i - 1]]
            )
            slots = [zb] + [abar(Xs[r - 1]) for r in range(1, p + 1) if r != i]
            add_diag(_expand_slots(slots), cv.sign_b * (-1) ** i)

        # term C: right action of abar^{p-1}(X_i) on f with X_i dropped
        for i in range(1, c_top + 1):
            slots = [_basis_combo(z)] + [bare(Xs[r - 1]) for r in range(1, p + 1) if r != i]
            exp = _expand_slots(slots)
            if exp:
                alg = [apow_cols[x] for x in Xs[i - 1]]
                add_action(exp, 0, alg, cv.sign_c * (-1) ** (i + 1))

        # term D: left actions with f consuming the components of X_1
        X1 = Xs[0]
        for i in range(1, n):
            slots = [_basis_combo(X1[i - 1])] + [bare(X) for X in Xs[1:]]
            exp = _expand_slots(slots)
            if exp:
                alg = [apow_cols[z]] + [
                    apow_cols[X1[r]] for r in range(n - 1) if r != i - 1
                ]
                add_action(exp, i, alg, cv.sign_d)

    cols = {}
    for (row, col), v in entries.items():
        cols.setdefault(col, []).append((row, v))
    for lst in cols.values():
        lst.sort()
    return cols


def apply_operator(op_cols, coeffs, out_dim):
    out = [Q(0)] * out_dim
    for j, x in enumerate(coeffs):
        if x:
            lst = op_cols.get(j)
            if lst:
                for row, v in lst:
                    out[row] += v * x
    return out


def coboundary_tensor(algebra, rep, p, coeffs, convention=DEFAULT_CONVENTION, op_cols=None):
    """Raw delta^p on an ambient coefficient tensor (no membership checks).

    Accepts tensors that need not be twist-compatible; the deformation
    solver relies on that.
    """
    if op_cols is None:
        op_cols = coboundary_operator(algebra, rep, p, convention)
    return apply_operator(op_cols, coeffs, ambient_dim(algebra, rep, p + 1))


def coboundary(f: Cochain, convention=DEFAULT_CONVENTION, target_space=None):
    """delta^p f as a checked member of C^{p+1}.

    Raises ConstraintViolation when the image leaves the twist-compatible
    subspace, which signals an invalid convention or an invalid algebra.
    """
    sp = f.space
    raw = coboundary_tensor(sp.algebra, sp.rep, sp.degree, f.coeffs, convention)
    if target_space is None:
        target_space = CochainSpace(sp.algebra, sp.rep, sp.degree + 1)
    target_space.coords(raw)
    return Cochain(target_space, raw)


def coboundary_matrix(space: CochainSpace, convention=DEFAULT_CONVENTION, target_space=None, op_cols=None):
    """Matrix of delta^p between the computed bases of C^p and C^{p+1}."""
    if target_space is None:
        target_space = CochainSpace(space.algebra, space.rep, space.degree + 1)
    if op_cols is None:
        op_cols = coboundary_operator(space.algebra, space.rep, space.degree, convention)
    cols = []
    for bv in space.basis.vectors:
        raw = apply_operator(op_cols, bv, target_space.ambient)
        cols.append(target_space.coords(raw))
    if cols:
        entries = [[cols[j][i] for j in range(len(cols))] for i in range(target_space.dim)]
    else:
        entries = [[] for _ in range(target_space.dim)]
    return Matrix(target_space.dim, len(cols), entries)


class CochainComplex:
    """Caches spaces and coboundary matrices of one (algebra, rep, convention)."""

    def __init__(self, algebra, rep, convention=DEFAULT_CONVENTION):
        self.algebra = algebra
        self.rep = rep
        self.convention = convention
        self._spaces = {}
        self._matrices = {}
        self._operators = {}

    def space(self, p) -> CochainSpace:
        if p not in self._spaces:
            self._spaces[p] = CochainSpace(self.algebra, self.rep, p)
        return self._spaces[p]

    def operator(self, p):
        if p not in self._operators:
            self._operators[p] = coboundary_operator(
                self.algebra, self.rep, p, self.convention
            )
        return self._operators[p]

    def delta_ambient(self, p, coeffs):
        return apply_operator(
            self.operator(p), coeffs, ambient_dim(self.algebra, self.rep, p + 1)
        )

    def delta(self, p) -> Matrix:
        if p not in self._matrices:
            self._matrices[p] = coboundary_matrix(
                self.space(p), self.convention, self.space(p + 1), self.operator(p)
            )
        return self._matrices[p]

    def cohomology_dim(self, p) -> int:
        if p < 1:
            raise ValueError("cohomology degree must be at least 1")
        dp = self.delta(p)
        kernel_dim = dp.cols - rank(dp)
        if p == 1:
            return kernel_dim
        dprev = self.delta(p - 1)
        if not (dp @ dprev).is_zero():
            raise NotACochainComplex(
                f"delta^{p} o delta^{p-1} is nonzero with convention "
                f"{self.convention.label()}"
            )
        return kernel_dim - rank(dprev)


def cohomology_dim(algebra, rep, p, convention=DEFAULT_CONVENTION):
    return CochainComplex(algebra, rep, convention).cohomology_dim(p)


# ---------------------------------------------------------------------------
# calibration


def convention_passes(algebra, rep, convention, degrees=(1, 2), spaces=None):
    """Whether delta^{p+1} o delta^p vanishes exactly for the given degrees."""
    if spaces is None:
        spaces = {}

    def space(p):
        if p not in spaces:
            spaces[p] = CochainSpace(algebra, rep, p)
        return spaces[p]

    try:
        for p in degrees:
            d1 = coboundary_matrix(space(p), convention, space(p + 1))
            d2 = coboundary_matrix(space(p + 1), convention, space(p + 2))
            if not (d2 @ d1).is_zero():
                return False
    except ConstraintViolation:
        return False
    return True


def calibration_report(battery, conventions=None, degrees=(1, 2)):
    """All conventions for which every battery member is a complex.

    Filters member by member so that expensive battery entries only see the
    conventions that survived the cheap ones.
    """
    if conventions is None:
        conventions = list(all_conventions())
    surviving = list(conventions)
    for algebra, rep in battery:
        cache = {}
        surviving = [
            cv for cv in surviving if convention_passes(algebra, rep, cv, degrees, cache)
        ]
        if not surviving:
            break
    return surviving


def calibrate_convention(battery, conventions=None, degrees=(1, 2)):
    """Pin a canonical convention; fails loudly when no convention works."""
    passing = calibration_report(battery, conventions, degrees)
    if not passing:
        raise CalibrationError("no sign convention satisfies delta-squared = 0")
    if DEFAULT_CONVENTION in passing:
        return DEFAULT_CONVENTION
    return sorted(passing, key=lambda c: c.label())[0]


# ---------------------------------------------------------------------------
# test support


def random_cochain(space, rng: random.Random, denom=4, span=3):
    """Random member of the space: rational combination of basis vectors."""
    coords = [
        Fraction(rng.randint(-span, span), rng.randint(1, denom))
        for _ in range(space.dim)
    ]
    return space.from_coords(coords)
