"""JSON document formats for algebras, morphisms, representations and
deformations.

Rationals travel as canonical strings ("3/2", "-1"), sparse tensors are
keyed by comma-joined basis labels, and serialization is deterministic
(sorted keys, fixed separators), so parse -> serialize -> parse is the
identity and documents diff cleanly.  A morphism document carries its
source and target either inline or as a path relative to the document.
Deformation coefficient lists may give order 0 as "inherit" to copy the
base bracket (or the base morphism matrix).
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction

from .algebra import HomNaryAlgebra, Morphism, Representation
from .linalg import Matrix


class DocumentError(Exception):
    """Malformed or inconsistent input document; maps to CLI exit code 2."""


# ---------------------------------------------------------------------------
# rationals and matrices


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise DocumentError(f"rational must be a string like '3/2', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"cannot parse rational {s!r}: {exc}") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_matrix(obj, rows=None, cols=None, what="matrix") -> Matrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise DocumentError(f"{what} must be a list of rows")
    if not obj:
        raise DocumentError(f"{what} is empty")
    width = len(obj[0])
    if any(len(r) != width for r in obj):
        raise DocumentError(f"{what} rows have unequal lengths")
    if rows is not None and len(obj) != rows:
        raise DocumentError(f"{what} must have {rows} rows, has {len(obj)}")
    if cols is not None and width != cols:
        raise DocumentError(f"{what} must have {cols} columns, has {width}")
    return Matrix(len(obj), width, [[parse_rational(x) for x in r] for r in obj])


def serialize_matrix(m: Matrix):
    return [[format_rational(x) for x in row] for row in m.entries]


# ---------------------------------------------------------------------------
# label handling


def _label_index(labels):
    idx = {lab: i for i, lab in enumerate(labels)}
    if len(idx) != len(labels):
        raise DocumentError("basis labels are not distinct")
    return idx


def _parse_key(key, segments, index, what):
    parts = key.split(",")
    if len(parts) != segments:
        raise DocumentError(f"{what} key {key!r} must join {segments} labels")
    out = []
    for p in parts:
        if p not in index:
            raise DocumentError(f"unknown basis label {p!r} in {what} key {key!r}")
        out.append(index[p])
    return tuple(out)


def _parse_entry(obj, index, what):
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} entry must be an object of label -> rational")
    entry = {}
    for lab, val in obj.items():
        if lab not in index:
            raise DocumentError(f"unknown output label {lab!r} in {what} entry")
        q = parse_rational(val)
        if q:
            entry[index[lab]] = q
    return entry


def _parse_sparse_tensor(obj, segments, in_index, out_index, what):
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} must be an object keyed by comma-joined labels")
    tensor = {}
    for key, val in obj.items():
        idx = _parse_key(key, segments, in_index, what)
        entry = _parse_entry(val, out_index, what)
        if entry:
            tensor[idx] = entry
    return tensor


def _serialize_sparse_tensor(tensor, in_labels, out_labels):
    out = {}
    for key in sorted(tensor):
        entry = tensor[key]
        if not entry:
            continue
        k = ",".join(in_labels[i] for i in key)
        out[k] = {out_labels[i]: format_rational(entry[i]) for i in sorted(entry)}
    return out


def _require(obj, field, what):
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} document must be a JSON object")
    if field not in obj:
        raise DocumentError(f"{what} document is missing {field!r}")
    return obj[field]


# ---------------------------------------------------------------------------
# algebra documents


def parse_algebra(obj) -> HomNaryAlgebra:
    arity = _require(obj, "arity", "algebra")
    basis = _require(obj, "basis", "algebra")
    if not isinstance(arity, int):
        raise DocumentError("arity must be an integer")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise DocumentError("basis must be a list of string labels")
    index = _label_index(basis)
    dim = len(basis)
    alpha = parse_matrix(_require(obj, "alpha", "algebra"), dim, dim, "alpha")
    bracket = _parse_sparse_tensor(
        _require(obj, "bracket", "algebra"), arity, index, index, "bracket"
    )
    try:
        return HomNaryAlgebra(arity, dim, tuple(basis), bracket, alpha)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize_algebra(a: HomNaryAlgebra):
    return {
        "arity": a.arity,
        "basis": list(a.basis),
        "alpha": serialize_matrix(a.alpha),
        "bracket": _serialize_sparse_tensor(a.bracket, a.basis, a.basis),
    }


# ---------------------------------------------------------------------------
# morphism documents


def _resolve_algebra(obj, base_dir, what):
    if isinstance(obj, str):
        path = obj if os.path.isabs(obj) else os.path.join(base_dir or ".", obj)
        return parse_algebra(load_json(path))
    return parse_algebra(obj)


def parse_morphism(obj, base_dir=None) -> Morphism:
    src = _resolve_algebra(_require(obj, "source", "morphism"), base_dir, "source")
    tgt = _resolve_algebra(_require(obj, "target", "morphism"), base_dir, "target")
    mat = parse_matrix(_require(obj, "matrix", "morphism"), tgt.dim, src.dim, "matrix")
    try:
        return Morphism(src, tgt, mat)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize_morphism(phi: Morphism):
    return {
        "source": serialize_algebra(phi.source),
        "target": serialize_algebra(phi.target),
        "matrix": serialize_matrix(phi.matrix),
    }


# ---------------------------------------------------------------------------
# representation documents


def parse_representation(obj, base_dir=None) -> Representation:
    alg = _resolve_algebra(_require(obj, "algebra", "representation"), base_dir, "algebra")
    mbasis = _require(obj, "module_basis", "representation")
    if not isinstance(mbasis, list) or not all(isinstance(b, str) for b in mbasis):
        raise DocumentError("module_basis must be a list of string labels")
    mindex = _label_index(mbasis)
    mdim = len(mbasis)
    alpha_m = parse_matrix(
        _require(obj, "alpha_module", "representation"), mdim, mdim, "alpha_module"
    )
    actions_obj = _require(obj, "actions", "representation")
    n = alg.arity
    if not isinstance(actions_obj, list) or len(actions_obj) != n:
        raise DocumentError(f"actions must be a list of {n} tensors")
    aindex = _label_index(alg.basis)
    actions = []
    for i, tensor_obj in enumerate(actions_obj):
        if not isinstance(tensor_obj, dict):
            raise DocumentError(f"action {i} must be an object")
        tensor = {}
        for key, val in tensor_obj.items():
            parts = key.split(",")
            if len(parts) != n:
                raise DocumentError(
                    f"action {i} key {key!r} must join {n - 1} algebra labels "
                    "and one module label"
                )
            alg_idx = []
            for p in parts[:-1]:
                if p not in aindex:
                    raise DocumentError(f"unknown algebra label {p!r} in action {i}")
                alg_idx.append(aindex[p])
            if parts[-1] not in mindex:
                raise DocumentError(f"unknown module label {parts[-1]!r} in action {i}")
            entry = _parse_entry(val, mindex, f"action {i}")
            if entry:
                tensor[tuple(alg_idx) + (mindex[parts[-1]],)] = entry
        actions.append(tensor)
    try:
        return Representation(alg, mdim, alpha_m, tuple(actions)), mbasis
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize_representation(rep: Representation, module_basis):
    a = rep.algebra
    actions = []
    for tensor in rep.actions:
        obj = {}
        for key in sorted(tensor):
            k = ",".join(a.basis[i] for i in key[:-1]) + "," + module_basis[key[-1]]
            obj[k] = {
                module_basis[i]: format_rational(tensor[key][i]) for i in sorted(tensor[key])
            }
        actions.append(obj)
    return {
        "algebra": serialize_algebra(a),
        "module_basis": list(module_basis),
        "alpha_module": serialize_matrix(rep.alpha_module),
        "actions": actions,
    }


# ---------------------------------------------------------------------------
# deformation documents


def _parse_coeff_list(obj, what, parse_order0, parse_higher):
    if not isinstance(obj, list) or not obj:
        raise DocumentError(f"{what} must be a non-empty list of per-order coefficients")
    out = []
    for i, item in enumerate(obj):
        if i == 0:
            if item == "inherit":
                out.append(None)
            else:
                out.append(parse_order0(item))
        else:
            if item == "inherit":
                raise DocumentError(f"'inherit' is only allowed at order 0 in {what}")
            out.append(parse_higher(item))
    return out


def parse_deformation(obj, base_dir=None):
    """A morphism deformation document -> MorphismDeformation."""
    from .deformation import MorphismDeformation, TruncatedDeformation

    phi = parse_morphism(_require(obj, "morphism", "deformation"), base_dir)
    src, tgt = phi.source, phi.target
    s_index = _label_index(src.basis)
    t_index = _label_index(tgt.basis)
    n = src.arity

    def tensor_of(index):
        return lambda item: _parse_sparse_tensor(item, n, index, index, "coefficient")

    xi = _parse_coeff_list(
        _require(obj, "xi", "deformation"), "xi", tensor_of(s_index), tensor_of(s_index)
    )
    eta = _parse_coeff_list(
        _require(obj, "eta", "deformation"), "eta", tensor_of(t_index), tensor_of(t_index)
    )

    def phi_mat(item):
        return parse_matrix(item, tgt.dim, src.dim, "phi coefficient")

    phis = _parse_coeff_list(_require(obj, "phi", "deformation"), "phi", phi_mat, phi_mat)

    if not (len(xi) == len(eta) == len(phis)):
        raise DocumentError("xi, eta and phi must list the same number of orders")
    xi[0] = src.bracket if xi[0] is None else xi[0]
    eta[0] = tgt.bracket if eta[0] is None else eta[0]
    phis[0] = phi.matrix if phis[0] is None else phis[0]
    try:
        return MorphismDeformation(
            phi,
            TruncatedDeformation(src, xi),
            TruncatedDeformation(tgt, eta),
            phis,
        )
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize_deformation(md):
    src, tgt = md.phi.source, md.phi.target
    return {
        "morphism": serialize_morphism(md.phi),
        "xi": ["inherit"]
        + [
            _serialize_sparse_tensor(md.xi.coeffs[i], src.basis, src.basis)
            for i in range(1, md.order + 1)
        ],
        "eta": ["inherit"]
        + [
            _serialize_sparse_tensor(md.eta.coeffs[i], tgt.basis, tgt.basis)
            for i in range(1, md.order + 1)
        ],
        "phi": ["inherit"] + [serialize_matrix(md.phis[i]) for i in range(1, md.order + 1)],
    }


# ---------------------------------------------------------------------------
# files, canonical text, digests


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno} col {exc.colno}") from None


def canonical_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj) -> str:
    return hashlib.sha256(canonical_text(obj).encode("utf-8")).hexdigest()


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
