"""JSON spec files: one format for the catalog, the CLI, and tests.

A spec file describes an algebra (sparse brackets with rational
coefficients), the endomorphism matrix, the group model, and optional
estimator parameters.  Parsing produces positioned diagnostics; output is
canonical (sorted keys, fixed indentation) so round-trips are
byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import LieAlgebra
from .groups import DEFAULT_FLAGS, MODELS, GroupSpec
from .spectral import Endomorphism
from .subspace import Subspace, span


class SpecError(ValueError):
    """Schema violation with a JSON-path location."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class SpecFile:
    name: str
    algebra: LieAlgebra
    automorphism: Endomorphism
    group: GroupSpec
    estimator: dict = field(default_factory=dict)


def _num(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecError(where, "expected a number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SpecError(where, f"not a rational number: {value!r}")
    raise SpecError(where, f"expected a number, got {type(value).__name__}")


def _matrix(value, where: str, rows: Optional[int] = None, cols: Optional[int] = None):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SpecError(where, "expected a list of rows")
    if rows is not None and len(value) != rows:
        raise SpecError(where, f"expected {rows} rows, got {len(value)}")
    out = []
    for i, row in enumerate(value):
        if cols is not None and len(row) != cols:
            raise SpecError(f"{where}[{i}]", f"expected {cols} entries, got {len(row)}")
        out.append([_num(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SpecError(where, f"missing required key {key!r}")
    return obj[key]


def parse_spec(data: dict, name_hint: str = "") -> SpecFile:
    if not isinstance(data, dict):
        raise SpecError("$", "top level must be an object")
    name = data.get("name", name_hint)

    alg_block = _require(data, "algebra", "$")
    if not isinstance(alg_block, dict):
        raise SpecError("algebra", "must be an object")
    dim = _require(alg_block, "dim", "algebra")
    if not isinstance(dim, int) or dim < 0:
        raise SpecError("algebra.dim", "must be a nonnegative integer")
    labels = alg_block.get("basis")
    if labels is not None and (
        not isinstance(labels, list) or len(labels) != dim or not all(isinstance(x, str) for x in labels)
    ):
        raise SpecError("algebra.basis", f"must be a list of {dim} strings")
    triples = []
    for t, entry in enumerate(alg_block.get("brackets", [])):
        where = f"algebra.brackets[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise SpecError(where, "expected [i, j, k, coeff]")
        i, j, k, c = entry
        for pos, idx in (("i", i), ("j", j), ("k", k)):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise SpecError(f"{where}.{pos}", f"index out of range for dim {dim}")
        triples.append((i, j, k, _num(c, f"{where}.coeff")))
    try:
        algebra = LieAlgebra.from_brackets(dim, triples, basis_labels=labels)
    except ValueError as exc:
        raise SpecError("algebra.brackets", str(exc))

    auto_block = _require(data, "automorphism", "$")
    if not isinstance(auto_block, dict):
        raise SpecError("automorphism", "must be an object")
    rows = _matrix(_require(auto_block, "matrix", "automorphism"), "automorphism.matrix", dim, dim)
    phi = Endomorphism.from_rows(algebra, rows)

    group_block = _require(data, "group", "$")
    if not isinstance(group_block, dict):
        raise SpecError("group", "must be an object")
    model = _require(group_block, "model", "group")
    if model not in MODELS:
        raise SpecError("group.model", f"unknown model {model!r}; expected one of {MODELS}")
    lattice = group_block.get("lattice")
    if lattice is not None:
        lattice = _matrix(lattice, "group.lattice", None, dim)
    flags = group_block.get("flags", {})
    if not isinstance(flags, dict):
        raise SpecError("group.flags", "must be an object")
    for key, value in flags.items():
        if key not in DEFAULT_FLAGS:
            raise SpecError(f"group.flags.{key}", f"unknown flag; expected one of {sorted(DEFAULT_FLAGS)}")
        if not isinstance(value, bool):
            raise SpecError(f"group.flags.{key}", "must be true or false")
    declared_levi = group_block.get("declared_levi")
    levi_subspace = None
    if declared_levi is not None:
        levi_rows = _matrix(declared_levi, "group.declared_levi", None, dim)
        levi_subspace = span(dim, [[float(x) for x in row] for row in levi_rows])
    group = GroupSpec(
        algebra=algebra,
        model=model,
        lattice=lattice,
        flags=dict(flags),
        declared_levi=levi_subspace,
        name=name,
    )

    est_block = data.get("estimator", {})
    if not isinstance(est_block, dict):
        raise SpecError("estimator", "must be an object")
    estimator = {}
    if "n_max" in est_block:
        if not isinstance(est_block["n_max"], int) or est_block["n_max"] < 1:
            raise SpecError("estimator.n_max", "must be a positive integer")
        estimator["n_max"] = est_block["n_max"]
    if "eps_list" in est_block:
        eps = est_block["eps_list"]
        if not isinstance(eps, list) or not eps:
            raise SpecError("estimator.eps_list", "must be a nonempty list")
        estimator["eps_list"] = tuple(float(_num(e, f"estimator.eps_list[{i}]")) for i, e in enumerate(eps))
    if "grid_density" in est_block:
        if not isinstance(est_block["grid_density"], int) or est_block["grid_density"] < 2:
            raise SpecError("estimator.grid_density", "must be an integer >= 2")
        estimator["grid_density"] = est_block["grid_density"]

    return SpecFile(name=name, algebra=algebra, automorphism=phi, group=group, estimator=estimator)


def load_spec(path: str) -> SpecFile:
    """Parse a spec file; json.JSONDecodeError and SpecError signal a bad file."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    import os

    hint = os.path.splitext(os.path.basename(path))[0]
    return parse_spec(data, name_hint=hint)


def _coeff_out(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def spec_to_dict(spec: SpecFile) -> dict:
    alg = spec.algebra
    brackets = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            for k in range(alg.dim):
                c = alg.table[i][j][k]
                if c:
                    brackets.append([i, j, k, _coeff_out(c)])
    out: dict = {
        "name": spec.name,
        "algebra": {
            "dim": alg.dim,
            "basis": list(alg.basis_labels),
            "brackets": brackets,
        },
        "automorphism": {
            "matrix": [
                [_coeff_out(Fraction(x).limit_denominator(10**12)) for x in row]
                for row in (spec.automorphism.exact or spec.automorphism.matrix.tolist())
            ]
        },
        "group": {
            "model": spec.group.model,
            "flags": {k: v for k, v in sorted(spec.group.flags.items()) if v},
        },
    }
    if spec.group.lattice is not None:
        out["group"]["lattice"] = [[_coeff_out(x) for x in row] for row in spec.group.lattice]
    if spec.group.declared_levi is not None:
        out["group"]["declared_levi"] = [
            [_coeff_out(Fraction(x).limit_denominator(10**9)) for x in row]
            for row in spec.group.declared_levi.basis
        ]
    if spec.estimator:
        est = {}
        if "n_max" in spec.estimator:
            est["n_max"] = spec.estimator["n_max"]
        if "eps_list" in spec.estimator:
            est["eps_list"] = list(spec.estimator["eps_list"])
        if "grid_density" in spec.estimator:
            est["grid_density"] = spec.estimator["grid_density"]
        out["estimator"] = est
    return out


def canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_spec(spec: SpecFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(spec_to_dict(spec)))
