"""Command-line front end.

Commands: check, decompose, entropy, estimate, compare.  Exit codes are the
machine contract: 0 ok / 1 invalid spec / 2 lower-bound-only certificate /
3 unreliable numeric run / 64 parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import subspace
from .algebra import check_jacobi
from .bowen import EstimatorParams, estimate_entropy, torus_system, write_csv
from .groups import validate_group_spec
from .pipeline import entropy_certificate, explain_certificate
from .specfile import SpecError, SpecFile, load_spec
from .spectral import check_grading, check_homomorphism, dynamic_subalgebras

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_LOWER_BOUND = 2
EXIT_UNRELIABLE = 3
EXIT_PARSE = 64


def _load(path: str) -> SpecFile:
    try:
        return load_spec(path)
    except (json.JSONDecodeError, SpecError, OSError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _emit(data: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _run_checks(spec: SpecFile) -> list[str]:
    problems = []
    jac = check_jacobi(spec.algebra)
    for where in jac.violations:
        problems.append(f"jacobi violation at triple {where}")
    hom = check_homomorphism(spec.algebra, spec.automorphism)
    for where in hom.violations:
        problems.append(f"endomorphism is not an algebra homomorphism at {where}")
    grp = validate_group_spec(spec.group, spec.automorphism)
    for where, what in grp.violations:
        problems.append(f"group spec invalid ({where}): {what}")
    return problems


def cmd_check(args) -> int:
    spec = _load(args.path)
    problems = _run_checks(spec)
    data = {"spec": spec.name, "valid": not problems, "problems": problems}
    text = f"{spec.name}: " + ("OK" if not problems else "\n  ".join(["INVALID"] + problems))
    _emit(data, text, args.format)
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_decompose(args) -> int:
    spec = _load(args.path)
    problems = _run_checks(spec)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_INVALID
    if args.tol_rank is not None:
        subspace.RANK_TOL = args.tol_rank
    decomp = dynamic_subalgebras(spec.algebra, spec.automorphism)
    grading = check_grading(spec.algebra, decomp)
    classes = [
        {
            "value": [cls.value.real, cls.value.imag],
            "modulus": cls.modulus,
            "dim": cls.multiplicity,
            "basis": cls.real_subspace.basis.tolist(),
        }
        for cls in decomp.classes
    ]
    dims = {
        "g_phi": decomp.g_phi.dim,
        "k_phi": decomp.k_phi.dim,
        "g_plus": decomp.g_plus.dim,
        "g_zero": decomp.g_zero.dim,
        "g_minus": decomp.g_minus.dim,
        "g_plus_zero": decomp.g_plus_zero.dim,
        "g_minus_zero": decomp.g_minus_zero.dim,
    }
    data = {
        "spec": spec.name,
        "classes": classes,
        "dims": dims,
        "bases": {
            name: getattr(decomp, name).basis.tolist()
            for name in ("g_phi", "k_phi", "g_plus", "g_zero", "g_minus", "g_plus_zero", "g_minus_zero")
        },
        "grading_ok": bool(grading),
        "grading_violations": [list(v) for v in grading.violations],
    }
    lines = [f"{spec.name}: dynamic subalgebra decomposition"]
    for cls in decomp.classes:
        lines.append(
            f"  eigenvalue {cls.value.real:+.6g}{cls.value.imag:+.6g}i  |.|={cls.modulus:.6g}  dim {cls.multiplicity}"
        )
    lines.append("  dims: " + ", ".join(f"{k}={v}" for k, v in dims.items()))
    lines.append(f"  grading: {'OK' if grading else 'VIOLATED'}")
    _emit(data, "\n".join(lines), args.format)
    return EXIT_OK


def cmd_entropy(args) -> int:
    spec = _load(args.path)
    problems = _run_checks(spec)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_INVALID
    cert = entropy_certificate(spec.group, spec.automorphism)
    data = {"spec": spec.name, **cert.to_dict()}
    _emit(data, f"{spec.name}:\n{explain_certificate(cert)}", args.format)
    if cert.status == "rejected":
        return EXIT_INVALID
    return EXIT_OK if cert.status == "exact" else EXIT_LOWER_BOUND


def _estimator_params(spec: SpecFile, args) -> EstimatorParams:
    block = dict(spec.estimator)
    if args.n is not None:
        block["n_max"] = args.n
    if args.eps is not None:
        block["eps_list"] = tuple(float(x) for x in args.eps.split(","))
    if args.grid is not None:
        block["grid_density"] = args.grid
    defaults = EstimatorParams()
    return EstimatorParams(
        n_max=block.get("n_max", defaults.n_max),
        eps_list=tuple(block.get("eps_list", defaults.eps_list)),
        grid_density=block.get("grid_density", defaults.grid_density),
    )


def _estimable_system(spec: SpecFile):
    """A compact metric model of the spec, or (None, reason).

    Torus models are estimated directly.  A central quotient with a
    lattice torus factor is estimated on that maximal compact factor (the
    noncompact directions contribute no spanning growth for the shipped
    contracting examples, but the estimate is reported as the factor's).
    """
    from .groups import toral_component

    if spec.group.model == "torus":
        block = toral_component(spec.group, spec.automorphism)
        return torus_system(block.induced_matrix, spec.name), None
    if spec.group.model == "central_quotient" and spec.group.lattice:
        block = toral_component(spec.group, spec.automorphism)
        if block.rank:
            return torus_system(block.induced_matrix, f"{spec.name} (torus factor)"), None
    return None, f"group model {spec.group.model!r} has no compact metric model to sample"


def cmd_estimate(args) -> int:
    spec = _load(args.path)
    problems = _run_checks(spec)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_INVALID
    sys_model, reason = _estimable_system(spec)
    if sys_model is None:
        print(f"error: {reason}", file=sys.stderr)
        return EXIT_INVALID
    params = _estimator_params(spec, args)
    result = estimate_entropy(sys_model, params)
    if args.out:
        write_csv(result, args.out)
    data = {"spec": spec.name, **result.to_dict()}
    lines = [f"{spec.name}: Bowen spanning estimate"]
    est = result.estimate
    lines.append(f"  estimate: {'n/a' if est is None else f'{est:.6f}'}  reliable: {result.reliable}")
    for eps, slope in sorted(result.per_eps_slopes.items(), reverse=True):
        lines.append(f"  eps={eps:g}: slope {'n/a' if slope is None else f'{slope:.6f}'}")
    for w in result.diagnostics.get("warnings", []):
        lines.append(f"  warning: {w}")
    _emit(data, "\n".join(lines), args.format)
    return EXIT_OK if result.reliable else EXIT_UNRELIABLE


def cmd_compare(args) -> int:
    spec = _load(args.path)
    problems = _run_checks(spec)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_INVALID
    cert = entropy_certificate(spec.group, spec.automorphism)
    if cert.status != "exact":
        print(f"error: certificate status {cert.status!r}; comparison needs an exact value", file=sys.stderr)
        return EXIT_LOWER_BOUND if cert.status == "lower_bound_only" else EXIT_INVALID
    sys_model, reason = _estimable_system(spec)
    if sys_model is None:
        print(f"error: {reason}", file=sys.stderr)
        return EXIT_INVALID
    params = _estimator_params(spec, args)
    result = estimate_entropy(sys_model, params)
    if args.out:
        write_csv(result, args.out)
    if not result.reliable or result.estimate is None:
        print("comparison refused: estimate is unreliable", file=sys.stderr)
        return EXIT_UNRELIABLE
    gap = abs(result.estimate - cert.value)
    passed = gap <= args.tolerance
    data = {
        "spec": spec.name,
        "certified": cert.value,
        "estimate": result.estimate,
        "gap": gap,
        "tolerance": args.tolerance,
        "pass": passed,
    }
    text = (
        f"{spec.name}: certified {cert.value:.6f}  estimate {result.estimate:.6f}  "
        f"gap {gap:.6f}  {'PASS' if passed else 'FAIL'} (tolerance {args.tolerance:g})"
    )
    _emit(data, text, args.format)
    return EXIT_OK if passed else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieentropy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, estimator=False):
        p.add_argument("path", help="spec file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--tol-rank", type=float, default=None, help="relative singular-value rank threshold")
        if estimator:
            p.add_argument("--n", type=int, default=None, help="max orbit depth n")
            p.add_argument("--eps", default=None, help="comma-separated eps list")
            p.add_argument("--grid", type=int, default=None, help="sample grid density per dimension")
            p.add_argument("--out", default=None, help="CSV output path")

    common(sub.add_parser("check", help="validate a spec file"))
    common(sub.add_parser("decompose", help="dynamic subalgebra decomposition"))
    common(sub.add_parser("entropy", help="certified entropy via the rule chain"))
    p_est = sub.add_parser("estimate", help="Bowen spanning-set estimate")
    common(p_est, estimator=True)
    p_cmp = sub.add_parser("compare", help="certificate vs numeric estimate")
    common(p_cmp, estimator=True)
    p_cmp.add_argument("--tolerance", type=float, default=0.1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "check": cmd_check,
        "decompose": cmd_decompose,
        "entropy": cmd_entropy,
        "estimate": cmd_estimate,
        "compare": cmd_compare,
    }[args.command]
    try:
        return handler(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
