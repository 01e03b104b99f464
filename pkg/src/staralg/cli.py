"""Command-line front end: load algebras/groups, run analyses, emit reports.

Exit codes: 0 coherent report, 1 file/parse error, 2 validation failure,
3 internal inconsistency among checks that must agree.
"""

import argparse
import json
import sys

import numpy as np

from .core import algebra_from_json, algebra_to_json, random_element, validate
from .errors import InternalInconsistency, StarAlgError, ValidationFailed
from .groups import certify_group_theorem, group_from_json
from .rickart import CheckReport, check_baer, check_weakly_rickart
from .spectral import positive_sqrt, quasi_inverse, spectral_decompose
from .stepfns import FiniteSubsets, export_finite_backend
from .structure import analyze


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileError(f"cannot read {path}: {exc}") from exc


class FileError(Exception):
    pass


def _parse_element(algebra, text):
    parts = text.replace(";", " ").split()
    coeffs = []
    for p in parts:
        re, im = p.split(",")
        coeffs.append(complex(float(re), float(im)))
    if len(coeffs) != algebra.dim:
        raise FileError(f"element has {len(coeffs)} coefficients, algebra dim is {algebra.dim}")
    return algebra.element(coeffs)


def _c2l(z):
    return [float(z.real), float(z.imag)]


def cmd_validate(args):
    algebra = algebra_from_json(_load_json(args.file))
    report = validate(algebra, args.tol)
    return (0 if report.passed else 2), report.to_dict(), (
        f"validation {'passed' if report.passed else 'FAILED'}: "
        f"assoc defect {report.associativity_defect:.2e}, "
        f"involution defect {report.involution_defect:.2e}"
    )


def cmd_analyze(args):
    algebra = algebra_from_json(_load_json(args.file))
    report = analyze(algebra, tol=args.tol, seed=args.seed)
    text = (
        f"dim {report.dim}: proper={report.proper} hermitian={report.hermitian} "
        f"semisimple={report.semisimple} weakly_rickart={report.weakly_rickart} "
        f"baer={report.baer}"
    )
    if report.baer:
        text += f"\nblocks {report.block_sizes_nonabelian}, abelian_dim {report.abelian_dim}"
    return 0, report.to_dict(), text


def cmd_group(args):
    group = group_from_json(_load_json(args.file))
    report = certify_group_theorem(group, tol=args.tol, seed=args.seed)
    degrees = sorted([1] * report.abelian_dim + report.block_sizes_nonabelian)
    text = (
        f"|G| = {group.order}, conjugacy classes {group.conjugacy_class_count()}, "
        f"irreducible degrees {degrees}"
    )
    return 0, report.to_dict(), text


def cmd_spectral(args):
    algebra = algebra_from_json(_load_json(args.file))
    element = _parse_element(algebra, args.element)
    dec = spectral_decompose(element, args.tol)
    payload = {
        "terms": [
            {"eigenvalue": _c2l(lam), "projection": [_c2l(z) for z in p.coeffs]}
            for lam, p in dec.terms
        ]
    }
    lams = ", ".join(f"{lam:.6g}" for lam, _ in dec.terms)
    return 0, payload, f"{len(dec.terms)} spectral terms; eigenvalues: {lams or 'none'}"


def cmd_check(args):
    algebra = algebra_from_json(_load_json(args.file))
    tol, seed = args.tol, args.seed
    if args.property == "rp":
        report = check_weakly_rickart(algebra, tol=tol, seed=seed)
    elif args.property == "baer":
        report = check_baer(algebra, tol=tol, seed=seed)
    elif args.property == "regular":
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(16):
            a = random_element(algebra, rng)
            x = quasi_inverse(a, tol)
            scale = max(1.0, a.norm())
            worst = max(worst, (a * x * a - a).norm() / scale,
                        (x * a * x - x).norm() / max(1.0, x.norm()))
        report = CheckReport("regular", worst <= 1e-8 * 10, worst, seed)
    elif args.property == "sqrt":
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(16):
            a = random_element(algebra, rng)
            x = a.star() * a
            y = positive_sqrt(x, tol)
            worst = max(worst, (y * y - x).norm() / max(1.0, x.norm()))
        report = CheckReport("positive_sqrt", worst <= 1e-8 * 10, worst, seed)
    else:
        raise FileError(f"unknown property {args.property!r}")
    return (0 if report.passed else 2), report.to_dict(), (
        f"{report.property_name}: {'pass' if report.passed else 'FAIL'} "
        f"(worst residual {report.worst_residual:.2e})"
    )


def cmd_export_commutative(args):
    algebra = export_finite_backend(FiniteSubsets(args.points))
    payload = algebra_to_json(algebra, args.tol)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        return 0, {"written": args.out}, f"wrote {args.out}"
    return 0, payload, f"commutative algebra on {args.points} points"


def build_parser():
    parser = argparse.ArgumentParser(prog="staralg", description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the *-algebra axioms of an algebra file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("analyze", help="full structure report for an algebra file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("group", help="build C[G] from a group file and certify it")
    p.add_argument("file")
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("spectral", help="spectral decomposition of one element")
    p.add_argument("file")
    p.add_argument("--element", required=True, help="coefficients as 're,im re,im ...'")
    p.set_defaults(fn=cmd_spectral)

    p = sub.add_parser("check", help="run a single property check")
    p.add_argument("file")
    p.add_argument("--property", required=True, choices=["rp", "baer", "regular", "sqrt"])
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("export-commutative", help="export the finite step-function algebra")
    p.add_argument("points", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export_commutative)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 1
    try:
        code, payload, text = args.fn(args)
    except FileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationFailed as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except StarAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
