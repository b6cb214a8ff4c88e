"""
Command-line front end.

Every command reads a JSON bundle (a path, or inline JSON starting with
``{``) whose matrices are arrays of scalar strings, for example::

    {"A": [["0", "1"], ["-q", "0"]], "B": [["0", "1"], ["-q", "0"]]}

Exit codes: 0 when every check passes, 1 when a check fails, 2 for input
or precondition errors.  Reports go to stdout as text, or as JSON with
``--json``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fusion
from .errors import (ConditionFailedError, FuelExhaustedError, PreconditionFailedError,
                     ScalarParseError, ShapeMismatchError, SingularMatrixError,
                     UndeterminedError)
from .invariants import (invariant_report, verify_galois_iso_witness, verify_galois_pair,
                         verify_iso_witness)
from .ncpoly import format_ncpoly, format_word, parse_ncpoly
from .quantum import (antipode, bundle_from_json, comultiplication, counit,
                      congruence_morphism, hopf_congruence_morphism, hopf_inversion_morphism,
                      inversion_morphism, presentation_from_bundle, verify_hopf_identities,
                      verify_morphism, verify_star_structure, verify_structural_map)
from .rewrite import check_diamond, irreducible_words, normal_form, normal_form_random

PASS, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def load_bundle(source: str) -> dict:
    text = source if source.lstrip().startswith("{") else None
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read bundle {source!r}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InputError("a bundle must be a JSON object")
    return obj


def _matrices(obj: dict, *names: str) -> tuple:
    _, mats, _ = bundle_from_json(obj)
    missing = [n for n in names if n not in mats]
    if missing:
        raise InputError(f"bundle is missing matrix {', '.join(missing)}")
    return tuple(mats[n] for n in names)


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _certificate_result(args, certs: list) -> int:
    ok = all(c.passed for c in certs)
    lines = []
    for c in certs:
        lines.append(c.summary())
        lines += [f"  FAILED {e.label}: residue {e.residue}" for e in c.failures()]
    _emit(args, "\n".join(lines), {"pass": ok, "certificates": [c.to_json() for c in certs]})
    return PASS if ok else FAIL


# -- commands --------------------------------------------------------------

def cmd_check_diamond(args) -> int:
    obj = dict(load_bundle(args.bundle))
    obj["with_d_inv"] = args.localized
    P = presentation_from_bundle(obj)
    report = check_diamond(P.reduction_system())
    text = report.summary() + f"\nsystem: {P.system_kind}, rules: {len(P.reduction_system().rules)}"
    for c in report.failures:
        text += "\n  unresolved: " + c.ambiguity.describe(report.system)
    _emit(args, text, report.to_json())
    return PASS if report.confluent else FAIL


def cmd_normal_form(args) -> int:
    P = presentation_from_bundle(load_bundle(args.bundle))
    p = parse_ncpoly(args.poly, P.field)
    sys_ = P.reduction_system()
    if args.random:
        nf = normal_form_random(p, sys_, random.Random(args.seed))
        _emit(args, format_ncpoly(nf), {"input": format_ncpoly(p), "normal_form": format_ncpoly(nf)})
        return PASS
    red = normal_form(p, sys_)
    _emit(args, format_ncpoly(red.poly),
          {"input": format_ncpoly(p), "normal_form": format_ncpoly(red.poly),
           "steps": red.steps, "trace": [s.to_json() for s in red.trace]})
    return PASS


def cmd_basis(args) -> int:
    obj = dict(load_bundle(args.bundle))
    obj["with_d_inv"] = args.localized
    P = presentation_from_bundle(obj)
    sys_ = P.reduction_system()
    report = check_diamond(sys_)
    words = irreducible_words(sys_, args.max_len)
    counts = [sum(1 for w in words if len(w) == k) for k in range(args.max_len + 1)]
    text = [f"irreducible words up to length {args.max_len}: {len(words)}",
            "by length: " + ", ".join(map(str, counts))]
    if not report.confluent:
        text.append("system is not confluent: these words span but need not be a basis")
    text += ["  " + (format_word(w) or "1") for w in words]
    _emit(args, "\n".join(text),
          {"confluent": report.confluent, "total": len(words), "by_length": counts,
           "words": [format_word(w) or "1" for w in words]})
    return PASS if report.confluent else FAIL


def cmd_verify_hopf(args) -> int:
    P = presentation_from_bundle(load_bundle(args.bundle))
    certs = [verify_structural_map(comultiplication(P), args.bound),
             verify_structural_map(counit(P), args.bound),
             verify_structural_map(antipode(P), args.bound),
             verify_hopf_identities(P, args.bound)]
    return _certificate_result(args, certs)


_MORPHISMS = ("congruence", "inversion", "hopf-congruence", "hopf-inversion")


def cmd_verify_morphism(args) -> int:
    obj = load_bundle(args.bundle)
    # the field is inferred from every matrix, so P and Q share it with G(A,B)
    P = presentation_from_bundle(obj)
    if args.kind == "inversion":
        spec = inversion_morphism(P)
    elif args.kind == "congruence":
        Pm, Q = _matrices(obj, "P", "Q")
        spec = congruence_morphism(P, Pm, Q)
    elif args.kind == "hopf-congruence":
        (Pm,) = _matrices(obj, "P")
        spec = hopf_congruence_morphism(P, Pm)
    else:
        (Q,) = _matrices(obj, "Q")
        spec = hopf_inversion_morphism(P, Q)
    return _certificate_result(args, [verify_morphism(spec, args.bound)])


def cmd_verify_star(args) -> int:
    (E,) = _matrices(load_bundle(args.bundle), "E")
    return _certificate_result(args, [verify_star_structure(E, args.bound)])


def cmd_fusion(args) -> int:
    root = args.root is not None
    a = fusion.parse_label(args.a, root)
    b = fusion.parse_label(args.b, root)
    if root:
        res = fusion.tensor_root_partial(a, b, fusion.RootOfUnityCase(args.root))
    else:
        res = fusion.tensor_generic(a, b)
    payload = {"product": str(res), "dim": res.dim,
               "semisimple": not isinstance(res, fusion.NotSemisimple)}
    _emit(args, str(res), payload)
    return PASS


def cmd_invariants(args) -> int:
    A, B = _matrices(load_bundle(args.bundle), "A", "B")
    r = invariant_report(A, B)
    if r.condition_ok:
        text = f"lambda = {r.lam}\nmu = {r.mu}\nkappa = {r.kappa}\ngenericity: {r.genericity}"
    else:
        text = f"B^t A^t B A is not a scalar matrix\nmu = {r.mu}"
    _emit(args, text, r.to_json())
    return PASS if r.condition_ok else FAIL


def cmd_verify_witness(args) -> int:
    obj = load_bundle(args.bundle)
    if args.galois:
        C1, D1, C2, D2, M = _matrices(obj, "C1", "D1", "C2", "D2", "M")
        v = verify_galois_iso_witness(C1, D1, C2, D2, M)
    else:
        A, B, C, D, P = _matrices(obj, "A", "B", "C", "D", "P")
        v = verify_iso_witness(A, B, C, D, P, args.orientation or obj.get("orientation", "direct"))
    text = "witness verified" if v.passed else "witness rejected"
    if v.alpha is not None:
        text += f"\nalpha = {v.alpha}\nbeta = {v.beta}"
    for k, bad in sorted(v.residuals.items()):
        text += f"\n  {k} mismatches at " + ", ".join(f"({i},{j})" for i, j in bad)
    _emit(args, text, v.to_json())
    return PASS if v.passed else FAIL


def cmd_galois_check(args) -> int:
    A, B, C, D = _matrices(load_bundle(args.bundle), "A", "B", "C", "D")
    v = verify_galois_pair(A, B, C, D)
    text = "G(A,B|C,D) is a Hopf-Galois object" if v.passed else "\n".join(v.failures)
    text += f"\nlambda = {v.lam_ab}, tr(AB^t) = {v.trace_ab}"
    _emit(args, text, v.to_json())
    return PASS if v.passed else FAIL


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--bound", type=int, default=8, help="membership search rounds")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized strategies")

    parser = argparse.ArgumentParser(prog="gl2deform", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, bundle=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if bundle:
            p.add_argument("bundle", help="bundle path or inline JSON")
        p.set_defaults(func=func)
        return p

    p = add("check-diamond", cmd_check_diamond, "certify confluence of the reduction system")
    p.add_argument("--localized", action="store_true", help="include d^-1 and its rules")
    p = add("normal-form", cmd_normal_form, "normal form of a polynomial")
    p.add_argument("poly")
    p.add_argument("--random", action="store_true", help="reduce with a seeded random strategy")
    p = add("basis", cmd_basis, "irreducible words up to a length")
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--localized", action="store_true")
    add("verify-hopf", cmd_verify_hopf, "verify Delta, epsilon, S and the Hopf identities")
    p = add("verify-morphism", cmd_verify_morphism, "verify an explicit isomorphism")
    p.add_argument("--kind", choices=_MORPHISMS, default="congruence")
    add("verify-star", cmd_verify_star, "verify the *-structure on G(E, conj(E))")
    p = add("fusion", cmd_fusion, "tensor product of two simple labels", bundle=False)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--root", type=int, metavar="N", help="q is a root of unity of order N")
    add("invariants", cmd_invariants, "lambda, mu, kappa and genericity of (A,B)")
    p = add("verify-witness", cmd_verify_witness, "check an isomorphism witness")
    p.add_argument("--orientation", choices=("direct", "inverse"),
                   help="defaults to the bundle's orientation, else direct")
    p.add_argument("--galois", action="store_true", help="check a Galois-object witness M")
    add("galois-check", cmd_galois_check, "check that G(A,B|C,D) is a Hopf-Galois object")
    return parser


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ScalarParseError, PreconditionFailedError, SingularMatrixError,
            ShapeMismatchError, ConditionFailedError, UndeterminedError,
            FuelExhaustedError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
