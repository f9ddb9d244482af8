"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 malformed input or flags,
3 the tower violates a hypothesis or needs unsupported geometry.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product

from . import __version__
from .coh import TwistedForm, bott_cohomology
from .errors import ConfigError, DomainError, ResourceLimitError, RuleViolation
from .quiver import (
    DynkinType,
    Quiver,
    brute_force_indecomposables,
    classify_dynkin,
    positive_roots,
    quiver_positive_roots,
    star_quiver,
)
from .rdim import Check, TowerSpec, certify_tower, verify_appendix
from .sod import dual_collection_pm

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_RULE = 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def build_report(input_echo, certificate=None, error=None) -> dict:
    report = {"tool_version": __version__, "input_echo": input_echo}
    if error is not None:
        report["error"] = error.to_dict()
        report["checks"] = []
    else:
        report["certificate"] = certificate.to_json()
        report["checks"] = [c.to_json() for c in certificate.checks]
    return report


def _render_text(report) -> str:
    lines = [f"rdimcert {report['tool_version']}"]
    if "error" in report:
        err = report["error"]
        lines.append(f"ERROR ({err['type']}): {err['message']}")
        if "hypothesis" in err:
            lines.append(f"violated hypothesis: {err['hypothesis']}")
        return "\n".join(lines)
    cert = report["certificate"]
    lines.append("components:")
    for c in cert["components"]:
        extra = f" [{c['dynkin']}]" if "dynkin" in c else ""
        lines.append(f"  {c['kind']:<18} {c['label']:<24} rdim {c['rdim']}{extra}")
    lines.append("steps:")
    for s in cert["steps"]:
        lines.append(f"  [{s['tag']}] {s['text']}")
    lines.append("assumptions:")
    for a in cert["assumptions"]:
        lines.append(f"  - {a}")
    failed = [c for c in report["checks"] if c["status"] != "pass"]
    lines.append(f"checks: {len(report['checks']) - len(failed)}/{len(report['checks'])} passed")
    for c in failed:
        lines.append(f"  FAIL {c['id']}: {c['detail']}")
    lines.append(f"upper bound {cert['upper_bound']}, lower bound {cert['lower_bound']}")
    lines.append("VERIFIED: rdim = dim" if cert["verified"] else "NOT VERIFIED")
    return "\n".join(lines)


def _emit(report, fmt):
    print(_dump(report) if fmt == "json" else _render_text(report))


def cmd_certify(path, fmt="text") -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        spec = TowerSpec.from_json(data)
    except (OSError, json.JSONDecodeError) as exc:
        _emit(build_report(None, error=ConfigError(f"cannot read config: {exc}")), fmt)
        return EXIT_BAD_INPUT
    except ConfigError as exc:
        _emit(build_report(None, error=exc), fmt)
        return EXIT_BAD_INPUT
    echo = spec.to_json()
    try:
        cert = certify_tower(spec)
    except RuleViolation as exc:
        _emit(build_report(echo, error=exc), fmt)
        return EXIT_RULE
    _emit(build_report(echo, certificate=cert), fmt)
    return EXIT_OK if cert.verified else EXIT_CHECK_FAILED


def cmd_bott(ambient, form_degree, twist, fmt="text") -> int:
    value = bott_cohomology(TwistedForm(ambient, form_degree, twist))
    if fmt == "json":
        print(_dump({"ambient": ambient, "form_degree": form_degree, "twist": twist,
                     "cohomology": value.to_json()}))
    else:
        print(value)
    return EXIT_OK


def _parse_arrows(text: str):
    arrows = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        s, _, t = part.partition(">")
        arrows.append((int(s), int(t)))
    return arrows


def cmd_quiver(args) -> int:
    if args.action == "star":
        q = star_quiver(args.targets)
        print(classify_dynkin(q))
        return EXIT_OK
    if args.action == "classify":
        t = classify_dynkin(Quiver(args.vertices, _parse_arrows(args.arrows)))
        print("not Dynkin" if t is None else t)
        return EXIT_OK if t is not None else EXIT_CHECK_FAILED
    if args.action == "roots":
        roots = sorted(positive_roots(DynkinType.parse(args.type)))
        print(len(roots))
        for r in roots:
            print(" ".join(map(str, r)))
        return EXIT_OK
    # indecomposables: compare brute force with roots for one star quiver
    q = star_quiver(args.targets)
    roots = quiver_positive_roots(q)
    ok = True
    for d in product(range(args.max_total + 1), repeat=q.vertex_count):
        if not 0 < sum(d) <= args.max_total:
            continue
        count = brute_force_indecomposables(q, d)
        expected = 1 if d in roots else 0
        ok &= count == expected
        if count or expected:
            print(f"{d}: {count} indecomposable(s), root={d in roots}")
    print("agree" if ok else "DISAGREE")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _print_checks(checks: list[Check], fmt) -> int:
    if fmt == "json":
        print(_dump([c.to_json() for c in checks]))
    else:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.id:<40} {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


def cmd_verify_appendix(n, fmt="text") -> int:
    return _print_checks(verify_appendix(n), fmt)


def cmd_dual(m, fmt="text") -> int:
    dual = dual_collection_pm(m)
    checks = []
    for i in range(m + 1):
        for j in range(m + 1):
            v = dual.verification[i][j]
            expected = "k[0]" if i == j else "0"
            checks.append(Check(f"RHom(O({i}), Ω^{j}({j})[{j}])", str(v) == expected, str(v)))
    return _print_checks(checks, fmt)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdimcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("certify", parents=[fmt], help="certify a blow-up tower config")
    p.add_argument("path")

    p = sub.add_parser("bott", parents=[fmt], help="RΓ(P^n, Ω^p(t))")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--form", type=int, required=True)
    p.add_argument("--twist", type=int, required=True)

    p = sub.add_parser("quiver", help="Dynkin quiver tools")
    qsub = p.add_subparsers(dest="action", required=True)
    q = qsub.add_parser("star")
    q.add_argument("--targets", type=int, required=True)
    q = qsub.add_parser("classify")
    q.add_argument("--vertices", type=int, required=True)
    q.add_argument("--arrows", default="", help='comma separated, e.g. "0>1,0>2"')
    q = qsub.add_parser("roots")
    q.add_argument("--type", required=True)
    q = qsub.add_parser("indecomposables")
    q.add_argument("--targets", type=int, required=True)
    q.add_argument("--max-total", type=int, default=5)

    p = sub.add_parser("verify-appendix", parents=[fmt], help="dual-Orlov identities for a point")
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("dual", parents=[fmt], help="dual collection on P^m")
    p.add_argument("--dim", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "certify":
            return cmd_certify(args.path, args.format)
        if args.command == "bott":
            return cmd_bott(args.ambient, args.form, args.twist, args.format)
        if args.command == "quiver":
            return cmd_quiver(args)
        if args.command == "verify-appendix":
            return cmd_verify_appendix(args.dim, args.format)
        return cmd_dual(args.dim, args.format)
    except (DomainError, ResourceLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
