"""Command-line driver: build instances, run the check suite, emit certificates.

Exit codes: 0 pass, 1 check failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .checks import CHECKS, resolve, run_suite
from .closure import NotLocal, generate_algebra, local_anatomy
from .correspondence import HeisenbergProjAction, descend_action
from .exact import frac, matrix_from_json
from .heisenberg import HeisenbergMatRep
from .instances import build_example, structure_action
from .tautological import (
    StructureMatrix, algebra_from_structure_matrix, certify_inequivalent, generate_family,
    invariant_report, verify_certificate,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def certify_family(n: int, count_labels: int | Sequence, out_path: str | Path | None = None) -> dict:
    """Family members, all pairwise certificates and a realized action per member.

    ``count_labels`` is either a count (labels 1..count) or explicit labels.
    Writes the document to ``out_path`` when given and returns it.
    """
    labels = list(range(1, count_labels + 1)) if isinstance(count_labels, int) else list(count_labels)
    if len(labels) < 2:
        raise ValueError("certify_family needs at least two labels")
    family = generate_family(n, labels)
    members = []
    for lam, sm in zip(labels, family):
        rep, loc = algebra_from_structure_matrix(sm)
        members.append({"label": str(frac(lam)), "structure_matrix": sm.to_json(),
                        "algebra_dim": loc.dim, "action": structure_action(sm).to_json()})
    certificates = []
    for i, j in combinations(range(len(family)), 2):
        cert = certify_inequivalent(family[i], family[j]).to_json()
        cert["pair"] = [i, j]
        certificates.append(cert)
    doc = {"n": n, "members": members, "certificates": certificates}
    if out_path is not None:
        Path(out_path).write_text(json.dumps(doc, indent=1) + "\n")
    return doc


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=1, sort_keys=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None


def _structure_matrix(obj) -> StructureMatrix:
    if isinstance(obj, dict) and "structure_matrix" in obj:
        obj = obj["structure_matrix"]
    return StructureMatrix.from_json(obj)


def _generators(obj) -> list:
    """Matrices from a list of matrices, a representation or a projective action."""
    if isinstance(obj, list):
        return [matrix_from_json(m) for m in obj]
    if "generators" in obj:
        return [matrix_from_json(m) for m in obj["generators"]]
    if "rep" in obj:
        obj = obj["rep"]
    if "X" in obj:
        return HeisenbergMatRep.from_json(obj).basis
    if "entries" in obj:
        return [matrix_from_json(obj)]
    raise UsageError("expected a list of matrices, a representation or an action")


def _parse_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if a < 1 or b < a:
        raise UsageError(f"bad range {text!r}")
    return list(range(a, b + 1))


def cmd_build_example(args) -> int:
    _emit(build_example(args.n, args.k).to_json(), args.out)
    return EXIT_PASS


def cmd_closure(args) -> int:
    gens = _generators(_load(args.input))
    size = gens[0].rows if gens else None
    alg = generate_algebra(gens, size=size)
    try:
        _emit(local_anatomy(alg).to_json(), args.out)
    except NotLocal:
        _emit(alg.to_json(), args.out)
    return EXIT_PASS


def cmd_descend(args) -> int:
    act = HeisenbergProjAction.from_json(_load(args.input))
    _emit(descend_action(act).to_json(), args.out)
    return EXIT_PASS


def cmd_taut_from_matrix(args) -> int:
    sm = _structure_matrix(_load(args.input))
    rep, loc = algebra_from_structure_matrix(sm)
    _emit({"structure_matrix": sm.to_json(), "rep": rep.to_json(), "algebra": loc.to_json(),
           "action": structure_action(sm).to_json()}, args.out)
    return EXIT_PASS


def cmd_invariant(args) -> int:
    _emit(invariant_report(_structure_matrix(_load(args.input))), args.out)
    return EXIT_PASS


def cmd_certify(args) -> int:
    cert = certify_inequivalent(_structure_matrix(_load(args.left)),
                                _structure_matrix(_load(args.right))).to_json()
    if not verify_certificate(cert):
        raise AssertionError("emitted certificate does not re-verify")
    _emit(cert, args.out)
    return EXIT_PASS if cert["verdict"] == "inequivalent" else EXIT_FAIL


def cmd_certify_family(args) -> int:
    try:
        labels = [frac(x) for x in args.labels.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad label list {args.labels!r}") from None
    doc = certify_family(args.n, labels)
    _emit(doc, args.out)
    ok = all(c["verdict"] == "inequivalent" and verify_certificate(c) for c in doc["certificates"])
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        names = resolve([s.strip() for s in args.suite.split(",") if s.strip()])
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    sizes = _parse_range(args.n_range)
    reports = run_suite(names, sizes, seed=args.seed)
    doc = {"seed": args.seed, "sizes": sizes, "checks": names,
           "reports": [r.to_json(timings=args.timings) for r in reports]}
    _emit(doc, args.report)
    for r in reports:
        print(f"{r.status.upper():12s} {r.check_name:34s} {r.instance_description}: {r.summary}",
              file=sys.stderr)
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heistruct", description="Exact checks for Heisenberg group actions on projective space.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-example", help="projective action of the k-family example")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_build_example)

    for name, func, help_ in (("closure", cmd_closure, "associative closure and local anatomy"),
                              ("descend", cmd_descend, "descend a Heisenberg action to the quotient"),
                              ("taut-from-matrix", cmd_taut_from_matrix, "realize a structure matrix"),
                              ("invariant", cmd_invariant, "congruence invariant of a structure matrix")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--in", dest="input", required=True)
        s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("certify", help="inequivalence certificate for two structure matrices")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("certify-family", help="pairwise certificates for the lambda family")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify_family)

    s = sub.add_parser("verify", help="run named checks", epilog="checks: " + ", ".join(CHECKS))
    s.add_argument("--suite", required=True)
    s.add_argument("--n-range", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report")
    s.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical reports)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        # malformed or mathematically invalid input
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
