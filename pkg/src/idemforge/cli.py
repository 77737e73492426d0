"""Command-line surface: generate, verify, inspect factors/parameters, and
export minimal-code summaries, with stable text and JSON formats.

Exit codes: 0 success, 1 invalid input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .codes import DEFAULT_DISTANCE_BUDGET, code_summary, summaries_for
from .engine import METHODS, dispatch
from .errors import IdemforgeError, InvariantViolation, UsageError
from .fields import get_prime_field
from .polys import CyclicRingElement
from .structure import (
    DEFAULT_MAX_N,
    DEFAULT_MAX_SPLITTING_DEGREE,
    cyclotomic_cosets,
    expected_idempotent_count,
    factor_xn_minus_1,
    instance_parameters,
)
from .verifier import verify_system

SCHEMA = "idemforge/1"


def render_poly(coeffs) -> str:
    """Descending-power rendering with ascending-indexed input coefficients."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append("x" if e == 1 else f"x^{e}")
        else:
            terms.append(f"{c}*x" if e == 1 else f"{c}*x^{e}")
    return " + ".join(terms) if terms else "0"


def _params_json(record):
    if record.params is None:
        return None
    if record.kind == "second-type":
        return {"j": record.params[0]}
    if record.kind == "third-type":
        return {"s": record.params[0], "l": record.params[1]}
    return None


def build_document(instance, records) -> dict:
    return {
        "schema": SCHEMA,
        "q": instance.q,
        "p": instance.p,
        "k": instance.k,
        "n": instance.n,
        "t": instance.t,
        "m": instance.m,
        "method": records[0].method if records else "none",
        "idempotents": [
            {
                "label": r.label,
                "kind": r.kind,
                "params": _params_json(r),
                "coeffs": list(r.value.int_coeffs()),
            }
            for r in records
        ],
    }


def render_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse_document(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise UsageError(f"document does not carry schema {SCHEMA!r}")
    return doc


def records_from_document(doc: dict):
    from .engine import IdempotentRecord

    try:
        q, p, k = int(doc["q"]), int(doc["p"]), int(doc["k"])
        entries = doc["idempotents"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed document: {exc}") from exc
    instance = instance_parameters(q, p, k)
    field = get_prime_field(q)
    records = []
    for entry in entries:
        coeffs = entry.get("coeffs")
        if not isinstance(coeffs, list) or len(coeffs) != instance.n:
            raise UsageError("entry coefficient list must have exactly n entries")
        value = CyclicRingElement.from_ints(field, coeffs)
        params = entry.get("params")
        if isinstance(params, dict):
            params = tuple(params.values())
        records.append(
            IdempotentRecord(
                value=value,
                label=entry.get("label", "?"),
                kind=entry.get("kind", "generic"),
                params=params,
                method=doc.get("method", "unknown"),
            )
        )
    return instance, records


def _write_out(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _instance_from_args(args):
    return instance_parameters(args.q, args.p, args.k, max_n=args.max_n)


def cmd_gen(args) -> int:
    instance = _instance_from_args(args)
    records = dispatch(
        instance, args.method, max_splitting_degree=args.max_splitting_degree
    )
    report = None
    if args.verify:
        report = verify_system(
            records, instance, max_splitting_degree=args.max_splitting_degree
        )
    doc = build_document(instance, records)
    if report is not None:
        doc["verification"] = {
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in report.checks
            ],
            "passed": report.passed,
        }
    if args.codes:
        doc["codes"] = [
            {
                "label": s.label,
                "dimension": s.dimension,
                "generator": list(s.generator.int_coeffs()),
            }
            for s in summaries_for(records, instance.n, instance.q)
        ]
    if args.format == "json":
        _write_out(render_document(doc), args.out)
    else:
        lines = [instance.describe() + f" method={records[0].method}"]
        for r in records:
            lines.append(f"{r.label} = {render_poly(r.value.int_coeffs())}")
        if args.codes:
            for entry in doc["codes"]:
                lines.append(
                    f"code {entry['label']}: [{instance.n},{entry['dimension']}] "
                    f"g = {render_poly(entry['generator'])}"
                )
        if report is not None:
            lines.append(report.render_text())
        _write_out("\n".join(lines) + "\n", args.out)
    return 0 if report is None or report.passed else 2


def cmd_verify(args) -> int:
    if args.input:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        try:
            doc = parse_document(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"input is not valid JSON: {exc}") from exc
        instance, records = records_from_document(doc)
    else:
        if args.q is None or args.p is None or args.k is None:
            raise UsageError("verify needs --q/--p/--k or --in")
        instance = _instance_from_args(args)
        records = dispatch(
            instance, args.method, max_splitting_degree=args.max_splitting_degree
        )
    report = verify_system(
        records,
        instance,
        with_primitivity=True,
        against_oracle=(args.against == "euclid"),
        max_splitting_degree=args.max_splitting_degree,
    )
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(report.render_text() + "\n")
    return 0 if report.passed else 2


def cmd_factors(args) -> int:
    instance = _instance_from_args(args)
    factors = factor_xn_minus_1(instance, max_splitting_degree=args.max_splitting_degree)
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "q": instance.q,
            "p": instance.p,
            "k": instance.k,
            "factors": [
                {"d": d, "degree": f.degree, "coeffs": list(f.int_coeffs())}
                for d, f in factors
            ],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for d, f in factors:
            sys.stdout.write(f"d={d} deg={f.degree}: {render_poly(f.int_coeffs())}\n")
    return 0


def cmd_params(args) -> int:
    instance = _instance_from_args(args)
    count = expected_idempotent_count(instance)
    sys.stdout.write(f"t={instance.t} m={instance.m} count={count}\n")
    sys.stdout.write(f"n={instance.n}\n")
    for d, (r_d, s_d) in cyclotomic_cosets(instance.q, instance.n).census().items():
        sys.stdout.write(f"d={d}: factors={r_d} degree={s_d}\n")
    return 0


def cmd_code(args) -> int:
    instance = _instance_from_args(args)
    records = dispatch(
        instance, args.method, max_splitting_degree=args.max_splitting_degree
    )
    matches = [r for r in records if r.label == args.label]
    if not matches:
        known = ", ".join(r.label for r in records)
        raise UsageError(f"no idempotent labeled {args.label!r}; known labels: {known}")
    summary = code_summary(
        matches[0],
        instance.n,
        instance.q,
        with_distance=args.min_distance,
        budget=args.budget,
    )
    sys.stdout.write(
        f"{summary.label}: {summary.params()} g = {render_poly(summary.generator.int_coeffs())}\n"
    )
    return 0


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idemforge",
        description="Primitive idempotents and minimal cyclic codes of F_q[x]/(x^(p^k)-1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_instance=True, instance_required=True):
        if with_instance:
            sp.add_argument("--q", type=int, required=instance_required, help="prime field size")
            sp.add_argument("--p", type=int, required=instance_required, help="prime base of the ring length")
            sp.add_argument("--k", type=int, required=instance_required, help="exponent: n = p^k")
        sp.add_argument(
            "--max-n",
            type=int,
            default=_env_int("IDEMFORGE_MAX_N", DEFAULT_MAX_N),
            help="reject instances with n beyond this cap",
        )
        sp.add_argument(
            "--max-splitting-degree",
            type=int,
            default=_env_int("IDEMFORGE_MAX_SPLITTING_DEGREE", DEFAULT_MAX_SPLITTING_DEGREE),
            help="reject factorizations whose splitting field degree exceeds this cap",
        )

    gen = sub.add_parser("gen", help="generate the primitive idempotents")
    add_common(gen)
    gen.add_argument("--method", choices=METHODS, default="auto")
    gen.add_argument("--format", choices=("text", "json"), default="text")
    gen.add_argument("--out", default=None, help="output file ('-' for stdout)")
    gen.add_argument("--verify", action="store_true", help="embed a verification report")
    gen.add_argument("--codes", action="store_true", help="embed minimal-code summaries")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="verify an idempotent system")
    add_common(ver, instance_required=False)
    ver.add_argument("--method", choices=METHODS, default="auto")
    ver.add_argument("--against", choices=("none", "euclid"), default="none")
    ver.add_argument("--in", dest="input", default=None, help="JSON document ('-' for stdin)")
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.set_defaults(func=cmd_verify)

    fac = sub.add_parser("factors", help="list the irreducible factors of x^n - 1")
    add_common(fac)
    fac.add_argument("--format", choices=("text", "json"), default="text")
    fac.set_defaults(func=cmd_factors)

    par = sub.add_parser("params", help="print instance parameters and the coset census")
    add_common(par)
    par.set_defaults(func=cmd_params)

    code = sub.add_parser("code", help="minimal cyclic code for one idempotent")
    add_common(code)
    code.add_argument("--label", required=True)
    code.add_argument("--method", choices=METHODS, default="auto")
    code.add_argument("--min-distance", action="store_true")
    code.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    code.set_defaults(func=cmd_code)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 1
    except IdemforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
