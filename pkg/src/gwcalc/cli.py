"""Command-line front end: exact values in, deterministic JSON tables out.

Machine-readable JSON goes to stdout; a one-line human summary goes to
stderr.  Exit codes: 0 for ok or a vanishing result, 1 for usage or
parse errors, 2 for unsupported queries, 3 for violated hypotheses.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import degeneration, partitions, quantum, relative, ring
from .errors import HypothesisViolated, Inapplicable, UnsupportedQuery

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNSUPPORTED = 2
EXIT_HYPOTHESIS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"usage error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(payload: dict, summary: str) -> None:
    print(json.dumps(payload, sort_keys=True))
    print(summary, file=sys.stderr)


def _parse_insertions(space: ring.Space, text: str) -> list[ring.RingElement]:
    if not text:
        return []
    return [ring.by_label(space, chunk) for chunk in text.split(",")]


def _parse_bundle(text: str) -> relative.BundleSpec:
    """Bundle descriptors look like "p1:c1=1" or "pt:c1=0"."""
    head, _, tail = text.rpartition(":")
    if not head or not tail.startswith("c1="):
        raise ValueError(f"bundle descriptor {text!r} needs a ':c1=<int>' suffix")
    return relative.BundleSpec(ring.make_space(head), int(tail[3:]))


def _parse_rel_insertion(space: ring.Space, chunk: str):
    """Relative insertions: "zs:<label>" or "pb:<label>", with an optional
    "@tau<d>" descendent suffix on zero-section insertions."""
    chunk = chunk.strip()
    psi = 0
    if "@tau" in chunk:
        chunk, _, tau = chunk.partition("@tau")
        d = int(tau)
        if d < 1:
            raise ValueError("descendent index must be at least 1")
        psi = d - 1
    kind, _, label = chunk.partition(":")
    if kind == "zs":
        return relative.ZeroSection(ring.by_label(space, label), psi)
    if kind == "pb":
        if psi:
            raise ValueError("descendents only attach to zero-section insertions")
        return relative.Pullback(ring.by_label(space, label))
    raise ValueError(f"relative insertion {chunk!r} needs a zs: or pb: prefix")


def _cmd_abs(args) -> int:
    space = ring.make_space(args.space)
    insertions = _parse_insertions(space, args.insertions)
    value = quantum.gw_invariant(space, args.degree, insertions)
    _emit(
        {"status": "ok", "value": str(value)},
        f"<{args.insertions}>_{args.degree} on {space} = {value}",
    )
    return EXIT_OK


def _cmd_nd(args) -> int:
    if args.max < 1:
        raise ValueError("--max must be at least 1")
    table = {str(d): str(quantum.wdvv_nd(d)) for d in range(1, args.max + 1)}
    _emit(table, f"plane-curve counts through 3d-1 points, d <= {args.max}")
    return EXIT_OK


def _cmd_ring(args) -> int:
    space = ring.make_space(args.space)
    if args.cup:
        a_text, b_text = args.cup.split(",", 1)
        product = ring.cup(ring.by_label(space, a_text), ring.by_label(space, b_text))
        _emit(
            {"status": "ok", "value": ring.element_to_json(product)},
            f"{a_text} cup {b_text} = {product}",
        )
        return EXIT_OK
    if args.dual:
        duals = ring.dual_basis(space)
        table = {bc.label: duals[bc.index].label for bc in ring.basis(space)}
        _emit(table, f"dual basis of {space}")
        return EXIT_OK
    listing = {
        bc.label: bc.real_degree for bc in ring.basis(space)
    }
    _emit(listing, f"basis of {space} with real degrees")
    return EXIT_OK


def _cmd_rel(args) -> int:
    bundle = _parse_bundle(args.bundle)
    insertions = [
        _parse_rel_insertion(bundle.base, chunk)
        for chunk in (args.insertions.split(",") if args.insertions else [])
    ]
    text = args.cls.strip().upper()
    if text.endswith("F"):
        s = int(text[:-1])
        mu = partitions.parse_partition(bundle.base, args.partition)
        query = relative.make_fiber_query(bundle, s, insertions, mu)
    elif text.endswith("A"):
        if args.partition.strip() not in ("", "empty", "()"):
            raise ValueError("section classes only support the empty partition")
        query = relative.make_section_query(bundle, int(text[:-1]), insertions)
    else:
        raise ValueError(f"curve class {args.cls!r} must end in F (fiber) or A (section)")
    value, reason = relative.relative_invariant_with_reason(query)
    if reason is not None:
        _emit(
            {"status": "vanishes", "value": "0", "reason": reason},
            f"vanishes: {reason}",
        )
        return EXIT_OK
    _emit({"status": "ok", "value": str(value)}, f"relative invariant = {value}")
    return EXIT_OK


def _default_verify_cases(cut, max_degree: int):
    """Deterministic battery for the plane/line testbed."""
    z = cut.divisor.divisor
    x = cut.divisor.ambient
    pt_x = ring.point_class(x)
    cases = []
    for degree in range(1, max_degree + 1):
        if degree == 1:
            cases.append((degree, (pt_x, pt_x), (ring.unit(z),)))
            cases.append((degree, (pt_x,), (ring.point_class(z),)))
        else:
            cases.append((degree, (pt_x,) * (3 * degree - 1), (ring.unit(z),)))
    return cases


def _cmd_verify(args) -> int:
    if args.what != "comparison":
        raise ValueError("only 'comparison' verification is available")
    cut = degeneration.testbed_cut(args.testbed)
    z = cut.divisor.divisor
    if args.alphas or args.betas:
        x = cut.divisor.ambient
        alphas = _parse_insertions(x, args.alphas)
        betas = _parse_insertions(z, args.betas)
        report = degeneration.verify_comparison(cut, args.degree, alphas, betas)
        payload = report.to_json(include_terms=args.verbose)
        _emit(payload, f"lhs={report.lhs} rhs={report.rhs} equal={report.equal}")
        return EXIT_OK if report.status == "ok" else EXIT_UNSUPPORTED
    if args.testbed == "p1-pt":
        m = args.points
        if m < 2:
            raise ValueError("--points must be at least 2")
        x = cut.divisor.ambient
        alphas = [ring.point_class(x)] * (m - 1)
        betas = [ring.unit(z)]
        report = degeneration.verify_comparison(cut, 1, alphas, betas)
        payload = {"equal": report.equal, "lhs": str(report.lhs), "rhs": str(report.rhs)}
        if args.verbose:
            payload["terms"] = report.to_json()["terms"]
        _emit(payload, f"{m}-point identity on the line: equal={report.equal}")
        return EXIT_OK if report.status == "ok" else EXIT_UNSUPPORTED
    cases = _default_verify_cases(cut, args.max_degree)
    reports = [
        degeneration.verify_comparison(cut, d, alphas, betas)
        for d, alphas, betas in cases
    ]
    ok = all(r.status == "ok" for r in reports)
    payload = {
        "testbed": args.testbed,
        "equal": all(r.equal for r in reports if r.equal is not None) and ok,
        "cases": [r.to_json(include_terms=args.verbose) for r in reports],
    }
    _emit(payload, f"{len(reports)} comparison cases, equal={payload['equal']}")
    return EXIT_OK if ok else EXIT_UNSUPPORTED


def _cmd_solve(args) -> int:
    if args.what != "relative":
        raise ValueError("only 'relative' solving is available")
    cut = degeneration.testbed_cut(args.testbed)
    z = cut.divisor.divisor
    x = cut.divisor.ambient
    alphas = _parse_insertions(x, args.alphas)
    betas = _parse_insertions(z, args.betas)
    table = degeneration.solve_relative(cut, args.degree, alphas, betas)
    rows = sorted(
        (partitions.partition_to_text(mu), str(v)) for mu, v in table.items()
    )
    _emit(
        {"status": "ok", "table": [{"partition": p, "value": v} for p, v in rows]},
        f"solved {len(rows)} relative invariants",
    )
    return EXIT_OK


def _cmd_lift(args) -> int:
    cut = degeneration.testbed_cut(args.testbed)
    result = degeneration.rc_lift(cut, args.degree, (), args.k, ())
    payload = {
        "status": "ok",
        "stage": result.stage,
        "value": str(result.value),
        "query": {
            "space": str(result.query.space),
            "degree": result.query.degree,
            "insertions": [str(i) for i in result.query.insertions],
        },
    }
    _emit(payload, f"lifted witness ({result.stage}) with value {result.value}")
    return EXIT_OK


def _cmd_rc(args) -> int:
    space = ring.make_space(args.space)
    witness = quantum.rc_certificate(space, args.k, args.max_degree)
    if witness is None:
        _emit(
            {"status": "none", "k": args.k, "max_degree": args.max_degree},
            "no certificate found in the search range",
        )
        return EXIT_OK
    payload = {
        "status": "ok",
        "degree": witness.query.degree,
        "insertions": [str(i) for i in witness.query.insertions],
        "value": str(witness.value),
    }
    _emit(payload, f"certificate in degree {witness.query.degree}: {witness.value}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="gw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_abs = sub.add_parser("abs", help="absolute invariant")
    p_abs.add_argument("--space", required=True)
    p_abs.add_argument("--degree", type=int, required=True)
    p_abs.add_argument("--insertions", default="")
    p_abs.set_defaults(fn=_cmd_abs)

    p_nd = sub.add_parser("nd", help="plane-curve count table")
    p_nd.add_argument("--max", type=int, required=True)
    p_nd.set_defaults(fn=_cmd_nd)

    p_ring = sub.add_parser("ring", help="basis, cup products, duals")
    p_ring.add_argument("--space", required=True)
    p_ring.add_argument("--cup", default="")
    p_ring.add_argument("--dual", action="store_true")
    p_ring.set_defaults(fn=_cmd_ring)

    p_rel = sub.add_parser("rel", help="relative invariant of a bundle")
    p_rel.add_argument("--bundle", required=True)
    p_rel.add_argument("--class", dest="cls", required=True)
    p_rel.add_argument("--partition", default="")
    p_rel.add_argument("--insertions", default="")
    p_rel.set_defaults(fn=_cmd_rel)

    p_verify = sub.add_parser("verify", help="verify identities on a testbed")
    p_verify.add_argument("what")
    p_verify.add_argument("--testbed", required=True)
    p_verify.add_argument("--points", type=int, default=3)
    p_verify.add_argument("--max-degree", type=int, default=1)
    p_verify.add_argument("--degree", type=int, default=1)
    p_verify.add_argument("--alphas", default="")
    p_verify.add_argument("--betas", default="")
    p_verify.add_argument("--verbose", action="store_true")
    p_verify.set_defaults(fn=_cmd_verify)

    p_solve = sub.add_parser("solve", help="solve for relative invariants")
    p_solve.add_argument("what")
    p_solve.add_argument("--testbed", required=True)
    p_solve.add_argument("--degree", type=int, default=1)
    p_solve.add_argument("--alphas", default="")
    p_solve.add_argument("--betas", required=True)
    p_solve.set_defaults(fn=_cmd_solve)

    p_lift = sub.add_parser("lift", help="divisor-to-ambient witness lift")
    p_lift.add_argument("--testbed", required=True)
    p_lift.add_argument("--degree", type=int, default=1)
    p_lift.add_argument("--k", type=int, required=True)
    p_lift.set_defaults(fn=_cmd_lift)

    p_rc = sub.add_parser("rc", help="point-constrained certificate search")
    p_rc.add_argument("--space", required=True)
    p_rc.add_argument("--k", type=int, required=True)
    p_rc.add_argument("--max-degree", type=int, default=2)
    p_rc.set_defaults(fn=_cmd_rc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (HypothesisViolated,) as exc:
        _emit({"status": "hypothesis-violated", "reason": str(exc)}, f"refused: {exc}")
        return EXIT_HYPOTHESIS
    except Inapplicable as exc:
        _emit({"status": "hypothesis-violated", "reason": str(exc)}, f"refused: {exc}")
        return EXIT_HYPOTHESIS
    except UnsupportedQuery as exc:
        _emit({"status": "unsupported", "reason": str(exc)}, f"unsupported: {exc}")
        return EXIT_UNSUPPORTED
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
