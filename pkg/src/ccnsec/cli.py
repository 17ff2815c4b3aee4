"""Command-line front end.

    ccnsec run ksc --m 3 --h 2 --out ksc32.json
    ccnsec verify ksc32.json --node 1
    ccnsec oracle ksc32.json --node A3 -p 3
    ccnsec table1
    ccnsec mincut --m 4 --h 3 --orientation undirected

Exit status: 0 all checks pass, 1 verification failure, 2 usage or parse
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report, schemes, traceio
from .field import FieldTooSmall, make_field
from .network import AdversarySpec, adversary_sets, build_ccn, build_fig2, mincut
from .oracle import DEFAULT_BUDGET, OracleBudgetExceeded, brute_force_oracle
from .schemes import SchemeParameterError
from .verifier import SetVerdict, Verdict, adversary_view, fraction_str, leakage, secrecy_check, verify_all

OK, FAIL, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _field_args(p: argparse.ArgumentParser, default):
    p.add_argument("-p", "--p", "--field", dest="field", type=int, default=default, help="prime field modulus")


def _adversary_args(p: argparse.ArgumentParser):
    p.add_argument("--adversary", choices=("node", "edge"), help="adversary kind (default: the one the trace was built for)")
    p.add_argument("--k", type=int, help="adversary strength")
    p.add_argument(
        "--node", action="append", default=[], metavar="N|ID",
        help="node adversary: an integer sets k, otherwise a node id to tap (repeatable, comma separated)",
    )
    p.add_argument("--edge", action="append", default=[], metavar="K|ID", help="edge adversary, as --node")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ccnsec", description="Secret multicast over canonical combination networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="build a scheme, verify it and write its trace")
    run.add_argument("scheme", choices=sorted(schemes.REGISTRY))
    run.add_argument("--m", type=int)
    run.add_argument("--h", type=int)
    run.add_argument("--q", type=int)
    run.add_argument("--k", type=int)
    run.add_argument("--variant", choices=("a", "b", "c", "d"))
    run.add_argument("--pads", choices=("corrected", "printed"), help="pad profile for routing-h3")
    _field_args(run, 13)
    run.add_argument("--out", type=Path, help="write the TraceDocument here")
    run.add_argument("--report", type=Path, help="write a ReportDocument here")

    ver = sub.add_parser("verify", help="verify a trace file; prints a ReportDocument")
    ver.add_argument("trace", type=Path)
    _adversary_args(ver)
    ver.add_argument("--out", type=Path)

    orc = sub.add_parser("oracle", help="exhaustive entropy check of a trace")
    orc.add_argument("trace", type=Path)
    _adversary_args(orc)
    _field_args(orc, None)
    orc.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum joint states to enumerate")

    tab = sub.add_parser("table1", help="rates for a 1-node adversary vs. the closed-form bounds")
    _field_args(tab, 13)
    tab.add_argument("--out", type=Path, help="write the ReportDocument here")
    tab.add_argument("--json", action="store_true", help="print JSON instead of the text table")

    mc = sub.add_parser("mincut", help="source-to-receiver mincuts")
    mc.add_argument("--m", type=int)
    mc.add_argument("--h", type=int, required=True)
    mc.add_argument("--q", type=int, default=0)
    mc.add_argument("--variant", choices=("a", "b", "c", "d"), help="single-receiver graph instead of a CCN")
    mc.add_argument("--orientation", choices=("directed", "undirected", "bidirected"), default="directed")
    return ap


def _split(values: list[str]) -> list[str]:
    return [x for v in values for x in v.split(",") if x]


def _adversary(args, trace) -> tuple[AdversarySpec, list[tuple[str, ...]] | None]:
    """The adversary spec and, when ids were named, the single tapped set."""
    nodes, edges = _split(args.node), _split(args.edge)
    if nodes and edges:
        raise UsageError("give --node or --edge, not both")
    default = (trace.origin or {}).get("adversary") or {"kind": "node", "k": 1}
    kind = args.adversary or ("node" if nodes else "edge" if edges else default["kind"])
    given = nodes or edges
    if given and kind != ("node" if nodes else "edge"):
        raise UsageError(f"--adversary {kind} conflicts with --{'node' if nodes else 'edge'}")
    k = args.k
    tapped = None
    if len(given) == 1 and given[0].isdigit():
        k = int(given[0])
    elif given:
        tapped = [tuple(given)]
        k = len(given)
    if k is None:
        k = default["k"] if kind == default["kind"] else 1
    spec = AdversarySpec(kind, k)
    pool = trace.network.nodes if kind == "node" else {e.id for e in trace.network.edges}
    for t in tapped or []:
        for x in t:
            if x not in pool:
                raise UsageError(f"unknown {kind} {x!r}")
    return spec, tapped


def _summary(v: Verdict) -> str:
    bad = [r for r, ok in v.decodable.items() if not ok]
    leaks = v.insecure()
    lines = [
        f"rate {fraction_str(v.rate)}  bound {fraction_str(v.bound) if v.bound is not None else 'none'}  field GF({v.p})",
        f"decodable at {len(v.decodable) - len(bad)}/{len(v.decodable)} receivers" + (f" (fails: {', '.join(bad)})" if bad else ""),
        f"secure against {len(v.secrecy) - len(leaks)}/{len(v.secrecy)} {v.adversary.k}-{v.adversary.kind} sets"
        + (f" (leaks: {', '.join('+'.join(s.tapped) + f'={s.leakage}' for s in leaks[:8])})" if leaks else ""),
    ]
    lines += [f"note: {n}" for n in v.notes]
    lines.append("PASS" if v.passed else "FAIL")
    return "\n".join(lines)


def _write_json(path: Path, doc: dict):
    path.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


def cmd_run(args) -> int:
    params = {n: getattr(args, n) for n in ("m", "h", "q", "k", "variant") if getattr(args, n) is not None}
    if args.pads:
        params["pads"] = args.pads
    result = schemes.build(args.scheme, params, make_field(args.field))
    verdict = verify_all(result.trace, result.adversary)
    if args.out:
        traceio.save(result.trace, args.out)
    if args.report:
        _write_json(args.report, report.document([report.scheme_row(result, verdict)]))
    print(f"{result.name} {result.params}")
    print(_summary(verdict))
    return OK if verdict.passed else FAIL


def cmd_verify(args) -> int:
    trace = traceio.load(args.trace)
    spec, tapped = _adversary(args, trace)
    verdict = verify_all(trace, spec)
    if tapped is not None:
        # the named set may lie outside the default pool (the source, say)
        ok, lk = secrecy_check(adversary_view(trace, tapped[0], spec.kind))
        verdict.secrecy = [SetVerdict(tapped[0], ok, lk)]
    origin = trace.origin or {}
    row = {"scheme": origin.get("scheme"), "params": origin.get("params"), "field": trace.p}
    row.update(verdict.to_dict())
    row["oracle"] = "not run"
    doc = report.document([row])
    text = json.dumps(doc, indent=1)
    if args.out:
        args.out.write_text(text + "\n", encoding="utf-8")
    print(text)
    print(_summary(verdict), file=sys.stderr)
    return OK if verdict.passed else FAIL


def cmd_oracle(args) -> int:
    trace = traceio.load(args.trace)
    if args.field is not None and args.field != trace.p:
        origin = trace.origin or {}
        if "scheme" not in origin:
            raise UsageError("a field override needs a trace that records its scheme")
        trace = schemes.build(origin["scheme"], origin["params"], make_field(args.field)).trace
    spec, tapped = _adversary(args, trace)
    sets = tapped if tapped is not None else adversary_sets(trace.network, spec)
    agree_all, secure_all = True, True
    for s in sets:
        res = brute_force_oracle(trace, s, spec.kind, args.budget)
        lk = leakage(adversary_view(trace, s, spec.kind))
        agree = res.information == lk and res.h_w == trace.message_dim
        agree_all &= agree
        secure_all &= res.secure
        print(
            f"{'+'.join(s)}: H(W)={res.h_w} log{trace.p}  H(W|V)={res.h_w_given_v} log{trace.p}  "
            f"rank leakage={lk}  {'agree' if agree else 'DISAGREE'}"
        )
    print(f"{len(sets)} set(s) over GF({trace.p}), {trace.p}^{trace.dim} states each: "
          f"{'agreement' if agree_all else 'DISAGREEMENT'}, {'secure' if secure_all else 'leaks'}")
    return OK if agree_all and secure_all else FAIL


def cmd_table1(args) -> int:
    doc = report.table1(make_field(args.field))
    if args.out:
        _write_json(args.out, doc)
    print(json.dumps(doc, indent=1) if args.json else report.format_table(doc))
    return OK if all(r["match"] for r in doc["rows"]) else FAIL


def cmd_mincut(args) -> int:
    if args.variant:
        net = build_fig2(args.variant, args.h, args.q)
    else:
        if args.m is None:
            raise UsageError("mincut needs --m for a CCN")
        net = build_ccn(args.m, args.h, args.orientation)
    cuts = {r: mincut(net, net.source, r) for r in net.receivers}
    for r, c in cuts.items():
        print(f"{r}: {c}")
    print(f"min {min(cuts.values())}")
    return OK


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "oracle": cmd_oracle, "table1": cmd_table1, "mincut": cmd_mincut}


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except OracleBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    except (UsageError, SchemeParameterError, FieldTooSmall, traceio.TraceFormatError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc.args[0] if isinstance(exc, KeyError) and exc.args else exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
