"""ReportDocument v1 and the summary table for 1-node adversaries."""

from __future__ import annotations

from fractions import Fraction

from . import schemes
from .field import PrimeField, make_field
from .schemes import SchemeResult
from .verifier import Verdict, fraction_str, outer_bound, verify_all

FORMAT = "ccn-report"
VERSION = "v1"


def scheme_row(result: SchemeResult, verdict: Verdict, oracle: str = "not run") -> dict:
    row = {"scheme": result.name, "params": dict(result.params), "field": verdict.p}
    row.update(verdict.to_dict())
    row["oracle"] = oracle
    return row


def document(rows: list[dict]) -> dict:
    return {"format": FORMAT, "version": VERSION, "rows": rows}


def inner_bound(orientation: str, m: int, h: int) -> Fraction:
    """Achievable rates the table lists for a 1-node adversary."""
    if orientation == "directed":
        return Fraction((h - 1) ** 2, h)
    if orientation == "undirected":
        return Fraction((h - 1) * (m - h + 1), m - h + 2)
    if orientation == "bidirected":
        return Fraction(h - 1)
    raise ValueError(f"unknown orientation {orientation!r}")


def best_scheme(orientation: str, m: int, h: int) -> tuple[str, dict]:
    if orientation == "directed":
        if h == 2:
            return "hadamard-h2", {"m": m}
        if h == 3 and m <= 6:
            return "routing-h3", {"m": m}
        if m == h + 1:
            return "plus-one", {"h": h}
        raise ValueError(f"no directed scheme implemented for ({m},{h})")
    if orientation == "undirected":
        return "undirected", {"m": m, "h": h}
    return "bidirected-node", {"m": m, "h": h}


TABLE1_CASES = [(m, h) for h in (2, 3) for m in range(h + 1, 7)]


def table1(F: PrimeField | None = None, cases=TABLE1_CASES) -> dict:
    F = F or make_field()
    rows = []
    for orientation in ("directed", "undirected", "bidirected"):
        for m, h in cases:
            name, params = best_scheme(orientation, m, h)
            result = schemes.build(name, params, F)
            verdict = verify_all(result.trace, result.adversary)
            inner = inner_bound(orientation, m, h)
            outer = outer_bound(orientation, m, h, "node", 1)
            row = {
                "topology": orientation,
                "m": m,
                "h": h,
                "scheme": name,
                "params": params,
                "field": F.p,
                "achieved": fraction_str(verdict.rate),
                "inner_bound": fraction_str(inner),
                "outer_bound": fraction_str(outer),
                "all_decodable": verdict.all_decodable,
                "all_secure": verdict.all_secure,
                "adversary_sets": len(verdict.secrecy),
                "match": verdict.rate == inner and verdict.passed and inner <= outer,
                "notes": verdict.notes,
            }
            rows.append(row)
    return document(rows)


def format_table(doc: dict) -> str:
    lines = [f"{'topology':<11}{'(m,h)':<7}{'scheme':<17}{'achieved':>9}{'inner':>7}{'outer':>7}  ok"]
    for r in doc["rows"]:
        mark = "yes" if r["match"] else "MISMATCH"
        lines.append(
            f"{r['topology']:<11}{'(%d,%d)' % (r['m'], r['h']):<7}{r['scheme']:<17}"
            f"{r['achieved']:>9}{r['inner_bound']:>7}{r['outer_bound']:>7}  {mark}"
        )
    return "\n".join(lines)
