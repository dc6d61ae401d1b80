"""``ramsey-bounds`` command line front end.

Usage:
    ramsey-bounds bound K [K ...]   [--format markdown|csv|json]
    ramsey-bounds table             [--format ...]
    ramsey-bounds ratio R_MAX K     [--format ...] [--d N]
    ramsey-bounds verify {pigeonhole,oracle,search,all} [--budget N] [--force]
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import bounds as B
from . import oracles as O
from .errors import RamseyBoundsError

TABLE_ROWS = [(3, 4), (4, 4), (5, 4), (3, 5), (4, 5), (3, 6)]
TABLE_COLUMNS = ["r", "k", "M_upper", "M", "w_lower", "w", "T", "C"]
BOUND_COLUMNS = TABLE_COLUMNS + ["php", "M_formula", "verify"]
RATIO_COLUMNS = ["r", "k", "ratio", "ratio_decimal", "bracket", "bracket_decimal"]
FORMATS = ("markdown", "csv", "json")


def render(value) -> str:
    """Full decimal rendering; ``None`` becomes the placeholder ``-``."""
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, tuple):
        return " ".join(map(str, value))
    return str(value)


def decimal12(value: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 80
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return str(d.quantize(Decimal("1e-12")))


@dataclass
class OutputDocument:
    format: str
    columns: list[str]
    rows: list[dict[str, str]]
    command: str
    extra: dict[str, str] = field(default_factory=dict)

    def render(self) -> str:
        if self.format == "json":
            doc = {"command": self.command, "columns": self.columns, "rows": self.rows}
            if self.extra:
                doc["constants"] = self.extra
            return json.dumps(doc, indent=2) + "\n"
        if self.format == "csv":
            out = _csv(self.columns, [[row[c] for c in self.columns] for row in self.rows])
            if self.extra:
                out += "\n" + _csv(["constant", "value"], list(self.extra.items()))
            return out
        out = _markdown(self.columns, [[row[c] for c in self.columns] for row in self.rows])
        if self.extra:
            out += "\n" + _markdown(["constant", "value"], list(self.extra.items()))
        return out


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _markdown(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _report_row(report: B.BoundReport, columns: Sequence[str]) -> dict[str, str]:
    values = {
        "r": report.r,
        "k": report.k,
        "M_upper": report.M_upper,
        "M": report.M,
        "w_lower": report.w_lower,
        "w": report.w,
        "T": report.T,
        "C": report.C,
        "php": report.php,
        "M_formula": report.M_formula,
        "verify": None if report.M_formula is None else
                  ("ok" if report.M_formula == report.M else "mismatch"),
    }
    return {c: render(values[c]) for c in columns}


def cmd_bound(signature: Sequence[int], fmt: str = "markdown") -> OutputDocument:
    report = B.bound_report(signature)
    return OutputDocument(fmt, BOUND_COLUMNS, [_report_row(report, BOUND_COLUMNS)], "bound")


def cmd_table(fmt: str = "markdown") -> OutputDocument:
    rows = [_report_row(B.bound_report([k] * r), TABLE_COLUMNS) for r, k in TABLE_ROWS]
    return OutputDocument(fmt, TABLE_COLUMNS, rows, "table")


def cmd_ratio(r_max: int, k: int, fmt: str = "markdown", d: int = 4) -> OutputDocument:
    if r_max < 3 or k < 3:
        raise RamseyBoundsError("ratio needs r_max >= 3 and k >= 3")
    rows = []
    for r in range(3, r_max + 1):
        ratio = B.asympt_ratio(r, k)
        bracket = B.ratio_bracket(r)
        rows.append({
            "r": str(r),
            "k": str(k),
            "ratio": f"{ratio.numerator}/{ratio.denominator}",
            "ratio_decimal": decimal12(ratio),
            "bracket": f"{bracket.numerator}/{bracket.denominator}",
            "bracket_decimal": decimal12(bracket),
        })
    consts = B.asympt_constants(d)
    extra = {
        "d": str(d),
        "(3+e)/2": str(consts.main),
        "(3-e)/2": str(consts.waste),
        "(3+e)/2-d/48": str(consts.improved),
    }
    return OutputDocument(fmt, RATIO_COLUMNS, rows, "ratio", extra)


# -- verify ------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def _pigeonhole_checks(budget: int, force: bool) -> list[Check]:
    count = failures = 0
    for r in range(1, 5):
        quota_max = 4 if r <= 3 else 3
        for quotas in itertools.product(range(1, quota_max + 1), repeat=r):
            for total in range(21):
                for sizes in O.compositions(total, r):
                    count += 1
                    if not O.php_check(sizes, quotas):
                        failures += 1
    examples = O.php_check([2, 3], [3, 3]) and O.php_check([2, 2], [3, 3])
    return [
        Check("pigeonhole grid (sum sizes <= 20, r <= 4)", failures == 0,
              f"{count} cases, {failures} failures"),
        Check("pigeonhole examples", examples, "sizes [2,3] and [2,2] with quotas [3,3]"),
    ]


def oracle_grid() -> list[tuple[int, ...]]:
    """Ordered inputs with entries in [2,5], length <= 4 and sum(k - 2) <= 8."""
    grid = []
    for length in range(1, 5):
        for ks in itertools.product(range(2, 6), repeat=length):
            if sum(k - 2 for k in ks) <= 8:
                grid.append(ks)
    return grid


def _oracle_checks(budget: int, force: bool) -> list[Check]:
    grid = oracle_grid()
    bad = [ks for ks in grid if O.naive_M_w(ks) != B.M_and_w(ks)]
    bad_php = [ks for ks in grid if B.php_bound(ks) != B.M(ks) - B.w(ks)]
    return [
        Check("naive M,w agree with memoized engine", not bad,
              f"{len(grid)} inputs, {len(bad)} mismatches"),
        Check("php_bound = M - w", not bad_php, f"{len(grid)} inputs, {len(bad_php)} mismatches"),
    ]


def _search_checks(budget: int, force: bool) -> list[Check]:
    targets = (3, 3)
    checks = []
    outcomes = {}
    for n in range(2, 7):
        space = O.search_space_size(n, targets)
        if space > budget and not force:
            checks.append(Check(f"search n={n}", False,
                                f"space {space} exceeds budget {budget}; pass --force"))
            return checks
        outcomes[n] = O.ramsey_witness_search(n, targets, None if force else budget)
    for n, out in outcomes.items():
        detail = f"{out.kind.value}, {out.colorings_examined} examined"
        if out.witness is not None:
            detail += f", witness {out.witness.serialize()}"
        checks.append(Check(f"search K_{n} targets 3,3", out.kind is not O.Outcome.BUDGET_EXCEEDED, detail))
    forced = [n for n, out in outcomes.items() if out.kind is O.Outcome.FORCED]
    least = min(forced) if forced else None
    php = B.php_bound(targets)
    checks.append(Check(
        "witness at n=5, forced at n=6",
        outcomes[5].kind is O.Outcome.WITNESS and outcomes[6].kind is O.Outcome.FORCED,
        f"least forced n = {least}",
    ))
    checks.append(Check("least forced n <= php_bound((3,3))", least is not None and least <= php,
                        f"{least} <= {php}"))
    return checks


SUITES: dict[str, Callable[[int, bool], list[Check]]] = {
    "pigeonhole": _pigeonhole_checks,
    "oracle": _oracle_checks,
    "search": _search_checks,
}


def cmd_verify(suite: str, budget: int = O.DEFAULT_BUDGET, force: bool = False) -> tuple[int, str]:
    names = list(SUITES) if suite == "all" else [suite]
    lines = []
    ok = True
    for name in names:
        checks = SUITES[name](budget, force)
        for c in checks:
            ok &= c.passed
            lines.append(f"{'PASS' if c.passed else 'FAIL'} [{name}] {c.name}: {c.detail}")
    lines.append("ALL PASS" if ok else "FAILURES")
    return (0 if ok else 1), "\n".join(lines) + "\n"


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--d", type=int, default=4, help="offset d = 66 - R_4(3)")
    common.add_argument("--budget", type=int, default=O.DEFAULT_BUDGET)
    common.add_argument("--force", action="store_true", help="allow search spaces above the budget")

    parser = argparse.ArgumentParser(prog="ramsey-bounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("bound", parents=[common], help="bounds for one target tuple")
    p.add_argument("ks", type=int, nargs="+")
    sub.add_parser("table", parents=[common], help="the six-row comparison table")
    p = sub.add_parser("ratio", parents=[common], help="asymptotic ratio of the main term")
    p.add_argument("r_max", type=int)
    p.add_argument("k", type=int)
    p = sub.add_parser("verify", parents=[common], help="run oracle suites")
    p.add_argument("suite", choices=[*SUITES, "all"])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bound":
            out = cmd_bound(args.ks, args.format).render()
        elif args.command == "table":
            out = cmd_table(args.format).render()
        elif args.command == "ratio":
            out = cmd_ratio(args.r_max, args.k, args.format, args.d).render()
        else:
            status, out = cmd_verify(args.suite, args.budget, args.force)
            sys.stdout.write(out)
            return status
    except RamseyBoundsError as exc:
        print(f"ramsey-bounds: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
