"""Command-line entry point: ``parkext {grfrob,verify,extend}``.

Exit status: 0 success, 1 failed verdict (or a verdict contradicting
``--expect``), 2 usage or guard error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__
from .characters import (
    GradedSymFunc,
    SymFunc,
    coset_character,
    frobenius,
    irreducible_character,
    park_character_direct,
    park_grfrob,
)
from .checks import SUITES, cached_span, restricted_character, run_suite
from .combinatorics import Partition
from .extension import (
    FeasibilityResult,
    SearchBudgetExceeded,
    default_budget,
    extends_as_coset_sum,
    extends_to,
)
from .polyengine import DEFAULT_MAX_SUBGRAPHS, degree_character

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(map(str, lam))


def parse_partition(text: str) -> Partition:
    try:
        parts = tuple(int(p) for p in text.replace(" ", "").strip("()").split(",") if p)
    except ValueError as err:
        raise UsageError(f"bad partition {text!r}") from err
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise UsageError(f"{text!r} is not a partition")
    return parts


@dataclass
class Report:
    """One run's output: parameters, named verdicts and an optional table of terms.

    ``terms`` entries are ``{"partition": "3,1", "coeff": 2, "degree": 1}``.
    """

    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    verdicts: list[tuple[str, Any]] = field(default_factory=list)
    basis: str | None = None
    terms: list[dict[str, Any]] = field(default_factory=list)
    timing: float | None = None

    @property
    def passed(self) -> bool:
        return all(v for _, v in self.verdicts if isinstance(v, bool))

    def add_graded(self, f: GradedSymFunc) -> None:
        self.basis = f.pieces[0].basis
        for k, piece in enumerate(f.pieces):
            self.add_symfunc(piece, degree=k)

    def add_symfunc(self, f: SymFunc, degree: int = 0) -> None:
        self.basis = f.basis
        for lam, c in f.terms():
            self.terms.append({"partition": format_partition(lam), "coeff": c, "degree": degree})

    def graded(self) -> GradedSymFunc:
        if self.basis is None or not self.terms:
            raise ValueError("report carries no table")
        n = sum(parse_partition(self.terms[0]["partition"]))
        top = max(t["degree"] for t in self.terms)
        pieces = [dict() for _ in range(top + 1)]
        for t in self.terms:
            pieces[t["degree"]][parse_partition(t["partition"])] = t["coeff"]
        return GradedSymFunc([SymFunc(n, self.basis, p) for p in pieces])

    def to_dict(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "verdicts": [{"name": k, "value": v} for k, v in self.verdicts],
            "basis": self.basis,
            "terms": self.terms,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            verdicts=[(v["name"], v["value"]) for v in data["verdicts"]],
            basis=data.get("basis"),
            terms=data.get("terms", []),
            timing=data.get("timing"),
        )

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        lines += [f"{k}: {_text_value(v, 'true', 'false')}" for k, v in self.parameters.items()]
        lines += [f"verdict {k}: {_text_value(v, 'PASS', 'FAIL')}" for k, v in self.verdicts]
        if self.timing is not None:
            lines.append(f"seconds: {self.timing:.3f}")
        if self.terms:
            lines.append(f"basis: {self.basis}")
            if len({t['degree'] for t in self.terms}) > 1 or self.terms[0]["degree"]:
                lines.append(f"series: {self.graded()}")
            lines.append("")
            lines.append(f"{'degree':>6}  {'coeff':>6}  partition")
            for t in self.terms:
                lines.append(f"{t['degree']:>6}  {t['coeff']:>6}  {t['partition']}")
        return "\n".join(lines) + "\n"


def _text_value(v: Any, yes: str, no: str) -> str:
    if isinstance(v, bool):
        return yes if v else no
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


# -- commands -------------------------------------------------------------------------------


def cmd_grfrob(args: argparse.Namespace) -> tuple[Report, int]:
    n, ell, m = args.n, args.ell, args.m
    restricted = args.restricted or args.from_paths
    basis = args.basis or ("h" if restricted or ell != m else "s")
    if not restricted and ell != m:
        raise UsageError("only S_n acts when ell != m; pass --restricted")
    report = Report(
        "grfrob",
        {"n": n, "ell": ell, "m": m, "restricted": restricted},
    )
    if args.from_paths:
        graded = park_grfrob(n, ell, m)
    else:
        span = cached_span(n, ell, m, args.max_subgraphs)
        report.parameters["hilbert"] = span.hilbert()
        report.parameters["dim"] = span.dim
        pieces = []
        for k in range(span.top_degree + 1):
            chi = restricted_character(span, k) if restricted else degree_character(span, k, "S_n+1")
            pieces.append(frobenius(chi))
        graded = GradedSymFunc(pieces)
    report.add_graded(graded.convert(basis))
    return report, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[Report, int]:
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    if args.suite in ("main", "extremes", "tutte", "all") and args.max_n > args.max_span_n:
        raise UsageError(f"--max-n {args.max_n} exceeds the span guard --max-span-n {args.max_span_n}")
    report = Report("verify", {"suite": args.suite, "max_n": args.max_n, "ell": args.ell, "m": args.m})
    suites = SUITES if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite == "extremes" and args.ell != args.m:
            continue
        report.verdicts += run_suite(suite, args.max_n, args.ell, args.m, max_subgraphs=args.max_subgraphs)
    return report, EXIT_OK if report.passed else EXIT_FAIL


def _load_target(path: str) -> tuple[str, dict[Partition, int]]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    basis = data.get("basis")
    if basis not in ("s", "h"):
        raise UsageError(f"{path}: basis must be 's' or 'h'")
    coeffs: dict[Partition, int] = {}
    for t in data.get("terms", []):
        lam = parse_partition(str(t["partition"]))
        coeffs[lam] = coeffs.get(lam, 0) + int(t["coeff"])
    if not coeffs:
        raise UsageError(f"{path}: no terms")
    return basis, coeffs


def cmd_extend(args: argparse.Namespace) -> tuple[Report, int]:
    if args.park is not None:
        target_name, chi = f"park {args.park}", park_character_direct(args.park)
    elif args.coset is not None:
        lam = parse_partition(args.coset)
        target_name, chi = f"coset {format_partition(lam)}", coset_character(lam)
    elif args.irrep is not None:
        lam = parse_partition(args.irrep)
        target_name, chi = f"irrep {format_partition(lam)}", irreducible_character(lam)
    else:
        basis, coeffs = _load_target(args.file)
        n = {sum(lam) for lam in coeffs}
        if len(n) != 1:
            raise UsageError("target partitions must share one size")
        target_name, chi = f"file {args.file}", SymFunc(n.pop(), basis, coeffs).to_character()
    if args.N < chi.n:
        raise UsageError(f"--N {args.N} is smaller than n = {chi.n}")
    budget = args.budget if args.budget is not None else default_budget()
    report = Report(
        "extend",
        {"target": target_name, "n": chi.n, "N": args.N, "mode": args.mode, "budget": budget},
    )
    try:
        if args.mode == "coset":
            result: FeasibilityResult = extends_as_coset_sum(chi, args.N, budget=budget, max_N=args.max_N)
        else:
            result = extends_to(chi, args.N, budget=budget, max_N=args.max_N)
    except SearchBudgetExceeded as err:
        report.verdicts += [("outcome", "inconclusive"), ("nodes_explored", err.nodes_explored)]
        return report, EXIT_INCONCLUSIVE
    report.verdicts += [
        ("outcome", "feasible" if result.feasible else "infeasible"),
        ("nodes_explored", result.nodes_explored),
    ]
    if result.feasible:
        report.add_symfunc(SymFunc(args.N, "s" if args.mode == "irreducible" else "h", result.witness))
    status = EXIT_OK
    if args.expect is not None:
        matched = (args.expect == "feasible") == result.feasible
        report.verdicts.append(("expected", matched))
        status = EXIT_OK if matched else EXIT_FAIL
    return report, status


# -- argument parsing -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON record instead of text")
    common.add_argument("--output", metavar="PATH", help="write the report to PATH")
    common.add_argument("--threads", type=int, default=1, help="worker cap (computation is sequential)")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    common.add_argument(
        "--max-subgraphs", type=int, default=DEFAULT_MAX_SUBGRAPHS,
        help="guard on the number of ambient sub-multigraphs",
    )

    parser = argparse.ArgumentParser(prog="parkext", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grfrob", parents=[common], help="graded Frobenius character of the span")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--ell", type=int, default=1)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--basis", choices=("s", "h"))
    g.add_argument("--restricted", action="store_true", help="restrict to S_n")
    g.add_argument(
        "--from-paths", action="store_true",
        help="sum over Dyck paths instead of building the span (implies --restricted)",
    )
    g.set_defaults(handler=cmd_grfrob)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--max-span-n", type=int, default=5, help="guard on n for span-based suites")
    v.add_argument("--ell", type=int, default=1)
    v.add_argument("--m", type=int, default=1)
    v.set_defaults(handler=cmd_verify)

    e = sub.add_parser("extend", parents=[common], help="decide extension of an S_n character to S_N")
    target = e.add_mutually_exclusive_group(required=True)
    target.add_argument("--park", type=int, metavar="n", help="parking representation of S_n")
    target.add_argument("--coset", metavar="LAMBDA", help="coset module M^lambda, e.g. 3,2,2")
    target.add_argument("--irrep", metavar="LAMBDA", help="irreducible S^lambda")
    target.add_argument("--file", metavar="PATH", help="JSON record with basis and terms")
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--mode", choices=("irreducible", "coset"), default="irreducible")
    e.add_argument("--budget", type=int, help="DFS node budget (default from the environment or 10^8)")
    e.add_argument("--max-N", type=int, default=10, help="guard on N")
    e.add_argument("--expect", choices=("feasible", "infeasible"))
    e.set_defaults(handler=cmd_extend)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    start = time.perf_counter()
    try:
        report, status = args.handler(args)
    except ValueError as err:
        # covers UsageError and the guard errors (e.g. SpanTooLarge)
        print(f"parkext: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report.timing = time.perf_counter() - start
    text = report.to_json() if args.json else report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
