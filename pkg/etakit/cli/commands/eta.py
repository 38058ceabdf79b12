from argparse import Namespace
from typing import List, Tuple
import logging

from etakit.cli.dependencies import check_line, flag, get_corpus, key_values, positive_int
from etakit.core.exceptions import EtakitError
from etakit.models.eta import EtaReport, FamilyParams, Involution
from etakit.models.laurent import LaurentPoly, SymBracket
from etakit.models.quotient import EtaTilde
from etakit.models.report import RunReport
from etakit.services.eta import eta_service

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("n", "involution", "eta_tilde", "eta", "degree", "distinct")


def register(subparsers) -> None:
    parser = subparsers.add_parser("eta", help="compute the eta polynomial")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--file", help="leveled quotient file (path or corpus name)")
    source.add_argument("--family", nargs="+", metavar="KEY=VALUE", help="n=<n> inv=<tau|sigma>")
    source.add_argument("--table", action="store_true", help="closed-form table for both involutions")
    parser.add_argument("--max-n", default="10", help="last n in the table (default 10)")
    parser.set_defaults(handler=run)


def family_params(tokens: List[str]) -> FamilyParams:
    values = key_values(tokens, ("n", "inv"), "--family")
    try:
        involution = Involution(values["inv"])
    except ValueError:
        raise EtakitError(f"inv must be tau or sigma, got {values['inv']!r}")
    return FamilyParams(n=positive_int(values["n"], "n"), involution=involution)


def _report_lines(report: EtaReport) -> List[str]:
    lines = []
    if report.source:
        lines.append(f"source: {report.source}")
    if report.n is not None:
        lines.append(f"family: n={report.n} inv={report.involution.value}")
    lines += [
        f"eta_tilde: {EtaTilde(coeffs=report.eta_tilde).render()}",
        f"eta_prime: {SymBracket.of(report.eta_prime_bracket).render()} (intermediate)",
        f"eta: {SymBracket.of(report.eta_bracket).render()}",
        f"polynomial: {LaurentPoly(coeffs=report.eta_poly).render()}",
    ]
    if report.closed_form_bracket is not None:
        lines.append(f"closed_form: {SymBracket.of(report.closed_form_bracket).render()}")
    lines += [f"note: {note}" for note in report.notes]
    return lines


def _single(args: Namespace) -> Tuple[RunReport, List[str]]:
    corpus = get_corpus(args)
    inputs = {}
    if args.file:
        path = corpus.resolve(args.file)
        inputs[str(path)] = corpus.digest(path)
        params = corpus.family_params(path)
        report = eta_service.report_for_quotient(corpus.load_leveled(path), params)
    else:
        report = eta_service.report_for_family(family_params(args.family))
    logger.debug(f"eta report source={report.source} n={report.n} checks_ok={report.checks.ok}")

    checks = report.checks.model_dump()
    if report.closed_form_bracket is not None:
        checks["matches_closed_form"] = report.eta_bracket == report.closed_form_bracket
    run_report = RunReport(
        command=args.argv,
        inputs=inputs,
        payload=report.model_dump(mode="json"),
        checks=checks
    )
    return run_report, _report_lines(report) + check_line(run_report)


def _table(args: Namespace) -> Tuple[RunReport, List[str]]:
    rows = eta_service.family_table(positive_int(args.max_n, "--max-n"))
    lines = ["\t".join(TABLE_COLUMNS)]
    for row in rows:
        lines.append("\t".join([
            str(row.n),
            row.involution.value,
            EtaTilde(coeffs=row.eta_tilde).render(),
            SymBracket.of(row.eta_bracket).render(),
            str(row.degree),
            flag(row.distinct),
        ]))
    report = RunReport(
        command=args.argv,
        payload={"rows": [row.model_dump(mode="json") for row in rows]},
        checks={"all_distinct": all(row.distinct for row in rows)}
    )
    return report, lines


def run(args: Namespace) -> Tuple[RunReport, List[str]]:
    if args.table:
        return _table(args)
    return _single(args)
