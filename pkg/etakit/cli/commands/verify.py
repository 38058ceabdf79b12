from argparse import Namespace
from typing import List, Optional, Tuple
import logging

from etakit.cli.dependencies import check_line, get_corpus, key_values, positive_int
from etakit.models.report import RunReport
from etakit.services.cover_oracle import cover_oracle_service
from etakit.services.pi1 import pi1_service

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="independent checks")
    checks = parser.add_subparsers(dest="check", metavar="{oracle,pi1}")
    checks.required = True

    oracle = checks.add_parser("oracle", help="cross-check eta against the cover oracle")
    oracle.add_argument("--file", required=True, help="leveled quotient file")
    oracle.add_argument("--depth", help="truncation depth (default: support radius + margin)")
    oracle.set_defaults(handler=run_oracle)

    pi1 = checks.add_parser("pi1", help="certify triviality of a fundamental group")
    source = pi1.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", nargs="+", metavar="KEY=VALUE", help="m=<m> n=<n>")
    source.add_argument("--file", help="presentation file")
    pi1.add_argument("--budget", help="move budget (default ETAKIT_BUDGET)")
    pi1.set_defaults(handler=run_pi1)


def _coefficients(values) -> str:
    return " ".join(f"{i}:{c}" for i, c in sorted(values.items()))


def run_oracle(args: Namespace) -> Tuple[RunReport, List[str]]:
    corpus = get_corpus(args)
    path = corpus.resolve(args.file)
    q = corpus.load_leveled(path)
    depth: Optional[int] = None
    if args.depth is not None:
        depth = positive_int(args.depth, "--depth")

    result = cover_oracle_service.cross_check(q, depth)
    payload = {"source": q.name, **result.model_dump(mode="json")}
    report = RunReport(
        command=args.argv,
        inputs={str(path): corpus.digest(path)},
        payload=payload,
        checks={"oracle_match": result.ok}
    )

    lines = [
        f"source: {q.name}",
        f"depth: {result.depth}",
        f"verdict: {result.verdict.value}",
    ]
    if result.oracle:
        lines.append(f"oracle: {_coefficients(result.oracle)}")
        lines.append(f"algorithm: {_coefficients(result.algorithm)}")
    if result.mismatches:
        lines.append(f"mismatches: {result.mismatches}")
    lines += [f"note: {note}" for note in result.notes]
    return report, lines + check_line(report)


def homology_label(factors: List[int]) -> str:
    if not factors:
        return "trivial"
    return " + ".join("Z" if f == 0 else f"Z/{f}" for f in factors)


def run_pi1(args: Namespace) -> Tuple[RunReport, List[str]]:
    corpus = get_corpus(args)
    inputs = {}
    if args.family:
        values = key_values(args.family, ("m", "n"), "--family")
        m, n = positive_int(values["m"], "m"), positive_int(values["n"], "n")
        presentation = pi1_service.w_family_presentation(m, n, corpus)
        source = f"W({m},{n})"
    else:
        path = corpus.resolve(args.file)
        inputs[str(path)] = corpus.digest(path)
        presentation = corpus.load_presentation(path)
        source = path.stem

    budget = positive_int(args.budget, "--budget") if args.budget is not None else None
    certificate = pi1_service.certify_trivial(presentation, budget)
    checks = {
        "h1_trivial": not certificate.abelianization,
        "certified": certificate.certified,
    }
    if certificate.certified:
        checks["replayed"] = certificate.verify(presentation)

    report = RunReport(
        command=args.argv,
        inputs=inputs,
        payload={
            "source": source,
            "presentation": presentation.render(),
            "abelianization": certificate.abelianization,
            "status": certificate.status.value,
            "reason": certificate.reason,
            "terminal": certificate.terminal.render(),
            "certificate": certificate.model_dump(mode="json"),
        },
        checks=checks
    )
    lines = [
        f"source: {source}",
        f"H1: {homology_label(certificate.abelianization)}; trivial: {certificate.status.value}",
        f"reason: {certificate.reason}",
        f"moves: {len(certificate.moves)}",
        f"terminal: {certificate.terminal.render()}",
    ]
    logger.debug(f"pi1 {source}: {len(certificate.moves)} moves, status={certificate.status.value}")
    return report, lines + check_line(report)
