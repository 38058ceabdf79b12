from argparse import Namespace
from itertools import combinations
from typing import List, Tuple

from etakit.cli.dependencies import get_corpus
from etakit.models.report import RunReport
from etakit.services.diagram import diagram_service


def register(subparsers) -> None:
    parser = subparsers.add_parser("lk", help="linking numbers and writhes of a diagram")
    parser.add_argument("--file", required=True, help="diagram file (path or corpus name)")
    parser.add_argument("--components", nargs=2, metavar=("A", "B"), help="report one pair only")
    parser.set_defaults(handler=run)


def run(args: Namespace) -> Tuple[RunReport, List[str]]:
    corpus = get_corpus(args)
    path = corpus.resolve(args.file)
    diagram = corpus.load_diagram(path)

    if args.components:
        a, b = args.components
        lk = diagram_service.linking_number(diagram, a, b)
        payload = {"components": [a, b], "lk": lk}
        lines = [f"lk({a}, {b}) = {lk}"]
    else:
        matrix = diagram_service.linking_matrix(diagram)
        names = sorted(matrix)
        payload = {
            "linking_matrix": matrix,
            "writhe": {name: matrix[name][name] for name in names},
        }
        lines = [f"writhe({name}) = {matrix[name][name]}" for name in names]
        lines += [f"lk({a}, {b}) = {matrix[a][b]}" for a, b in combinations(names, 2)]

    report = RunReport(
        command=args.argv,
        inputs={str(path): corpus.digest(path)},
        payload=payload
    )
    return report, lines
