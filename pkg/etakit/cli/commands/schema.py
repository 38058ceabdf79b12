from argparse import Namespace
from typing import List, Tuple
import json

from etakit.models.report import RunReport


def register(subparsers) -> None:
    parser = subparsers.add_parser("schema", help="JSON schema of the --json run report")
    parser.set_defaults(handler=run)


def run(args: Namespace) -> Tuple[RunReport, List[str]]:
    schema = RunReport.model_json_schema()
    report = RunReport(command=args.argv, payload={"schema": schema})
    return report, [json.dumps(schema, indent=2, sort_keys=True)]
