from argparse import Namespace
from typing import Dict, List, Sequence

from etakit.core.exceptions import EtakitError
from etakit.models.report import RunReport
from etakit.services.corpus import CorpusService, corpus_service


def get_corpus(args: Namespace) -> CorpusService:
    return corpus_service.with_root(getattr(args, "corpus", None))


def key_values(tokens: Sequence[str], keys: Sequence[str], flag: str) -> Dict[str, str]:
    """Parse ``k=v`` tokens such as ``n=3 inv=tau``; every key in ``keys`` is required."""
    values: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in keys or not value:
            raise EtakitError(f"{flag}: expected {' '.join(k + '=...' for k in keys)}, got {token!r}")
        values[key] = value
    missing = [k for k in keys if k not in values]
    if missing:
        raise EtakitError(f"{flag}: missing {missing[0]}=...")
    return values


def positive_int(value: str, name: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise EtakitError(f"{name} must be an integer, got {value!r}")
    if number < 1:
        raise EtakitError(f"{name} must be at least 1, got {number}")
    return number


def flag(value: bool) -> str:
    return "true" if value else "false"


def check_line(report: RunReport) -> List[str]:
    if not report.checks:
        return []
    return ["checks: " + " ".join(f"{k}={flag(v)}" for k, v in report.checks.items())]
