from pathlib import Path
from typing import Optional, Union
import json
import logging
import re

from pydantic import ValidationError

from etakit.core.config import get_settings
from etakit.core.digest import digest_file
from etakit.core.exceptions import ConsistencyError, EtakitError
from etakit.models.diagram import LinkDiagram
from etakit.models.eta import FamilyParams, Involution
from etakit.models.group import GroupPresentation, WTemplate
from etakit.models.quotient import LeveledQuotient
from etakit.services.diagram import diagram_service
from etakit.services.quotient import quotient_service

logger = logging.getLogger(__name__)

_FAMILY_NAME = re.compile(r"^K(\d+)_(tau|sigma)$")
_REPO_CORPUS = Path(__file__).resolve().parents[2] / "corpus"

PathLike = Union[str, Path]


class CorpusService:
    """Locates shipped data files and reads them through the domain parsers."""

    def __init__(self, root: Optional[PathLike] = None):
        self._root = Path(root) if root is not None else None

    @property
    def root(self) -> Path:
        if self._root is not None:
            return self._root
        configured = Path(get_settings().ETAKIT_CORPUS)
        if configured.is_dir():
            return configured
        return _REPO_CORPUS

    def with_root(self, root: Optional[PathLike]) -> "CorpusService":
        return CorpusService(root) if root is not None else self

    def resolve(self, name: PathLike) -> Path:
        """A path as given if it exists, otherwise the same name inside the corpus."""
        path = Path(name)
        if path.is_file():
            return path
        candidate = self.root / path.name
        if candidate.is_file():
            return candidate
        raise EtakitError(f"file not found: {name} (corpus {self.root})")

    def read(self, name: PathLike) -> str:
        path = self.resolve(name)
        try:
            return path.read_text(encoding="utf-8")
        except OSError as e:
            raise EtakitError(f"cannot read {path}: {str(e)}") from e

    def digest(self, name: PathLike) -> str:
        return digest_file(self.resolve(name))

    def family_params(self, name: PathLike) -> Optional[FamilyParams]:
        """(n, involution) from names like ``K2_sigma.lvq``."""
        match = _FAMILY_NAME.match(Path(name).stem)
        if not match:
            return None
        return FamilyParams(n=int(match.group(1)), involution=Involution(match.group(2)))

    def load_leveled(self, name: PathLike) -> LeveledQuotient:
        path = self.resolve(name)
        return quotient_service.parse_leveled(self.read(path), name=path.stem)

    def load_diagram(self, name: PathLike) -> LinkDiagram:
        return diagram_service.parse_diagram(self.read(name))

    def load_presentation(self, name: PathLike) -> GroupPresentation:
        from etakit.services.pi1 import pi1_service

        return pi1_service.parse_presentation(self.read(name))

    def load_w_template(self, name: PathLike = "w_templates.json") -> WTemplate:
        try:
            return WTemplate(**json.loads(self.read(name)))
        except (json.JSONDecodeError, ValidationError) as e:
            raise ConsistencyError([f"bad W template file {name}: {str(e)}"]) from e


corpus_service = CorpusService()
