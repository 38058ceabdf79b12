from typing import Dict, List, Optional

from pydantic import BaseModel, field_validator


class Crossing(BaseModel):
    """One crossing record.

    The under-strand always breaks here. The over-strand breaks only when
    ``over_in != over_out``; when they coincide the arc passes straight over.
    """
    sign: int
    over_in: str
    over_out: str
    under_in: str
    under_out: str

    class Config:
        frozen = True

    @field_validator("sign")
    @classmethod
    def validate_sign(cls, v: int) -> int:
        if v not in (1, -1):
            raise ValueError("Crossing sign must be +1 or -1")
        return v

    @property
    def over_split(self) -> bool:
        return self.over_in != self.over_out

    @property
    def over(self) -> str:
        return self.over_in


class LinkDiagram(BaseModel):
    """Oriented link diagram with explicit crossing signs.

    ``components`` maps a component name to its arcs in cyclic order along
    the orientation. Components listed in ``closed`` were declared with
    ``unknot`` and consist of a single arc named after the component.
    """
    components: Dict[str, List[str]]
    crossings: List[Crossing] = []
    closed: List[str] = []

    class Config:
        frozen = True

    @field_validator("closed")
    @classmethod
    def sort_closed(cls, v: List[str]) -> List[str]:
        return sorted(v)

    def arc_component(self) -> Dict[str, str]:
        return {arc: name for name, arcs in self.components.items() for arc in arcs}

    def component_of(self, arc: str) -> Optional[str]:
        return self.arc_component().get(arc)

    @property
    def arcs(self) -> List[str]:
        return [arc for arcs in self.components.values() for arc in arcs]

    @property
    def arc_count(self) -> int:
        return sum(len(arcs) for arcs in self.components.values())


class ValidationReport(BaseModel):
    violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations
