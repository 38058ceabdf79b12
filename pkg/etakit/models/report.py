from typing import Any, Dict, List

from pydantic import BaseModel, model_validator


class RunReport(BaseModel):
    """Result of one CLI command.

    ``ok`` is derived from ``checks``. ``wall_time_ms`` is filled in by the
    command timer and is the only field left out of ``comparable()``.
    """
    command: List[str]
    inputs: Dict[str, str] = {}
    payload: Dict[str, Any] = {}
    checks: Dict[str, bool] = {}
    ok: bool = True
    wall_time_ms: float = 0.0

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def derive_ok(self) -> "RunReport":
        self.ok = all(self.checks.values())
        return self

    def comparable(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"wall_time_ms"})

    def timed(self, wall_time_ms: float) -> "RunReport":
        return self.model_copy(update={"wall_time_ms": wall_time_ms})
