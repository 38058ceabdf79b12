from typing import Dict, List, Optional
from enum import Enum

from pydantic import BaseModel, field_validator

from etakit.models.laurent import SymBracket


class Involution(str, Enum):
    TAU = "tau"
    SIGMA = "sigma"


class FamilyParams(BaseModel):
    n: int
    involution: Involution

    class Config:
        frozen = True

    @field_validator("n")
    @classmethod
    def validate_n(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Family parameter n must be at least 1")
        return v

    @property
    def label(self) -> str:
        return f"K{self.n}_{self.involution.value}"


class EtaChecks(BaseModel):
    palindromic: bool
    vanishes_at_1: bool
    vanishes_at_minus_1: bool

    @property
    def ok(self) -> bool:
        return self.palindromic and self.vanishes_at_1 and self.vanishes_at_minus_1


class EtaReport(BaseModel):
    """Everything the eta pipeline knows about one input.

    Fields named in ``intermediate`` are pipeline stages, not invariants:
    normalization discards the first two entries of ``eta_prime_bracket``.
    """
    n: Optional[int] = None
    involution: Optional[Involution] = None
    source: Optional[str] = None
    eta_tilde: Dict[int, int]
    eta_prime_bracket: List[int]
    eta_bracket: List[int]
    eta_poly: Dict[int, int]
    checks: EtaChecks
    printed_eta_prime_bracket: Optional[List[int]] = None
    closed_form_bracket: Optional[List[int]] = None
    notes: List[str] = []
    intermediate: List[str] = ["eta_prime_bracket"]

    @property
    def bracket(self) -> SymBracket:
        return SymBracket.of(self.eta_bracket)


class Distinction(BaseModel):
    n: int
    distinct: bool
    tau: List[int]
    sigma: List[int]


class FamilyRow(BaseModel):
    n: int
    involution: Involution
    eta_tilde: Dict[int, int]
    eta_bracket: List[int]
    degree: int
    distinct: bool
