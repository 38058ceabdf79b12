from typing import Dict, List, Optional
from enum import Enum

from pydantic import BaseModel

from etakit.models.diagram import LinkDiagram


class StrandPair(str, Enum):
    """Which strands of the two lifts meet at a cover crossing."""
    LIKE = "like"        # both outgoing or both returning
    MIXED = "mixed"      # one outgoing, one returning
    TWIST = "twist"      # framing twist between neighbouring lifts
    PUSHOFF = "pushoff"  # duplicate of a lift[0] crossing on the parallel copy


class Provenance(BaseModel):
    kind: StrandPair
    base_index: Optional[int] = None
    over: str
    under: str

    class Config:
        frozen = True


class TruncatedCover(BaseModel):
    depth: int
    diagram: LinkDiagram
    provenance: Dict[int, Provenance]
    dropped: int = 0
    framing_twists: int = 0

    class Config:
        frozen = True


class OracleCoefficients(BaseModel):
    """Linking numbers lk(pushoff[0], lift[i]) for 1 <= |i| <= depth.

    The coefficient at 0 is not measured; it follows from the coefficients
    summing to zero.
    """
    depth: int
    lifted: Dict[int, int]
    derived_zero: int

    def as_map(self) -> Dict[int, int]:
        out = dict(self.lifted)
        out[0] = self.derived_zero
        return dict(sorted(out.items()))


class Verdict(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"


class CrossCheck(BaseModel):
    depth: int
    oracle: Dict[int, int] = {}
    algorithm: Dict[int, int] = {}
    verdict: Verdict
    mismatches: List[int] = []
    notes: List[str] = []

    @property
    def ok(self) -> bool:
        return self.verdict == Verdict.MATCH
