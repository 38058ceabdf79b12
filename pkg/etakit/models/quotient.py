from typing import Dict, List, Optional

from pydantic import BaseModel, field_validator


class LeveledCrossing(BaseModel):
    sign: int
    over: str
    under: str

    class Config:
        frozen = True

    @field_validator("sign")
    @classmethod
    def validate_sign(cls, v: int) -> int:
        if v not in (1, -1):
            raise ValueError("Crossing sign must be +1 or -1")
        return v


class LeveledQuotient(BaseModel):
    """Arcs of L in cyclic order with their levels, jumps and self-crossings.

    ``jumps[a]`` records the passage from arc ``a`` to the next arc in the
    cycle, so ``level[next] - level[a] == jumps[a]``.
    """
    arcs: List[str]
    level: Dict[str, int]
    jumps: Dict[str, int]
    crossings: List[LeveledCrossing] = []
    name: Optional[str] = None

    class Config:
        frozen = True

    def difference(self, crossing: LeveledCrossing) -> int:
        return self.level[crossing.over] - self.level[crossing.under]

    @property
    def max_difference(self) -> int:
        return max((abs(self.difference(c)) for c in self.crossings), default=0)

    @property
    def support_radius(self) -> int:
        """Largest |i| with a possibly nonzero eta coefficient."""
        return self.max_difference + 1 if self.crossings else 0


class EtaTilde(BaseModel):
    """Finitely supported map i -> c_i, the coefficient of x_i."""
    coeffs: Dict[int, int] = {}

    class Config:
        frozen = True

    @field_validator("coeffs")
    @classmethod
    def drop_zeros(cls, v: Dict[int, int]) -> Dict[int, int]:
        return {int(i): int(c) for i, c in sorted(v.items()) if c != 0}

    def __getitem__(self, i: int) -> int:
        return self.coeffs.get(i, 0)

    def asymmetric_indices(self) -> List[int]:
        return sorted(i for i in set(self.coeffs) | {-i for i in self.coeffs} if self[i] != self[-i])

    def is_symmetric(self) -> bool:
        return not self.asymmetric_indices()

    @property
    def radius(self) -> int:
        return max((abs(i) for i in self.coeffs), default=0)

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*x_{i}" for i, c in self.coeffs.items())
