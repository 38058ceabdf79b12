from fractions import Fraction
from typing import Dict, Iterable, List, Union

from pydantic import BaseModel, field_validator

from etakit.core.exceptions import NotPalindromic, PolynomialSyntaxError, ZeroArgument

Number = Union[int, Fraction]


class LaurentPoly(BaseModel):
    """Exact integer Laurent polynomial in one variable ``t``.

    ``coeffs`` maps exponent to coefficient; zero coefficients are never stored,
    so equality of two polynomials is equality of their maps.
    """
    coeffs: Dict[int, int] = {}

    class Config:
        frozen = True

    @field_validator("coeffs")
    @classmethod
    def drop_zeros(cls, v: Dict[int, int]) -> Dict[int, int]:
        return {int(k): int(c) for k, c in sorted(v.items()) if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(coeffs={})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls(coeffs={exponent: coefficient})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls(coeffs={0: value})

    @classmethod
    def from_bracket(cls, bracket: "SymBracket") -> "LaurentPoly":
        """a_0 + sum_j a_j (t^-j + t^j)."""
        coeffs: Dict[int, int] = {0: bracket.coeffs[0]}
        for j, a in enumerate(bracket.coeffs[1:], start=1):
            coeffs[j] = a
            coeffs[-j] = a
        return cls(coeffs=coeffs)

    # ring operations

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(coeffs=out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(coeffs={e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(coeffs={e: c * other for e, c in self.coeffs.items()})
        out: Dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(coeffs=out)

    __rmul__ = __mul__

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    # queries

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Largest exponent; 0 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else 0

    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def reciprocal(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly(coeffs={-e: c for e, c in self.coeffs.items()})

    def is_palindromic(self) -> bool:
        return self == self.reciprocal()

    def evaluate(self, t0: Number) -> Fraction:
        if t0 == 0:
            raise ZeroArgument("cannot evaluate a Laurent polynomial at t = 0")
        t0 = Fraction(t0)
        return sum((c * t0 ** e for e, c in self.coeffs.items()), Fraction(0))

    def to_bracket(self) -> "SymBracket":
        bad = sorted(
            e for e, c in self.coeffs.items() if e > 0 and self.coeffs.get(-e, 0) != c
        ) + sorted(e for e in self.coeffs if e < 0 and -e not in self.coeffs)
        if bad:
            raise NotPalindromic(
                f"coefficients at t^{bad[0]} and t^{-bad[0]} disagree in {self.render()}"
            )
        top = max((abs(e) for e in self.coeffs), default=0)
        return SymBracket(coeffs=[self.coeffs.get(j, 0) for j in range(top + 1)])

    # text

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in sorted(self.coeffs.items()))

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls.zero()
        coeffs: Dict[int, int] = {}
        for term in text.split(" + "):
            try:
                coef, power = term.strip().split("*t^")
                coeffs[int(power)] = coeffs.get(int(power), 0) + int(coef)
            except ValueError as e:
                raise PolynomialSyntaxError(f"bad polynomial term {term!r}") from e
        return cls(coeffs=coeffs)

    def __str__(self) -> str:
        return self.render()


class SymBracket(BaseModel):
    """Bracket ``[a_0, a_1, ..., a_n]`` for a_0 + sum a_j (t^-j + t^j).

    Trailing zeros are trimmed; the zero polynomial is ``[0]``.
    """
    coeffs: List[int] = [0]

    class Config:
        frozen = True

    @field_validator("coeffs")
    @classmethod
    def trim(cls, v: List[int]) -> List[int]:
        out = [int(a) for a in v]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out or [0]

    @classmethod
    def of(cls, entries: Iterable[int]) -> "SymBracket":
        return cls(coeffs=list(entries))

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if j < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    @property
    def radius(self) -> int:
        return len(self.coeffs) - 1

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_bracket(self)

    def render(self) -> str:
        return "[" + ", ".join(str(a) for a in self.coeffs) + "]"

    @classmethod
    def parse(cls, text: str) -> "SymBracket":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise PolynomialSyntaxError(f"bracket must look like [a0, a1, ...]: {text!r}")
        inner = body[1:-1].strip()
        try:
            return cls(coeffs=[int(a) for a in inner.split(",")] if inner else [0])
        except ValueError as e:
            raise PolynomialSyntaxError(f"bad bracket entry in {text!r}") from e

    def __str__(self) -> str:
        return self.render()


def from_bracket(bracket: SymBracket) -> LaurentPoly:
    return LaurentPoly.from_bracket(bracket)


def to_bracket(poly: LaurentPoly) -> SymBracket:
    return poly.to_bracket()
