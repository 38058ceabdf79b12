from typing import Dict, Iterable, List, Optional, Tuple
from enum import Enum

from pydantic import BaseModel, field_validator

from etakit.core.exceptions import DiagramSyntaxError, UndeclaredGenerator

Letter = Tuple[str, int]


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for gen, exp in letters:
        if stack and stack[-1][0] == gen and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


class Word(BaseModel):
    """Freely reduced word in the free group; letters are (generator, +1 or -1)."""
    letters: Tuple[Letter, ...] = ()

    class Config:
        frozen = True

    @field_validator("letters")
    @classmethod
    def reduce_letters(cls, v: Tuple[Letter, ...]) -> Tuple[Letter, ...]:
        for gen, exp in v:
            if exp not in (1, -1):
                raise ValueError("Word letters must have exponent +1 or -1")
            if not gen:
                raise ValueError("Generator names cannot be empty")
        return _free_reduce(v)

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> "Word":
        return cls(letters=tuple(letters))

    @classmethod
    def generator(cls, gen: str, power: int = 1) -> "Word":
        sign = 1 if power > 0 else -1
        return cls(letters=((gen, sign),) * abs(power))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Tokens ``g`` or ``g^k`` separated by spaces; ``1`` or nothing is the empty word."""
        letters: List[Letter] = []
        for token in text.split():
            if token == "1":
                continue
            gen, _, power = token.partition("^")
            try:
                k = int(power) if power else 1
            except ValueError:
                raise DiagramSyntaxError(f"bad exponent in {token!r}")
            if not gen or k == 0:
                raise DiagramSyntaxError(f"bad word token {token!r}")
            letters.extend([(gen, 1 if k > 0 else -1)] * abs(k))
        return cls.of(letters)

    def render(self) -> str:
        if not self.letters:
            return "1"
        tokens: List[str] = []
        run_gen, run = None, 0
        for gen, exp in self.letters + (("", 0),):
            if gen == run_gen and (exp > 0) == (run > 0):
                run += exp
                continue
            if run_gen is not None:
                tokens.append(run_gen if run == 1 else f"{run_gen}^{run}")
            run_gen, run = gen, exp
        return " ".join(tokens)

    def __str__(self) -> str:
        return self.render()

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(letters=self.letters + other.letters)

    def __hash__(self) -> int:
        return hash(self.letters)

    def inverse(self) -> "Word":
        return Word(letters=tuple((g, -e) for g, e in reversed(self.letters)))

    def is_empty(self) -> bool:
        return not self.letters

    def cyclically_reduced(self) -> "Word":
        letters = list(self.letters)
        while len(letters) > 1 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(letters=tuple(letters))

    def rotations(self) -> List["Word"]:
        n = len(self.letters)
        return [Word(letters=self.letters[i:] + self.letters[:i]) for i in range(max(n, 1))]

    def same_cycle(self, other: "Word") -> bool:
        """Equal up to rotation or inversion, after cyclic reduction."""
        a, b = self.cyclically_reduced(), other.cyclically_reduced()
        if len(a) != len(b):
            return False
        targets = {b.letters, b.inverse().letters}
        return any(r.letters in targets for r in a.rotations())

    def generators(self) -> List[str]:
        seen: Dict[str, None] = {}
        for gen, _ in self.letters:
            seen.setdefault(gen, None)
        return list(seen)

    def occurrences(self, gen: str) -> int:
        return sum(1 for g, _ in self.letters if g == gen)

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def substitute(self, gen: str, image: "Word") -> "Word":
        out: List[Letter] = []
        for g, e in self.letters:
            if g == gen:
                out.extend(image.letters if e > 0 else image.inverse().letters)
            else:
                out.append((g, e))
        return Word.of(out)

    def commutator_pair(self) -> Optional[Tuple[str, str]]:
        """The generators (a, b) if this word is a cyclic form of a b a^-1 b^-1."""
        w = self.cyclically_reduced()
        if len(w) != 4:
            return None
        for r in w.rotations():
            (a, ea), (b, eb), (c, ec), (d, ed) = r.letters
            if a == c and b == d and a != b and ea == eb == 1 and ec == ed == -1:
                return tuple(sorted((a, b)))
        return None


class GroupPresentation(BaseModel):
    generators: List[str]
    relators: List[Word] = []

    class Config:
        frozen = True

    @classmethod
    def create(cls, generators: Iterable[str], relators: Iterable[Word]) -> "GroupPresentation":
        """Build a presentation, refusing relators over undeclared generators."""
        generators = list(generators)
        relators = list(relators)
        declared = set(generators)
        for index, relator in enumerate(relators):
            stray = [g for g in relator.generators() if g not in declared]
            if stray:
                raise UndeclaredGenerator(f"relator {index} uses undeclared generator {stray[0]}")
        return cls(generators=generators, relators=relators)

    def render(self) -> str:
        rels = ", ".join(r.render() for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"

    def exponent_matrix(self) -> List[List[int]]:
        return [[r.exponent_sum(g) for g in self.generators] for r in self.relators]

    @property
    def max_relator_length(self) -> int:
        return max((len(r) for r in self.relators), default=0)


class MoveKind(str, Enum):
    REDUCE = "reduce"
    DETECT_COMMUTATOR = "detect_commutator"
    COLLAPSE = "collapse"
    SUBSTITUTE = "substitute"
    ELIMINATE = "eliminate"
    ABELIANIZE = "abelianize"


class Move(BaseModel):
    kind: MoveKind
    generator: Optional[str] = None
    relator_index: Optional[int] = None
    source_index: Optional[int] = None
    image: Optional[str] = None
    pair: Optional[Tuple[str, str]] = None
    detail: str = ""


class CertificateStatus(str, Enum):
    CERTIFIED = "certified"
    INCONCLUSIVE = "inconclusive"


class TrivialityCertificate(BaseModel):
    """Ordered move log plus the presentation it ends at.

    A certificate with ``status == CERTIFIED`` is a proof of triviality only
    if ``verify`` succeeds on the original presentation.
    """
    status: CertificateStatus
    moves: List[Move] = []
    terminal: GroupPresentation
    abelianization: List[int] = []
    commuting_pairs: List[Tuple[str, str]] = []
    budget_exhausted: bool = False
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == CertificateStatus.CERTIFIED

    def verify(self, presentation: GroupPresentation) -> bool:
        from etakit.services.pi1 import pi1_service

        return pi1_service.replay(self, presentation) == self.terminal


class Simplification(BaseModel):
    presentation: GroupPresentation
    moves: List[Move] = []
    budget_exhausted: bool = False


class TwistStrand(BaseModel):
    arc: str
    overpasses: List[int] = []


class TwistRegion(BaseModel):
    """Two parallel strands of one component where half twists are added.

    ``overpasses`` are 1-based crossing numbers of the base diagram that lie
    downstream of the twist region on that strand.
    """
    component: str
    p: TwistStrand
    q: TwistStrand


class WTemplate(BaseModel):
    base_diagram: str
    handle: str
    framings: Dict[str, int]
    framing_arcs: Dict[str, str] = {}
    max_twists: int
    regions: Dict[str, TwistRegion]
