from collections import defaultdict
from typing import Dict, List, Optional, Sequence
import logging

from etakit.core.exceptions import (
    AsymmetricTally,
    ConsistencyError,
    DiagramSyntaxError,
    JumpMismatch,
    NonzeroHolonomy
)
from etakit.models.diagram import Crossing, LinkDiagram
from etakit.models.quotient import EtaTilde, LeveledCrossing, LeveledQuotient
from etakit.services.diagram import diagram_service

logger = logging.getLogger(__name__)

_SIGNS = {"+": 1, "-": -1}
_JUMPS = {"+1": 1, "1": 1, "-1": -1, "0": 0}


class QuotientService:
    def assign_levels(
        self,
        arcs: Sequence[str],
        first_level: int,
        jumps: Sequence[int]
    ) -> Dict[str, int]:
        """Prefix sums of the jump sequence, starting from ``first_level``."""
        if len(jumps) != len(arcs):
            raise ConsistencyError([f"{len(arcs)} arcs but {len(jumps)} jumps"])
        holonomy = sum(jumps)
        if holonomy != 0:
            raise NonzeroHolonomy(f"jumps sum to {holonomy} around the cycle, expected 0")

        levels: Dict[str, int] = {}
        current = first_level
        for arc, jump in zip(arcs, jumps):
            levels[arc] = current
            current += jump
        return levels

    def parse_leveled(self, text: str, name: Optional[str] = None) -> LeveledQuotient:
        arcs: List[str] = []
        explicit: Dict[str, int] = {}
        jumps: Dict[str, int] = {}
        raw_crossings = []

        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            keyword = tokens[0]

            if keyword == "arc":
                if len(tokens) not in (2, 4) or (len(tokens) == 4 and tokens[2] != "level"):
                    raise DiagramSyntaxError("expected 'arc <id> [level <int>]'", line_no)
                arc = tokens[1]
                if arc in arcs:
                    raise DiagramSyntaxError(f"arc {arc} declared twice", line_no)
                arcs.append(arc)
                if len(tokens) == 4:
                    try:
                        explicit[arc] = int(tokens[3])
                    except ValueError:
                        raise DiagramSyntaxError(f"level of {arc} is not an integer", line_no)

            elif keyword == "jump":
                if len(tokens) != 3 or tokens[2] not in _JUMPS:
                    raise DiagramSyntaxError("expected 'jump <arc> <+1|-1|0>'", line_no)
                if tokens[1] in jumps:
                    raise DiagramSyntaxError(f"second jump for arc {tokens[1]}", line_no)
                jumps[tokens[1]] = _JUMPS[tokens[2]]

            elif keyword == "crossing":
                if (
                    len(tokens) != 6
                    or tokens[1] not in _SIGNS
                    or tokens[2] != "over"
                    or tokens[4] != "under"
                ):
                    raise DiagramSyntaxError(
                        "expected 'crossing <+|-> over <arc> under <arc>'", line_no
                    )
                raw_crossings.append((line_no, _SIGNS[tokens[1]], tokens[3], tokens[5]))

            else:
                raise DiagramSyntaxError(f"unknown keyword {keyword!r}", line_no)

        if not arcs:
            raise DiagramSyntaxError("no arcs declared")
        if arcs[0] not in explicit:
            raise DiagramSyntaxError(f"first arc {arcs[0]} needs an explicit level")
        for arc in arcs:
            if arc not in jumps:
                raise DiagramSyntaxError(f"missing jump for arc {arc}")
        stray = [a for a in jumps if a not in arcs]
        if stray:
            raise ConsistencyError([f"jump given for unknown arc {a}" for a in stray])

        levels = self.assign_levels(arcs, explicit[arcs[0]], [jumps[a] for a in arcs])
        for arc, value in explicit.items():
            if levels[arc] != value:
                raise JumpMismatch(
                    f"arc {arc} is declared at level {value} but the jumps put it at {levels[arc]}"
                )

        crossings: List[LeveledCrossing] = []
        for line_no, sign, over, under in raw_crossings:
            missing = [a for a in (over, under) if a not in levels]
            if missing:
                raise ConsistencyError([f"line {line_no}: crossing references unknown arc {missing[0]}"])
            crossings.append(LeveledCrossing(sign=sign, over=over, under=under))

        quotient = LeveledQuotient(
            arcs=arcs,
            level=levels,
            jumps=jumps,
            crossings=crossings,
            name=name
        )
        logger.debug(
            f"parsed leveled quotient name={name} arcs={len(arcs)} crossings={len(crossings)}"
        )
        return quotient

    def serialize_leveled(self, q: LeveledQuotient) -> str:
        lines = [f"arc {a} level {q.level[a]}" for a in q.arcs]
        lines += [f"jump {a} {q.jumps[a]:+d}" if q.jumps[a] else f"jump {a} 0" for a in q.arcs]
        lines += [
            f"crossing {'+' if c.sign > 0 else '-'} over {c.over} under {c.under}"
            for c in q.crossings
        ]
        return "\n".join(lines) + "\n"

    def axis_link(self, q: LeveledQuotient) -> LinkDiagram:
        """Diagram of O with L for lk(O, L).

        O is drawn as one arc passing over L; L passes under O once per
        nonzero jump, with the jump as crossing sign. Self-crossings of L are
        left out.
        """
        n = len(q.arcs)
        turns = [i for i, arc in enumerate(q.arcs) if q.jumps[arc]]
        if not turns:
            return LinkDiagram(components={"O": ["O"], "L": [q.arcs[0]]})

        start = (turns[0] + 1) % n
        runs: List[str] = []
        signs: List[int] = []
        for step in range(n):
            arc = q.arcs[(start + step) % n]
            if step == 0 or q.jumps[q.arcs[(start + step - 1) % n]]:
                runs.append(arc)
            if q.jumps[arc]:
                signs.append(q.jumps[arc])

        crossings = [
            Crossing(
                sign=sign,
                over_in="O",
                over_out="O",
                under_in=runs[j],
                under_out=runs[(j + 1) % len(runs)]
            )
            for j, sign in enumerate(signs)
        ]
        diagram = LinkDiagram(components={"O": ["O"], "L": runs}, crossings=crossings)
        report = diagram_service.validate(diagram)
        if not report.ok:
            raise ConsistencyError(report.violations)
        return diagram

    def tally_eta_tilde(self, q: LeveledQuotient) -> EtaTilde:
        """Add the crossing sign to c_d, d = level(over) - level(under)."""
        coeffs: Dict[int, int] = defaultdict(int)
        for crossing in q.crossings:
            coeffs[q.difference(crossing)] += crossing.sign

        tally = EtaTilde(coeffs=coeffs)
        bad = tally.asymmetric_indices()
        if bad:
            raise AsymmetricTally(
                f"tally of {q.name or 'quotient'} is not symmetric at indices {bad}",
                indices=bad
            )
        return tally


quotient_service = QuotientService()
