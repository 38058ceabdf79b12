from collections import defaultdict
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple
import logging

from pydantic import ValidationError

from etakit.core.exceptions import (
    ConsistencyError,
    DiagramSyntaxError,
    SameComponent,
    UnknownComponent
)
from etakit.models.diagram import Crossing, LinkDiagram, ValidationReport

logger = logging.getLogger(__name__)

_SIGNS = {"+": 1, "-": -1}


class DiagramService:
    """Parsing, validation and linking computations for link diagrams."""

    def parse_diagram(self, text: str) -> LinkDiagram:
        components: Dict[str, List[str]] = {}
        closed: List[str] = []
        crossings: List[Crossing] = []

        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            keyword = tokens[0]

            if keyword == "component":
                if len(tokens) < 4 or tokens[2] != "arcs":
                    raise DiagramSyntaxError("expected 'component <name> arcs <a1> ...'", line_no)
                name = tokens[1]
                if name in components:
                    raise DiagramSyntaxError(f"component {name} declared twice", line_no)
                components[name] = tokens[3:]

            elif keyword == "unknot":
                if len(tokens) != 2:
                    raise DiagramSyntaxError("expected 'unknot <name>'", line_no)
                name = tokens[1]
                if name in components:
                    raise DiagramSyntaxError(f"component {name} declared twice", line_no)
                components[name] = [name]
                closed.append(name)

            elif keyword == "crossing":
                if (
                    len(tokens) != 8
                    or tokens[1] not in _SIGNS
                    or tokens[2] != "over"
                    or tokens[5] != "under"
                ):
                    raise DiagramSyntaxError(
                        "expected 'crossing <+|-> over <in> <out> under <in> <out>'", line_no
                    )
                crossings.append(Crossing(
                    sign=_SIGNS[tokens[1]],
                    over_in=tokens[3],
                    over_out=tokens[4],
                    under_in=tokens[6],
                    under_out=tokens[7]
                ))

            else:
                raise DiagramSyntaxError(f"unknown keyword {keyword!r}", line_no)

        diagram = LinkDiagram(components=components, crossings=crossings, closed=closed)
        report = self.validate(diagram)
        if not report.ok:
            raise ConsistencyError(report.violations)
        logger.debug(
            f"parsed diagram components={len(components)} arcs={diagram.arc_count} "
            f"crossings={len(crossings)}"
        )
        return diagram

    def serialize(self, diagram: LinkDiagram) -> str:
        lines: List[str] = []
        for name in sorted(diagram.components):
            if name in diagram.closed:
                lines.append(f"unknot {name}")
            else:
                lines.append(f"component {name} arcs {' '.join(diagram.components[name])}")
        for c in diagram.crossings:
            sign = "+" if c.sign > 0 else "-"
            lines.append(
                f"crossing {sign} over {c.over_in} {c.over_out} under {c.under_in} {c.under_out}"
            )
        return "\n".join(lines) + "\n"

    def validate(self, diagram: LinkDiagram) -> ValidationReport:
        violations: List[str] = []
        owner: Dict[str, str] = {}
        for name, arcs in diagram.components.items():
            if not arcs:
                violations.append(f"component {name} has no arcs")
            for arc in arcs:
                if arc in owner:
                    violations.append(f"arc {arc} belongs to both {owner[arc]} and {name}")
                owner[arc] = name

        starts: Dict[str, int] = defaultdict(int)
        ends: Dict[str, int] = defaultdict(int)
        successor: Dict[str, str] = {}

        for index, c in enumerate(diagram.crossings):
            unknown = [a for a in (c.over_in, c.over_out, c.under_in, c.under_out) if a not in owner]
            if unknown:
                violations.append(f"crossing {index} references unknown arc {unknown[0]}")
                continue
            strands = [(c.under_in, c.under_out)]
            if c.over_split:
                strands.append((c.over_in, c.over_out))
            for arc_in, arc_out in strands:
                ends[arc_in] += 1
                starts[arc_out] += 1
                successor[arc_in] = arc_out
                if owner[arc_in] != owner[arc_out]:
                    violations.append(
                        f"crossing {index} joins arc {arc_in} of {owner[arc_in]} "
                        f"to arc {arc_out} of {owner[arc_out]}"
                    )

        touched = {
            a for c in diagram.crossings
            for a in (c.over_in, c.over_out, c.under_in, c.under_out)
        }
        for name, arcs in diagram.components.items():
            if name in diagram.closed:
                if touched.intersection(arcs):
                    violations.append(f"unknot {name} takes part in a crossing")
                continue
            if len(arcs) == 1 and starts[arcs[0]] == 0 and ends[arcs[0]] == 0:
                continue

            broken = False
            for arc in arcs:
                if starts[arc] != 1:
                    violations.append(f"arc {arc} is outgoing {starts[arc]} times")
                    broken = True
                if ends[arc] != 1:
                    violations.append(f"arc {arc} is incoming {ends[arc]} times")
                    broken = True
            if broken:
                continue

            cycle = [arcs[0]]
            while successor.get(cycle[-1]) not in (None, arcs[0]) and len(cycle) <= len(arcs):
                cycle.append(successor[cycle[-1]])
            if len(cycle) < len(arcs):
                violations.append(f"component {name} splits into more than one cycle")
            elif cycle != list(arcs):
                violations.append(f"arcs of component {name} are not listed in cyclic order")

        return ValidationReport(violations=violations)

    def _require(self, diagram: LinkDiagram, component: str) -> None:
        if component not in diagram.components:
            raise UnknownComponent(f"no component named {component}")

    def linking_number(self, diagram: LinkDiagram, c1: str, c2: str) -> int:
        self._require(diagram, c1)
        self._require(diagram, c2)
        if c1 == c2:
            raise SameComponent(f"linking number needs two components, got {c1} twice")
        owner = diagram.arc_component()
        total = sum(
            c.sign for c in diagram.crossings
            if {owner[c.over_in], owner[c.under_in]} == {c1, c2}
        )
        if total % 2:
            raise ConsistencyError([
                f"odd signed crossing count {total} between {c1} and {c2}"
            ])
        return total // 2

    def writhe(self, diagram: LinkDiagram, component: str) -> int:
        self._require(diagram, component)
        owner = diagram.arc_component()
        return sum(
            c.sign for c in diagram.crossings
            if owner[c.over_in] == component and owner[c.under_in] == component
        )

    def linking_matrix(self, diagram: LinkDiagram) -> Dict[str, Dict[str, int]]:
        """Pairwise linking numbers, with writhe on the diagonal."""
        names = sorted(diagram.components)
        matrix = {a: {b: 0 for b in names} for a in names}
        for a in names:
            matrix[a][a] = self.writhe(diagram, a)
        for a, b in combinations(names, 2):
            matrix[a][b] = matrix[b][a] = self.linking_number(diagram, a, b)
        return matrix

    def end_crossing(self, diagram: LinkDiagram, arc: str) -> Optional[Tuple[int, Crossing]]:
        for index, c in enumerate(diagram.crossings):
            if c.under_in == arc or (c.over_split and c.over_in == arc):
                return index, c
        return None

    def insert_crossing(
        self,
        diagram: LinkDiagram,
        under_arc: str,
        over_arc: str,
        sign: int,
        new_arc: str,
        moved_overpasses: Iterable[int] = ()
    ) -> LinkDiagram:
        """Split ``under_arc`` where it passes under ``over_arc``.

        The part after the new crossing is named ``new_arc``; it takes over the
        old end of ``under_arc`` and the over-passages listed (by crossing index)
        in ``moved_overpasses``.
        """
        owner = diagram.arc_component()
        for arc in (under_arc, over_arc):
            if arc not in owner:
                raise ConsistencyError([f"cannot insert crossing at unknown arc {arc}"])
        if new_arc in owner:
            raise ConsistencyError([f"arc {new_arc} already exists"])
        found = self.end_crossing(diagram, under_arc)
        if found is None:
            raise ConsistencyError([f"arc {under_arc} is closed and cannot be split"])
        end_index, _ = found
        moved = set(moved_overpasses)

        crossings: List[Crossing] = []
        for index, c in enumerate(diagram.crossings):
            data = c.model_dump()
            if index == end_index:
                if c.under_in == under_arc:
                    data["under_in"] = new_arc
                else:
                    data["over_in"] = new_arc
            if index in moved:
                if c.over_in != under_arc or c.over_split:
                    raise ConsistencyError([
                        f"crossing {index} is not an over-passage of {under_arc}"
                    ])
                data["over_in"] = data["over_out"] = new_arc
            crossings.append(Crossing(**data))

        try:
            crossings.append(Crossing(
                sign=sign,
                over_in=over_arc,
                over_out=over_arc,
                under_in=under_arc,
                under_out=new_arc
            ))
        except ValidationError as e:
            raise ConsistencyError([f"bad crossing sign {sign}"]) from e

        name = owner[under_arc]
        components = {k: list(v) for k, v in diagram.components.items()}
        arcs = components[name]
        arcs.insert(arcs.index(under_arc) + 1, new_arc)

        result = LinkDiagram(components=components, crossings=crossings, closed=diagram.closed)
        report = self.validate(result)
        if not report.ok:
            raise ConsistencyError(report.violations)
        return result


diagram_service = DiagramService()
