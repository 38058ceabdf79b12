"""Fundamental groups of link complements, surgeries and handle attachments.

Certification is sound but incomplete: a certificate is issued only when the
simplified presentation is empty, or when its generators pairwise commute by
explicit commutator relators and the abelianization is trivial.
"""
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple
import logging
import re

from etakit.core.config import get_settings
from etakit.core.exceptions import (
    BudgetExhausted,
    ConsistencyError,
    DiagramSyntaxError,
    TemplateUnavailable,
    UnknownComponent
)
from etakit.models.diagram import LinkDiagram
from etakit.models.group import (
    CertificateStatus,
    GroupPresentation,
    Letter,
    Move,
    MoveKind,
    Simplification,
    TrivialityCertificate,
    WTemplate,
    Word
)
from etakit.services.diagram import diagram_service
from etakit.services.smith import smith_service

logger = logging.getLogger(__name__)

_ARC_NAME = re.compile(r"^(.*?)(\d+)$")


def _shorten(target: Word, source: Word) -> Optional[Word]:
    """Replace more than half of a cyclic form of ``source`` inside ``target``.

    Returns a strictly shorter conjugate-equivalent relator, or None.
    """
    letters = target.cyclically_reduced().letters
    n = len(letters)
    if n == 0:
        return None
    doubled = letters + letters
    for candidate in (source, source.inverse()):
        cycle = candidate.cyclically_reduced()
        m = len(cycle)
        if m == 0:
            continue
        for k in range(min(m, n), m // 2, -1):
            for rotation in cycle.rotations():
                piece, rest = rotation.letters[:k], rotation.letters[k:]
                for start in range(n):
                    if doubled[start:start + k] == piece:
                        tail = doubled[start + k:start + n]
                        return Word.of(Word.of(rest).inverse().letters + tail)
    return None


def _collapse(word: Word, a: str, b: str) -> Word:
    """Cyclically rewrite x^e y^k x^-e to y^k for {x, y} = {a, b}."""
    letters = list(word.cyclically_reduced().letters)
    changed = True
    while changed and len(letters) >= 3:
        changed = False
        n = len(letters)
        for i in range(n):
            x, e = letters[i]
            if x not in (a, b):
                continue
            y = b if x == a else a
            k = 0
            while k < n - 2 and letters[(i + 1 + k) % n][0] == y:
                k += 1
            end = (i + 1 + k) % n
            if k and letters[end] == (x, -e):
                drop = {i, end}
                letters = [letter for j, letter in enumerate(letters) if j not in drop]
                letters = list(Word.of(letters).cyclically_reduced().letters)
                changed = True
                break
    return Word.of(letters)


class Pi1Service:
    # presentations from diagrams

    def wirtinger(self, diagram: LinkDiagram) -> GroupPresentation:
        generators = [arc for name in sorted(diagram.components) for arc in diagram.components[name]]
        relators: List[Word] = []
        for c in diagram.crossings:
            s = c.sign
            g = c.over_in
            relators.append(Word.of(
                [(c.under_out, -1)] + [(g, -s)] + [(c.under_in, 1)] + [(g, s)]
            ))
            if c.over_split:
                relators.append(Word.of([(c.over_out, -1), (c.over_in, 1)]))
        return GroupPresentation.create(generators, relators)

    def longitude(
        self,
        diagram: LinkDiagram,
        component: str,
        framing_arc: Optional[str] = None
    ) -> Word:
        """Longitude read from the first listed arc, corrected to linking number 0.

        The correction ``a^-writhe`` is inserted while travelling along
        ``framing_arc`` (default: the first arc).
        """
        if component not in diagram.components:
            raise UnknownComponent(f"no component named {component}")
        arcs = diagram.components[component]
        framing_arc = framing_arc or arcs[0]
        if framing_arc not in arcs:
            raise ConsistencyError([f"framing arc {framing_arc} is not on {component}"])
        writhe = diagram_service.writhe(diagram, component)

        ends = {c.under_in: c for c in diagram.crossings}
        letters: List[Letter] = []
        for arc in arcs:
            if arc == framing_arc and writhe:
                letters.extend(Word.generator(arc, -writhe).letters)
            crossing = ends.get(arc)
            if crossing is not None:
                letters.append((crossing.over_in, crossing.sign))
        return Word.of(letters)

    def surgery_relators(
        self,
        diagram: LinkDiagram,
        framings: Dict[str, int],
        framing_arcs: Optional[Dict[str, str]] = None
    ) -> List[Word]:
        """One relator ``longitude * meridian^f`` per framed component."""
        framing_arcs = framing_arcs or {}
        relators = []
        for component, framing in framings.items():
            longitude = self.longitude(diagram, component, framing_arcs.get(component))
            meridian = diagram.components[component][0]
            relators.append(longitude * Word.generator(meridian, framing))
        return relators

    def handle_relator(self, presentation: GroupPresentation, word: Word) -> GroupPresentation:
        """Append the attaching word of a 2-handle; the empty word adds nothing."""
        relators = list(presentation.relators)
        if not word.is_empty():
            relators.append(word)
        return GroupPresentation.create(presentation.generators, relators)

    # presentation files

    def parse_presentation(self, text: str) -> GroupPresentation:
        generators: Optional[List[str]] = None
        relators: List[Word] = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            keyword, sep, body = line.partition(":")
            if not sep or keyword.strip() not in ("gens", "rel"):
                raise DiagramSyntaxError("expected 'gens: ...' or 'rel: ...'", line_no)
            if keyword.strip() == "gens":
                if generators is not None:
                    raise DiagramSyntaxError("generators declared twice", line_no)
                generators = body.split()
            else:
                try:
                    relators.append(Word.parse(body))
                except DiagramSyntaxError as e:
                    raise DiagramSyntaxError(str(e), line_no) from e
        if generators is None:
            raise DiagramSyntaxError("missing 'gens:' line")
        return GroupPresentation.create(generators, relators)

    def serialize_presentation(self, presentation: GroupPresentation) -> str:
        lines = ["gens: " + " ".join(presentation.generators)]
        lines += [f"rel: {r.render()}" for r in presentation.relators]
        return "\n".join(lines) + "\n"

    # abelianization

    def abelianization(self, presentation: GroupPresentation) -> List[int]:
        return smith_service.invariant_factors(
            presentation.exponent_matrix(),
            len(presentation.generators)
        )

    # moves

    def _eliminate(self, presentation: GroupPresentation, generator: str, index: int) -> Tuple[GroupPresentation, Word]:
        relator = presentation.relators[index]
        positions = [i for i, (g, _) in enumerate(relator.letters) if g == generator]
        if len(positions) != 1:
            raise ConsistencyError([
                f"{generator} occurs {len(positions)} times in relator {index}, cannot eliminate"
            ])
        pos = positions[0]
        exp = relator.letters[pos][1]
        rest = Word.of(relator.letters[pos + 1:] + relator.letters[:pos])
        image = rest.inverse() if exp > 0 else rest

        relators = [
            r.substitute(generator, image)
            for i, r in enumerate(presentation.relators)
            if i != index
        ]
        generators = [g for g in presentation.generators if g != generator]
        return GroupPresentation(generators=generators, relators=relators), image

    def apply_move(self, presentation: GroupPresentation, move: Move) -> GroupPresentation:
        rels = presentation.relators

        if move.kind == MoveKind.REDUCE:
            kept: List[Word] = []
            for r in rels:
                w = r.cyclically_reduced()
                if w.is_empty() or any(w.same_cycle(k) for k in kept):
                    continue
                kept.append(w)
            return GroupPresentation(generators=presentation.generators, relators=kept)

        if move.kind == MoveKind.ELIMINATE:
            result, _ = self._eliminate(presentation, move.generator, move.relator_index)
            return result

        if move.kind == MoveKind.DETECT_COMMUTATOR:
            if rels[move.relator_index].commutator_pair() != tuple(move.pair):
                raise ConsistencyError([f"relator {move.relator_index} is not the commutator {move.pair}"])
            return presentation

        if move.kind == MoveKind.COLLAPSE:
            a, b = move.pair
            if rels[move.relator_index].commutator_pair() != tuple(move.pair):
                raise ConsistencyError([f"relator {move.relator_index} is not the commutator {move.pair}"])
            relators = [
                r if i == move.relator_index else _collapse(r, a, b)
                for i, r in enumerate(rels)
            ]
            return GroupPresentation(generators=presentation.generators, relators=relators)

        if move.kind == MoveKind.SUBSTITUTE:
            shorter = _shorten(rels[move.relator_index], rels[move.source_index])
            if shorter is None:
                raise ConsistencyError([
                    f"relator {move.source_index} does not shorten relator {move.relator_index}"
                ])
            relators = list(rels)
            relators[move.relator_index] = shorter
            return GroupPresentation(generators=presentation.generators, relators=relators)

        return presentation

    def replay(self, certificate: TrivialityCertificate, presentation: GroupPresentation) -> GroupPresentation:
        current = presentation
        for move in certificate.moves:
            current = self.apply_move(current, move)
        return current

    # simplification

    def _find_elimination(self, p: GroupPresentation, cap: int, max_length: Optional[int] = None) -> Optional[Move]:
        order = {g: i for i, g in enumerate(p.generators)}
        for index in sorted(range(len(p.relators)), key=lambda i: (len(p.relators[i]), i)):
            relator = p.relators[index]
            if max_length is not None and len(relator) > max_length:
                break
            eligible = [g for g in relator.generators() if relator.occurrences(g) == 1]
            for generator in sorted(eligible, key=order.get, reverse=True):
                result, image = self._eliminate(p, generator, index)
                if result.max_relator_length > cap:
                    logger.debug(f"skip eliminating {generator}: relator length over cap {cap}")
                    continue
                return Move(
                    kind=MoveKind.ELIMINATE,
                    generator=generator,
                    relator_index=index,
                    image=image.render()
                )
        return None

    def _commutator_witnesses(self, p: GroupPresentation) -> Dict[Tuple[str, str], int]:
        witnesses: Dict[Tuple[str, str], int] = {}
        for index, r in enumerate(p.relators):
            pair = r.commutator_pair()
            if pair is not None and pair not in witnesses:
                witnesses[pair] = index
        return witnesses

    def _all_commute(self, p: GroupPresentation, witnesses: Dict[Tuple[str, str], int]) -> bool:
        return all(pair in witnesses for pair in combinations(sorted(p.generators), 2))

    def _find_collapse(self, p: GroupPresentation, witnesses: Dict[Tuple[str, str], int]) -> Optional[Move]:
        for pair, index in witnesses.items():
            move = Move(kind=MoveKind.COLLAPSE, pair=pair, relator_index=index)
            if self.apply_move(p, move) != p:
                return move
        return None

    def _find_substitution(self, p: GroupPresentation, cap: int) -> Optional[Move]:
        witnesses = set(self._commutator_witnesses(p).values())
        for target in range(len(p.relators)):
            if target in witnesses:
                continue
            for source in range(len(p.relators)):
                if source == target:
                    continue
                shorter = _shorten(p.relators[target], p.relators[source])
                if shorter is not None:
                    return Move(
                        kind=MoveKind.SUBSTITUTE,
                        relator_index=target,
                        source_index=source,
                        image=shorter.render()
                    )
        return None

    def tietze_simplify(self, presentation: GroupPresentation, budget: Optional[int] = None) -> Simplification:
        settings = get_settings()
        budget = settings.ETAKIT_BUDGET if budget is None else budget
        cap = settings.ETAKIT_LENGTH_GROWTH * max(presentation.max_relator_length, 1)

        moves: List[Move] = []
        current = presentation
        detected: Set[Tuple[str, str]] = set()

        def apply(move: Move) -> None:
            nonlocal current
            if len(moves) >= budget:
                raise BudgetExhausted(f"move budget {budget} used up")
            current = self.apply_move(current, move)
            moves.append(move)

        def tidy() -> None:
            reduce = Move(kind=MoveKind.REDUCE)
            if self.apply_move(current, reduce) != current:
                apply(reduce)

        try:
            tidy()
            while True:
                # identifications first: a = b from a relator of length <= 2,
                # then conjugations undone by known commutators
                move = self._find_elimination(current, cap, max_length=2)
                if move is not None:
                    apply(move)
                    tidy()
                    continue

                witnesses = self._commutator_witnesses(current)
                for pair, index in witnesses.items():
                    if pair not in detected:
                        apply(Move(kind=MoveKind.DETECT_COMMUTATOR, pair=pair, relator_index=index))
                        detected.add(pair)

                move = self._find_collapse(current, witnesses)
                if move is not None:
                    apply(move)
                    tidy()
                    continue

                move = self._find_elimination(current, cap)
                if move is not None:
                    apply(move)
                    tidy()
                    continue

                if self._all_commute(current, witnesses):
                    break

                move = self._find_substitution(current, cap)
                if move is not None:
                    apply(move)
                    tidy()
                    continue
                break
        except BudgetExhausted as e:
            logger.warning(f"simplification stopped early: {str(e)}")
            return Simplification(presentation=current, moves=moves, budget_exhausted=True)

        logger.debug(
            f"simplified to {len(current.generators)} generators, "
            f"{len(current.relators)} relators in {len(moves)} moves"
        )
        return Simplification(presentation=current, moves=moves)

    def certify_trivial(self, presentation: GroupPresentation, budget: Optional[int] = None) -> TrivialityCertificate:
        result = self.tietze_simplify(presentation, budget)
        terminal = result.presentation
        moves = list(result.moves)
        factors = self.abelianization(terminal)
        moves.append(Move(kind=MoveKind.ABELIANIZE, detail=f"invariant factors {factors}"))

        pairs = sorted(self._commutator_witnesses(terminal))
        commuting = all(
            tuple(sorted(pair)) in pairs
            for pair in combinations(terminal.generators, 2)
        )

        if result.budget_exhausted:
            status, reason = CertificateStatus.INCONCLUSIVE, "move budget exhausted"
        elif not terminal.generators:
            status, reason = CertificateStatus.CERTIFIED, "presentation simplifies to the empty presentation"
        elif commuting and not factors:
            status, reason = CertificateStatus.CERTIFIED, "generators commute and the abelianization is trivial"
        else:
            status = CertificateStatus.INCONCLUSIVE
            if factors:
                reason = f"abelianization is nontrivial: {factors}"
            else:
                reason = "no commutator relators found for the surviving generators"

        logger.info(f"certification status={status.value} reason={reason}")
        return TrivialityCertificate(
            status=status,
            moves=moves,
            terminal=terminal,
            abelianization=factors,
            commuting_pairs=pairs,
            budget_exhausted=result.budget_exhausted,
            reason=reason
        )

    # W family

    def _next_arc(self, diagram: LinkDiagram, arc: str) -> str:
        match = _ARC_NAME.match(arc)
        prefix = match.group(1) if match else arc
        used = [
            int(m.group(2)) for a in diagram.arcs
            for m in [_ARC_NAME.match(a)] if m and m.group(1) == prefix
        ]
        return f"{prefix}{max(used, default=0) + 1}"

    def _add_half_twists(self, diagram: LinkDiagram, template: WTemplate, region_key: str, count: int) -> LinkDiagram:
        region = template.regions[region_key]
        strands = {
            "p": [region.p.arc, [i - 1 for i in region.p.overpasses]],
            "q": [region.q.arc, [i - 1 for i in region.q.overpasses]],
        }
        for j in range(1, count + 1):
            under, over = ("q", "p") if j % 2 else ("p", "q")
            new_arc = self._next_arc(diagram, strands[under][0])
            diagram = diagram_service.insert_crossing(
                diagram,
                under_arc=strands[under][0],
                over_arc=strands[over][0],
                sign=1,
                new_arc=new_arc,
                moved_overpasses=strands[under][1]
            )
            strands[under][0] = new_arc
        return diagram

    def w_family_diagram(self, m: int, n: int, template: WTemplate, base: LinkDiagram) -> LinkDiagram:
        if m < 1 or n < 1 or m > template.max_twists or n > template.max_twists:
            raise TemplateUnavailable(
                f"no transcribed template for W({m},{n}); available for 1 <= m, n <= {template.max_twists}"
            )
        diagram = self._add_half_twists(base, template, "m", m - 1)
        return self._add_half_twists(diagram, template, "n", n - 1)

    def w_family_presentation(self, m: int, n: int, corpus=None) -> GroupPresentation:
        from etakit.services.corpus import corpus_service

        corpus = corpus or corpus_service
        template = corpus.load_w_template()
        base = corpus.load_diagram(template.base_diagram)
        diagram = self.w_family_diagram(m, n, template, base)

        presentation = self.wirtinger(diagram)
        relators = list(presentation.relators) + self.surgery_relators(
            diagram, template.framings, template.framing_arcs
        )
        presentation = GroupPresentation.create(presentation.generators, relators)
        presentation = self.handle_relator(presentation, Word.parse(template.handle))
        logger.debug(
            f"W({m},{n}) presentation generators={len(presentation.generators)} "
            f"relators={len(presentation.relators)}"
        )
        return presentation


pi1_service = Pi1Service()
