"""Linking numbers of lifts in a truncated infinite cyclic cover.

Every arc of the leveled quotient stands for the core of a band: lift[k]
runs along its arcs on sheet ``k + level`` and comes back one sheet further.
A base crossing therefore lifts to four strand crossings per sheet, and the
oracle reads eta straight off the linking numbers between lifts. Nothing here
uses the tally or the substitution rule.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import logging

from etakit.core.config import get_settings
from etakit.core.exceptions import AsymmetricTally, DepthTooSmall
from etakit.models.cover import (
    CrossCheck,
    OracleCoefficients,
    Provenance,
    StrandPair,
    TruncatedCover,
    Verdict
)
from etakit.models.diagram import Crossing, LinkDiagram
from etakit.models.quotient import LeveledQuotient
from etakit.services.diagram import diagram_service
from etakit.services.eta import eta_service

logger = logging.getLogger(__name__)

OUTGOING, RETURNING = 0, 1
PUSHOFF = "pushoff[0]"

Key = Tuple[int, int, int]


def lift(k: int) -> str:
    return f"lift[{k}]"


@dataclass
class _Passage:
    component: str
    key: Key


@dataclass
class _RawCrossing:
    sign: int
    over: _Passage
    under: _Passage
    origin: Provenance


class _CoverBuilder:
    def __init__(self, depth: int):
        self.depth = depth
        self.raw: List[_RawCrossing] = []
        self.dropped = 0

    def in_range(self, k: int) -> bool:
        return -self.depth <= k <= self.depth

    def key(self, strand: int, position: int) -> Key:
        serial = len(self.raw)
        if strand == RETURNING:
            return (RETURNING, -position, -serial)
        return (OUTGOING, position, serial)

    def beside(self, key: Key) -> Key:
        """A fresh key next to ``key`` on the same strand."""
        serial = len(self.raw)
        return (key[0], key[1], -serial if key[0] == RETURNING else serial)

    def add(
        self,
        sign: int,
        over: str,
        over_key: Key,
        under: str,
        under_key: Key,
        kind: StrandPair,
        base_index: Optional[int] = None
    ) -> None:
        self.raw.append(_RawCrossing(
            sign=sign,
            over=_Passage(over, over_key),
            under=_Passage(under, under_key),
            origin=Provenance(kind=kind, base_index=base_index, over=over, under=under)
        ))

    def region(self, q: LeveledQuotient) -> None:
        position = {arc: i for i, arc in enumerate(q.arcs)}
        for base_index, c in enumerate(q.crossings):
            d = q.difference(c)
            patterns = (
                (OUTGOING, OUTGOING, -d, -c.sign),
                (RETURNING, RETURNING, -d, -c.sign),
                (OUTGOING, RETURNING, -d + 1, c.sign),
                (RETURNING, OUTGOING, -d - 1, c.sign),
            )
            for under_lift in range(-self.depth, self.depth + 1):
                for over_strand, under_strand, offset, sign in patterns:
                    over_lift = under_lift + offset
                    if not self.in_range(over_lift):
                        self.dropped += 1
                        continue
                    kind = StrandPair.LIKE if over_strand == under_strand else StrandPair.MIXED
                    self.add(
                        sign,
                        lift(over_lift), self.key(over_strand, position[c.over]),
                        lift(under_lift), self.key(under_strand, position[c.under]),
                        kind, base_index
                    )

    def twists(self, count: int) -> None:
        """``count`` full twists between every pair of neighbouring lifts."""
        if count == 0:
            return
        sign = 1 if count > 0 else -1
        for m in range(-self.depth + 1, self.depth + 1):
            for j in range(2 * abs(count)):
                upper, lower = (lift(m), lift(m - 1)) if j % 2 == 0 else (lift(m - 1), lift(m))
                self.add(
                    sign,
                    upper, self.key(OUTGOING, -1),
                    lower, self.key(OUTGOING, -1),
                    StrandPair.TWIST
                )

    def pushoff(self) -> None:
        base = lift(0)
        for raw in list(self.raw):
            over, under = raw.over, raw.under
            if over.component == base and under.component != base:
                self.add(
                    raw.sign,
                    PUSHOFF, over.key,
                    under.component, self.beside(under.key),
                    StrandPair.PUSHOFF, raw.origin.base_index
                )
            elif under.component == base and over.component != base:
                self.add(
                    raw.sign,
                    over.component, self.beside(over.key),
                    PUSHOFF, under.key,
                    StrandPair.PUSHOFF, raw.origin.base_index
                )

    def assemble(self) -> LinkDiagram:
        names = [lift(k) for k in range(-self.depth, self.depth + 1)] + [PUSHOFF]
        passages: Dict[str, List[Tuple[Key, int, str]]] = {name: [] for name in names}
        for index, raw in enumerate(self.raw):
            passages[raw.over.component].append((raw.over.key, index, "over"))
            passages[raw.under.component].append((raw.under.key, index, "under"))

        slots: Dict[Tuple[int, str], Tuple[str, str]] = {}
        components: Dict[str, List[str]] = {}
        closed: List[str] = []
        for name in names:
            ordered = sorted(passages[name])
            if not ordered:
                components[name] = [name]
                closed.append(name)
                continue
            edges = [f"{name}.e{j}" for j in range(len(ordered))]
            components[name] = edges
            for j, (_, index, role) in enumerate(ordered):
                slots[(index, role)] = (edges[j], edges[(j + 1) % len(edges)])

        crossings = []
        for index, raw in enumerate(self.raw):
            over_in, over_out = slots[(index, "over")]
            under_in, under_out = slots[(index, "under")]
            crossings.append(Crossing(
                sign=raw.sign,
                over_in=over_in,
                over_out=over_out,
                under_in=under_in,
                under_out=under_out
            ))
        return LinkDiagram(components=components, crossings=crossings, closed=closed)


class CoverOracleService:
    def _require_depth(self, q: LeveledQuotient, depth: int, needed: int) -> None:
        if depth < needed:
            raise DepthTooSmall(
                f"depth {depth} is below {needed} for {q.name or 'quotient'} "
                f"(largest level difference {q.max_difference})"
            )

    def minimum_depth(self, q: LeveledQuotient) -> int:
        return q.support_radius + 1

    def default_depth(self, q: LeveledQuotient) -> int:
        return q.support_radius + get_settings().ETAKIT_ORACLE_MARGIN

    def build_truncated_cover(self, q: LeveledQuotient, depth: int) -> TruncatedCover:
        self._require_depth(q, depth, max(q.max_difference, 1))

        untwisted = _CoverBuilder(depth)
        untwisted.region(q)
        diagram = untwisted.assemble()
        # the lift of L' must be a preferred longitude downstairs: odd coefficients sum to 0
        odd_sum = sum(
            diagram_service.linking_number(diagram, lift(0), lift(j))
            for j in range(1, depth + 1, 2)
        )
        twists = -odd_sum

        builder = _CoverBuilder(depth)
        builder.region(q)
        builder.twists(twists)
        builder.pushoff()
        cover = TruncatedCover(
            depth=depth,
            diagram=builder.assemble(),
            provenance={i: raw.origin for i, raw in enumerate(builder.raw)},
            dropped=builder.dropped,
            framing_twists=twists
        )
        if cover.dropped:
            logger.info(
                f"dropped {cover.dropped} cover crossings outside lifts -{depth}..{depth}"
            )
        logger.debug(
            f"built cover depth={depth} crossings={len(cover.diagram.crossings)} twists={twists}"
        )
        return cover

    def lift_signature(self, cover: TruncatedCover, k: int) -> List[Tuple[int, str, int, Optional[int]]]:
        """Crossings of lift[k] with other lifts, relative to k."""
        me = lift(k)
        signature = []
        for index, origin in cover.provenance.items():
            if origin.kind == StrandPair.PUSHOFF or me not in (origin.over, origin.under):
                continue
            other = origin.under if origin.over == me else origin.over
            shift = int(other[len("lift["):-1]) - k
            role = "over" if origin.over == me else "under"
            signature.append((shift, role, cover.diagram.crossings[index].sign, origin.base_index))
        return sorted(signature, key=lambda s: (s[0], s[1], s[2], -1 if s[3] is None else s[3]))

    def oracle_coefficients(self, q: LeveledQuotient, depth: int) -> OracleCoefficients:
        self._require_depth(q, depth, self.minimum_depth(q))
        cover = self.build_truncated_cover(q, depth)
        lifted = {
            i: diagram_service.linking_number(cover.diagram, PUSHOFF, lift(i))
            for i in range(-depth, depth + 1)
            if i != 0
        }
        return OracleCoefficients(
            depth=depth,
            lifted=lifted,
            derived_zero=-sum(lifted.values())
        )

    def cross_check(self, q: LeveledQuotient, depth: Optional[int] = None) -> CrossCheck:
        depth = self.default_depth(q) if depth is None else depth
        self._require_depth(q, depth, self.minimum_depth(q))

        try:
            eta = eta_service.compute_eta(q)
        except AsymmetricTally as e:
            logger.warning(f"cross check of {q.name or 'quotient'} failed: {str(e)}")
            return CrossCheck(
                depth=depth,
                verdict=Verdict.MISMATCH,
                mismatches=e.indices,
                notes=[str(e)]
            )

        oracle = self.oracle_coefficients(q, depth).as_map()
        algorithm = {i: eta.coeffs.get(i, 0) for i in range(-depth, depth + 1)}
        mismatches = [i for i in algorithm if algorithm[i] != oracle.get(i, 0)]
        mismatches += sorted(i for i in eta.coeffs if abs(i) > depth)

        verdict = Verdict.MISMATCH if mismatches else Verdict.MATCH
        logger.info(f"cross check {q.name or 'quotient'} depth={depth} verdict={verdict.value}")
        return CrossCheck(
            depth=depth,
            oracle=oracle,
            algorithm=algorithm,
            verdict=verdict,
            mismatches=mismatches
        )


cover_oracle_service = CoverOracleService()
