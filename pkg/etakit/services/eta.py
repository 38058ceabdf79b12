from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional
import logging

from etakit.core.config import get_settings
from etakit.models.eta import (
    Distinction,
    EtaChecks,
    EtaReport,
    FamilyParams,
    FamilyRow,
    Involution
)
from etakit.models.laurent import LaurentPoly, SymBracket
from etakit.models.quotient import EtaTilde, LeveledQuotient
from etakit.services.quotient import quotient_service

logger = logging.getLogger(__name__)


def _x(i: int) -> LaurentPoly:
    """x_i = t^(i-1) - 2 t^i + t^(i+1)."""
    return LaurentPoly.monomial(i - 1) + LaurentPoly.monomial(i, -2) + LaurentPoly.monomial(i + 1)


class EtaService:
    """Substitution, normalization and the closed-form eta families."""

    # pipeline

    def substitute(self, eta_tilde: EtaTilde) -> LaurentPoly:
        result = LaurentPoly.zero()
        for i, c in eta_tilde.coeffs.items():
            result = result + _x(i) * c
        return result

    def normalize(self, eta_prime: SymBracket) -> SymBracket:
        """Replace the first two entries so that the result vanishes at t = 1 and t = -1."""
        tail = eta_prime.coeffs[2:]
        b0 = -2 * sum(eta_prime[j] for j in range(2, len(eta_prime), 2))
        b1 = -sum(eta_prime[j] for j in range(3, len(eta_prime), 2))
        return SymBracket.of([b0, b1] + tail)

    def compute_eta(self, q: LeveledQuotient) -> LaurentPoly:
        eta_tilde = quotient_service.tally_eta_tilde(q)
        eta_prime = self.substitute(eta_tilde).to_bracket()
        return self.normalize(eta_prime).to_poly()

    def checks(self, poly: LaurentPoly) -> EtaChecks:
        return EtaChecks(
            palindromic=poly.is_palindromic(),
            vanishes_at_1=poly.evaluate(1) == 0,
            vanishes_at_minus_1=poly.evaluate(-1) == 0
        )

    # closed forms

    def eta_tilde_closed_form(self, params: FamilyParams) -> EtaTilde:
        n = params.n
        h = n // 2
        if params.involution == Involution.TAU:
            if n % 2:
                half = {0: 2, 1: (n + 3) // 2, 2: -n + 2, 3: -h}
            else:
                half = {1: -h + 1, 2: -n + 1, 3: n - 1, 5: -h}
        else:
            if n % 2:
                half = {1: h - 1, 2: n - 2, 3: -n + 2, 5: h}
            else:
                half = {0: -2, 1: -h, 2: n - 5, 3: h - 2}

        coeffs: Dict[int, int] = {}
        for i, c in half.items():
            coeffs[i] = c
            coeffs[-i] = c
        return EtaTilde(coeffs=coeffs)

    def printed_eta_entries(self, params: FamilyParams) -> List[int]:
        """The eta bracket entries at their printed length (trailing zeros kept)."""
        n = params.n
        h = n // 2
        if params.involution == Involution.TAU:
            if n % 2:
                return [-3 * n + 3, -1, 2 * n - 2, 1, -h]
            return [-5 * n + 6, 2 * n - 3, 5 * h - 2, -3 * n + 3, h - 1, n, -h]
        if n % 2:
            return [5 * n - 11, -2 * n + 5, -5 * h + 2, 3 * n - 6, -h + 1, -n + 1, h]
        return [3 * n - 12, 1, -2 * n + 8, -1, h - 2]

    def printed_eta_prime_entries(self, params: FamilyParams) -> List[int]:
        n = params.n
        h = n // 2
        if params.involution == Involution.TAU:
            if n % 2:
                return [n + 1, -2 * n - 1, 2 * n - 2, 1, -h]
            return [-n + 2, -1, 5 * h - 2, -3 * n + 3, h - 1, n, -h]
        if n % 2:
            return [n - 3, 1, -5 * h + 2, 3 * n - 6, -h + 1, -n + 1, h]
        return [-n + 4, 2 * n - 7, -2 * n + 8, -1, h - 2]

    def eta_closed_form(self, params: FamilyParams) -> SymBracket:
        return SymBracket.of(self.printed_eta_entries(params))

    def sakuma_distinguish(self, n: int) -> Distinction:
        tau = self.eta_closed_form(FamilyParams(n=n, involution=Involution.TAU))
        sigma = self.eta_closed_form(FamilyParams(n=n, involution=Involution.SIGMA))
        return Distinction(
            n=n,
            distinct=tau.to_poly() != sigma.to_poly(),
            tau=tau.coeffs,
            sigma=sigma.coeffs
        )

    # reports

    def _report(
        self,
        eta_tilde: EtaTilde,
        params: Optional[FamilyParams],
        source: Optional[str]
    ) -> EtaReport:
        eta_prime = self.substitute(eta_tilde).to_bracket()
        eta = self.normalize(eta_prime)
        poly = eta.to_poly()

        printed_prime = None
        closed = None
        notes: List[str] = []
        if params is not None:
            closed = self.eta_closed_form(params).coeffs
            printed_prime = self.printed_eta_prime_entries(params)
            printed = SymBracket.of(printed_prime)
            if printed != eta_prime:
                differing = [
                    j for j in range(max(len(printed), len(eta_prime)))
                    if printed[j] != eta_prime[j]
                ]
                note = (
                    f"eta' by direct substitution {eta_prime.render()} differs from the "
                    f"printed {printed.render()} at entries {differing}"
                )
                if all(j < 2 for j in differing):
                    note += "; normalization discards these entries, so eta is unaffected"
                notes.append(note)
                logger.info(f"{params.label}: {note}")

        return EtaReport(
            n=params.n if params else None,
            involution=params.involution if params else None,
            source=source,
            eta_tilde=eta_tilde.coeffs,
            eta_prime_bracket=eta_prime.coeffs,
            eta_bracket=eta.coeffs,
            eta_poly=poly.coeffs,
            checks=self.checks(poly),
            printed_eta_prime_bracket=printed_prime,
            closed_form_bracket=closed,
            notes=notes
        )

    def report_for_quotient(
        self,
        q: LeveledQuotient,
        params: Optional[FamilyParams] = None
    ) -> EtaReport:
        eta_tilde = quotient_service.tally_eta_tilde(q)
        return self._report(eta_tilde, params, q.name)

    def report_for_family(self, params: FamilyParams) -> EtaReport:
        return self._report(self.eta_tilde_closed_form(params), params, None)

    def _row(self, params: FamilyParams) -> FamilyRow:
        eta = self.eta_closed_form(params)
        return FamilyRow(
            n=params.n,
            involution=params.involution,
            eta_tilde=self.eta_tilde_closed_form(params).coeffs,
            eta_bracket=eta.coeffs,
            degree=eta.radius,
            distinct=self.sakuma_distinguish(params.n).distinct
        )

    def family_table(self, max_n: int, workers: Optional[int] = None) -> List[FamilyRow]:
        """One row per (n, involution) for n = 1..max_n, tau before sigma."""
        params = [
            FamilyParams(n=n, involution=inv)
            for n in range(1, max_n + 1)
            for inv in (Involution.TAU, Involution.SIGMA)
        ]
        workers = workers or get_settings().ETAKIT_TABLE_WORKERS
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(self._row, params))
        logger.info(f"family table rows={len(rows)} workers={workers}")
        return rows


eta_service = EtaService()
