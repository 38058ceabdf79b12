import random

import pytest

from etakit.models.eta import FamilyParams, Involution
from etakit.models.laurent import SymBracket
from etakit.models.quotient import EtaTilde, LeveledCrossing, LeveledQuotient
from etakit.services.eta import eta_service
from etakit.services.quotient import quotient_service

FAMILIES = [
    FamilyParams(n=n, involution=inv)
    for n in range(1, 26)
    for inv in (Involution.TAU, Involution.SIGMA)
]


def random_symmetric_quotient(rng: random.Random) -> LeveledQuotient:
    """A closed level walk with crossings added in pairs of opposite difference."""
    steps = [rng.choice((1, -1, 0)) for _ in range(rng.randint(2, 8))]
    steps += [-s for s in steps]
    rng.shuffle(steps)
    arcs = [f"a{i}" for i in range(len(steps))]
    levels = quotient_service.assign_levels(arcs, rng.randint(-2, 2), steps)

    crossings = []
    for _ in range(rng.randint(0, 6)):
        over, under = rng.sample(arcs, 2)
        sign = rng.choice((1, -1))
        crossings.append(LeveledCrossing(sign=sign, over=over, under=under))
        crossings.append(LeveledCrossing(sign=sign, over=under, under=over))
    return LeveledQuotient(
        arcs=arcs,
        level=levels,
        jumps=dict(zip(arcs, steps)),
        crossings=crossings
    )


def test_substitute_single_term():
    poly = eta_service.substitute(EtaTilde(coeffs={2: 1, -2: 1}))
    assert poly.to_bracket() == SymBracket.of([0, 1, -2, 1])


def test_normalize_replaces_first_two_entries():
    assert eta_service.normalize(SymBracket.of([7, 7, 1, 2, 3])) == SymBracket.of([-8, -2, 1, 2, 3])
    assert eta_service.normalize(SymBracket.of([5])) == SymBracket.of([0])


@pytest.mark.parametrize("params", FAMILIES, ids=lambda p: p.label)
def test_closed_form_pipeline_identity(params):
    eta_prime = eta_service.substitute(eta_service.eta_tilde_closed_form(params)).to_bracket()
    assert eta_service.normalize(eta_prime) == eta_service.eta_closed_form(params)


@pytest.mark.parametrize("n", range(1, 26))
def test_sakuma_distinguish(n):
    result = eta_service.sakuma_distinguish(n)
    assert result.distinct
    assert result.n == n


def test_closed_form_examples():
    tau1 = FamilyParams(n=1, involution=Involution.TAU)
    sigma1 = FamilyParams(n=1, involution=Involution.SIGMA)
    assert eta_service.eta_closed_form(tau1).coeffs == [0, -1, 0, 1]
    assert eta_service.printed_eta_entries(tau1) == [0, -1, 0, 1, 0]
    assert eta_service.eta_closed_form(sigma1).coeffs == [-6, 3, 2, -3, 1]
    assert eta_service.eta_tilde_closed_form(tau1).coeffs == {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}


def test_corpus_files_match_closed_forms(corpus, family_file):
    params = corpus.family_params(family_file)
    eta = eta_service.compute_eta(corpus.load_leveled(family_file))
    assert eta == eta_service.eta_closed_form(params).to_poly()


def test_corpus_report_checks(corpus, family_file):
    params = corpus.family_params(family_file)
    report = eta_service.report_for_quotient(corpus.load_leveled(family_file), params)
    assert report.checks.ok
    assert report.eta_bracket == report.closed_form_bracket
    assert report.source == family_file.split(".")[0]


@pytest.mark.parametrize("n", [1, 3, 5, 11])
def test_odd_tau_printed_eta_prime_deviation_is_noted(n):
    report = eta_service.report_for_family(FamilyParams(n=n, involution=Involution.TAU))
    assert len(report.notes) == 1
    assert "at entries [0, 1]" in report.notes[0]
    assert "eta is unaffected" in report.notes[0]
    assert report.eta_prime_bracket[:2] == [n - 1, -2 * n + 1]
    assert report.eta_bracket == report.closed_form_bracket


@pytest.mark.parametrize("params", [
    FamilyParams(n=2, involution=Involution.TAU),
    FamilyParams(n=3, involution=Involution.SIGMA),
    FamilyParams(n=4, involution=Involution.SIGMA),
], ids=lambda p: p.label)
def test_printed_eta_prime_agrees_elsewhere(params):
    report = eta_service.report_for_family(params)
    assert report.notes == []
    assert SymBracket.of(report.eta_prime_bracket) == SymBracket.of(report.printed_eta_prime_bracket)


def test_family_table_rows():
    rows = eta_service.family_table(3, workers=2)
    assert [(r.n, r.involution) for r in rows] == [
        (n, inv) for n in (1, 2, 3) for inv in (Involution.TAU, Involution.SIGMA)
    ]
    assert all(r.distinct for r in rows)
    assert rows[0].eta_bracket == [0, -1, 0, 1]
    assert rows[0].degree == 3


@pytest.mark.parametrize("seed", range(200))
def test_random_symmetric_quotients_give_valid_eta(seed):
    q = random_symmetric_quotient(random.Random(seed))
    poly = eta_service.compute_eta(q)
    checks = eta_service.checks(poly)
    assert checks.palindromic
    assert checks.vanishes_at_1
    assert checks.vanishes_at_minus_1
    bracket = poly.to_bracket()
    assert bracket[0] + 2 * bracket[1] + 2 * sum(bracket[j] for j in range(2, len(bracket))) == 0


@pytest.mark.parametrize("params", FAMILIES[:10], ids=lambda p: p.label)
def test_family_reports_pass_checks(params):
    assert eta_service.report_for_family(params).checks.ok


def test_eta_prime_is_flagged_intermediate():
    report = eta_service.report_for_family(FamilyParams(n=2, involution=Involution.SIGMA))
    assert report.intermediate == ["eta_prime_bracket"]
    assert report.model_dump(mode="json")["intermediate"] == ["eta_prime_bracket"]
