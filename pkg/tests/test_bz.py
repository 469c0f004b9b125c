import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ptca.bz import (
    REACTION_FOR,
    REACTIONS,
    SPECIES,
    BZRule,
    Mixture,
    MixtureError,
    bz_delta,
    cluster_step,
    format_mixture,
    mixture,
    mixture_step,
    parse_cluster,
    parse_mixture,
    premises_available,
    species_step,
)
from ptca.engine import NotReversibleWitness, Recurrence, detect_global_cycle, evolve, is_reversible, moore, step, trace_of
from ptca.report import load_golden
from ptca.scenario import load_scenario

M = parse_mixture
INERT = ("H+", "H2O", "BrCH(COOH)2", "HCOOH", "CO2", "CH2(COOH)2")
NB = moore(2)


@pytest.fixture(scope="module")
def scen():
    return load_scenario("bz-fig5")


@pytest.fixture(scope="module")
def ev(scen):
    return evolve(scen.initial, scen.rule, scen.nbhd, horizon=5)


@pytest.fixture(scope="module")
def golden(scen):
    return load_golden("bz-fig5", scen)


def ring(config, z):
    return tuple(config.get((z[0] + a, z[1] + b)) for a, b in NB)


def second(config, z):
    return tuple(None if config.get((z[0] + a, z[1] + b)) is None else ring(config, (z[0] + a, z[1] + b))
                 for a, b in NB)


# -- syntax -----------------------------------------------------------------


def test_parse_examples():
    assert M("Ce4+ (+) HBrO2 (+) H2O").clusters == (("Ce4+", "HBrO2", "H2O"),)
    assert M("H+").clusters == (("H+",),)
    assert len(M("Br2 (+) H2O, HOBr (+) HBrO2")) == 2
    assert M("Br2 ⊕ H2O") == M("Br2 (+) H2O")


@pytest.mark.parametrize("bad", ["Xe", "", "H+ (+)", "H+, ", "(+) H2O"])
def test_parse_errors(bad):
    with pytest.raises(MixtureError):
        parse_mixture(bad)


def test_cluster_order_is_kept_and_mixture_order_is_canonical():
    assert parse_cluster("H2O (+) Ce4+") == ("H2O", "Ce4+")
    assert M("HOBr, Br2 (+) H2O") == M("Br2 (+) H2O, HOBr")
    assert str(M("HOBr, Br2 (+) H2O")) == "Br2 (+) H2O, HOBr"


clusters = st.lists(st.sampled_from(SPECIES), min_size=1, max_size=4).map(tuple)
mixtures = st.lists(clusters, min_size=1, max_size=5).map(lambda cs: Mixture(tuple(cs)))


@settings(max_examples=300, deadline=None)
@given(mixtures)
def test_round_trip_and_idempotent_normalization(m):
    assert parse_mixture(format_mixture(m)) == m
    assert m.dedupe().dedupe() == m.dedupe()
    assert Mixture(m.clusters) == m


def test_reaction_table():
    assert [r.rule_id for r in REACTIONS] == list(range(1, 8))
    assert REACTION_FOR["HBrO2"].required_premises == ()
    assert set(REACTION_FOR) | set(INERT) == set(SPECIES)


# -- premise matching -------------------------------------------------------


def matching_oracle(required, neighbors):
    """Every injective assignment, smallest first."""
    for combo in itertools.permutations(range(len(neighbors)), len(required)):
        if all(neighbors[i] is not None and s in neighbors[i].species() for s, i in zip(required, combo)):
            return combo
    return None


def test_premises_examples(ev):
    panel1 = ev[0]
    got = premises_available(("HBrO2", "BrO3-", "H+"), ring(panel1, (2, 2)))
    assert {tuple(NB)[i] for i in got} == {(-1, -1), (-1, 0), (-1, 1)}
    assert premises_available((), ()) == ()
    assert premises_available(("Br-", "H+"), (M("Br- (+) H+"), None, M("H2O"))) is None
    assert matching_oracle(("Br-", "H+"), (M("Br- (+) H+"), None, M("H2O"))) is None


neighbor_lists = st.lists(st.one_of(st.none(), mixtures), min_size=0, max_size=8)


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(REACTIONS), neighbor_lists)
def test_premises_matches_oracle(rx, neighbors):
    assert premises_available(rx.required_premises, neighbors) == matching_oracle(rx.required_premises, neighbors)


# -- single steps -----------------------------------------------------------


def test_species_step_examples():
    assert species_step("HBrO2", ()) == ("HOBr", "BrO3-", "H+")
    assert species_step("H+", (M("Br-"),)) is None
    assert species_step("Ce4+", (M("BrCH(COOH)2"), M("H2O"))) == ("Br-", "Ce3+", "HCOOH", "CO2", "H+")
    assert species_step("Ce4+", (M("BrCH(COOH)2 (+) H2O"),)) is None


def test_cluster_step_examples(ev):
    got = cluster_step(("Ce4+", "HBrO2", "H2O"), ring(ev[1], (2, 2)))
    assert Mixture(tuple(got)) == M("Br- (+) Ce3+ (+) HCOOH (+) CO2 (+) H+, HOBr (+) BrO3- (+) H+")
    assert cluster_step(("H+", "H2O"), ()) == [("H+", "H2O")]
    assert cluster_step(("HBrO2", "H+"), ()) == [("HOBr", "BrO3-", "H+")]


def cluster_oracle(c, neighbors):
    outs = []
    for s in c:
        rx = REACTION_FOR.get(s)
        if rx and matching_oracle(rx.required_premises, neighbors) is not None:
            outs.append(rx.product)
    return outs or [c]


@settings(max_examples=300, deadline=None)
@given(clusters, neighbor_lists)
def test_cluster_step_matches_table(c, neighbors):
    assert cluster_step(c, neighbors) == cluster_oracle(c, neighbors)


def test_mixture_step_panel_three_centre(ev):
    c = ev[2]
    out, why = mixture_step(c[(2, 2)], ring(c, (2, 2)), second(c, (2, 2)), NB)
    assert out == M("Br- (+) Ce3+ (+) HCOOH (+) CO2 (+) H+, Br2 (+) H2O, HOBr (+) HBrO2")
    assert why.applied == "BZ-4 BZ-6 BZ-8 BZ-9"


def test_mixture_step_small_cases(ev):
    assert mixture_step(M("H2O"), ())[0] == M("H2O")
    c = ev[2]
    out, why = mixture_step(c[(3, 1)], ring(c, (3, 1)), second(c, (3, 1)), NB)
    assert out == M("Br-") and why is None
    assert bz_delta(ev[0][(3, 1)], ring(ev[0], (3, 1)), second(ev[0], (3, 1))) == M("Br-")


def test_retention_needs_the_second_ring():
    with pytest.raises(ValueError):
        mixture_step(M("HBrO2, H2O"), (None,))


def test_idempotency_flag():
    # both HBrO2 clusters produce the same cluster
    m = M("HBrO2, HBrO2 (+) H2O")
    on, why = mixture_step(m, ())
    assert on == M("HOBr (+) BrO3- (+) H+") and 10 in why.meta
    off, _ = mixture_step(m, (), idempotency=False)
    assert len(off) == 2


@pytest.mark.parametrize("s", INERT)
def test_inert_species_are_fixed_points(s):
    for n in ([], [M("Br- (+) H+")], [M(x) for x in SPECIES[:8]]):
        assert bz_delta(M(s), tuple(n), tuple(() for _ in n)) == M(s)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.sampled_from(INERT), min_size=1, max_size=3).map(tuple), min_size=1, max_size=4),
       neighbor_lists)
def test_quiescent_mixtures_are_fixed_points(cs, neighbors):
    m = Mixture(tuple(cs))
    assert bz_delta(m, neighbors) == m


# -- the six-panel run ----------------------------------------------------


@pytest.mark.parametrize("t", range(6))
def test_panels(ev, golden, t):
    snap_t, cells, _ = golden.snapshots[t]
    assert snap_t == t
    assert len(cells) == 9
    for p, m in cells.items():
        assert ev[t][p] == m, (t, p)


def test_reaction_attributions_per_step(scen, ev):
    rec0, rec1, rec2 = {}, {}, {}
    step(ev[0], scen.rule, scen.nbhd, record=rec0)
    step(ev[1], scen.rule, scen.nbhd, record=rec1)
    step(ev[2], scen.rule, scen.nbhd, record=rec2)
    assert rec0[(2, 2)].applied == "BZ-1" and rec0[(1, 1)].applied == "BZ-3"
    assert rec1[(2, 2)].applied == "BZ-2 BZ-3 BZ-8"
    assert rec2[(2, 2)].applied == "BZ-4 BZ-6 BZ-8 BZ-9"


def test_cerium_oscillates_in_the_centre(ev):
    tr = trace_of(ev, (2, 2)).states
    assert tr[0] == M("Ce3+")
    assert "Ce4+" in tr[1].species() and "Ce3+" not in tr[1].species()
    assert "Ce3+" in tr[2].species()


def test_long_run_settles_into_a_two_cycle(scen):
    ev = evolve(scen.initial, scen.rule, scen.nbhd, horizon=12)
    cyc = detect_global_cycle(ev)
    assert cyc == Recurrence(5, 2)
    verdict = is_reversible(ev, scen.equality, cyc)
    assert isinstance(verdict, NotReversibleWitness)


def test_rule_is_deterministic(scen):
    a = evolve(scen.initial, BZRule(), scen.nbhd, horizon=4)
    b = evolve(scen.initial, BZRule(), scen.nbhd, horizon=4)
    assert all(x == y for x, y in zip(a, b))
