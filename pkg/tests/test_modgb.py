import random

import pytest

from diffdim import (
    ModuleElement,
    OperatorRing,
    Ranking,
    analyze,
    groebner,
    hilbert_value,
    module_element,
)
from diffdim.modgb import leading_term, reduce

from oracles import comm_staircases, element_to_dict, hilbert_dimension
from util import random_element, random_system


@pytest.fixture
def R2():
    return OperatorRing(2)


def elem(ring, n, terms):
    return module_element(ring, n, terms)


def test_ranking_axioms_random():
    rng = random.Random(3)
    ranking = Ranking(3)
    for _ in range(200):
        m = 3
        u = (rng.randrange(2), tuple(rng.randint(0, 3) for _ in range(m)))
        v = (rng.randrange(2), tuple(rng.randint(0, 3) for _ in range(m)))
        theta = tuple(rng.randint(0, 2) for _ in range(m))
        ku, kv = ranking.term_key(*u), ranking.term_key(*v)
        shift_u = (u[0], tuple(a + b for a, b in zip(u[1], theta)))
        shift_v = (v[0], tuple(a + b for a, b in zip(v[1], theta)))
        # theta u >= u
        assert ranking.term_key(*shift_u) >= ku
        # u >= v implies theta u >= theta v
        if ku >= kv:
            assert ranking.term_key(*shift_u) >= ranking.term_key(*shift_v)
        # orderly
        if sum(u[1]) > sum(v[1]):
            assert ku > kv


def test_reduce_examples(R2):
    d1m1 = elem(R2, 2, {(0, (1, 0)): 1})
    basis = [d1m1]
    assert reduce(d1m1, basis, Ranking(2)).is_zero

    chain = elem(R2, 2, {(0, (0, 1)): 1, (1, (1, 0)): -1})  # d2 m1 - d1 m2
    probe = elem(R2, 2, {(0, (1, 1)): 1})  # d1 d2 m1
    result = reduce(probe, [chain], Ranking(2))
    assert result == elem(R2, 2, {(1, (2, 0)): 1})  # d1^2 m2

    m2 = elem(R2, 2, {(1, (0, 0)): 1})
    assert reduce(m2, [d1m1], Ranking(2)) == m2


def test_groebner_chain_completion(R2):
    gens = [
        elem(R2, 2, {(0, (1, 0)): 1}),
        elem(R2, 2, {(0, (0, 1)): 1, (1, (1, 0)): -1}),
        elem(R2, 2, {(1, (0, 1)): 1}),
    ]
    gb = groebner(gens)
    lts = {leading_term(g, gb.ranking)[:2] for g in gb.elements}
    assert (1, (2, 0)) in lts  # the derived element d1^2 m2


def test_groebner_single_generator(R2):
    g = elem(R2, 1, {(0, (1, 1)): 1, (0, (0, 1)): 3})
    gb = groebner([g])
    assert len(gb.elements) == 1
    assert gb.elements[0] == g


def test_zero_generator_dropped(R2):
    zero = ModuleElement(R2, [R2.op_zero()])
    g = elem(R2, 1, {(0, (1, 0)): 1})
    gb = groebner([zero, g])
    assert len(gb.elements) == 1


def test_analyze_examples(R2):
    # empty system over one indeterminate
    ana = analyze([], ring=R2, n=1)
    assert ana.omega.std_coeffs == (1, 0, 0)
    assert ana.typ == 2 and ana.rank == 1 and ana.codimension == 0

    # single equation d1 y1
    ana = analyze([elem(R2, 1, {(0, (1, 0)): 1})])
    assert ana.omega.std_coeffs == (1, 0)
    assert ana.typ == 1 and ana.typical_dimension == 1 and ana.codimension == 1
    assert ana.rank == 0


def test_analyze_empty_system_rank_n(R2):
    for n in (1, 2, 3):
        assert analyze([], ring=R2, n=n).rank == n


def test_hilbert_value_examples(R2):
    gb = groebner([], ring=R2, n=1)
    assert hilbert_value(gb, 2) == 6
    gb = groebner([elem(R2, 1, {(0, (1, 0)): 1})])
    assert hilbert_value(gb, 3) == 4


def test_hilbert_matches_omega_eventually():
    rng = random.Random(23)
    for _ in range(10):
        ring = OperatorRing(rng.randint(1, 2))
        n = rng.randint(1, 2)
        gens = random_system(rng, ring, n, 2)
        ana = analyze(gens)
        for r in range(ana.threshold, ana.threshold + 3):
            assert hilbert_value(ana.gb, r) == ana.omega.evaluate(r)


def test_generator_set_independence():
    rng = random.Random(29)
    for _ in range(8):
        ring = OperatorRing(rng.randint(1, 2))
        n = rng.randint(1, 3)
        gens = random_system(rng, ring, n, 2)
        ana = analyze(gens)
        # augment with random operator combinations of the generators
        extra = []
        for _ in range(2):
            combo = ModuleElement(ring, [ring.op_zero()] * n)
            for g in gens:
                sigma = random_element(rng, ring, 1, 1).ops[0]
                combo = combo + g.op_multiplied(sigma)
            extra.append(combo)
        ana2 = analyze(gens + extra)
        assert ana2.omega == ana.omega


def test_ranking_invariance_of_omega():
    rng = random.Random(31)
    rankings = lambda n: [
        Ranking(n),
        Ranking(n, tie="term"),
        Ranking(n, precedence=tuple(reversed(range(n)))),
    ]
    for _ in range(6):
        ring = OperatorRing(rng.randint(1, 2))
        n = rng.randint(1, 3)
        gens = random_system(rng, ring, n, 2)
        omegas = {analyze(gens, rk).omega for rk in rankings(n)}
        assert len(omegas) == 1


def test_input_generators_reduce_to_zero_and_spairs():
    rng = random.Random(37)
    for _ in range(6):
        ring = OperatorRing(rng.randint(1, 2))
        n = rng.randint(1, 2)
        gens = random_system(rng, ring, n, 2, pool="poly")
        gb = groebner(gens)
        for g in gens:
            assert gb.reduce(g).is_zero


def test_commutative_oracle_staircases():
    rng = random.Random(41)
    for _ in range(8):
        m = rng.randint(1, 3)
        ring = OperatorRing(m)
        n = rng.randint(1, 3)
        gens = random_system(rng, ring, n, 3)
        gb = groebner(gens)
        expected = comm_staircases([element_to_dict(g) for g in gens], n, m)
        actual = [frozenset(E.elements) for E in gb.staircases]
        assert actual == expected


def test_raw_hilbert_oracle_agreement():
    ring = OperatorRing(2)
    gens = [
        elem(ring, 2, {(0, (1, 0)): 1}),
        elem(ring, 2, {(0, (0, 1)): 1, (1, (1, 0)): -1}),
        elem(ring, 2, {(1, (0, 1)): 1}),
    ]
    gb = groebner(gens)
    dicts = [element_to_dict(g) for g in gens]
    for r in range(0, 5):
        assert hilbert_value(gb, r) == hilbert_dimension(dicts, 2, 2, r)
