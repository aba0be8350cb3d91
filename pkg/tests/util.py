"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random

from diffdim import ModuleElement, OperatorRing, analyze


def random_exponent(rng: random.Random, m: int, max_order: int):
    order = rng.randint(0, max_order)
    exp = [0] * m
    for _ in range(order):
        exp[rng.randrange(m)] += 1
    return tuple(exp)


def random_coeff(rng: random.Random, ring: OperatorRing, pool: str):
    value = ring.coeff(rng.choice([-3, -2, -1, 1, 2, 3]))
    if pool == "poly" and rng.random() < 0.5:
        value = value + rng.choice([-2, -1, 1, 2]) * ring.gens[rng.randrange(ring.m)]
    return value


def random_operator(rng: random.Random, ring: OperatorRing, max_order: int, pool: str = "int"):
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[random_exponent(rng, ring.m, max_order)] = random_coeff(rng, ring, pool)
    return ring.operator(terms)


def random_element(rng: random.Random, ring: OperatorRing, n: int, max_order: int, pool: str = "int"):
    ops = [ring.op_zero()] * n
    for j in rng.sample(range(n), rng.randint(1, min(2, n))):
        ops[j] = random_operator(rng, ring, max_order, pool)
    return ModuleElement(ring, ops)


def random_system(rng: random.Random, ring: OperatorRing, n: int, max_order: int,
                  size: int = None, pool: str = "int"):
    """A random system with at least one generator touching every position."""
    size = size if size is not None else n + rng.randint(0, 1)
    gens = []
    for j in range(n):
        ops = [ring.op_zero()] * n
        ops[j] = random_operator(rng, ring, max_order, pool)
        if n > 1 and rng.random() < 0.5:
            other = rng.choice([k for k in range(n) if k != j])
            ops[other] = random_operator(rng, ring, max_order, pool)
        gens.append(ModuleElement(ring, ops))
    for _ in range(max(0, size - n)):
        gens.append(random_element(rng, ring, n, max_order, pool))
    return gens


def draw_systems(seed: int, count: int, predicate, *, m_choices=(1, 2), n_max=3,
                 max_order=2, pool: str = "int", max_tries: int = 2000):
    """Deterministically draw systems satisfying predicate(analysis)."""
    rng = random.Random(seed)
    found = []
    for _ in range(max_tries):
        m = rng.choice(m_choices)
        n = rng.randint(1, n_max)
        ring = OperatorRing(m)
        gens = random_system(rng, ring, n, max_order)
        try:
            ana = analyze(gens)
        except Exception:
            continue
        if predicate(ana):
            found.append((gens, ana))
            if len(found) == count:
                return found
    raise RuntimeError(f"only drew {len(found)}/{count} systems matching the predicate")
