"""Constructive primitive elements for rank-zero systems.

For a system of positive codimension the quotient module is generated by a
single element psi = m_1 + c_2 m_2 + ... + c_n m_n once suitable c_j are
adjoined.  Here the c_j are drawn as random degree-<=1 polynomials with
small integer coefficients, the system is prolonged by derivation, and
exact Gaussian elimination over Q(x1..xm) recovers operators lambda_j with
lambda_j psi = m_j modulo the system.  Every run is verified by reduction
against a Groebner basis with psi adjoined as an extra indeterminate.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import comb

from .modgb import ModuleElement, Ranking, analyze, groebner, order_profile
from .orealg import DiffOperator, OperatorRing

log = logging.getLogger("diffdim")


class NotZeroRank(ValueError):
    """The system has positive rank, so no primitive element exists."""


class RetriesExhausted(RuntimeError):
    """No drawn coefficient vector c led to a solvable prolonged system."""


def select_independent_subsystem(generators, ranking: Ranking = None) -> list[ModuleElement]:
    """Greedily pick n generators spanning a rank-zero quotient.

    A candidate is kept exactly when it strictly decreases the rank a_m of
    the quotient module.  Requires the full system to have rank zero.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise NotZeroRank("empty system has full rank")
    ring, n = gens[0].ring, gens[0].n
    full = analyze(gens, ranking)
    if full.rank != 0:
        raise NotZeroRank(f"system has rank {full.rank} > 0")
    chosen: list[ModuleElement] = []
    current = n
    for g in gens:
        if current == 0:
            break
        cand = analyze(chosen + [g], ranking, ring=ring, n=n).rank
        if cand < current:
            chosen.append(g)
            current = cand
    if current != 0 or len(chosen) != n:
        raise RuntimeError("greedy scan failed to reach rank zero")  # unreachable by rank additivity
    return chosen


@dataclass(frozen=True)
class ProlongedSystem:
    """The linear system Sigma_s over F in the derivative unknowns d^theta m_j.

    Rows are sparse maps unknown-index -> coefficient; the right-hand side
    of each row is a sparse map theta -> coefficient in the formal symbols
    theta(psi).
    """

    ring: OperatorRing
    n: int
    s: int
    orders: tuple[int, ...]
    unknowns: tuple[tuple[int, tuple[int, ...]], ...]
    rows: tuple[dict, ...]
    rhs: tuple[dict, ...]

    @property
    def equation_count(self) -> int:
        return len(self.rows)

    @property
    def unknown_count(self) -> int:
        return len(self.unknowns)


def _exponents_up_to(m: int, bound: int):
    for total in range(bound + 1):
        for exp in _compositions(m, total):
            yield exp


def _compositions(m: int, total: int):
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(m - 1, total - head):
            yield (head,) + tail


def prolong(subsystem, c, s: int, ranking: Ranking = None) -> ProlongedSystem:
    """Build Sigma_s for the subsystem and coefficient vector c = (c_2..c_n).

    Equations are d^theta F_i = 0 for ord theta <= s together with
    d^theta(m_1 + sum c_j m_j) = theta(psi); unknowns are the derivatives
    d^theta m_j with ord theta <= s + e_j.
    """
    subsystem = list(subsystem)
    ring, n = subsystem[0].ring, subsystem[0].n
    m = ring.m
    if len(c) != n - 1:
        raise ValueError("need n-1 coefficients c_2..c_n")
    if ranking is None:
        ranking = Ranking(n)
    e = order_profile(subsystem, n)

    unknowns = []
    for j in range(n):
        for exp in _exponents_up_to(m, s + e[j]):
            unknowns.append((j, exp))
    unknowns.sort(key=lambda u: ranking.term_key(*u), reverse=True)
    index = {u: i for i, u in enumerate(unknowns)}

    psi_def = ModuleElement(ring, [ring.op_one()] + [ring.op_const(cj) for cj in c])

    rows: list[dict] = []
    rhs: list[dict] = []
    thetas = list(_exponents_up_to(m, s))
    for f in subsystem:
        for theta in thetas:
            shifted = f.shifted(theta)
            rows.append({index[(j, exp)]: coeff for j, exp, coeff in shifted.terms()})
            rhs.append({})
    for theta in thetas:
        shifted = psi_def.shifted(theta)
        rows.append({index[(j, exp)]: coeff for j, exp, coeff in shifted.terms()})
        rhs.append({theta: ring.field.one})

    expected = (n + 1) * comb(s + m, m)
    assert len(rows) == expected, "equation count must be (n+1)*C(s+m, m)"
    return ProlongedSystem(ring, n, s, e, tuple(unknowns), tuple(rows), tuple(rhs))


def _eliminate(ps: ProlongedSystem):
    """Gauss-Jordan elimination over F; returns (lambdas, relations, resolved).

    ``lambdas`` maps position j to the operator expressing m_j through the
    theta(psi) symbols when that unknown is uniquely determined; rows that
    lose every unknown but keep a right-hand side are returned as direct
    annihilator relations.
    """
    ring = ps.ring
    rows = [dict(r) for r in ps.rows]
    rhs = [dict(r) for r in ps.rhs]
    pivot_row_of = {}
    used = [False] * len(rows)
    for col in range(len(ps.unknowns)):
        best = None
        for i, row in enumerate(rows):
            if used[i] or not row.get(col):
                continue
            if best is None or len(row) < len(rows[best]):
                best = i
        if best is None:
            continue
        inv = 1 / rows[best][col]
        rows[best] = {k: v * inv for k, v in rows[best].items()}
        rhs[best] = {k: v * inv for k, v in rhs[best].items()}
        for i, row in enumerate(rows):
            if i == best or col not in row:
                continue
            factor = row[col]
            for k, v in rows[best].items():
                acc = row.get(k, 0) - factor * v
                if acc:
                    row[k] = acc
                else:
                    row.pop(k, None)
            for k, v in rhs[best].items():
                acc = rhs[i].get(k, 0) - factor * v
                if acc:
                    rhs[i][k] = acc
                else:
                    rhs[i].pop(k, None)
        pivot_row_of[col] = best
        used[best] = True

    lambdas = {}
    for j in range(ps.n):
        col = ps.unknowns.index((j, ring.zero_exp))
        i = pivot_row_of.get(col)
        if i is None or len(rows[i]) != 1:
            continue  # m_j not uniquely determined at this prolongation order
        lambdas[j] = ring.operator(rhs[i])
    relations = [
        ring.operator(rhs[i])
        for i, row in enumerate(rows)
        if not row and rhs[i]
    ]
    resolved = len(lambdas) == ps.n
    return lambdas, relations, resolved


@dataclass(frozen=True)
class PrimitiveElementResult:
    """A verified primitive element psi with the recovery operators lambda_j."""

    c: tuple
    psi_definition: ModuleElement
    lambdas: tuple[DiffOperator, ...]
    s_used: int
    order_cap: int
    relations: tuple[DiffOperator, ...]
    attempts: int
    verified: bool


def _draw_coeff(ring: OperatorRing, rng: random.Random):
    """Random polynomial of degree <= 1 with integer coefficients in -9..9."""
    value = ring.coeff(rng.randint(-9, 9))
    for g in ring.gens:
        value = value + rng.randint(-9, 9) * g
    return value


def primitive_element(generators, *, seed: int = 0, retries: int = 8,
                      ranking: Ranking = None) -> PrimitiveElementResult:
    """Find psi = m_1 + sum c_j m_j generating the quotient, with lambdas.

    Draws c_j from a seeded generator, searches prolongation orders
    incrementally up to the cap 2^m * sum(e_j), and verifies every lambda_j
    by Groebner reduction.  Raises NotZeroRank for systems of rank > 0 and
    RetriesExhausted when no draw succeeds within the retry budget.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise NotZeroRank("empty system has full rank")
    ring, n = gens[0].ring, gens[0].n
    m = ring.m
    if ranking is None:
        ranking = Ranking(n)
    analysis = analyze(gens, ranking)
    if analysis.rank != 0:
        raise NotZeroRank(f"system has rank {analysis.rank} > 0")
    e_full = order_profile(gens, n)
    cap = (2 ** m) * sum(e_full)

    if n == 1:
        result = PrimitiveElementResult(
            c=(),
            psi_definition=ModuleElement(ring, [ring.op_one()]),
            lambdas=(ring.op_one(),),
            s_used=0,
            order_cap=cap,
            relations=(),
            attempts=1,
            verified=True,
        )
        return result

    subsystem = select_independent_subsystem(gens, ranking)
    rng = random.Random(seed)
    for attempt in range(1, retries + 2):
        c = tuple(_draw_coeff(ring, rng) for _ in range(n - 1))
        for s in range(cap + 1):
            ps = prolong(subsystem, c, s, ranking)
            lambdas, relations, resolved = _eliminate(ps)
            if not resolved:
                continue
            ordered = tuple(lambdas[j] for j in range(n))
            for lam in ordered:
                if lam.order > cap:
                    raise RuntimeError("lambda order exceeds the theorem cap")
            _verify(gens, c, ordered, ranking)
            log.info("primitive element found at s=%d (attempt %d)", s, attempt)
            return PrimitiveElementResult(
                c=c,
                psi_definition=ModuleElement(
                    ring, [ring.op_one()] + [ring.op_const(cj) for cj in c]
                ),
                lambdas=ordered,
                s_used=s,
                order_cap=cap,
                relations=tuple(relations),
                attempts=attempt,
                verified=True,
            )
        log.info("coefficient draw %d failed up to the cap, redrawing", attempt)
    raise RetriesExhausted(f"no successful c within {retries} retries")


def _verify(generators, c, lambdas, ranking: Ranking):
    """Check lambda_j psi - m_j == 0 modulo N plus the psi definition."""
    ring, n = generators[0].ring, generators[0].n
    ext_ranking = Ranking(n + 1, tie=ranking.tie)
    lifted = []
    for g in generators:
        lifted.append(ModuleElement(ring, list(g.ops) + [ring.op_zero()]))
    psi_def = ModuleElement(
        ring,
        [ring.op_one()] + [ring.op_const(cj) for cj in c] + [ring.op_const(-1)],
    )
    gb = groebner(lifted + [psi_def], ext_ranking)
    zero = ring.op_zero()
    for j, lam in enumerate(lambdas):
        probe_ops = [zero] * (n + 1)
        probe_ops[n] = lam
        probe_ops[j] = probe_ops[j] - ring.op_one()
        probe = ModuleElement(ring, probe_ops)
        if not gb.reduce(probe).is_zero:
            raise RuntimeError(f"verification failed for lambda_{j + 1}")


def annihilator_generators(generators, per: PrimitiveElementResult) -> list[DiffOperator]:
    """Generators of J = {lambda : lambda psi = 0} from the substitution m_j -> lambda_j psi.

    Every original generator sum_j sigma_j m_j yields sum_j sigma_j lambda_j,
    the psi definition yields lambda_1 + sum c_j lambda_j - 1, and any direct
    relations produced by the elimination are included as well.
    """
    gens = [g for g in generators if not g.is_zero]
    ring, n = gens[0].ring, gens[0].n
    e_full = order_profile(gens, n)
    bound = (2 ** ring.m) * 2 * sum(e_full)
    out: list[DiffOperator] = []

    def push(op: DiffOperator):
        if op.is_zero or any(op == seen for seen in out):
            return
        if op.order > bound:
            raise RuntimeError("annihilator generator exceeds the order bound")
        out.append(op)

    for g in gens:
        total = ring.op_zero()
        for j in range(n):
            sigma = g.component(j)
            if not sigma.is_zero:
                total = total + sigma * per.lambdas[j]
        push(total)
    psi_row = per.lambdas[0] - ring.op_one()
    for cj, lam in zip(per.c, per.lambdas[1:]):
        psi_row = psi_row + lam.scaled(cj)
    push(psi_row)
    for rel in per.relations:
        push(rel)
    return out
