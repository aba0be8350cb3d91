"""Left Groebner bases for submodules of D^n and dimension-polynomial analysis.

Elements of the free module D^n are written sum_j sigma_j m_j with the
sigma_j operators.  Rankings order the derivative terms d^theta m_j; the
default is orderly (total order first), then position m_1 > ... > m_n,
then degree-reverse-lexicographic on the exponent.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field

from .lattice import ExponentSet, count_excluded, dimension_polynomial, exponent_set, minimize
from .numpoly import NumericalPolynomial
from .orealg import DiffOperator, OperatorRing

log = logging.getLogger("diffdim")


@dataclass(frozen=True)
class Ranking:
    """An orderly ranking on derivative terms (position j, exponent theta).

    ``tie`` selects the tie-break among terms of equal total order:
    "position" compares the indeterminate first (position over term),
    "term" compares the exponent first.  ``precedence`` lists positions
    from highest to lowest; the default is m_1 > m_2 > ... > m_n.
    """

    n: int
    tie: str = "position"
    precedence: tuple[int, ...] = None

    def __post_init__(self):
        prec = self.precedence
        if prec is None:
            prec = tuple(range(self.n))
        prec = tuple(prec)
        if sorted(prec) != list(range(self.n)):
            raise ValueError("precedence must be a permutation of the positions")
        if self.tie not in ("position", "term"):
            raise ValueError(f"unknown tie-break {self.tie!r}")
        object.__setattr__(self, "precedence", prec)
        object.__setattr__(self, "_rank_of", {p: i for i, p in enumerate(prec)})

    def exp_key(self, exp):
        """Degrevlex key on exponents alone (larger key = higher term)."""
        return (sum(exp), tuple(-v for v in reversed(exp)))

    def term_key(self, pos: int, exp):
        """Sort key for d^exp m_pos; tuples compare like the ranking."""
        deg, grevlex = self.exp_key(exp)
        posrank = -self._rank_of[pos]
        if self.tie == "position":
            return (deg, posrank, grevlex)
        return (deg, grevlex, posrank)


class ModuleElement:
    """Element sum_j sigma_j m_j of the free module D^n."""

    __slots__ = ("ring", "ops")

    def __init__(self, ring: OperatorRing, ops):
        self.ring = ring
        self.ops = tuple(ops)
        if not self.ops:
            raise ValueError("module element needs at least one component")

    @property
    def n(self) -> int:
        return len(self.ops)

    @property
    def is_zero(self) -> bool:
        return all(op.is_zero for op in self.ops)

    @property
    def order(self):
        return max(op.order for op in self.ops)

    def order_at(self, j: int):
        """ord_{m_j} of the element (order of the j-th component)."""
        return self.ops[j].order

    def terms(self):
        for j, op in enumerate(self.ops):
            for exp, c in op.terms.items():
                yield j, exp, c

    def component(self, j: int) -> DiffOperator:
        return self.ops[j]

    def __add__(self, other):
        return ModuleElement(self.ring, [a + b for a, b in zip(self.ops, other.ops)])

    def __sub__(self, other):
        return ModuleElement(self.ring, [a - b for a, b in zip(self.ops, other.ops)])

    def __neg__(self):
        return ModuleElement(self.ring, [-a for a in self.ops])

    def scaled(self, coeff) -> "ModuleElement":
        return ModuleElement(self.ring, [op.scaled(coeff) for op in self.ops])

    def shifted(self, delta) -> "ModuleElement":
        """Left-multiply by d^delta."""
        return ModuleElement(self.ring, [op.shifted(delta) for op in self.ops])

    def op_multiplied(self, sigma: DiffOperator) -> "ModuleElement":
        """Left-multiply by an arbitrary operator sigma."""
        out = [self.ring.op_zero()] * self.n
        for exp, c in sigma.terms.items():
            for j, op in enumerate(self.ops):
                out[j] = out[j] + op.shifted(exp).scaled(c)
        return ModuleElement(self.ring, out)

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.ring is other.ring and self.ops == other.ops

    def __hash__(self):
        return hash(self.ops)

    def __str__(self):
        from .cli import render_element  # local import to avoid a cycle

        return render_element(self)

    __repr__ = __str__


def order_profile(generators, n: int = None) -> tuple[int, ...]:
    """Per-position order bounds e_j = max_f ord_{m_j} f (0 for unused)."""
    gens = list(generators)
    if n is None:
        n = gens[0].n
    e = [0] * n
    for g in gens:
        for j in range(n):
            oj = g.order_at(j)
            if oj != float("-inf"):
                e[j] = max(e[j], int(oj))
    return tuple(e)


def module_element(ring: OperatorRing, n: int, terms) -> ModuleElement:
    """Build an element of D^n from a map (position, exponent) -> coefficient."""
    comps = [dict() for _ in range(n)]
    for (j, exp), c in dict(terms).items():
        if not 0 <= j < n:
            raise ValueError(f"position {j} out of range")
        comps[j][tuple(exp)] = comps[j].get(tuple(exp), 0) + c
    return ModuleElement(ring, [ring.operator(t) for t in comps])


def leading_term(f: ModuleElement, ranking: Ranking):
    """Return (pos, exp, coeff) of the ranking-largest term, or None."""
    best = None
    best_key = None
    for j, exp, c in f.terms():
        k = ranking.term_key(j, exp)
        if best_key is None or k > best_key:
            best_key = k
            best = (j, exp, c)
    return best


def _divides(e, f) -> bool:
    return all(a <= b for a, b in zip(e, f))


def reduce(f: ModuleElement, basis, ranking: Ranking, *, _cache=None) -> ModuleElement:
    """Full left normal form of f modulo the basis.

    No term of the result is divisible (same position, componentwise
    exponent order) by the leading term of any basis element.
    """
    entries = []
    for b in basis:
        if b.is_zero:
            continue
        entries.append((b, leading_term(b, ranking)))
    cache = {} if _cache is None else _cache
    r = f
    while True:
        target = None
        for j, exp, c in sorted(r.terms(), key=lambda t: ranking.term_key(t[0], t[1]), reverse=True):
            for idx, (b, (bj, bexp, bc)) in enumerate(entries):
                if bj == j and _divides(bexp, exp):
                    target = (j, exp, c, idx, bexp, bc)
                    break
            if target:
                break
        if target is None:
            return r
        j, exp, c, idx, bexp, bc = target
        delta = tuple(a - b for a, b in zip(exp, bexp))
        key = (idx, delta)
        shifted = cache.get(key)
        if shifted is None:
            shifted = entries[idx][0].shifted(delta)
            cache[key] = shifted
        # the leading coefficient survives the shift unchanged
        r = r - shifted.scaled(c / bc)


def s_pair(f: ModuleElement, lt_f, g: ModuleElement, lt_g) -> ModuleElement:
    """S-element of two basis members with leading terms in the same position."""
    (jf, ef, cf), (jg, eg, cg) = lt_f, lt_g
    if jf != jg:
        raise ValueError("S-pairs are only formed within one position")
    gamma = tuple(max(a, b) for a, b in zip(ef, eg))
    left = f.shifted(tuple(a - b for a, b in zip(gamma, ef))).scaled(1 / cf)
    right = g.shifted(tuple(a - b for a, b in zip(gamma, eg))).scaled(1 / cg)
    return left - right


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced left Groebner basis with its leading-exponent staircases."""

    ring: OperatorRing
    n: int
    ranking: Ranking
    elements: tuple[ModuleElement, ...]
    staircases: tuple[ExponentSet, ...]

    def reduce(self, f: ModuleElement) -> ModuleElement:
        return reduce(f, self.elements, self.ranking)


def groebner(generators, ranking: Ranking = None, *, ring: OperatorRing = None, n: int = None) -> GroebnerBasis:
    """Buchberger loop over the operator ring, S-pairs within one position.

    The product criterion is not applied: it is unsound in general over a
    skew ring, and correctness is preferred at this scale.
    """
    gens = list(generators)
    for g in gens:
        if ring is None and hasattr(g, "ring"):
            ring, n = g.ring, g.n
    if ring is None or n is None:
        raise ValueError("empty generator list needs explicit ring and n")
    if ranking is None:
        ranking = Ranking(n)
    if ranking.n != n:
        raise ValueError("ranking built for a different number of positions")

    live = []  # list of [element, lt, alive] triples
    counter = itertools.count()
    pair_heap: list = []
    queue = []
    for g in gens:
        if g.is_zero:
            log.warning("dropping zero generator")
            continue
        if g.n != n or g.ring is not ring:
            raise ValueError("generators live in different modules")
        queue.append(g)

    def push_pairs(new_idx: int):
        _, lt_new, _ = live[new_idx]
        for idx, (elem, lt, alive) in enumerate(live[:new_idx]):
            if not alive or lt[0] != lt_new[0]:
                continue
            gamma = tuple(max(a, b) for a, b in zip(lt[1], lt_new[1]))
            key = ranking.term_key(lt[0], gamma)
            heapq.heappush(pair_heap, (key, next(counter), idx, new_idx))

    def alive_elements():
        return [entry[0] for entry in live if entry[2]]

    while queue or pair_heap:
        if queue:
            candidate = queue.pop(0)
        else:
            _, _, i, k = heapq.heappop(pair_heap)
            if not (live[i][2] and live[k][2]):
                continue
            candidate = s_pair(live[i][0], live[i][1], live[k][0], live[k][1])
        r = reduce(candidate, alive_elements(), ranking)
        if r.is_zero:
            continue
        lt_r = leading_term(r, ranking)
        r = r.scaled(1 / lt_r[2])
        lt_r = (lt_r[0], lt_r[1], ring.field.one)
        # retire basis members whose leading term the new one divides
        for entry in live:
            elem, lt, alive = entry
            if alive and lt[0] == lt_r[0] and _divides(lt_r[1], lt[1]):
                entry[2] = False
                queue.append(elem)
        live.append([r, lt_r, True])
        push_pairs(len(live) - 1)
        # keep tails reduced so rational coefficients stay small
        current = alive_elements()
        for entry in live[:-1]:
            elem, lt, alive = entry
            if not alive:
                continue
            if any(
                j == lt_r[0] and (j, exp) != (lt[0], lt[1]) and _divides(lt_r[1], exp)
                for j, exp, _ in elem.terms()
            ):
                entry[0] = _tail_reduce(elem, lt, current, ranking)

    final = [(entry[0], entry[1]) for entry in live if entry[2]]
    elements = [_tail_reduce(elem, lt, [e for e, _ in final], ranking) for elem, lt in final]
    elements.sort(key=lambda e: ranking.term_key(*leading_term(e, ranking)[:2]), reverse=True)
    stairs = []
    for j in range(n):
        exps = [leading_term(e, ranking)[1] for e in elements if leading_term(e, ranking)[0] == j]
        stairs.append(minimize(exponent_set(ring.m, exps)))
    return GroebnerBasis(ring, n, ranking, tuple(elements), tuple(stairs))


def _tail_reduce(elem: ModuleElement, lt, others, ranking: Ranking) -> ModuleElement:
    """Reduce every non-leading term of elem against the other elements."""
    j, exp, c = lt
    head = module_element(elem.ring, elem.n, {(j, exp): c})
    rest = elem - head
    basis = [o for o in others if leading_term(o, ranking)[:2] != (j, exp)]
    return head + reduce(rest, basis, ranking)


@dataclass(frozen=True)
class SystemAnalysis:
    """Dimension polynomial and the derived invariants of a linear system."""

    m: int
    n: int
    omega: NumericalPolynomial
    typ: int
    typical_dimension: int
    codimension: int
    rank: int
    staircases: tuple[ExponentSet, ...]
    threshold: int
    gb: GroebnerBasis = field(repr=False, compare=False, default=None)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "omega": self.omega.to_dict(),
            "type": self.typ,
            "typical_dimension": self.typical_dimension,
            "codimension": self.codimension,
            "rank": self.rank,
            "staircases": [[list(v) for v in E.sorted_elements()] for E in self.staircases],
            "threshold": self.threshold,
        }


def analyze(generators, ranking: Ranking = None, *, ring: OperatorRing = None, n: int = None) -> SystemAnalysis:
    """Groebner basis, staircases, and omega = sum_j omega_{E_j}."""
    gb = groebner(generators, ranking, ring=ring, n=n)
    omega = NumericalPolynomial()
    threshold = 0
    for E in gb.staircases:
        poly, s0 = dimension_polynomial(E)
        omega = omega + poly
        threshold = max(threshold, s0)
    m = gb.ring.m
    d = omega.degree
    return SystemAnalysis(
        m=m,
        n=gb.n,
        omega=omega,
        typ=d,
        typical_dimension=omega.leading,
        codimension=m - d,
        rank=omega.coeff(m),
        staircases=gb.staircases,
        threshold=threshold,
        gb=gb,
    )


def hilbert_value(gb: GroebnerBasis, r: int) -> int:
    """dim_F(M_r/N_r), counted from the staircases by brute enumeration."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return sum(count_excluded(E, r) for E in gb.staircases)
