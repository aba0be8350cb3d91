"""Independent test-only oracles.

Two deliberately separate implementations used to cross-check the engine:

* a commutative module Buchberger over Fraction coefficients, valid for
  constant-coefficient systems (where the operator ring is commutative);
* a raw linear-algebra Hilbert-function oracle that spans the submodule by
  shifted generators and counts dimensions with exact rank computations,
  using no Groebner machinery at all.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

# polynomials are dicts {(position, exponent-tuple): Fraction}, no zero values


def _key(pos, exp):
    # orderly, position m_1 > m_2 > ..., then degrevlex
    return (sum(exp), -pos, tuple(-v for v in reversed(exp)))


def lead(poly):
    return max(poly, key=lambda t: _key(*t))


def _divides(e, f):
    return all(a <= b for a, b in zip(e, f))


def _sub_scaled(a, b, factor):
    out = dict(a)
    for k, v in b.items():
        acc = out.get(k, Fraction(0)) - factor * v
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def _shift(poly, delta):
    return {(p, tuple(a + b for a, b in zip(e, delta))): c for (p, e), c in poly.items()}


def comm_reduce(poly, basis):
    """Full normal form against basis (list of polys), commutative shifts."""
    r = dict(poly)
    while True:
        target = None
        for (p, e) in sorted(r, key=lambda t: _key(*t), reverse=True):
            for b in basis:
                bp, be = lead(b)
                if bp == p and _divides(be, e):
                    target = ((p, e), b, (bp, be))
                    break
            if target:
                break
        if target is None:
            return r
        (p, e), b, (bp, be) = target
        delta = tuple(a - c for a, c in zip(e, be))
        shifted = _shift(b, delta)
        r = _sub_scaled(r, shifted, r[(p, e)] / shifted[(p, e)])


def comm_groebner(gens):
    """Plain Buchberger for submodules of Q[d1..dm]^n, constant coefficients."""
    basis = []
    queue = [dict(g) for g in gens if g]
    pairs = []
    while queue or pairs:
        if queue:
            cand = queue.pop(0)
        else:
            i, k = pairs.pop(0)
            fi, fk = basis[i], basis[k]
            (p1, e1), (p2, e2) = lead(fi), lead(fk)
            if p1 != p2:
                continue
            gamma = tuple(max(a, b) for a, b in zip(e1, e2))
            s1 = _shift(fi, tuple(a - b for a, b in zip(gamma, e1)))
            s2 = _shift(fk, tuple(a - b for a, b in zip(gamma, e2)))
            cand = _sub_scaled(
                {k_: v / s1[(p1, gamma)] for k_, v in s1.items()},
                s2,
                Fraction(1) / s2[(p1, gamma)],
            )
        r = comm_reduce(cand, basis)
        if not r:
            continue
        lp = lead(r)
        r = {k_: v / r[lp] for k_, v in r.items()}
        for i, b in enumerate(basis):
            pairs.append((i, len(basis)))
        basis.append(r)
    return basis


def comm_staircases(gens, n, m):
    """Minimal leading exponents per position from the commutative basis."""
    basis = comm_groebner(gens)
    stairs = [set() for _ in range(n)]
    for b in basis:
        p, e = lead(b)
        stairs[p].add(e)
    out = []
    for s in stairs:
        mins = [e for e in s if not any(f != e and _divides(f, e) for f in s)]
        out.append(frozenset(mins))
    return out


# -- raw Hilbert oracle --------------------------------------------------------


def _rank(rows):
    """Rank of sparse Fraction rows keyed by hashable column labels."""
    rows = [dict(r) for r in rows if r]
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            col = min(row)
            if col in pivots:
                row = _sub_scaled(row, pivots[col], row[col] / pivots[col][col])
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


def hilbert_dimension(gens, n, m, r):
    """dim of (free module truncation)/(submodule truncation) at order r.

    Spans the submodule by all shifts of the constant-coefficient
    generators up to a window, intersects with the order-r truncation via
    rank computations, and grows the window until the answer stabilizes.
    """
    gens = [dict(g) for g in gens if g]
    orders = [max(sum(e) for (_, e) in g) for g in gens]
    total = n * comb(r + m, m)
    previous = None
    stable = 0
    for window in range(r + max(orders, default=0), r + max(orders, default=0) + 10):
        rows = []
        for g, d in zip(gens, orders):
            for theta in _exps(m, window - d):
                rows.append(_shift(g, theta))
        dim_span = _rank(rows)
        outside = [{k: v for k, v in row.items() if sum(k[1]) > r} for row in rows]
        dim_proj = _rank(outside)
        value = total - (dim_span - dim_proj)
        if value == previous:
            stable += 1
            if stable >= 2:
                return value
        else:
            stable = 0
        previous = value
    raise RuntimeError("hilbert oracle did not stabilize")


def _exps(m, bound):
    if bound < 0:
        return
    if m == 1:
        for t in range(bound + 1):
            yield (t,)
        return
    for head in range(bound + 1):
        for tail in _exps(m - 1, bound - head):
            yield (head,) + tail


# -- conversions from engine objects -------------------------------------------


def element_to_dict(elem):
    """Constant-coefficient ModuleElement -> {(pos, exp): Fraction}."""
    out = {}
    for j, exp, c in elem.terms():
        if not elem.ring.is_constant(c):
            raise ValueError("oracle only handles constant coefficients")
        q = c.numer.coeffs()[0] / c.denom.coeffs()[0]
        out[(j, exp)] = Fraction(int(q.numerator), int(q.denominator))
    return out
