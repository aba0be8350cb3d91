"""Staircase combinatorics on N_0^m and dimension polynomials of finite sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .numpoly import NumericalPolynomial, _binomial_dense, from_dense

ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class ExponentSet:
    """A finite set of exponent vectors in N_0^m."""

    m: int
    elements: frozenset[ExponentVector]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("ambient dimension must be >= 1")
        elems = frozenset(tuple(int(c) for c in e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        for e in elems:
            if len(e) != self.m or any(c < 0 for c in e):
                raise ValueError(f"bad exponent vector {e} for m={self.m}")

    def sorted_elements(self) -> list[ExponentVector]:
        return sorted(self.elements)


def exponent_set(m: int, vectors) -> ExponentSet:
    """Build an ExponentSet from any iterable of coordinate sequences."""
    return ExponentSet(m, frozenset(tuple(v) for v in vectors))


def dominates(x, e) -> bool:
    """Return True when e <= x componentwise."""
    return all(xi >= ei for xi, ei in zip(x, e))


def minimize(E: ExponentSet) -> ExponentSet:
    """Return the antichain of <=-minimal elements of E."""
    mins = []
    for e in sorted(E.elements, key=sum):
        if not any(dominates(e, f) for f in mins):
            mins.append(e)
    return ExponentSet(E.m, frozenset(mins))


def count_excluded(E: ExponentSet, s: int) -> int:
    """Count points x with ord x <= s lying above no element of E.

    Deliberately a full enumeration of the simplex; this is the brute-force
    oracle that guards dimension_polynomial.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    elems = tuple(E.elements)
    m = E.m
    count = 0
    point = [0] * m

    def walk(k: int, budget: int):
        nonlocal count
        if k == m - 1:
            for v in range(budget + 1):
                point[k] = v
                if not any(all(point[i] >= e[i] for i in range(m)) for e in elems):
                    count += 1
            return
        for v in range(budget + 1):
            point[k] = v
            walk(k + 1, budget - v)

    walk(0, s)
    return count


def dimension_polynomial(E: ExponentSet) -> tuple[NumericalPolynomial, int]:
    """Dimension polynomial of E with a stability threshold.

    Inclusion-exclusion over subsets T of the minimal elements:
    omega_E(s) = sum_T (-1)^|T| C(s + m - ord(sup T), m).  The returned
    threshold s0 guarantees evaluate(omega_E, s) == count_excluded(E, s)
    for every s >= s0.
    """
    m = E.m
    mins = minimize(E).sorted_elements()
    dense = [Fraction(0)] * (m + 1)
    for size in range(len(mins) + 1):
        sign = -1 if size % 2 else 1
        for subset in combinations(mins, size):
            sup = tuple(max(col) for col in zip(*subset)) if subset else (0,) * m
            shift = sum(sup)
            # C(s + m - shift, m) = prod_{t=1..m} (s - shift + t) / m!
            term = _shifted_simplex_dense(m, shift)
            for k, c in enumerate(term):
                dense[k] += sign * c
    poly = from_dense(dense)
    threshold = sum(max(e[k] for e in mins) for k in range(m)) if mins else 0
    return poly, threshold


def _shifted_simplex_dense(m: int, shift: int) -> list[Fraction]:
    """Dense coefficients of C(s + m - shift, m), ascending powers of s."""
    if shift == 0:
        return _binomial_dense(m)
    base = _binomial_dense(m)
    # substitute s -> s - shift
    out = [Fraction(0)] * (m + 1)
    pw = [Fraction(1)]  # (s - shift)^k coefficients, ascending
    for k in range(m + 1):
        for idx, c in enumerate(pw):
            out[idx] += base[k] * c
        nxt = [Fraction(0)] * (len(pw) + 1)
        for idx, c in enumerate(pw):
            nxt[idx] += c * (-shift)
            nxt[idx + 1] += c
        pw = nxt
    return out
