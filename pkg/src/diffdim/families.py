"""The chain family of constant-coefficient systems with quadratic growth.

The family couples n indeterminates through d1/d2 powers so that the
quotient has codimension 2; its typical differential dimension equals
sum_{|j|=2} e^j, which makes it the canonical tightness fixture for the
codimension-2 bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import conjecture_codim2
from .modgb import ModuleElement
from .numpoly import NumericalPolynomial, binomial_polynomial
from .orealg import OperatorRing


@dataclass(frozen=True)
class Be1Params:
    """Parameters: m >= 2 ambient derivations, orders e_1..e_n >= 1."""

    m: int
    e: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))
        if self.m < 2:
            raise ValueError("the family needs at least two derivations")
        if not self.e or any(v < 1 for v in self.e):
            raise ValueError("orders must be positive")

    @property
    def n(self) -> int:
        return len(self.e)


def be1_system(params: Be1Params, ring: OperatorRing = None) -> list[ModuleElement]:
    """The n+1 chain generators d1^e1 m1; d2^ek mk - d1^e(k+1) m(k+1); d2^en mn."""
    if ring is None:
        ring = OperatorRing(params.m)
    n, e = params.n, params.e
    zero = ring.op_zero()

    def elem(entries):
        ops = [zero] * n
        for j, op in entries:
            ops[j] = ops[j] + op
        return ModuleElement(ring, ops)

    gens = [elem([(0, ring.d(1, e[0]))])]
    for k in range(n - 1):
        gens.append(elem([(k, ring.d(2, e[k])), (k + 1, -ring.d(1, e[k + 1]))]))
    gens.append(elem([(n - 1, ring.d(2, e[n - 1]))]))
    return gens


def be1_expected(params: Be1Params) -> NumericalPolynomial:
    """Closed form (sum_{|j|=2} e^j) * C(s+m-2, m-2).

    Exact for m = 2, where the dimension polynomial is this constant.  For
    m >= 3 the true polynomial has the same degree and leading coefficient
    but smaller lower-order terms, so only the leading data should be
    compared against it.
    """
    return binomial_polynomial(params.m - 2, conjecture_codim2(params.e))


def be1_typical_dimension(params: Be1Params) -> int:
    """The leading standard coefficient sum_{|j|=2} e^j of the family."""
    return conjecture_codim2(params.e)


def expected_characteristic_chain(params: Be1Params, ring: OperatorRing = None) -> list[ModuleElement]:
    """Derived elements d1^(e1+...+ek) mk for k = 2..n.

    Every one of them lies in the generated submodule, so each reduces to
    zero against any Groebner basis of the system and its leading exponent
    falls inside the corresponding staircase cone.
    """
    if ring is None:
        ring = OperatorRing(params.m)
    n, e = params.n, params.e
    zero = ring.op_zero()
    out = []
    partial = e[0]
    for k in range(1, n):
        partial += e[k]
        ops = [zero] * n
        ops[k] = ring.d(1, partial)
        out.append(ModuleElement(ring, ops))
    return out
