"""Integer-valued polynomials stored in the binomial-coefficient basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial


class NotIntegerValued(ValueError):
    """The input polynomial is not integer-valued on the non-negative integers."""


@dataclass(frozen=True)
class NumericalPolynomial:
    """A polynomial v(s) = sum_i a_i * C(s+i, i) with integer coordinates.

    ``std_coeffs`` holds (a_d, ..., a_0), highest index first.  The zero
    polynomial is the empty tuple and has degree -1.
    """

    std_coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.std_coeffs)
        object.__setattr__(self, "std_coeffs", coeffs)
        if coeffs and coeffs[0] == 0:
            raise ValueError("leading standard coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.std_coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.std_coeffs

    def coeff(self, i: int) -> int:
        """Return the standard coefficient a_i (0 beyond the degree)."""
        d = self.degree
        if i < 0 or i > d:
            return 0
        return self.std_coeffs[d - i]

    @property
    def leading(self) -> int:
        """Return a_d, or 0 for the zero polynomial."""
        return self.std_coeffs[0] if self.std_coeffs else 0

    def evaluate(self, s: int) -> int:
        """Return the exact integer value sum_i a_i * C(s+i, i)."""
        if s < 0:
            raise ValueError("evaluation point must be >= 0")
        d = self.degree
        return sum(a * comb(s + i, i) for i, a in zip(range(d, -1, -1), self.std_coeffs))

    def add(self, other: "NumericalPolynomial") -> "NumericalPolynomial":
        """Return the pointwise sum, coefficients aligned by index."""
        n = max(len(self.std_coeffs), len(other.std_coeffs))
        out = [0] * n
        for src in (self.std_coeffs, other.std_coeffs):
            for k, a in enumerate(reversed(src)):
                out[k] += a
        while out and out[-1] == 0:
            out.pop()
        return NumericalPolynomial(tuple(reversed(out)))

    def scale(self, c: int) -> "NumericalPolynomial":
        """Return the polynomial scaled by the integer c."""
        if c == 0 or self.is_zero:
            return NumericalPolynomial()
        return NumericalPolynomial(tuple(c * a for a in self.std_coeffs))

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def to_dense(self) -> list[Fraction]:
        """Return monomial-basis coefficients, ascending powers of s."""
        d = self.degree
        dense = [Fraction(0)] * (d + 1 if d >= 0 else 0)
        for i in range(d + 1):
            a = self.coeff(i)
            if a:
                for k, c in enumerate(_binomial_dense(i)):
                    dense[k] += a * c
        return dense

    def to_dict(self) -> dict:
        return {"std_coeffs": list(self.std_coeffs), "degree": self.degree}

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        d = self.degree
        for i, a in zip(range(d, -1, -1), self.std_coeffs):
            if a == 0:
                continue
            basis = f"C(s+{i},{i})" if i > 0 else ""
            mag = abs(a)
            body = f"{mag}*{basis}" if basis and mag != 1 else (basis or str(mag))
            parts.append(("- " if a < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _binomial_dense(i: int) -> list[Fraction]:
    """Dense coefficients of C(s+i, i) = prod_{t=1..i} (s+t) / i!, ascending."""
    poly = [Fraction(1)]
    for t in range(1, i + 1):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] += c * t
            nxt[k + 1] += c
        poly = nxt
    inv = Fraction(1, factorial(i))
    return [c * inv for c in poly]


def from_dense(coeffs) -> NumericalPolynomial:
    """Convert monomial-basis coefficients (ascending powers) to standard form.

    Raises NotIntegerValued if the polynomial has a non-integer coordinate in
    the binomial basis, i.e. is not integer-valued on the non-negative
    integers.
    """
    dense = [Fraction(c) for c in coeffs]
    while dense and dense[-1] == 0:
        dense.pop()
    out: list[int] = []
    for d in range(len(dense) - 1, -1, -1):
        a = dense[d] * factorial(d)
        if a.denominator != 1:
            raise NotIntegerValued(f"coefficient a_{d} = {a} is not an integer")
        a = int(a)
        out.append(a)
        if a:
            for k, c in enumerate(_binomial_dense(d)):
                dense[k] -= a * c
        dense.pop()
    while out and out[0] == 0:
        out.pop(0)
    return NumericalPolynomial(tuple(out))


def binomial_polynomial(i: int, scale: int = 1) -> NumericalPolynomial:
    """Return scale * C(s+i, i) as a NumericalPolynomial."""
    if scale == 0:
        return NumericalPolynomial()
    return NumericalPolynomial((scale,) + (0,) * i)
