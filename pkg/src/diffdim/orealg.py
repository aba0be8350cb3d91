"""Exact arithmetic in Q(x1..xm) and the skew operator ring F[d1..dm].

Coefficients live in sympy's sparse rational function field, which keeps
fractions cancelled and in a canonical form so equality and hashing are
structural.  Operators compose with the commutation rule d_i a = a d_i +
d_i(a); the derivations commute with each other.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import field as _sympy_field


class OperatorRing:
    """The field F = Q(x1..xm) together with the operator ring F[d1..dm]."""

    def __init__(self, m: int, var_prefix: str = "x"):
        if m < 1:
            raise ValueError("need at least one derivation")
        self.m = m
        names = ",".join(f"{var_prefix}{i + 1}" for i in range(m))
        created = _sympy_field(names, QQ)
        self.field = created[0]
        self.gens = tuple(created[1:])
        self.zero_exp = (0,) * m

    # -- coefficient field -------------------------------------------------

    def coeff(self, value):
        """Coerce an int, Fraction or field element into F."""
        if isinstance(value, Fraction):
            return self.field(QQ(value.numerator, value.denominator))
        if isinstance(value, int):
            return self.field(value)
        if getattr(value, "field", None) is self.field:
            return value
        return self.field(value)

    def x(self, i: int):
        """Return the generator x_i (1-based)."""
        return self.gens[i - 1]

    def diff_coeff(self, a, k: int):
        """Partial derivative of a in F by the k-th variable (0-based)."""
        return a.diff(self.gens[k])

    def is_constant(self, a) -> bool:
        return a.denom == self.field.ring.one and a.numer.is_ground

    # -- operators ----------------------------------------------------------

    def operator(self, terms) -> "DiffOperator":
        """Build an operator from a map exponent -> coefficient."""
        clean = {}
        for exp, c in dict(terms).items():
            exp = tuple(int(v) for v in exp)
            if len(exp) != self.m or any(v < 0 for v in exp):
                raise ValueError(f"bad operator exponent {exp}")
            c = self.coeff(c)
            if c:
                clean[exp] = clean.get(exp, self.field.zero) + c
        return DiffOperator(self, {e: c for e, c in clean.items() if c})

    def op_zero(self) -> "DiffOperator":
        return DiffOperator(self, {})

    def op_const(self, value) -> "DiffOperator":
        return self.operator({self.zero_exp: value})

    def op_one(self) -> "DiffOperator":
        return self.op_const(1)

    def d(self, i: int, power: int = 1) -> "DiffOperator":
        """Return the operator d_i^power (1-based index)."""
        exp = [0] * self.m
        exp[i - 1] = power
        return self.operator({tuple(exp): 1})

    def mono(self, exp) -> "DiffOperator":
        return self.operator({tuple(exp): 1})


class DiffOperator:
    """Element of F[d1..dm]: a finite map exponent -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: OperatorRing, terms: dict):
        self.ring = ring
        self.terms = terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self):
        """Maximal total order of the support, -inf for the zero operator."""
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e in self.terms)

    def coeff_of(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def __eq__(self, other):
        if isinstance(other, DiffOperator):
            return self.ring is other.ring and self.terms == other.terms
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return DiffOperator(self.ring, out)

    def __neg__(self):
        return DiffOperator(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def scaled(self, coeff) -> "DiffOperator":
        """Left-multiply by an element of F (plain coefficient scaling)."""
        c = self.ring.coeff(coeff)
        if not c:
            return self.ring.op_zero()
        return DiffOperator(self.ring, {e: c * v for e, v in self.terms.items()})

    def _coerce(self, other) -> "DiffOperator":
        if isinstance(other, DiffOperator):
            return other
        return self.ring.op_const(other)

    def __mul__(self, other):
        return op_multiply(self, self._coerce(other))

    def __rmul__(self, other):
        # scalar * operator is coefficient scaling, consistent with composition
        return self.scaled(other)

    def apply(self, a):
        return op_apply(self, a)

    def shift_up(self, k: int) -> "DiffOperator":
        """Compose d_k . self (0-based k) via the commutation rule."""
        ring = self.ring
        out: dict = {}
        for exp, c in self.terms.items():
            up = list(exp)
            up[k] += 1
            up = tuple(up)
            s = out.get(up)
            s = c if s is None else s + c
            if s:
                out[up] = s
            else:
                out.pop(up, None)
            dc = ring.diff_coeff(c, k)
            if dc:
                s = out.get(exp)
                s = dc if s is None else s + dc
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return DiffOperator(ring, out)

    def shifted(self, delta) -> "DiffOperator":
        """Compose d^delta . self by iterating the single-derivation rule."""
        op = self
        for k, reps in enumerate(delta):
            for _ in range(reps):
                op = op.shift_up(k)
        return op

    def __str__(self):
        return format_operator(self)

    __repr__ = __str__


def field_arith(a, b, op: str):
    """Field arithmetic in F: op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b  # raises ZeroDivisionError for b == 0
    raise ValueError(f"unknown op {op!r}")


def apply_derivation(ring: OperatorRing, i: int, a):
    """Partial derivative d_i(a) for 1 <= i <= m."""
    if not 1 <= i <= ring.m:
        raise ValueError(f"derivation index {i} out of range")
    return ring.coeff(a).diff(ring.gens[i - 1])


def op_multiply(f: DiffOperator, g: DiffOperator) -> DiffOperator:
    """Noncommutative product f . g in the operator ring."""
    ring = f.ring
    out = ring.op_zero()
    for exp, c in f.terms.items():
        out = out + g.shifted(exp).scaled(c)
    return out


def op_apply(f: DiffOperator, a):
    """Apply the operator f to a in F: sum of c * d^exp(a)."""
    ring = f.ring
    a = ring.coeff(a)
    total = ring.field.zero
    for exp, c in f.terms.items():
        v = a
        for k, reps in enumerate(exp):
            for _ in range(reps):
                v = ring.diff_coeff(v, k)
                if not v:
                    break
            if not v:
                break
        if v:
            total += c * v
    return total


# -- rendering ---------------------------------------------------------------


def format_coeff(c) -> str:
    """Render a field element in the CLI grammar (powers with ^)."""
    num, den = c.numer, c.denom
    ns = _format_poly(num)
    if den == c.field.ring.one:
        return ns
    return f"({ns})/({_format_poly(den)})"


def _format_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_poly(p) -> str:
    parts = []
    for monom, coeff in p.terms():
        factors = []
        for k, e in enumerate(monom):
            if e == 0:
                continue
            name = p.ring.symbols[k].name
            factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        if not body:
            text = _format_rational(coeff)
        elif coeff == 1:
            text = body
        elif coeff == -1:
            text = "-" + body
        else:
            text = _format_rational(coeff) + "*" + body
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _coeff_text(ring: OperatorRing, c) -> tuple[bool, str]:
    """Return (negated, text) with text safe to prefix to a monomial."""
    one = ring.field.one
    if c == one:
        return False, ""
    if c == -one:
        return True, ""
    if ring.is_constant(c):
        q = c.numer.coeffs()[0] / c.denom.coeffs()[0]
        if q < 0:
            return True, _coeff_text(ring, -c)[1]
        if getattr(q, "denominator", 1) != 1:
            return False, f"({_format_rational(q)})"
        return False, str(q)
    return False, f"({format_coeff(c)})"


def format_mono(exp, sep: str = "*") -> str:
    factors = []
    for k, e in enumerate(exp):
        if e == 0:
            continue
        factors.append(f"d{k + 1}" if e == 1 else f"d{k + 1}^{e}")
    return sep.join(factors)


def format_operator(f: DiffOperator, order_key=None) -> str:
    """Render an operator like (x1^2/x2)*d1^2*d2 + 3*d1."""
    if f.is_zero:
        return "0"
    if order_key is None:
        order_key = lambda e: (sum(e), tuple(-v for v in reversed(e)))
    parts = []
    for exp in sorted(f.terms, key=order_key, reverse=True):
        neg, ctext = _coeff_text(f.ring, f.terms[exp])
        mono = format_mono(exp)
        if mono and ctext:
            body = f"{ctext}*{mono}"
        else:
            body = mono or ctext or "1"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out
