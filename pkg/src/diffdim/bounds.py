"""Bound formulas for the typical differential dimension and their checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .modgb import SystemAnalysis


class OrderProfileTooSmall(ValueError):
    """A generator has a higher per-position order than the declared profile."""


def conjecture_codim2(e) -> int:
    """sum of e^j over multi-indices with |j| = 2 (squares plus cross products)."""
    e = list(e)
    return sum(e[i] * e[k] for i, k in combinations_with_replacement(range(len(e)), 2))


def new_codim2_bound(m: int, e) -> int:
    """2^(2m+2) * (e_1 + ... + e_n)^2."""
    return 2 ** (2 * m + 2) * sum(e) ** 2


def grigoriev_bound(m: int, n: int, d: int, h: int) -> int:
    """n * (4 m^2 n h)^(4^(m-d-1) * 2(m-d)); needs arbitrary precision."""
    if d >= m:
        raise ValueError("defined for positive codimension only")
    return n * (4 * m * m * n * h) ** (4 ** (m - d - 1) * (2 * (m - d)))


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one analyzed system plus per-bound verdicts.

    ``checks`` maps bound name to "pass", "fail" or "n/a"; the conjectured
    codimension-2 lower-bound value is reported but never asserted.
    """

    m: int
    n: int
    e: tuple[int, ...]
    typ: int
    typical_dimension: int
    kolchin_codim1: int
    bezout_single: int | None
    conjecture_codim2: int
    new_codim2: int
    grigoriev: int | None
    checks: dict

    @property
    def ok(self) -> bool:
        return all(v != "fail" for v in self.checks.values())

    def to_dict(self) -> dict:
        def enc(v):
            return None if v is None else str(v)

        return {
            "m": self.m,
            "n": self.n,
            "e": list(self.e),
            "type": self.typ,
            "typical_dimension": str(self.typical_dimension),
            "kolchin_codim1": enc(self.kolchin_codim1),
            "bezout_single": enc(self.bezout_single),
            "conjecture_codim2": enc(self.conjecture_codim2),
            "new_codim2": enc(self.new_codim2),
            "grigoriev": enc(self.grigoriev),
            "checks": dict(self.checks),
        }


def bound_report(analysis: SystemAnalysis, e, generators=None) -> BoundReport:
    """Evaluate every bound exactly and grade the ones applicable to analysis.

    ``e`` is the order profile actually used: e_j must dominate ord_{m_j} of
    every generator (checked when the generators are passed along).
    Codimension-specific checks are marked "n/a" when the differential type
    does not match.
    """
    e = tuple(int(v) for v in e)
    m, n, d = analysis.m, analysis.n, analysis.typ
    if len(e) != n:
        raise ValueError(f"order profile has length {len(e)}, expected {n}")
    if generators is not None:
        validate_order_profile(generators, e)
    total = sum(e)
    a_d = analysis.typical_dimension
    ssum = conjecture_codim2(e)
    newb = new_codim2_bound(m, e)
    h = max(e) if e else 0
    grig = grigoriev_bound(m, n, d, h) if 0 <= d < m and h > 0 else None

    checks = {
        "kolchin_codim1": "n/a",
        "bezout_single": "n/a",
        "new_codim2": "n/a",
        "grigoriev": "n/a",
    }
    if d == m - 1:
        checks["kolchin_codim1"] = "pass" if a_d <= total else "fail"
    if d == m - 2:
        checks["new_codim2"] = "pass" if a_d <= newb else "fail"
        if grig is not None:
            checks["grigoriev"] = "pass" if a_d <= grig else "fail"
        if n == 1:
            checks["bezout_single"] = "pass" if a_d <= e[0] ** 2 else "fail"

    return BoundReport(
        m=m,
        n=n,
        e=e,
        typ=d,
        typical_dimension=a_d,
        kolchin_codim1=total,
        bezout_single=e[0] ** 2 if n == 1 else None,
        conjecture_codim2=ssum,
        new_codim2=newb,
        grigoriev=grig,
        checks=checks,
    )


def validate_order_profile(generators, e) -> None:
    """Raise OrderProfileTooSmall unless e_j bounds every generator's order."""
    e = tuple(int(v) for v in e)
    for g in generators:
        for j in range(g.n):
            oj = g.order_at(j)
            if oj != float("-inf") and oj > e[j]:
                raise OrderProfileTooSmall(
                    f"generator has ord_m{j + 1} = {int(oj)} > declared e_{j + 1} = {e[j]}"
                )
