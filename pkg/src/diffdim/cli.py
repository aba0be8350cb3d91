"""Input grammar, rendering, and the command-line front end.

Grammar (semicolon-terminated statements)::

    system  := decl* eq+
    decl    := "vars" ident+ ";" | "unknowns" ident+ ";" | "orders" nat+ ";"
    eq      := "eq" expr "=" expr ";"
    expr    := ["-"] chunk (("+"|"-") chunk)*
    chunk   := factor (("*"|"/") factor)*
    factor  := primary ["^" nat]
    primary := nat | x<k> | y<j> | dmono y<j> | "(" expr ")"
    dmono   := d<k> ["^" nat] (["*"] d<k> ["^" nat])*

Variables are named x1..xm, derivations d1..dm, unknowns y1..yn.  When the
declarations are omitted, m and n are inferred from the largest indices
used.  Equations must be linear and homogeneous in the unknowns.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from itertools import product

from .bounds import OrderProfileTooSmall, bound_report
from .families import Be1Params, be1_expected, be1_system
from .lattice import count_excluded, exponent_set
from .modgb import ModuleElement, Ranking, analyze, module_element, order_profile
from .orealg import OperatorRing, format_coeff, format_mono, format_operator, _coeff_text
from .primelem import NotZeroRank, RetriesExhausted, annihilator_generators, primitive_element

log = logging.getLogger("diffdim")


class ParseError(ValueError):
    """Syntax or semantic error in an input system, with source location."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{message} (line {line}, column {col})" if line else message)
        self.message = message
        self.line = line
        self.col = col


class NonlinearTermError(ParseError):
    """A term multiplies or divides two expressions involving unknowns."""


class UnknownSymbolError(ParseError):
    """An identifier references an undeclared variable or unknown."""


class InhomogeneousEquationError(ParseError):
    """An equation carries a nonzero term free of the unknowns."""


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()=;]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        pos = 0
        while pos < len(line):
            if line[pos] == "#":
                break
            match = _TOKEN_RE.match(line, pos)
            if match is None or match.end() == pos:
                stripped = line[pos:].lstrip()
                if not stripped:
                    break
                raise ParseError(f"unexpected character {stripped[0]!r}", lineno, pos + 1)
            pos = match.end()
            for kind in ("num", "ident", "op"):
                value = match.group(kind)
                if value is not None:
                    tokens.append(Token(kind, value, lineno, match.start(kind) + 1))
                    break
    tokens.append(Token("eof", "", len(text.splitlines()) + 1, 1))
    return tokens


# -- parsed system ------------------------------------------------------------


@dataclass(frozen=True)
class SystemSource:
    """A parsed system: ambient sizes, ring, equations, optional order profile."""

    m: int
    n: int
    ring: OperatorRing
    equations: tuple[ModuleElement, ...]
    declared_orders: tuple[int, ...] | None = None

    def inferred_orders(self) -> tuple[int, ...]:
        return order_profile(self.equations, self.n)

    def effective_orders(self) -> tuple[int, ...]:
        return self.declared_orders if self.declared_orders is not None else self.inferred_orders()


class _LinValue:
    """Evaluation value of an expression: scalar part + linear part in the y_j."""

    __slots__ = ("scalar", "terms")

    def __init__(self, scalar, terms=None):
        self.scalar = scalar
        self.terms = terms or {}

    @property
    def is_scalar(self) -> bool:
        return not self.terms


_IDX_RE = re.compile(r"^([xdy])([1-9][0-9]*)$")


class _Parser:
    def __init__(self, tokens: list[Token], m: int, n: int):
        self.tokens = tokens
        self.pos = 0
        self.m = m
        self.n = n
        self.ring = OperatorRing(m)

    # token helpers

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return self.next()

    def classify(self, tok: Token):
        match = _IDX_RE.match(tok.text)
        if not match:
            return None
        kind, idx = match.group(1), int(match.group(2))
        limit = self.m if kind in "xd" else self.n
        if idx > limit:
            name = {"x": "variable", "d": "derivation", "y": "unknown"}[kind]
            raise UnknownSymbolError(f"{name} {tok.text!r} is not declared", tok.line, tok.col)
        return kind, idx

    # expression grammar

    def parse_equation(self) -> ModuleElement:
        tok = self.expect("eq")
        lhs = self.parse_expr()
        self.expect("=")
        rhs = self.parse_expr()
        self.expect(";")
        value = self._sub(lhs, rhs)
        if value.scalar:
            raise InhomogeneousEquationError(
                "equation has a nonzero term free of the unknowns", tok.line, tok.col
            )
        return module_element(self.ring, self.n, value.terms)

    def parse_expr(self) -> _LinValue:
        negate = False
        if self.peek().text == "-":
            self.next()
            negate = True
        value = self.parse_chunk()
        if negate:
            value = self._neg(value)
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.parse_chunk()
            value = self._sub(value, rhs) if op == "-" else self._add(value, rhs)
        return value

    def parse_chunk(self) -> _LinValue:
        value = self.parse_factor()
        while self.peek().text in ("*", "/"):
            tok = self.next()
            rhs = self.parse_factor()
            value = self._mul(value, rhs, tok) if tok.text == "*" else self._div(value, rhs, tok)
        return value

    def parse_factor(self) -> _LinValue:
        value = self.parse_primary()
        if self.peek().text == "^":
            tok = self.next()
            num = self.peek()
            if num.kind != "num":
                raise ParseError("exponent must be a non-negative integer", num.line, num.col)
            self.next()
            k = int(num.text)
            if value.is_scalar:
                return _LinValue(value.scalar ** k)
            if k == 1:
                return value
            raise NonlinearTermError("cannot raise unknowns to a power", tok.line, tok.col)
        return value

    def parse_primary(self) -> _LinValue:
        tok = self.peek()
        if tok.text == "-":
            self.next()
            return self._neg(self.parse_primary())
        if tok.text == "(":
            self.next()
            value = self.parse_expr()
            self.expect(")")
            return value
        if tok.kind == "num":
            self.next()
            return _LinValue(self.ring.coeff(int(tok.text)))
        if tok.kind == "ident":
            info = self.classify(tok)
            if info is None:
                raise UnknownSymbolError(f"unknown symbol {tok.text!r}", tok.line, tok.col)
            kind, idx = info
            if kind == "x":
                self.next()
                return _LinValue(self.ring.x(idx))
            if kind == "y":
                self.next()
                return _LinValue(self.ring.field.zero, {(idx - 1, self.ring.zero_exp): self.ring.field.one})
            return self.parse_derivative_term()
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)

    def parse_derivative_term(self) -> _LinValue:
        exp = [0] * self.m
        while True:
            tok = self.peek()
            info = self.classify(tok) if tok.kind == "ident" else None
            if not info or info[0] != "d":
                break
            self.next()
            power = 1
            if self.peek().text == "^":
                self.next()
                num = self.peek()
                if num.kind != "num":
                    raise ParseError("exponent must be a non-negative integer", num.line, num.col)
                self.next()
                power = int(num.text)
            exp[info[1] - 1] += power
            if self.peek().text == "*":
                after = self.peek(1)
                info2 = self.classify(after) if after.kind == "ident" else None
                if info2 and info2[0] in ("d", "y"):
                    self.next()
        tok = self.peek()
        info = self.classify(tok) if tok.kind == "ident" else None
        if not info or info[0] != "y":
            raise ParseError(
                f"expected an unknown y<j> after the derivative monomial, found {tok.text!r}",
                tok.line,
                tok.col,
            )
        self.next()
        return _LinValue(self.ring.field.zero, {(info[1] - 1, tuple(exp)): self.ring.field.one})

    # linear-value arithmetic

    def _neg(self, a: _LinValue) -> _LinValue:
        return _LinValue(-a.scalar, {k: -v for k, v in a.terms.items()})

    def _add(self, a: _LinValue, b: _LinValue) -> _LinValue:
        terms = dict(a.terms)
        for k, v in b.terms.items():
            acc = terms.get(k, self.ring.field.zero) + v
            if acc:
                terms[k] = acc
            else:
                terms.pop(k, None)
        return _LinValue(a.scalar + b.scalar, terms)

    def _sub(self, a: _LinValue, b: _LinValue) -> _LinValue:
        return self._add(a, self._neg(b))

    def _mul(self, a: _LinValue, b: _LinValue, tok: Token) -> _LinValue:
        if not a.is_scalar and not b.is_scalar:
            raise NonlinearTermError("product of two terms involving unknowns", tok.line, tok.col)
        if not a.is_scalar:
            a, b = b, a
        return _LinValue(a.scalar * b.scalar, {k: a.scalar * v for k, v in b.terms.items() if a.scalar * v})

    def _div(self, a: _LinValue, b: _LinValue, tok: Token) -> _LinValue:
        if not b.is_scalar:
            raise NonlinearTermError("division by a term involving unknowns", tok.line, tok.col)
        if not b.scalar:
            raise ParseError("division by zero in a coefficient", tok.line, tok.col)
        inv = 1 / b.scalar
        return _LinValue(a.scalar * inv, {k: v * inv for k, v in a.terms.items()})


def _scan_sizes(tokens: list[Token]) -> tuple[int, int]:
    m = 0
    n = 0
    for tok in tokens:
        if tok.kind != "ident":
            continue
        match = _IDX_RE.match(tok.text)
        if not match:
            continue
        kind, idx = match.group(1), int(match.group(2))
        if kind in "xd":
            m = max(m, idx)
        else:
            n = max(n, idx)
    return m, n


def parse_system(text: str) -> SystemSource:
    """Parse a system source into module elements over Q(x1..xm)."""
    tokens = tokenize(text)
    pos = 0
    decl_vars = decl_unknowns = decl_orders = None
    while tokens[pos].text in ("vars", "unknowns", "orders"):
        keyword = tokens[pos]
        pos += 1
        items = []
        while tokens[pos].text != ";":
            tok = tokens[pos]
            if tok.kind not in ("ident", "num"):
                raise ParseError(f"unexpected token {tok.text!r} in {keyword.text} declaration",
                                 tok.line, tok.col)
            items.append(tok)
            pos += 1
        pos += 1  # consume ';'
        if not items:
            raise ParseError(f"empty {keyword.text} declaration", keyword.line, keyword.col)
        if keyword.text == "vars":
            decl_vars = items
        elif keyword.text == "unknowns":
            decl_unknowns = items
        else:
            decl_orders = items

    def check_names(items, prefix, what):
        for i, tok in enumerate(items, start=1):
            if tok.text != f"{prefix}{i}":
                raise ParseError(
                    f"{what} must be declared in order as {prefix}1 {prefix}2 ...; found {tok.text!r}",
                    tok.line, tok.col,
                )
        return len(items)

    scan_m, scan_n = _scan_sizes(tokens[pos:])
    m = check_names(decl_vars, "x", "variables") if decl_vars else max(scan_m, 1)
    n = check_names(decl_unknowns, "y", "unknowns") if decl_unknowns else scan_n
    if decl_vars and scan_m > m:
        raise ParseError(f"an index above the declared {m} variables is used", 0, 0)
    if n < 1:
        tok = tokens[pos]
        raise ParseError("the system references no unknowns", tok.line, tok.col)

    parser = _Parser(tokens[pos:], m, n)
    equations = []
    while parser.peek().kind != "eof":
        equations.append(parser.parse_equation())
    if not equations:
        tok = parser.peek()
        raise ParseError("expected at least one equation", tok.line, tok.col)

    declared = None
    if decl_orders is not None:
        if len(decl_orders) != n:
            tok = decl_orders[0]
            raise ParseError(f"orders declaration needs {n} values", tok.line, tok.col)
        for tok in decl_orders:
            if tok.kind != "num":
                raise ParseError("orders must be non-negative integers", tok.line, tok.col)
        declared = tuple(int(tok.text) for tok in decl_orders)

    return SystemSource(m, n, parser.ring, tuple(equations), declared)


# -- rendering ----------------------------------------------------------------


def render_element(elem: ModuleElement, ranking: Ranking = None) -> str:
    """Render a module element in the input grammar, highest term first."""
    if elem.is_zero:
        return "0"
    if ranking is None:
        ranking = Ranking(elem.n)
    parts = []
    for j, exp, c in sorted(elem.terms(), key=lambda t: ranking.term_key(t[0], t[1]), reverse=True):
        neg, ctext = _coeff_text(elem.ring, c)
        mono = format_mono(exp)
        unknown = f"y{j + 1}"
        if ctext:
            body = f"{ctext}*{mono} {unknown}" if mono else f"{ctext}*{unknown}"
        else:
            body = f"{mono} {unknown}" if mono else unknown
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def render_system(src: SystemSource) -> str:
    lines = [
        "vars " + " ".join(f"x{i + 1}" for i in range(src.m)) + ";",
        "unknowns " + " ".join(f"y{j + 1}" for j in range(src.n)) + ";",
    ]
    if src.declared_orders is not None:
        lines.append("orders " + " ".join(str(v) for v in src.declared_orders) + ";")
    for eq in src.equations:
        lines.append(f"eq {render_element(eq)} = 0;")
    return "\n".join(lines) + "\n"


# -- reports ------------------------------------------------------------------


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit_error(exc: Exception, as_json: bool) -> None:
    obj = {"error": {"type": type(exc).__name__, "message": getattr(exc, "message", str(exc))}}
    if isinstance(exc, ParseError) and exc.line:
        obj["error"]["line"] = exc.line
        obj["error"]["col"] = exc.col
    if as_json:
        sys.stdout.write(_json_dump(obj))
    else:
        sys.stderr.write(f"error: {exc}\n")


def _analysis_report(src: SystemSource, ranking: Ranking = None) -> tuple[dict, bool]:
    analysis = analyze(src.equations, ranking, ring=src.ring, n=src.n)
    e = src.effective_orders()
    rep = bound_report(analysis, e, generators=src.equations)
    report = {
        "system": {"m": src.m, "n": src.n, "orders": list(e)},
        **analysis.to_dict(),
        "omega_text": str(analysis.omega),
        "bounds": rep.to_dict(),
    }
    return report, rep.ok


def _print_human_analysis(report: dict) -> None:
    sysinfo = report["system"]
    print(f"system: m={sysinfo['m']} n={sysinfo['n']} orders={sysinfo['orders']}")
    print(f"omega(s) = {report['omega_text']}   std_coeffs={report['omega']['std_coeffs']}")
    print(
        f"type d = {report['type']}, typical dimension a_d = {report['typical_dimension']}, "
        f"codimension = {report['codimension']}, rank = {report['rank']}"
    )
    print(f"staircases: {report['staircases']}  (stable from s = {report['threshold']})")
    bounds = report["bounds"]
    print("bounds:")
    for name in ("kolchin_codim1", "bezout_single", "conjecture_codim2", "new_codim2", "grigoriev"):
        verdict = bounds["checks"].get(name, "")
        verdict = f" [{verdict}]" if verdict else ""
        print(f"  {name} = {bounds[name]}{verdict}")


def _cmd_analyze(args) -> int:
    src = parse_system(_read_input(args.input))
    report, ok = _analysis_report(src)
    if args.json:
        sys.stdout.write(_json_dump(report))
    else:
        _print_human_analysis(report)
    return 0 if ok else 1


def _cmd_primitive(args) -> int:
    src = parse_system(_read_input(args.input))
    per = primitive_element(src.equations, seed=args.seed)
    report = {
        "system": {"m": src.m, "n": src.n, "orders": list(src.effective_orders())},
        "c": [format_coeff(cj) for cj in per.c],
        "psi": render_element(per.psi_definition),
        "lambdas": [format_operator(lam) for lam in per.lambdas],
        "s_used": per.s_used,
        "order_cap": per.order_cap,
        "attempts": per.attempts,
        "verified": per.verified,
    }
    if args.annihilator:
        ann = annihilator_generators(src.equations, per)
        report["annihilator"] = [format_operator(op) for op in ann]
    if args.json:
        sys.stdout.write(_json_dump(report))
    else:
        print(f"psi = {report['psi']}")
        for j, lam in enumerate(report["lambdas"], start=1):
            print(f"lambda_{j} = {lam}")
        print(f"s_used = {per.s_used}, order cap = {per.order_cap}, verification: "
              + ("ok" if per.verified else "FAILED"))
        for op in report.get("annihilator", []):
            print(f"annihilator <- {op}")
    return 0 if per.verified else 1


def _cmd_family(args) -> int:
    instances = []
    all_match = True
    for e in product(range(1, args.emax + 1), repeat=args.n):
        params = Be1Params(args.m, e)
        analysis = analyze(be1_system(params))
        expected = be1_expected(params)
        if args.m == 2:
            match = analysis.omega == expected
            mode = "exact"
        else:
            match = (
                analysis.omega.degree == expected.degree
                and analysis.omega.leading == expected.leading
            )
            mode = "leading"
        all_match &= match
        instances.append(
            {
                "e": list(e),
                "omega": analysis.omega.to_dict(),
                "expected": expected.to_dict(),
                "match": match,
                "mode": mode,
            }
        )
    report = {"m": args.m, "n": args.n, "emax": args.emax, "instances": instances, "all_match": all_match}
    if args.json:
        sys.stdout.write(_json_dump(report))
    else:
        for inst in instances:
            verdict = "ok" if inst["match"] else "MISMATCH"
            print(f"e={inst['e']} omega={inst['omega']['std_coeffs']} "
                  f"expected={inst['expected']['std_coeffs']} ({inst['mode']}): {verdict}")
        print(f"{len(instances)} instances, all_match={all_match}")
    return 0 if all_match else 1


def _parse_points(text: str):
    vectors = []
    for part in text.replace("\n", ";").split(";"):
        part = part.strip()
        if not part:
            continue
        vectors.append(tuple(int(v) for v in part.split(",")))
    return vectors


def _cmd_oracle(args) -> int:
    if args.points:
        vectors = _parse_points(args.points)
    elif args.input:
        vectors = _parse_points(_read_input(args.input))
    else:
        vectors = []
    m = args.m or (len(vectors[0]) if vectors else 0)
    if m < 1:
        raise ParseError("oracle needs --m or at least one point")
    lo, hi = _parse_range(args.s_range)
    E = exponent_set(m, vectors)
    counts = [[s, count_excluded(E, s)] for s in range(lo, hi + 1)]
    report = {"m": m, "points": [list(v) for v in sorted(E.elements)], "counts": counts}
    if args.json:
        sys.stdout.write(_json_dump(report))
    else:
        for s, value in counts:
            print(f"s={s}: {value}")
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    match = re.match(r"^(\d+)\.\.(\d+)$", text)
    if not match:
        raise ParseError(f"bad range {text!r}, expected A..B")
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise ParseError(f"empty range {text!r}")
    return lo, hi


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diffdim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="dimension polynomial, invariants and bound checks")
    p_analyze.add_argument("--input", required=True, help="system file, or - for stdin")
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.add_argument("--ranking", choices=["degrevlex"], default="degrevlex")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_prim = sub.add_parser("primitive", help="compute a primitive element with its lambdas")
    p_prim.add_argument("--input", required=True)
    p_prim.add_argument("--json", action="store_true")
    p_prim.add_argument("--seed", type=int, default=0)
    p_prim.add_argument("--annihilator", action="store_true")
    p_prim.add_argument("--ranking", choices=["degrevlex"], default="degrevlex")
    p_prim.set_defaults(func=_cmd_primitive)

    p_family = sub.add_parser("family", help="sweep the chain family against its closed form")
    p_family.add_argument("--m", type=int, required=True)
    p_family.add_argument("--n", type=int, required=True)
    p_family.add_argument("--emax", type=int, required=True)
    p_family.add_argument("--json", action="store_true")
    p_family.set_defaults(func=_cmd_family)

    p_oracle = sub.add_parser("oracle", help="brute-force staircase counting")
    p_oracle.add_argument("--m", type=int, default=0)
    p_oracle.add_argument("--points", help='staircase points like "1,0;0,2"')
    p_oracle.add_argument("--input", help="file with one point per line")
    p_oracle.add_argument("--s-range", dest="s_range", required=True, help="A..B")
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    return parser


def run(argv=None) -> int:
    """Entry point returning an exit code (0 ok, 1 failed checks, 2 bad input)."""
    level = os.environ.get("DIFFDIM_LOG", "").upper()
    if level:
        logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        return args.func(args)
    except (ParseError, OrderProfileTooSmall, OSError) as exc:
        _emit_error(exc, as_json)
        return 2
    except (NotZeroRank, RetriesExhausted) as exc:
        _emit_error(exc, as_json)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
