"""Parsers for polynomial expressions, twists and spec files.

Polynomial grammar (``^`` binds tighter than ``*`` and ``/``, which bind
tighter than ``+`` and ``-``; unary minus is allowed)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" natural)?
    atom   := integer | decimal | variable | "(" expr ")"

Division is only by nonzero constants, so ``1/3`` and ``x/2`` are fine.

Twists are ``-1``, ``i``, ``zeta(n)``, ``zeta(n)^j`` or a negated root.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CyclotomicNumber, zeta
from .errors import ContractError
from .poly import Polynomial

__all__ = ["ParseError", "parse_polynomial", "parse_mu", "parse_int_list",
           "SpecDocument", "parse_spec_document", "load_spec"]


class ParseError(ContractError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.detail = message


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text, line):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        value = m.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _PolyParser:
    def __init__(self, text, names, line, col_offset):
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.line = line
        self.col_offset = col_offset
        self.tokens = _tokenize(text, line)
        self.pos = 0
        self.N = len(self.names)

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.pos]
        return ParseError(msg, self.line, tok[2] + self.col_offset)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise self.error(f"expected {value!r}", tok)
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, tok = self.take()[1], self.peek()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise self.error("division only by a nonzero constant", tok)
                p = p * (1 / q.constant_term())
        return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "." in tok[1]:
                raise self.error("exponent must be a natural number", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return Polynomial.constant(Fraction(value), self.N)
        if kind == "name":
            if self.peek()[1] == "(":
                raise self.error(f"non-rational literal {value}(...)", tok)
            if value not in self.index:
                raise self.error(f"unknown variable {value!r}", tok)
            return Polynomial.variable(self.index[value], self.N)
        if value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {value!r}", tok)


def default_names(N):
    return [f"x{i + 1}" for i in range(N)]


def parse_polynomial(text: str, names=None, nvars: int | None = None,
                     line: int = 1, col_offset: int = 0) -> Polynomial:
    """Parse ``text`` into a Polynomial over Q.

    Variables are ``names`` in order, or ``x1..xN`` when only ``nvars`` is
    given.  Without either, the largest ``xN`` mentioned fixes N.
    """
    if names is None:
        if nvars is None:
            found = [int(m) for m in re.findall(r"\bx(\d+)\b", text)]
            nvars = max(found, default=1)
        names = default_names(nvars)
    return _PolyParser(text, names, line, col_offset).parse()


_MU = re.compile(
    r"^\s*(?P<neg>-)?\s*(?:(?P<one>1)|(?P<i>i)|zeta\(\s*(?P<n>\d+)\s*\)(?:\s*\^\s*(?P<j>-?\d+))?)\s*$"
)


def parse_mu(text: str) -> CyclotomicNumber:
    """A root of unity different from 1."""
    m = _MU.match(text)
    if not m:
        raise ParseError(f"cannot read twist {text.strip()!r}; use -1, i or zeta(n)^j")
    if m.group("one"):
        mu = CyclotomicNumber.rational(1)
    elif m.group("i"):
        mu = zeta(4)
    else:
        n = int(m.group("n"))
        if n < 1:
            raise ParseError("zeta(n) needs n >= 1")
        mu = zeta(n, int(m.group("j") or 1))
    if m.group("neg"):
        mu = -mu
    if mu == 1:
        raise ParseError(
            f"twist {text.strip()!r} equals 1; twists must be roots of unity different from 1"
        )
    return mu


def parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class SpecDocument:
    variables: list
    Q: Polynomial
    Ps: list
    mus: list
    Qs: list = field(default_factory=list)
    k: tuple | None = None
    l: tuple | None = None
    p: int | None = None
    prec: int | None = None
    r: tuple | None = None

    def zeta_spec(self):
        from .zeta_eval import ZetaSpec

        return ZetaSpec(self.Q, tuple(self.Ps), tuple(self.mus))


_KEY = re.compile(r"^(?P<key>[A-Za-z_]\w*)\s*:")


def parse_spec_document(text: str) -> SpecDocument:
    """Parse the ``key: value`` spec-file format.

    Keys: ``vars``, ``Q``, ``P1``.. ``PT``, ``mu``, and optionally ``k``,
    ``Q1``.. with ``l`` (exchange), ``p``, ``prec``, ``r``.  ``#`` starts a
    comment.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _KEY.match(line.lstrip())
        if not m:
            raise ParseError("expected 'key: value'", lineno, 1)
        key = m.group("key")
        indent = len(line) - len(line.lstrip())
        start = indent + m.end()
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, indent + 1)
        entries[key] = (line[start:], lineno, start)

    def need(key):
        if key not in entries:
            raise ParseError(f"missing required key {key!r}", len(text.splitlines()) + 1, 1)
        return entries[key]

    mu_text, mu_line, _ = need("mu")
    mus = []
    for part in mu_text.split(","):
        try:
            mus.append(parse_mu(part))
        except ParseError as exc:
            raise ParseError(exc.detail, mu_line, 1) from None
    if "vars" in entries:
        names = [v.strip() for v in entries["vars"][0].split(",") if v.strip()]
        if len(set(names)) != len(names) or not names:
            raise ParseError("variable names must be distinct and nonempty", entries["vars"][1], 1)
    else:
        names = default_names(len(mus))
    if len(mus) != len(names):
        raise ParseError(f"{len(mus)} twists for {len(names)} variables", mu_line, 1)

    def poly(key):
        body, lineno, col = entries[key]
        return parse_polynomial(body, names, line=lineno, col_offset=col)

    Q = poly("Q") if "Q" in entries else Polynomial.one(len(names))
    Ps = []
    t = 1
    while f"P{t}" in entries:
        Ps.append(poly(f"P{t}"))
        t += 1
    if not Ps:
        raise ParseError("at least one polynomial P1 is required", 1, 1)
    Qs = []
    t = 1
    while f"Q{t}" in entries:
        Qs.append(poly(f"Q{t}"))
        t += 1

    known = {"vars", "Q", "mu", "k", "l", "p", "prec", "r"}
    known |= {f"P{i}" for i in range(1, len(Ps) + 1)}
    known |= {f"Q{i}" for i in range(1, len(Qs) + 1)}
    for key, (_, lineno, _) in entries.items():
        if key not in known:
            raise ParseError(f"unknown key {key!r}", lineno, 1)

    def ints(key):
        if key not in entries:
            return None
        body, lineno, _ = entries[key]
        try:
            return parse_int_list(body)
        except ParseError as exc:
            raise ParseError(exc.detail, lineno, 1) from None

    p = ints("p")
    prec = ints("prec")
    return SpecDocument(
        variables=names, Q=Q, Ps=Ps, mus=mus, Qs=Qs,
        k=ints("k"), l=ints("l"),
        p=p[0] if p else None, prec=prec[0] if prec else None, r=ints("r"),
    )


def load_spec(path) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_document(fh.read())
