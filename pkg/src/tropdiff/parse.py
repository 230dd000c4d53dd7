"""Text front end.

Expression grammar::

    poly     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | 't' | 'x(' nat ',' nat ')' | '(' poly ')'
    rational := ['-'] nat ('/' nat)?

Set grammar::

    natset := '{' [nat (',' nat)*] '}' ['+' 'per(' nat ';' nat ';' [nat (',' nat)*] ')']

Whitespace between tokens is ignored.  Every AST node records the span of
source text it came from; spans do not take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diffalg import DiffMonomial, DiffPolynomial
from .errors import ParseError, VariableIndexError
from .series import TruncatedSeries
from .tropical import NatSet


@dataclass(frozen=True)
class Node:
    span: tuple = field(default=(0, 0), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class T(Node):
    pass


@dataclass(frozen=True)
class Var(Node):
    i: int
    j: int


@dataclass(frozen=True)
class Paren(Node):
    inner: "Sum"


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: int


@dataclass(frozen=True)
class Prod(Node):
    factors: tuple


@dataclass(frozen=True)
class Sum(Node):
    # first term has sign '+'; signs[k] is '+' or '-' for terms[k]
    terms: tuple
    signs: tuple


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, tok: str):
        self.skip()
        if not self.text.startswith(tok, self.pos):
            self.error(f"expected {tok!r}")
        self.pos += len(tok)

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")

    # expressions

    def poly(self) -> Sum:
        self.skip()
        start = self.pos
        terms, signs = [self.term()], ["+"]
        while self.peek() in ("+", "-"):
            signs.append(self.text[self.pos])
            self.pos += 1
            terms.append(self.term())
        return Sum(tuple(terms), tuple(signs), span=(start, self.pos))

    def term(self) -> Prod:
        self.skip()
        start = self.pos
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return Prod(tuple(factors), span=(start, self.pos))

    def factor(self) -> Node:
        self.skip()
        start = self.pos
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            e = self.nat()
            return Pow(b, e, span=(start, self.pos))
        return b

    def base(self) -> Node:
        c = self.peek()
        start = self.pos
        if c == "t":
            self.pos += 1
            return T(span=(start, self.pos))
        if c == "x":
            self.pos += 1
            self.expect("(")
            i = self.nat()
            self.expect(",")
            j = self.nat()
            self.expect(")")
            if i < 1:
                raise VariableIndexError(f"variable index {i} < 1 at column {start + 1}")
            return Var(i, j, span=(start, self.pos))
        if c == "(":
            self.pos += 1
            inner = self.poly()
            self.expect(")")
            return Paren(inner, span=(start, self.pos))
        if c == "-" or c.isdigit():
            neg = c == "-"
            if neg:
                self.pos += 1
            num = self.nat()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    self.error("zero denominator", start)
            v = Fraction(num, den)
            return Num(-v if neg else v, span=(start, self.pos))
        self.error("expected a number, 't', 'x(i,j)' or '('" if c else "unexpected end of input")

    # sets

    def natset(self) -> NatSet:
        self.expect("{")
        elems = self.nat_list("}")
        self.expect("}")
        if self.peek() == "+":
            self.pos += 1
            self.expect("per(")
            t = self.nat()
            self.expect(";")
            p = self.nat()
            self.expect(";")
            res = self.nat_list(")")
            self.expect(")")
            if p == 0 and res:
                self.error("period 0 cannot carry residues")
            return NatSet(frozenset(elems), t, p, frozenset(res))
        return NatSet.finite(elems)

    def nat_list(self, closer):
        out = []
        if self.peek() == closer:
            return out
        out.append(self.nat())
        while self.peek() == ",":
            self.pos += 1
            out.append(self.nat())
        return out


def parse_ast(text: str) -> Sum:
    p = _Parser(text)
    tree = p.poly()
    p.end()
    return tree


def parse_natset(text: str) -> NatSet:
    p = _Parser(text)
    s = p.natset()
    p.end()
    return s


def to_text(node: Node) -> str:
    """Print an AST so that parsing the result gives an equal tree."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, T):
        return "t"
    if isinstance(node, Var):
        return f"x({node.i},{node.j})"
    if isinstance(node, Paren):
        return "(" + to_text(node.inner) + ")"
    if isinstance(node, Pow):
        return f"{to_text(node.base)}^{node.exp}"
    if isinstance(node, Prod):
        return "*".join(to_text(f) for f in node.factors)
    if isinstance(node, Sum):
        out = to_text(node.terms[0])
        for s, term in zip(node.signs[1:], node.terms[1:]):
            out += f" {s} {to_text(term)}"
        return out
    raise TypeError(node)


def evaluate_ast(node: Node, n_vars: int) -> DiffPolynomial:
    if isinstance(node, Num):
        return DiffPolynomial.constant(n_vars, node.value)
    if isinstance(node, T):
        return DiffPolynomial.constant(n_vars, TruncatedSeries.t_power(1))
    if isinstance(node, Var):
        return DiffPolynomial(n_vars, {DiffMonomial.var(node.i, node.j): TruncatedSeries.const(1)})
    if isinstance(node, Paren):
        return evaluate_ast(node.inner, n_vars)
    if isinstance(node, Pow):
        return evaluate_ast(node.base, n_vars) ** node.exp
    if isinstance(node, Prod):
        out = evaluate_ast(node.factors[0], n_vars)
        for f in node.factors[1:]:
            out = out * evaluate_ast(f, n_vars)
        return out
    if isinstance(node, Sum):
        out = DiffPolynomial(n_vars, {})
        for s, term in zip(node.signs, node.terms):
            v = evaluate_ast(term, n_vars)
            out = out + v if s == "+" else out - v
        return out
    raise TypeError(node)


def max_var_index(node: Node) -> int:
    if isinstance(node, Var):
        return node.i
    if isinstance(node, Paren):
        return max_var_index(node.inner)
    if isinstance(node, Pow):
        return max_var_index(node.base)
    if isinstance(node, Prod):
        return max(max_var_index(f) for f in node.factors)
    if isinstance(node, Sum):
        return max(max_var_index(f) for f in node.terms)
    return 0


def parse_poly(text: str, n_vars: int | None = None, trunc: int | None = None) -> DiffPolynomial:
    """Parse a differential polynomial.

    Coefficients are polynomials in t and are kept exact unless ``trunc`` is
    given, in which case each coefficient is known only mod t^trunc.
    """
    tree = parse_ast(text)
    n = max(1, max_var_index(tree)) if n_vars is None else n_vars
    if max_var_index(tree) > n:
        raise VariableIndexError(f"variable index {max_var_index(tree)} exceeds n_vars = {n}")
    P = evaluate_ast(tree, n)
    if trunc is not None:
        P = P.map_coefficients(lambda c: c.truncate(trunc))
    return P


def parse_series(text: str, trunc: int | None = None) -> TruncatedSeries:
    """Parse a polynomial in t (no differential variables) as a series."""
    P = parse_poly(text, n_vars=1)
    if any(not m.is_one for m in P.terms):
        raise ParseError("a series may not contain differential variables", text, 0)
    c = P.terms.get(DiffMonomial(), TruncatedSeries.zero())
    return c if trunc is None else c.truncate(trunc)
