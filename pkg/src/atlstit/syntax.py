"""Formula ASTs, concrete syntax, substitution, and the ATL-to-stit translation.

Two languages share the Boolean core (Atom / Not / And):

  ATL adds the coalition-temporal operators  <<C>> X f, <<C>> G f, <<C>> (f U g).
  The stit language adds  X f, G f, (f U g), [] f (historical necessity),
  [C] f (C sees to it that), and <<C>>^s f (strategic ability).

Concrete syntax (ASCII).  IDENT = [a-zA-Z_][a-zA-Z0-9_]*, excluding the
keywords X G U true false.  Precedence: ! binds tightest, then &, |, ->, <->;
& and | are left-associative, -> and <-> right-associative.  Prefix operators
(!, X, G, [], <>, [C], <<C>>^s, <<C>> X, <<C>> G) take a unary operand.
true, false, |, ->, <-> and <> are parser-level sugar: the ASTs contain only
the grammar constructors, with true == ! (p0 & ! p0) over the reserved
atom p0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

Coalition = frozenset


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class CoalX:
    coalition: Coalition
    child: "Formula"


@dataclass(frozen=True)
class CoalG:
    coalition: Coalition
    child: "Formula"


@dataclass(frozen=True)
class CoalU:
    coalition: Coalition
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Next:
    child: "Formula"


@dataclass(frozen=True)
class Globally:
    child: "Formula"


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    child: "Formula"


@dataclass(frozen=True)
class Stit:
    coalition: Coalition
    child: "Formula"


@dataclass(frozen=True)
class StratAbility:
    coalition: Coalition
    child: "Formula"


Formula = Union[
    Atom, Not, And, CoalX, CoalG, CoalU, Next, Globally, Until, Box, Stit, StratAbility
]

RESERVED_ATOM = "p0"
FALSE = And(Atom(RESERVED_ATOM), Not(Atom(RESERVED_ATOM)))
TRUE = Not(FALSE)

KEYWORDS = {"X", "G", "U", "true", "false"}


def disj(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[a-zA-Z_][a-zA-Z0-9_]*)
  | (?P<op>>>\^s|<<|>>|<->|<>|->|[!&|(),\[\]])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, offset) triples; kind is a literal op, IDENT or KW."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "ident":
            word = m.group()
            kind = word if word in KEYWORDS else "IDENT"
            tokens.append((kind, word, pos))
        elif m.lastgroup == "op":
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, language: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.language = language  # "atl" | "sx"

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.tokens[self.i][2])

    def parse(self) -> Formula:
        node = self.parse_iff()
        if self.peek() != "EOF":
            self.fail(f"trailing input {self.tokens[self.i][1]!r}")
        return node

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        if self.peek() == "<->":
            self.next()
            return iff(left, self.parse_iff())
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.peek() == "->":
            self.next()
            return implies(left, self.parse_implies())
        return left

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek() == "|":
            self.next()
            node = disj(node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_unary()
        while self.peek() == "&":
            self.next()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Formula:
        kind = self.peek()
        if kind == "!":
            self.next()
            return Not(self.parse_unary())
        if kind == "<<":
            return self.parse_coalition_op()
        if self.language == "sx":
            if kind == "X":
                self.next()
                return Next(self.parse_unary())
            if kind == "G":
                self.next()
                return Globally(self.parse_unary())
            if kind == "<>":
                self.next()
                return Not(Box(Not(self.parse_unary())))
            if kind == "[":
                self.next()
                if self.peek() == "]":
                    self.next()
                    return Box(self.parse_unary())
                coalition = self.parse_agent_list("]")
                return Stit(coalition, self.parse_unary())
        return self.parse_primary()

    def parse_agent_list(self, closing: str) -> Coalition:
        agents = []
        if self.peek() == "IDENT":
            agents.append(self.next()[1])
            while self.peek() == ",":
                self.next()
                agents.append(self.expect("IDENT")[1])
        self.expect(closing)
        return frozenset(agents)

    def parse_coalition_op(self) -> Formula:
        # ATL has <<C>> X/G/(U); the stit language only has <<C>>^s.
        self.expect("<<")
        if self.language == "sx":
            coalition = self.parse_agent_list(">>^s")
            return StratAbility(coalition, self.parse_unary())
        coalition = self.parse_agent_list(">>")
        kind = self.peek()
        if kind == "X":
            self.next()
            return CoalX(coalition, self.parse_unary())
        if kind == "G":
            self.next()
            return CoalG(coalition, self.parse_unary())
        if kind == "(":
            self.next()
            left = self.parse_iff()
            self.expect("U")
            right = self.parse_iff()
            self.expect(")")
            return CoalU(coalition, left, right)
        self.fail("coalition must be followed by X, G, or (f U g)")

    def parse_primary(self) -> Formula:
        kind, value, offset = self.next()
        if kind == "IDENT":
            return Atom(value)
        if kind == "true":
            return TRUE
        if kind == "false":
            return FALSE
        if kind == "(":
            node = self.parse_iff()
            if self.peek() == "U":
                if self.language == "atl":
                    self.fail("until requires a coalition prefix: <<C>> (f U g)")
                self.next()
                right = self.parse_iff()
                self.expect(")")
                return Until(node, right)
            self.expect(")")
            return node
        raise FormulaSyntaxError(f"unexpected token {value!r}", offset)


def parse_atl(text: str) -> Formula:
    return _Parser(text, "atl").parse()


def parse_sx(text: str) -> Formula:
    return _Parser(text, "sx").parse()


def _coal_str(coalition: Coalition) -> str:
    return ",".join(sorted(coalition))


def _arg(phi: Formula) -> str:
    """Operand rendering: parenthesize unless atomic or already self-wrapped."""
    text = print_formula(phi)
    if isinstance(phi, (Atom, And, Until, CoalU)):
        return text
    return f"({text})"


def print_formula(phi: Formula) -> str:
    """Canonical text; parse(print(phi)) == phi in the matching language."""
    match phi:
        case Atom(name):
            return name
        case Not(child):
            return f"! {_arg(child)}"
        case And(left, right):
            return f"({print_formula(left)} & {print_formula(right)})"
        case CoalX(coalition, child):
            return f"<<{_coal_str(coalition)}>> X {_arg(child)}"
        case CoalG(coalition, child):
            return f"<<{_coal_str(coalition)}>> G {_arg(child)}"
        case CoalU(coalition, left, right):
            return f"<<{_coal_str(coalition)}>> ({print_formula(left)} U {print_formula(right)})"
        case Next(child):
            return f"X {_arg(child)}"
        case Globally(child):
            return f"G {_arg(child)}"
        case Until(left, right):
            return f"({print_formula(left)} U {print_formula(right)})"
        case Box(child):
            return f"[] {_arg(child)}"
        case Stit(coalition, child):
            return f"[{_coal_str(coalition)}] {_arg(child)}"
        case StratAbility(coalition, child):
            # Fused strategic-temporal rendering mirrors the ATL coalition forms.
            match child:
                case Next(inner):
                    return f"<<{_coal_str(coalition)}>>^s X {_arg(inner)}"
                case Globally(inner):
                    return f"<<{_coal_str(coalition)}>>^s G {_arg(inner)}"
                case Until(left, right):
                    return (
                        f"<<{_coal_str(coalition)}>>^s "
                        f"({print_formula(left)} U {print_formula(right)})"
                    )
                case _:
                    return f"<<{_coal_str(coalition)}>>^s {_arg(child)}"
    raise TypeError(f"not a formula: {phi!r}")


def substitute(phi: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Uniform substitution: replace every mapped atom simultaneously."""
    match phi:
        case Atom(name):
            return mapping.get(name, phi)
        case Not(child):
            return Not(substitute(child, mapping))
        case And(left, right):
            return And(substitute(left, mapping), substitute(right, mapping))
        case CoalX(coalition, child):
            return CoalX(coalition, substitute(child, mapping))
        case CoalG(coalition, child):
            return CoalG(coalition, substitute(child, mapping))
        case CoalU(coalition, left, right):
            return CoalU(coalition, substitute(left, mapping), substitute(right, mapping))
        case Next(child):
            return Next(substitute(child, mapping))
        case Globally(child):
            return Globally(substitute(child, mapping))
        case Until(left, right):
            return Until(substitute(left, mapping), substitute(right, mapping))
        case Box(child):
            return Box(substitute(child, mapping))
        case Stit(coalition, child):
            return Stit(coalition, substitute(child, mapping))
        case StratAbility(coalition, child):
            return StratAbility(coalition, substitute(child, mapping))
    raise TypeError(f"not a formula: {phi!r}")


def translate(phi: Formula) -> Formula:
    """Map an ATL formula into the stit language.

    Atoms become historically necessary ([] p); Boolean structure is kept;
    each coalition-temporal operator becomes strategic ability over the
    matching temporal operator.
    """
    match phi:
        case Atom(_):
            return Box(phi)
        case Not(child):
            return Not(translate(child))
        case And(left, right):
            return And(translate(left), translate(right))
        case CoalX(coalition, child):
            return StratAbility(coalition, Next(translate(child)))
        case CoalG(coalition, child):
            return StratAbility(coalition, Globally(translate(child)))
        case CoalU(coalition, left, right):
            return StratAbility(coalition, Until(translate(left), translate(right)))
    raise TypeError(f"not an ATL formula: {phi!r}")


def node_count(phi: Formula) -> int:
    match phi:
        case Atom(_):
            return 1
        case Not(child) | CoalX(_, child) | CoalG(_, child) | Next(child) | Globally(
            child
        ) | Box(child) | Stit(_, child) | StratAbility(_, child):
            return 1 + node_count(child)
        case And(left, right) | Until(left, right) | CoalU(_, left, right):
            return 1 + node_count(left) + node_count(right)
    raise TypeError(f"not a formula: {phi!r}")


def atoms_of(phi: Formula) -> frozenset:
    match phi:
        case Atom(name):
            return frozenset({name})
        case Not(child) | CoalX(_, child) | CoalG(_, child) | Next(child) | Globally(
            child
        ) | Box(child) | Stit(_, child) | StratAbility(_, child):
            return atoms_of(child)
        case And(left, right) | Until(left, right) | CoalU(_, left, right):
            return atoms_of(left) | atoms_of(right)
    raise TypeError(f"not a formula: {phi!r}")


def coalitions_of(phi: Formula) -> frozenset:
    match phi:
        case Atom(_):
            return frozenset()
        case Not(child) | Next(child) | Globally(child) | Box(child):
            return coalitions_of(child)
        case And(left, right) | Until(left, right):
            return coalitions_of(left) | coalitions_of(right)
        case CoalX(coalition, child) | CoalG(coalition, child) | Stit(
            coalition, child
        ) | StratAbility(coalition, child):
            return frozenset({coalition}) | coalitions_of(child)
        case CoalU(coalition, left, right):
            return frozenset({coalition}) | coalitions_of(left) | coalitions_of(right)
    raise TypeError(f"not a formula: {phi!r}")
