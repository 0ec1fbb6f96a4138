"""
dsl.py
--------------------------------
Input language for the formal data at infinity plus tame poles.

    # Painleve III
    infinity {
      factor "x^(1/2)" mult 1
    }
    pole 0 { a:[1], b:[1] }
    pole 1 { a:[1], b:[1] }

Factor strings are signed sums of terms  coeff* x^e  where a coefficient is a
product of rationals, i, and roots of unity zN^k; exponents must be positive.
An omitted monodromy class means n_i distinct eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from conjugacy_legs import JordanClass
from cyclotomic import CycloNumber, root_of_unity
from diagram_builder import ProblemInput
from puiseux_circles import ExpFactor
from runtime import ParseError, ValidationError


# ============================================================
# 1️⃣ Grammars
# ============================================================
DOCUMENT_GRAMMAR = r"""
    start: stanza+

    ?stanza: infinity | pole

    infinity: "infinity" "{" circle+ "}"
    circle: "factor" STRING "mult" INT monodromy?
    monodromy: "monodromy" jclass
    pole: "pole" (RATIONAL | LABEL) jclass

    jclass: "{" eigen ("," eigen)* "}"
    eigen: LABEL ":" "[" INT ("," INT)* "]"

    LABEL: /[A-Za-z_][A-Za-z0-9_']*/
    RATIONAL: /[+-]?\d+(\/\d+)?/
    INT: /\d+/

    %import common.ESCAPED_STRING -> STRING
    %import common.SH_COMMENT
    %import common.WS
    %ignore SH_COMMENT
    %ignore WS
"""

FACTOR_GRAMMAR = r"""
    start: lead (ADDOP term)*
    lead: ADDOP? term
    term: atom ("*"? atom)*

    ?atom: NUMBER                     -> number
         | "(" SIGNED_NUMBER ")"      -> number
         | "i"                        -> imag
         | "z" INT ("^" INT)?         -> root
         | "x" ("^" exponent)?        -> xpow

    exponent: SIGNED_INT | "(" SIGNED_NUMBER ")"

    NUMBER: /\d+(\/\d+)?/
    SIGNED_NUMBER: /[+-]?\d+(\/\d+)?/
    SIGNED_INT: /[+-]?\d+/
    INT: /\d+/
    ADDOP: "+" | "-"

    %import common.WS
    %ignore WS
"""

_document_parser = Lark(DOCUMENT_GRAMMAR, parser="lalr", propagate_positions=True)
_factor_parser = Lark(FACTOR_GRAMMAR, parser="lalr", propagate_positions=True)


def _describe(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character {error.char!r}"
    if isinstance(error, UnexpectedEOF):
        return "unexpected end of input"
    token = getattr(error, "token", None)
    if token is not None and token.type == "$END":
        return "unexpected end of input"
    return f"unexpected {str(token)!r}" if token is not None else "syntax error"


def _position(error: UnexpectedInput) -> tuple[int | None, int | None]:
    line = getattr(error, "line", -1)
    column = getattr(error, "column", -1)
    if line is None or line < 1:
        return None, None
    return line, column


# ============================================================
# 2️⃣ Factor strings
# ============================================================
class _FactorBuilder(Transformer):
    def __init__(self, line: int, column: int):
        super().__init__()
        self.line = line
        self.column = column

    def _fail(self, message: str, column: int):
        raise ParseError(message, self.line, self.column + column)

    def _fraction(self, token) -> Fraction:
        try:
            return Fraction(str(token))
        except ZeroDivisionError:
            self._fail(f"zero denominator in {token}", token.column)

    def number(self, children):
        return "coeff", CycloNumber.rational(self._fraction(children[0]))

    def imag(self, children):
        return "coeff", root_of_unity(4, 1)

    @v_args(meta=True)
    def root(self, meta, children):
        level = int(children[0])
        power = int(children[1]) if len(children) > 1 else 1
        if level < 1:
            self._fail("root of unity order must be positive", meta.column)
        return "coeff", root_of_unity(level, power)

    def exponent(self, children):
        return self._fraction(children[0])

    @v_args(meta=True)
    def xpow(self, meta, children):
        exponent = children[0] if children else Fraction(1)
        if exponent <= 0:
            self._fail(f"nonpositive exponent {exponent}", meta.column)
        return "x", exponent

    @v_args(meta=True)
    def term(self, meta, children):
        coeff = CycloNumber.rational(1)
        exponent = Fraction(0)
        for kind, value in children:
            if kind == "coeff":
                coeff = coeff * value
            else:
                exponent += value
        if exponent == 0 and not coeff.is_zero():
            self._fail("constant term in exponential factor", meta.column)
        return exponent, coeff

    def lead(self, children):
        if len(children) == 2:
            sign, (exponent, coeff) = children
            return (exponent, -coeff) if sign == "-" else (exponent, coeff)
        return children[0]

    def start(self, children):
        terms = [children[0]]
        for sign, (exponent, coeff) in zip(children[1::2], children[2::2]):
            terms.append((exponent, -coeff if sign == "-" else coeff))
        return ExpFactor.from_terms((e, c) for e, c in terms if not c.is_zero())


def parse_factor(text: str, line: int = 1, column: int = 0) -> ExpFactor:
    """Parse a factor string; (line, column) locate its first character minus one."""
    try:
        tree = _factor_parser.parse(text)
    except UnexpectedInput as e:
        _, col = _position(e)
        raise ParseError(f"in factor {text!r}: {_describe(e)}", line, column + (col or 1)) from None
    try:
        return _FactorBuilder(line, column).transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


# ============================================================
# 3️⃣ Documents
# ============================================================
class _DocumentBuilder(Transformer):
    def eigen(self, children):
        label, *parts = children
        return str(label), [int(p) for p in parts]

    def jclass(self, children):
        return JordanClass.of(children)

    def monodromy(self, children):
        return children[0]

    def circle(self, children):
        string, mult = children[0], int(children[1])
        monodromy = children[2] if len(children) > 2 else None
        factor = parse_factor(string[1:-1], string.line, string.column)
        return factor, mult, monodromy

    def infinity(self, children):
        return "infinity", children

    def pole(self, children):
        location, jclass = children
        if location.type == "RATIONAL" and "/" in location and int(location.split("/")[1]) == 0:
            raise ParseError(f"zero denominator in pole location {location}", location.line, location.column)
        return "pole", (str(location), jclass)

    def start(self, children):
        return children


@dataclass(frozen=True)
class InputDocument:
    source: str
    problem: ProblemInput

    @property
    def warnings(self) -> tuple[str, ...]:
        return self.problem.warnings


def parse(text: str) -> ProblemInput:
    try:
        tree = _document_parser.parse(text)
    except UnexpectedInput as e:
        line, column = _position(e)
        raise ParseError(_describe(e), line, column) from None
    try:
        stanzas = _DocumentBuilder().transform(tree)
    except VisitError as e:
        raise e.orig_exc from None

    infinity = [body for kind, body in stanzas if kind == "infinity"]
    if not infinity:
        raise ValidationError("missing 'infinity' stanza")
    if len(infinity) > 1:
        raise ValidationError("more than one 'infinity' stanza")
    poles = [body for kind, body in stanzas if kind == "pole"]
    return ProblemInput.create(infinity[0], poles)


def parse_document(text: str) -> InputDocument:
    return InputDocument(text, parse(text))


def format_input(problem: ProblemInput) -> str:
    """Canonical source text; parse(format_input(p)) == p."""
    lines = ["infinity {"]
    for entry in problem.infinity:
        lines.append(
            f'  factor "{entry.circle.rep.to_dsl()}" mult {entry.mult} monodromy {entry.monodromy}'
        )
    lines.append("}")
    for pole in problem.tame_poles:
        lines.append(f"pole {pole.location} {pole.jclass}")
    return "\n".join(lines) + "\n"
