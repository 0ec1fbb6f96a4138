import unittest
from fractions import Fraction

from catalog import catalog, names
from conjugacy_legs import JordanClass
from cyclotomic import root_of_unity
from diagram_builder import build
from dsl import format_input, parse, parse_document, parse_factor
from puiseux_circles import ExpFactor, circle_of
from render import render_text
from runtime import ParseError, ValidationError

PIII = """\
# Painleve III
infinity {
  factor "x^(1/2)" mult 1
}
pole 0 { a:[1], b:[1] }
pole 1 { a:[1], b:[1] }
"""


def x(exponent, coeff=1) -> ExpFactor:
    return ExpFactor.monomial(coeff, Fraction(exponent))


class TestParseFactor(unittest.TestCase):
    def test_forms(self):
        self.assertEqual(parse_factor("x^(3/2)"), x("3/2"))
        self.assertEqual(parse_factor("2x^(3/2)"), x("3/2", 2))
        self.assertEqual(parse_factor("(2/3)x^(3/2)"), x("3/2", Fraction(2, 3)))
        self.assertEqual(parse_factor("-x^2"), -x(2))
        self.assertEqual(parse_factor("x^3 - (2/3)x"), x(3) + x(1, Fraction(-2, 3)))
        self.assertEqual(parse_factor("i*x^2"), x(2, root_of_unity(4, 1)))
        self.assertEqual(parse_factor("z3^2 x^(1/3)"), x("1/3", root_of_unity(3, 2)))
        self.assertEqual(parse_factor("z6 x"), x(1, root_of_unity(6, 1)))
        self.assertEqual(parse_factor("x^(1/2) x"), x("3/2"))

    def test_zero(self):
        self.assertTrue(parse_factor("0").is_zero())
        self.assertTrue(parse_factor("x - x").is_zero())

    def test_rejects_constant_term(self):
        with self.assertRaises(ParseError) as ctx:
            parse_factor("1 + x")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 1))

    def test_rejects_nonpositive_exponent(self):
        with self.assertRaises(ParseError):
            parse_factor("x^(-1/2)")
        with self.assertRaises(ParseError):
            parse_factor("x^0")

    def test_zero_denominators(self):
        with self.assertRaises(ParseError) as ctx:
            parse_factor("x^(1/0)")
        self.assertEqual(ctx.exception.column, 4)
        with self.assertRaises(ParseError) as ctx:
            parse_factor("(1/0)x")
        self.assertEqual(ctx.exception.column, 2)
        with self.assertRaises(ParseError):
            parse_factor("3/0 x")

    def test_syntax_errors(self):
        for text in ("x^", "x +", "y^2", "x^(1/2"):
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse_factor(text)

    def test_to_dsl_parses_back(self):
        for q in (
            x(3) + x(1, Fraction(-2, 3)),
            x("1/3", root_of_unity(3, 1) + 2),
            x("5/4", root_of_unity(12, 5) * Fraction(-3, 2)),
            -x("3/2"),
        ):
            self.assertEqual(parse_factor(q.to_dsl()), q)


class TestParseDocument(unittest.TestCase):
    def test_painleve_three(self):
        problem = parse(PIII)
        self.assertEqual(len(problem.infinity), 1)
        self.assertEqual(problem.infinity[0].circle, circle_of(x("1/2")))
        self.assertEqual(problem.rank, 2)
        self.assertEqual([p.location for p in problem.tame_poles], ["0", "1"])
        self.assertEqual(problem.tame_poles[0].jclass, JordanClass.of([("a", [1]), ("b", [1])]))

    def test_default_monodromy(self):
        problem = parse('infinity { factor "x^2" mult 2 }')
        self.assertEqual(problem.infinity[0].monodromy, JordanClass.regular_semisimple(2))

    def test_explicit_monodromy(self):
        problem = parse('infinity { factor "0" mult 3 monodromy { a:[2], b:[1] } }')
        self.assertEqual(problem.infinity[0].monodromy.entries, (("a", (2,)), ("b", (1,))))

    def test_symbolic_and_rational_locations(self):
        problem = parse(
            'infinity { factor "0" mult 2 }\n'
            "pole 1/2 { a:[1], b:[1] }\n"
            "pole t { a:[1], b:[1] }\n"
        )
        self.assertEqual([p.location for p in problem.tame_poles], ["1/2", "t"])

    def test_constant_term_reported_at_file_position(self):
        text = 'infinity {\n  factor "1 + x" mult 1\n}\n'
        with self.assertRaises(ParseError) as ctx:
            parse(text)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 11))
        self.assertIn("constant term", str(ctx.exception))

    def test_zero_denominator_in_document(self):
        with self.assertRaises(ParseError) as ctx:
            parse('infinity { factor "x" mult 1 }\npole 1/0 { a:[1] }\n')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 6))
        with self.assertRaises(ParseError) as ctx:
            parse('infinity {\n  factor "x^(1/0)" mult 1\n}\n')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 14))

    def test_syntax_errors(self):
        for text in (
            "infinity {",
            "infinity { }",
            'infinity { factor "x" }',
            'infinity { factor "x" mult 1 } pole { a:[1] }',
            'infinity { factor "x" mult one }',
        ):
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse(text)

    def test_structural_errors(self):
        with self.assertRaises(ValidationError):
            parse("pole 0 { a:[1] }")
        with self.assertRaises(ValidationError):
            parse('infinity { factor "x" mult 1 }\ninfinity { factor "x^2" mult 1 }')
        with self.assertRaises(ValidationError):
            parse('infinity { factor "x" mult 1 }\npole 0 { a:[1], b:[1] }')
        with self.assertRaises(ValidationError):
            parse('infinity { factor "x" mult 2 monodromy { a:[1] } }')

    def test_repeated_circle_warns(self):
        document = parse_document('infinity {\n  factor "x^(3/2)" mult 1\n  factor "-x^(3/2)" mult 1\n}\n')
        self.assertEqual(document.problem.infinity[0].mult, 2)
        self.assertEqual(len(document.warnings), 1)


class TestRoundTrips(unittest.TestCase):
    def test_format_input(self):
        for name in names():
            with self.subTest(name=name):
                problem = catalog(name).problem
                self.assertEqual(parse(format_input(problem)), problem)

    def test_render_text_is_valid_input(self):
        for name in names():
            with self.subTest(name=name):
                result = build(catalog(name).problem)
                self.assertEqual(parse(render_text(result, name)), result.problem)


if __name__ == "__main__":
    unittest.main()
