import random
import unittest
from fractions import Fraction

from conjugacy_legs import JordanClass
from cyclotomic import CycloNumber, root_of_unity
from diagram_builder import (
    NodeKind, ProblemInput, add_tame_pole, build, cartan, check, congruent, core_diagram,
    dim_oracle, glue_formal_legs, isomorphic, search_congruence, untwisted_edges,
)
from puiseux_circles import ExpFactor, circle_of
from runtime import ValidationError
from tests.randomized import random_circles, random_problem


def x(exponent, coeff=1) -> ExpFactor:
    return ExpFactor.monomial(coeff, Fraction(exponent))


GL2 = JordanClass.regular_semisimple(2)


def problem(infinity, poles=()):
    return ProblemInput.create([(q, m, None) for q, m in infinity], poles)


class TestCore(unittest.TestCase):
    def test_airy_single_node(self):
        core = core_diagram(problem([(x("3/2"), 1)]).infinity)
        self.assertEqual(core.dims, (1,))
        self.assertEqual(core.loops, (0,))
        self.assertEqual(core.core_rams, (2,))

    def test_p1_has_a_loop(self):
        core = core_diagram(problem([(x("5/2"), 1)]).infinity)
        self.assertEqual(core.loops, (1,))
        self.assertEqual(cartan(core).C, ((0,),))

    def test_weber_edge(self):
        core = core_diagram(problem([(x(2), 1), (-x(2), 1)]).infinity)
        self.assertEqual(core.edges, ((0, 1), (1, 0)))
        self.assertEqual([n.kind for n in core.nodes], [NodeKind.CORE, NodeKind.CORE])
        self.assertEqual([n.id for n in core.nodes], ["c1", "c2"])


class TestLegsAndPoles(unittest.TestCase):
    def test_formal_leg(self):
        p = problem([(ExpFactor.zero(), 2)])
        diagram = glue_formal_legs(core_diagram(p.infinity), [GL2])
        self.assertEqual(diagram.dims, (2, 1))
        self.assertEqual(diagram.nodes[1].id, "f1.2")
        self.assertEqual(diagram.edges[0][1], 1)

    def test_formal_leg_size_mismatch(self):
        core = core_diagram(problem([(ExpFactor.zero(), 2)]).infinity)
        with self.assertRaises(ValidationError):
            glue_formal_legs(core, [JordanClass.regular_semisimple(3)])

    def test_tame_pole_splays_onto_core(self):
        p = problem([(x(1), 1), (ExpFactor.zero(), 1)])
        diagram = add_tame_pole(core_diagram(p.infinity), GL2, "0")
        self.assertEqual(diagram.nodes[2].id, "t1.2")
        self.assertEqual(diagram.nodes[2].label, "pole 0 leg 2")
        self.assertEqual(cartan(diagram).C, ((2, 0, -1), (0, 2, -1), (-1, -1, 2)))

    def test_ramified_core_gets_beta_edges(self):
        p = problem([(x("1/2"), 1)])
        diagram = add_tame_pole(core_diagram(p.infinity), GL2)
        self.assertEqual(diagram.edges[0][1], 2)
        self.assertEqual(diagram.nodes[1].label, "pole #1 leg 2")

    def test_central_pole_adds_nothing(self):
        p = problem([(x(1), 1), (ExpFactor.zero(), 1)])
        core = core_diagram(p.infinity)
        diagram = add_tame_pole(core, JordanClass.central(2), "0")
        self.assertEqual(diagram.size, core.size)
        self.assertEqual(diagram.tame_poles, 1)
        self.assertEqual(len(diagram.warnings), 1)

    def test_tame_size_mismatch(self):
        core = core_diagram(problem([(x(1), 1)]).infinity)
        with self.assertRaises(ValidationError):
            add_tame_pole(core, GL2)


class TestBuild(unittest.TestCase):
    def test_gauss(self):
        p = ProblemInput.create([(ExpFactor.zero(), 2, GL2)], [(0, GL2), (1, GL2)])
        result = build(p)
        self.assertEqual(result.diagram.dims, (2, 1, 1, 1))
        self.assertEqual(result.cartan.pairing, 2)
        self.assertEqual(result.cartan.dim_B, 0)
        self.assertEqual(check(result), 0)

    def test_weber_result(self):
        result = build(problem([(x(2), 1), (-x(2), 1)]))
        self.assertEqual(result.cartan.C, ((2, -1), (-1, 2)))
        self.assertEqual(result.hom_irr, ((0, 2), (2, 0)))
        self.assertEqual(result.irr_end, 4)
        self.assertEqual(result.rank, 2)
        self.assertEqual(dim_oracle(result.problem), 0)

    def test_p1(self):
        result = build(problem([(x("5/2"), 1)]))
        self.assertEqual((result.cartan.pairing, result.cartan.dim_B), (0, 2))
        self.assertTrue(result.cartan.nonempty_assumed)

    def test_cartan_permuted(self):
        data = build(problem([(x(1), 1), (ExpFactor.zero(), 1)], [(0, GL2)])).cartan
        moved = data.permuted((2, 0, 1))
        self.assertEqual(moved.C[0], (2, -1, -1))
        self.assertEqual(moved.pairing, data.pairing)

    def test_random_problems(self):
        rng = random.Random(200)
        for _ in range(200):
            p = random_problem(rng)
            result = build(p)
            c = result.cartan
            self.assertEqual(dim_oracle(p), c.dim_B)
            self.assertEqual(c.C, tuple(zip(*c.C)))
            self.assertEqual((2 - c.dim_B) % 2, 0)
            self.assertTrue(all(d >= 1 for d in c.d))

    def test_scaling_invariance(self):
        rng = random.Random(201)
        gammas = [CycloNumber.rational(3), root_of_unity(3, 1), root_of_unity(4, 1) - 1]
        for _ in range(40):
            p = random_problem(rng, max_circles=2, max_mult=2, max_poles=2)
            scaled = p.scale(rng.choice(gammas))
            before, after = build(p), build(scaled)
            self.assertEqual(after.cartan, before.cartan)
            self.assertEqual(after.diagram.edges, before.diagram.edges)
            self.assertEqual(after.diagram.dims, before.diagram.dims)
            self.assertEqual(
                [n.kind for n in after.diagram.nodes], [n.kind for n in before.diagram.nodes]
            )
            self.assertEqual([n.id for n in after.diagram.nodes], [n.id for n in before.diagram.nodes])

    def test_untwisted_specialisation(self):
        rng = random.Random(202)
        for _ in range(60):
            circles = random_circles(rng, rng.randint(1, 4), unramified=True)
            core = core_diagram(ProblemInput.create([(c, 1, None) for c in circles]).infinity)
            self.assertEqual([list(r) for r in core.edges], untwisted_edges(circles))

    def test_untwisted_rejects_ramified(self):
        with self.assertRaises(ValidationError):
            untwisted_edges([circle_of(x("3/2"))])


class TestValidation(unittest.TestCase):
    def test_bad_inputs(self):
        with self.assertRaises(ValidationError):
            problem([(x(1), 0)])
        with self.assertRaises(ValidationError):
            problem([])
        with self.assertRaises(ValidationError):
            ProblemInput.create([(x(1), 2, JordanClass.regular_semisimple(3))])
        with self.assertRaises(ValidationError):
            problem([(x(1), 1), (ExpFactor.zero(), 1)], [("0", GL2), ("0/1", GL2)])
        with self.assertRaises(ValidationError):
            problem([(x(1), 1)], [("0", GL2)])

    def test_repeated_circle_merged(self):
        p = ProblemInput.create([(x("3/2"), 1, None), (-x("3/2"), 1, None)])
        self.assertEqual(len(p.infinity), 1)
        self.assertEqual(p.infinity[0].mult, 2)
        self.assertEqual(p.infinity[0].monodromy, JordanClass.regular_semisimple(2))
        self.assertEqual(len(p.warnings), 1)

    def test_location_normalised(self):
        p = problem([(x(1), 1), (ExpFactor.zero(), 1)], [("2/4", GL2), ("t", GL2)])
        self.assertEqual([pole.location for pole in p.tame_poles], ["1/2", "t"])

    def test_zero_denominator_location(self):
        with self.assertRaises(ValidationError):
            problem([(x(1), 1), (ExpFactor.zero(), 1)], [("1/0", GL2)])


class TestDiagramOperations(unittest.TestCase):
    def test_delete_and_isomorphic(self):
        kummer = build(problem([(x(1), 1), (ExpFactor.zero(), 1)], [(0, GL2)])).diagram
        pruned = kummer.delete_node("t1.2")
        self.assertEqual(pruned.size, 2)
        split = build(problem([(x(1), 1), (-x(1), 1)])).diagram
        weber = build(problem([(x(2), 1), (-x(2), 1)])).diagram
        self.assertTrue(isomorphic(pruned, split))
        self.assertFalse(isomorphic(pruned, weber))
        self.assertFalse(isomorphic(kummer, split))

    def test_missing_node(self):
        diagram = build(problem([(x(2), 1)])).diagram
        with self.assertRaises(ValidationError):
            diagram.index("t9.2")


class TestCongruence(unittest.TestCase):
    A2 = ((2, -1), (-1, 2))

    def test_identity(self):
        self.assertTrue(congruent(self.A2, self.A2, ((1, 0), (0, 1))))
        self.assertFalse(congruent(self.A2, self.A2, ((2, 0), (0, 1))))

    def test_search_finds_witness(self):
        g = search_congruence(self.A2, self.A2)
        self.assertIsNotNone(g)
        self.assertTrue(congruent(self.A2, self.A2, g.tolist()))

    def test_search_across_forms(self):
        m1 = ((2, 0), (0, 2))
        m2 = ((2, 2), (2, 4))
        g = search_congruence(m1, m2)
        self.assertIsNotNone(g)
        self.assertTrue(congruent(m1, m2, g.tolist()))

    def test_no_witness(self):
        self.assertIsNone(search_congruence(((2, 0), (0, 2)), ((2, 0), (0, 4))))

    def test_shape_errors(self):
        with self.assertRaises(ValidationError):
            congruent(self.A2, ((2,),), ((1,),))
        with self.assertRaises(ValidationError):
            search_congruence(((1, 2, 3),), ((1,),))


if __name__ == "__main__":
    unittest.main()
