import unittest

import numpy as np

from agcodes.core.ag_codes import cl_code, rs_code
from agcodes.core.bounds import product_singleton_bound
from agcodes.core.curves import Divisor, HermitianCurve, ProjectiveLine
from agcodes.core.errors import DomainError, GuardExceededError
from agcodes.core.field_arith import make_field
from agcodes.core.linear_codes import LinearCode, distance, kernel, rank, solve_affine, weight
from agcodes.services.selftest import random_full_support_pairs


class TestMatrixHelpers(unittest.TestCase):
    def setUp(self):
        self.gf5 = make_field(5)

    def test_kernel_is_annihilated(self):
        matrix = self.gf5.from_index([[1, 2, 3, 4], [0, 1, 1, 2]])
        basis = kernel(matrix)
        self.assertEqual(basis.shape, (2, 4))
        self.assertFalse(np.any((matrix @ basis.T).view(np.ndarray)))

    def test_solve_affine_reports_inconsistency(self):
        matrix = self.gf5.from_index([[1, 1], [2, 2]])
        x, free = solve_affine(matrix, self.gf5.from_index([1, 3]))
        self.assertIsNone(x)
        self.assertEqual(free.shape[0], 1)
        x, _ = solve_affine(matrix, self.gf5.from_index([1, 2]))
        self.assertTrue(np.array_equal(matrix @ x, self.gf5.from_index([1, 2])))

    def test_rank_and_weight(self):
        self.assertEqual(rank(self.gf5.from_index([[1, 2], [2, 4]])), 1)
        u = self.gf5.from_index([0, 1, 2, 0])
        v = self.gf5.from_index([0, 1, 0, 3])
        self.assertEqual(weight(u), 2)
        self.assertEqual(distance(u, v), 2)


class TestLinearCode(unittest.TestCase):
    def setUp(self):
        self.gf2 = make_field(2)
        self.gf7 = make_field(7)
        points = range(7)
        self.rs2 = LinearCode(self.gf7, [[1] * 7, list(points)])
        self.rs3 = LinearCode(self.gf7, [[1] * 7, list(points), [x * x % 7 for x in points]])
        # [7, 4, 3] Hamming code
        self.hamming = LinearCode(self.gf2, [[1, 0, 0, 0, 1, 1, 0],
                                             [0, 1, 0, 0, 1, 0, 1],
                                             [0, 0, 1, 0, 0, 1, 1],
                                             [0, 0, 0, 1, 1, 1, 1]], name="Hamming")

    def test_parameters_and_dual(self):
        self.assertEqual((self.hamming.n, self.hamming.k), (7, 4))
        self.assertEqual(self.hamming.min_distance(), 3)
        simplex = self.hamming.dual()
        self.assertEqual(simplex.k, 3)
        self.assertEqual(simplex.min_distance(), 4)
        self.assertEqual(simplex.dual(), self.hamming)

    def test_encode_unencode_and_syndrome(self):
        message = self.gf2.from_index([1, 0, 1, 1])
        word = self.hamming.encode(message)
        self.assertTrue(self.hamming.contains(word))
        self.assertTrue(np.array_equal(self.hamming.unencode(word), message))
        word = word + self.gf2.from_index([1, 0, 0, 0, 0, 0, 0])
        self.assertTrue(np.any(self.hamming.syndrome(word).view(np.ndarray)))

    def test_message_length_is_checked(self):
        with self.assertRaises(DomainError):
            self.hamming.encode(self.gf2.from_index([1, 0]))

    def test_min_distance_is_schedule_independent(self):
        self.assertEqual(self.hamming.min_distance(jobs=4), self.hamming.min_distance(jobs=1))

    def test_guard_refuses_large_enumeration(self):
        with self.assertRaises(GuardExceededError):
            self.hamming.min_distance(limit=8)

    def test_star_product_of_reed_solomon_codes(self):
        self.assertEqual(self.rs2.star_product(self.rs2), self.rs3)
        self.assertEqual(self.rs2.hilbert_sequence(4), [2, 3, 4, 5])
        self.assertEqual(self.rs2.star_power(3).k, 4)
        self.assertEqual(self.rs2.regularity(), 6)

    def test_stabilizer_of_reed_solomon_is_repetition(self):
        self.assertEqual(self.rs3.stabilizer(), LinearCode.repetition(self.gf7, 7))

    def test_quadric_relations_vanish_on_columns(self):
        relations = self.rs3.quadric_relations()
        # 6 quadratic monomials in 3 variables, the square has dimension 5
        self.assertEqual(relations.dimension, 1)
        self.assertFalse(np.any(relations.evaluate(self.rs3.generator).view(np.ndarray)))

    def test_diagonal_equivalence(self):
        a = self.gf7.from_index([1, 2, 3, 4, 5, 6, 1])
        scaled = self.rs3.scale(a)
        self.assertTrue(self.rs3.is_diagonally_equivalent(scaled, a))
        # only constant multipliers stabilize a Reed-Solomon code
        self.assertFalse(self.rs3.is_diagonally_equivalent(self.rs3, a))

    def test_subfield_subcode_and_extension(self):
        gf4 = make_field(2, [2])
        extended = self.hamming.extend_scalars(gf4)
        self.assertEqual(extended.k, 4)
        self.assertEqual(extended.subfield_subcode(self.gf2), self.hamming)

    def test_direct_sum_and_restriction(self):
        total = self.hamming.direct_sum(LinearCode.repetition(self.gf2, 3))
        self.assertEqual((total.n, total.k), (10, 5))
        self.assertEqual(total.min_distance(), 3)
        self.assertEqual(total.restrict(range(7, 10)), LinearCode.repetition(self.gf2, 3))

    def test_frameproof_detection(self):
        # the full space contains e_1 and e_2, whose supports are disjoint
        self.assertFalse(LinearCode.full(self.gf2, 3).is_frameproof(2))
        self.assertTrue(LinearCode.repetition(self.gf2, 3).is_frameproof(2))
        # any two supports of size 2 in length 3 meet
        self.assertTrue(LinearCode(self.gf2, [[1, 1, 0], [0, 1, 1]]).is_frameproof(2))

    def test_reed_solomon_frameproof(self):
        self.assertTrue(rs_code(make_field(2, [3]), list(range(1, 8)), 2).code.is_frameproof(3))
        # x(x - 1) and (x - 2)(x - 3) vanish on complementary halves of the 4 points
        self.assertFalse(rs_code(make_field(5), list(range(4)), 3).code.is_frameproof(2))

    def test_frameproof_search_is_guarded(self):
        with self.assertRaises(GuardExceededError):
            LinearCode.full(self.gf2, 3).is_frameproof(2, limit=10)
        self.assertFalse(LinearCode.full(self.gf2, 3).is_frameproof(2, limit=64))

    def test_digest_depends_only_on_the_code(self):
        shuffled = LinearCode(self.gf2, self.hamming.generator[::-1])
        self.assertEqual(shuffled.digest(), self.hamming.digest())
        self.assertNotEqual(self.hamming.dual().digest(), self.hamming.digest())


class TestStarProductInvariants(unittest.TestCase):
    def setUp(self):
        self.gf5 = make_field(5)
        self.gf7 = make_field(7)
        self.gf11 = make_field(11)
        self.rng = np.random.default_rng(12)

    def test_adjunction(self):
        x, y, z = (self.gf11.random_elements(self.rng, (1000, 10)) for _ in range(3))
        for i in range(1000):
            self.assertEqual((x[i] * y[i]) @ z[i], x[i] @ (y[i] * z[i]))

    def test_products_of_reed_solomon_codes(self):
        points = list(range(10))
        for k1 in range(1, 6):
            for k2 in range(1, 6):
                product = rs_code(self.gf11, points, k1).code.star_product(rs_code(self.gf11, points, k2).code)
                self.assertEqual(product.k, min(10, k1 + k2 - 1))

    def test_mds_factor_dimension_bound(self):
        for k in (2, 3, 4):
            mds = rs_code(self.gf11, list(range(10)), k).code
            for _, other in random_full_support_pairs(self.gf11, 10, 5, self.rng):
                self.assertGreaterEqual(mds.star_product(other).k, min(10, k + other.k - 1))

    def test_kneser_and_product_singleton(self):
        for a, b in random_full_support_pairs(self.gf5, 6, 20, self.rng):
            product = a.star_product(b)
            self.assertGreaterEqual(product.k, a.k + b.k - product.stabilizer().k)
            self.assertLessEqual(product.min_distance(), product_singleton_bound(6, [a.k, b.k]))

    def test_product_singleton_is_tight_for_reed_solomon(self):
        rs2 = LinearCode(self.gf7, [[1] * 7, list(range(7))])
        rs3 = LinearCode(self.gf7, [[1] * 7, list(range(7)), [x * x % 7 for x in range(7)]])
        product = rs2.star_product(rs3)
        self.assertEqual((product.k, product.stabilizer().k), (4, 1))
        # d = 4 meets max(t - 1, n - k - k' + t) and exceeds min(...) = 1
        self.assertEqual(product.min_distance(), 4)
        self.assertEqual(product_singleton_bound(7, [2, 3]), 4)

    def test_riemann_roch_spaces_multiply_on_the_line(self):
        line = ProjectiveLine(self.gf11)
        points = line.affine_points()[1:]
        zero = line.point(0)
        for a in range(5):
            for b in (1, 2):
                left = cl_code(line, points, line.one_point(a)).code
                right = cl_code(line, points, Divisor.point(zero, b)).code
                whole = cl_code(line, points, line.one_point(a) + Divisor.point(zero, b)).code
                self.assertEqual(left.star_product(right), whole)

    def test_riemann_roch_spaces_multiply_on_hermitian_curves(self):
        curve = HermitianCurve(2)
        points = curve.affine_points()
        codes = {m: cl_code(curve, points, curve.one_point(m)).code for m in range(2, 11)}
        # genus 1: deg A >= 2 and deg B >= 3
        for a, b in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5)]:
            self.assertEqual(codes[a].star_product(codes[b]), codes[a + b])
        curve = HermitianCurve(3)
        points = curve.affine_points()
        product = cl_code(curve, points, curve.one_point(6)).code.star_product(
            cl_code(curve, points, curve.one_point(7)).code)
        self.assertEqual(product, cl_code(curve, points, curve.one_point(13)).code)


if __name__ == "__main__":
    unittest.main()
