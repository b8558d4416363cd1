import unittest

import numpy as np

from agcodes.core.curves import (
    Divisor,
    HermitianCurve,
    HermitianFunction,
    Mobius,
    Place,
    ProjectiveLine,
    backend_from_descriptor,
    parse_divisor,
    series_multiply,
)
from agcodes.core.errors import CapabilityError, DomainError
from agcodes.core.field_arith import make_field


class TestDivisors(unittest.TestCase):
    def setUp(self):
        self.P = Place.symbolic("P")
        self.Q = Place.symbolic("Q")
        self.K = Place.symbolic("K", degree=0)
        self.places = {"P": self.P, "Q": self.Q, "K": self.K}

    def test_parse_and_print(self):
        d = parse_divisor("16P+2Q", self.places)
        self.assertEqual(d.degree, 18)
        self.assertEqual(d[self.P], 16)
        self.assertEqual(str(d), "16P+2Q")
        self.assertEqual(parse_divisor("0", self.places), Divisor())

    def test_parse_collects_repeated_places(self):
        d = parse_divisor("K-14P-2Q+P", self.places)
        self.assertEqual(d[self.P], -13)
        self.assertEqual(d[self.K], 1)

    def test_parse_rejects_unknown_places(self):
        with self.assertRaises(DomainError):
            parse_divisor("3R", self.places)
        with self.assertRaises(DomainError):
            parse_divisor("3P+", self.places)

    def test_arithmetic_and_order(self):
        a = parse_divisor("3P-Q", self.places)
        b = parse_divisor("5P", self.places)
        self.assertEqual(a + b, parse_divisor("8P-Q", self.places))
        self.assertEqual(2 * a, parse_divisor("6P-2Q", self.places))
        self.assertEqual(a.positive_part(), Divisor.point(self.P, 3))
        self.assertEqual(a.negative_part(), Divisor.point(self.Q))
        self.assertTrue(a <= b)
        self.assertFalse(b <= a)


class TestProjectiveLine(unittest.TestCase):
    def setUp(self):
        self.line = ProjectiveLine(make_field(7))
        self.inf = self.line.infinity()

    def test_points_and_genus(self):
        self.assertEqual(len(self.line.rational_points()), 8)
        self.assertEqual(self.line.genus, 0)
        self.assertEqual(self.line.canonical_divisor().degree, -2)

    def test_riemann_roch_dimensions(self):
        self.assertEqual(self.line.rr_dim(self.line.one_point(3)), 4)
        self.assertEqual(self.line.rr_dim(self.line.one_point(-1)), 0)
        self.assertEqual(self.line.rr_basis(self.line.one_point(-1)), [])

    def test_basis_functions_live_in_the_space(self):
        divisor = Divisor({self.line.point(1): 2, self.line.point(4): -1, self.inf: 1})
        basis = self.line.rr_basis(divisor)
        self.assertEqual(len(basis), 3)
        for f in basis:
            self.assertTrue(Divisor() <= self.line.principal_divisor(f) + divisor)

    def test_function_with_divisor(self):
        divisor = Divisor({self.line.point(1): 1, self.line.point(2): 1, self.inf: -2})
        h = self.line.function_with_divisor(divisor)
        self.assertEqual(self.line.principal_divisor(h), divisor)
        with self.assertRaises(DomainError):
            self.line.function_with_divisor(self.line.one_point(1))

    def test_mobius_pullback(self):
        shift = Mobius(1, 1, 0, 1)
        self.assertEqual(shift.apply(self.line, self.line.point(3)), self.line.point(4))
        self.assertEqual(shift.apply(self.line, self.inf), self.inf)
        pulled = self.line.pullback(shift, Divisor.point(self.line.point(3), 2))
        self.assertEqual(pulled, Divisor.point(self.line.point(2), 2))
        with self.assertRaises(DomainError):
            Mobius(1, 2, 1, 2).check(self.line.field)

    def test_rejects_foreign_divisors(self):
        curve = HermitianCurve(2)
        with self.assertRaises(CapabilityError):
            self.line.rr_basis(Divisor.point(curve.affine_points()[0]))

    def test_check_points(self):
        p = self.line.point(2)
        with self.assertRaises(DomainError):
            self.line.check_points([p, p])


class TestHermitianCurve(unittest.TestCase):
    def setUp(self):
        self.curve = HermitianCurve(2)

    def test_counts_and_genus(self):
        self.assertEqual(self.curve.n_affine, 8)
        self.assertEqual(self.curve.genus, 1)
        big = HermitianCurve(3)
        self.assertEqual((big.n_affine, big.genus), (27, 3))

    def test_points_lie_on_the_curve(self):
        for place in self.curve.affine_points():
            x, y = self.curve.coordinates(place)
            self.assertEqual(y ** 2 + y, x ** 3)

    def test_rejects_non_prime_power(self):
        with self.assertRaises(DomainError):
            HermitianCurve(6)

    def test_weierstrass_semigroup(self):
        self.assertEqual(self.curve.weierstrass_generators(), [2, 3])
        self.assertFalse(self.curve.is_nongap(1))
        self.assertTrue(self.curve.is_nongap(5))
        self.assertEqual(self.curve.floor_divisor(1), 0)

    def test_one_point_dimensions_follow_riemann_roch(self):
        big = HermitianCurve(3)
        for m in range(2 * big.genus - 1, 15):
            self.assertEqual(big.rr_dim(big.one_point(m)), m + 1 - big.genus)
        self.assertEqual(big.rr_dim(big.one_point(2)), 1)

    def test_basis_pole_orders_are_distinct_nongaps(self):
        basis = self.curve.rr_basis(self.curve.one_point(6))
        orders = [f.pole_order() for f in basis]
        self.assertEqual(orders, [0, 2, 3, 4, 5, 6])

    def test_multiplication_matches_pointwise_products(self):
        y = HermitianFunction.monomial(self.curve, 0, 1)
        xy = HermitianFunction.monomial(self.curve, 1, 1)
        product = y * xy
        self.assertEqual(product.pole_order(), 8)
        for place in self.curve.affine_points():
            self.assertEqual(product.evaluate(place), y.evaluate(place) * xy.evaluate(place))

    def test_affine_vanishing_function(self):
        vanish = self.curve.affine_vanishing_function()
        self.assertTrue(all(vanish.evaluate(p) == 0 for p in self.curve.affine_points()))

    def test_shifted_divisors(self):
        divisor = self.curve.one_point(10) - self.curve.affine_sum()
        self.assertEqual(self.curve.rr_dim(divisor), 2)
        self.assertTrue(all(f.evaluate(p) == 0 for f in self.curve.rr_basis(divisor)
                            for p in self.curve.affine_points()))
        with self.assertRaises(CapabilityError):
            self.curve.rr_basis(Divisor.point(self.curve.affine_points()[0]))

    def test_local_expansions_multiply(self):
        place = self.curve.affine_points()[3]
        x = HermitianFunction.monomial(self.curve, 1, 0)
        y = HermitianFunction.monomial(self.curve, 0, 1)
        ex, ey = x.local_expansion(place, 6), y.local_expansion(place, 6)
        self.assertEqual(ex[0], x.evaluate(place))
        self.assertEqual(int(ex[1]), 1)
        self.assertTrue(np.array_equal((x * y).local_expansion(place, 6), series_multiply(ex, ey, 6)))

    def test_fibers_partition_the_points(self):
        fibers = self.curve.fibers("x")
        self.assertEqual(len(fibers), 4)
        self.assertEqual(sorted(i for f in fibers for i in f), list(range(8)))
        with self.assertRaises(DomainError):
            self.curve.fibers("z")


class TestDescriptors(unittest.TestCase):
    def test_backend_from_descriptor(self):
        self.assertIsInstance(backend_from_descriptor("p1", {"p": 5}), ProjectiveLine)
        self.assertEqual(backend_from_descriptor("hermitian", {"p": 2, "tower": [2]}, 2).q0, 2)
        with self.assertRaises(DomainError):
            backend_from_descriptor("hermitian", {"p": 2})
        with self.assertRaises(DomainError):
            backend_from_descriptor("klein", {"p": 2})


if __name__ == "__main__":
    unittest.main()
