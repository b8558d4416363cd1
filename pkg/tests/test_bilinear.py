import unittest

import numpy as np

from agcodes.core.bilinear import cc_build, cc_multiply, cc_verify, coordinates, from_coordinates
from agcodes.core.errors import DomainError


class TestBilinearMultiplication(unittest.TestCase):
    def setUp(self):
        self.alg = cc_build(7, 3)

    def test_length_and_shape(self):
        self.assertEqual(self.alg.length, 5)
        self.assertTrue(self.alg.symmetric)
        self.assertEqual(self.alg.extension.order, 343)
        self.assertTrue(all(report.passed for report in self.alg.certificate))

    def test_agrees_with_field_multiplication(self):
        self.assertEqual(cc_verify(self.alg), [])
        rng = np.random.default_rng(0)
        xs = self.alg.extension.random_elements(rng, 20)
        ys = self.alg.extension.random_elements(rng, 20)
        for x, y in zip(xs, ys):
            self.assertEqual(cc_multiply(self.alg, x, y), x * y)

    def test_coordinates_round_trip(self):
        x = self.alg.extension.from_index(123)
        self.assertEqual(from_coordinates(self.alg, coordinates(self.alg, x)), x)

    def test_extension_of_a_non_prime_field(self):
        alg = cc_build(4, 2)
        self.assertEqual(alg.length, 3)
        self.assertEqual(cc_verify(alg), [])

    def test_trivial_extension(self):
        alg = cc_build(5, 1)
        self.assertEqual(alg.length, 1)
        self.assertEqual(cc_verify(alg), [])

    def test_refusals(self):
        with self.assertRaises(DomainError):
            cc_build(5, 4)
        with self.assertRaises(DomainError):
            cc_build(6, 2)
        with self.assertRaises(DomainError):
            cc_build(7, 0)


if __name__ == "__main__":
    unittest.main()
