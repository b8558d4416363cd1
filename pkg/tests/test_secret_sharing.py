import unittest

import numpy as np

from agcodes.core.errors import DomainError, NoSolutionError
from agcodes.core.field_arith import make_field
from agcodes.core.secret_sharing import (
    asss_verify,
    product_reconstruct,
    shamir_privacy_count,
    shamir_reconstruct,
    shamir_scheme,
    shamir_share,
)


class TestShamir(unittest.TestCase):
    def setUp(self):
        self.gf11 = make_field(11)
        self.scheme = shamir_scheme(self.gf11, 3, 5)
        self.rng = np.random.default_rng(0)

    def test_any_t_shares_reconstruct(self):
        shares = shamir_share(self.scheme, 7, self.rng)
        for players in ([0, 1, 2], [1, 3, 4], [0, 2, 3, 4]):
            secret = shamir_reconstruct(self.scheme, {i: shares[i] for i in players})
            self.assertEqual(int(self.gf11.to_index(secret)), 7)

    def test_too_few_shares(self):
        shares = shamir_share(self.scheme, 7, self.rng)
        with self.assertRaises(DomainError):
            shamir_reconstruct(self.scheme, {0: shares[0], 1: shares[1]})

    def test_inconsistent_shares(self):
        shares = shamir_share(self.scheme, 7, self.rng)
        tampered = {i: shares[i] for i in range(4)}
        tampered[2] = tampered[2] + self.gf11.from_index(1)
        with self.assertRaises(NoSolutionError):
            shamir_reconstruct(self.scheme, tampered)

    def test_products_of_shares_reconstruct_the_product(self):
        a = shamir_share(self.scheme, 3, self.rng)
        b = shamir_share(self.scheme, 5, self.rng)
        product = product_reconstruct(self.scheme, {i: a[i] * b[i] for i in range(5)})
        self.assertEqual(int(self.gf11.to_index(product)), 4)

    def test_coalitions_below_threshold_learn_nothing(self):
        shares = shamir_share(self.scheme, 9, self.rng)
        counts = shamir_privacy_count(self.scheme, {0: shares[0], 4: shares[4]})
        self.assertEqual(set(counts.values()), {1})

    def test_needs_more_field_elements_than_players(self):
        with self.assertRaises(DomainError):
            shamir_scheme(self.gf11, 3, 11)


class TestArithmeticSecretSharing(unittest.TestCase):
    def setUp(self):
        self.code = shamir_scheme(make_field(11), 3, 5).code

    def test_shamir_is_multiplicative(self):
        report = asss_verify(self.code, 2, 2, 5)
        self.assertTrue(report.passed)
        self.assertTrue(report.uniform)
        self.assertEqual(report.violations, [])

    def test_privacy_breaks_at_the_threshold(self):
        report = asss_verify(self.code, 3, 2, 5)
        self.assertFalse(report.disconnected)
        self.assertFalse(report.passed)

    def test_squares_need_2t_minus_1_players(self):
        report = asss_verify(self.code, 2, 2, 4)
        self.assertFalse(report.reconstructing)
        self.assertTrue(all(kind == "reconstruction" for kind, _ in report.violations))


if __name__ == "__main__":
    unittest.main()
