import unittest
from fractions import Fraction

from agcodes.core.bounds import (
    AsymptoticKind,
    EllOracle,
    FloorKind,
    SemigroupOracle,
    asymptotic_bound,
    floor_bound,
    gopalan_bound,
    gv_bound,
    one_point_order_bound,
    product_singleton_bound,
    singleton_bound,
    tvz_beats_gv_interval,
    tvz_gv_table,
)
from agcodes.core.curves import HermitianCurve
from agcodes.core.errors import BoundRefusedError, CapabilityError, DomainError
from agcodes.services.selftest import HERMITIAN2_ORDER_BOUND, SUZUKI_G, suzuki_floor_values, suzuki_oracle


class TestFiniteLengthBounds(unittest.TestCase):
    def test_singleton(self):
        self.assertEqual(singleton_bound(12, 4), 9)
        with self.assertRaises(DomainError):
            singleton_bound(4, 5)

    def test_locality(self):
        self.assertEqual(gopalan_bound(12, 6, 3), 6)
        self.assertEqual(gopalan_bound(24, 6, 2), 17)
        with self.assertRaises(DomainError):
            gopalan_bound(12, 2, 3)

    def test_product_singleton(self):
        # two Reed-Solomon factors of dimensions 2 and 3 on 7 points: the product has d = 4
        self.assertEqual(product_singleton_bound(7, [2, 3]), 4)
        self.assertEqual(product_singleton_bound(7, [4, 4]), 1)
        self.assertEqual(product_singleton_bound(6, [3, 3, 3]), 2)
        with self.assertRaises(DomainError):
            product_singleton_bound(7, [3])
        with self.assertRaises(DomainError):
            product_singleton_bound(7, [0, 3])


class TestAsymptoticBounds(unittest.TestCase):
    def test_gv(self):
        self.assertAlmostEqual(gv_bound(2, 0.11), 0.5, places=2)
        with self.assertRaises(DomainError):
            gv_bound(2, 0.5)

    def test_exact_formulas(self):
        self.assertEqual(asymptotic_bound("TVZ", q=49, delta=Fraction(1, 4)), Fraction(7, 12))
        self.assertEqual(asymptotic_bound(AsymptoticKind.DV, q=49), 6)
        self.assertEqual(asymptotic_bound(AsymptoticKind.HASSE_WEIL, q=49), 14)
        self.assertEqual(asymptotic_bound(AsymptoticKind.BBGS, p=2, m=1), Fraction(3, 2))
        self.assertEqual(asymptotic_bound(AsymptoticKind.HR2_FRAMEPROOF, q=49), Fraction(5, 12))
        self.assertAlmostEqual(asymptotic_bound(AsymptoticKind.SERRE, q=8), 3 / 96)

    def test_domain_refusals(self):
        with self.assertRaises(DomainError):
            asymptotic_bound("TVZ", q=8, delta=Fraction(1, 4))
        with self.assertRaises(DomainError):
            asymptotic_bound(AsymptoticKind.IHARA, q=50)
        with self.assertRaises(DomainError):
            asymptotic_bound(AsymptoticKind.HR2_FRAMEPROOF, q=9)
        with self.assertRaises(DomainError):
            asymptotic_bound(AsymptoticKind.XING_FRAMEPROOF, q=49, s=7)
        with self.assertRaises(DomainError):
            asymptotic_bound(AsymptoticKind.BBGS, p=4, m=1)

    def test_ktw_keeps_both_window_readings(self):
        line = asymptotic_bound(AsymptoticKind.KTW, q=3, ell=4, delta=Fraction(0), m=2)
        self.assertTrue(line.flagged)
        self.assertEqual(line.rate, Fraction(1, 3))
        self.assertEqual(line.window_low, Fraction(1, 8))
        self.assertEqual(line.window_high, Fraction(1, 8))
        self.assertEqual(line.window_high_literal, Fraction(1, 2))
        with self.assertRaises(DomainError):
            asymptotic_bound(AsymptoticKind.KTW, q=3, ell=3, delta=Fraction(0))

    def test_tvz_against_gv(self):
        self.assertIsNone(tvz_beats_gv_interval(16))
        for q in (49, 64):
            low, high = tvz_beats_gv_interval(q)
            self.assertLess(0, low)
            self.assertLess(low, high)
            self.assertLess(high, 1 - 1 / q)
            mid = (low + high) / 2
            self.assertGreater(asymptotic_bound("TVZ", q=q, delta=mid), gv_bound(q, mid))

    def test_tvz_interval_on_a_coarse_grid(self):
        # the single grid point lies inside the region, so both crossovers sit off the grid
        coarse = tvz_beats_gv_interval(64, grid=2)
        fine = tvz_beats_gv_interval(64)
        self.assertLess(coarse[0], (1 - 1 / 64) / 2)
        self.assertGreater(coarse[1], (1 - 1 / 64) / 2)
        self.assertAlmostEqual(coarse[0], fine[0], places=9)
        self.assertAlmostEqual(coarse[1], fine[1], places=9)

    def test_tvz_gv_table(self):
        rows = tvz_gv_table(49, grid=10)
        self.assertEqual(len(rows), 9)
        self.assertEqual([r[0] for r in rows], sorted(r[0] for r in rows))


class TestSemigroups(unittest.TestCase):
    def test_gaps_and_genus(self):
        h = SemigroupOracle.generated([2, 3])
        self.assertEqual(h.gaps(), [1])
        self.assertEqual(h.conductor, 2)
        suzuki_like = SemigroupOracle.generated([4, 5])
        self.assertEqual(suzuki_like.gaps(), [1, 2, 3, 6, 7, 11])
        self.assertEqual(suzuki_like.genus, 6)

    def test_shifted_semigroup(self):
        shifted = SemigroupOracle.generated([2, 3]).shifted(3)
        self.assertEqual(shifted.minimum, -3)
        self.assertTrue(shifted.contains(-3))
        self.assertFalse(shifted.contains(-2))
        self.assertEqual(shifted.conductor, -1)

    def test_rejects_common_factor(self):
        with self.assertRaises(DomainError):
            SemigroupOracle.generated([2, 4])

    def test_hermitian_order_bound(self):
        curve = HermitianCurve(2)
        reports = [one_point_order_bound(curve, m, curve.n_affine) for m in range(1, 8)]
        self.assertEqual([r.d_ord for r in reports], HERMITIAN2_ORDER_BOUND)
        self.assertTrue(all(r.certified for r in reports))
        self.assertTrue(any(r.d_ord > r.d_gop for r in reports))


class TestFloorBounds(unittest.TestCase):
    def setUp(self):
        self.oracle = suzuki_oracle()
        self.g = self.oracle.divisor(SUZUKI_G)

    def test_suzuki_floors(self):
        self.assertEqual(suzuki_floor_values(), {"LM": 5, "GST": 6, "ABZ": 6})

    def test_floors_beat_goppa(self):
        report = floor_bound(FloorKind.LM, self.oracle, self.g, a=self.oracle.divisor("16P"),
                             b=self.oracle.divisor("5P+4Q"), z=self.oracle.divisor("P+2Q"))
        self.assertEqual(report.d_gop, 2)
        self.assertTrue(report.accepted)
        self.assertTrue(report.queries)

    def test_failed_hypothesis_refuses(self):
        with self.assertRaises(BoundRefusedError) as ctx:
            floor_bound(FloorKind.LM, self.oracle, self.oracle.divisor("22P+7Q"), a=self.oracle.divisor("16P"),
                        b=self.oracle.divisor("5P+4Q"), z=self.oracle.divisor("P+2Q"))
        self.assertFalse(ctx.exception.report.accepted)

    def test_table_is_checked_against_riemann_roch(self):
        with self.assertRaises(DomainError):
            EllOracle.table(1, {"P": 5})
        with self.assertRaises(CapabilityError):
            EllOracle.table(14, {})(self.oracle.divisor("5P"))

    def test_mmp_floor_on_hermitian(self):
        curve = HermitianCurve(2)
        oracle = EllOracle.computed(curve)
        report = floor_bound(FloorKind.MMP, oracle, curve.one_point(1), n=8, backend=curve)
        self.assertEqual((report.value, report.d_gop), (8, 7))
        with self.assertRaises(DomainError):
            floor_bound(FloorKind.MMP, oracle, curve.one_point(1))


if __name__ == "__main__":
    unittest.main()
