import unittest

from agcodes.services.selftest import (
    CHECKS,
    check_bilinear,
    check_mceliece,
    check_name,
    check_star_products,
    run_selftest,
)


class TestSelftest(unittest.TestCase):
    def test_every_check_passes(self):
        report = run_selftest()
        failed = [f"{c.name}: {c.detail}" for c in report.checks if not c.passed]
        self.assertEqual(failed, [])
        self.assertEqual(len(report.checks), len(CHECKS))
        self.assertFalse(report.full)

    def test_check_names(self):
        names = [check_name(c) for c in CHECKS]
        for name in ("goppa-bound", "duality", "star-products", "frameproof", "secret-sharing"):
            self.assertIn(name, names)

    def test_only_filter(self):
        report = run_selftest(["bilinear", "secret-sharing", "no-such-check"])
        self.assertEqual([c.name for c in report.checks], ["bilinear", "secret-sharing"])
        model = report.to_pydantic()
        self.assertTrue(model.passed)
        self.assertEqual(len(model.checks), 2)

    def test_full_sizes(self):
        self.assertIn("1000/1000 random products", check_bilinear(full=True).detail)
        self.assertIn("100/100 round-trips", check_mceliece(full=True).detail)
        self.assertIn("1000 triples", check_star_products(full=True).detail)
        self.assertTrue(run_selftest(["tvz-gv"], full=True).full)


if __name__ == "__main__":
    unittest.main()
