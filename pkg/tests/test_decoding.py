import unittest

import numpy as np

from agcodes.core.ag_codes import cl_code, comega_code, goppa_code, rs_code
from agcodes.core.curves import HermitianCurve
from agcodes.core.decoding import (
    DecodeStatus,
    basic_decode,
    build_ecp,
    ecp_decode,
    erasure_decode,
    gs_list_decode,
    gs_params,
    gs_radius,
    plant_errors,
    trial_harness,
    unique_radius,
)
from agcodes.core.errors import AmbiguousSolutionError, AssertionFailure, DomainError, NoSolutionError
from agcodes.core.field_arith import irreducible_poly, make_field
from agcodes.core.linear_codes import weight


class TestErasures(unittest.TestCase):
    def setUp(self):
        self.gf13 = make_field(13)
        self.rs = rs_code(self.gf13, list(range(1, 13)), 4)
        self.rng = np.random.default_rng(3)

    def test_recovers_up_to_n_minus_k_erasures(self):
        sent, received = plant_errors(self.rs.code, 8, self.rng)
        erased = [i for i in range(12) if received[i] != sent[i]]
        error = erasure_decode(self.rs.code, received, erased)
        self.assertTrue(np.array_equal(received - error, sent))

    def test_too_many_erasures_are_ambiguous(self):
        sent, _ = plant_errors(self.rs.code, 0, self.rng)
        with self.assertRaises(AmbiguousSolutionError):
            erasure_decode(self.rs.code, sent, range(9))

    def test_unexplained_word(self):
        _, received = plant_errors(self.rs.code, 3, self.rng)
        with self.assertRaises(NoSolutionError):
            erasure_decode(self.rs.code, received, [])


class TestUniqueDecoding(unittest.TestCase):
    def setUp(self):
        self.gf13 = make_field(13)
        self.rs = rs_code(self.gf13, list(range(1, 13)), 4)
        curve = HermitianCurve(3)
        self.hermitian = cl_code(curve, curve.affine_points(), curve.one_point(12))

    def test_radii(self):
        self.assertEqual(unique_radius(self.rs).basic, 4)
        radius = unique_radius(self.hermitian)
        self.assertEqual((radius.half_distance, radius.basic), (7, 5))

    def test_basic_algorithm(self):
        report = trial_harness(lambda y: basic_decode(self.rs, y, 4), self.rs.code, 4, 10, seed=1)
        self.assertEqual(report.successes, 10)
        report = trial_harness(lambda y: basic_decode(self.hermitian, y), self.hermitian.code, 5, 5, seed=2)
        self.assertEqual(report.successes, 5)

    def test_basic_algorithm_refuses_large_radius(self):
        _, received = plant_errors(self.rs.code, 1, np.random.default_rng(0))
        with self.assertRaises(DomainError):
            basic_decode(self.rs, received, 5)

    def test_error_correcting_pair(self):
        pair = build_ecp(self.rs, 4)
        self.assertEqual(pair.t, 4)
        report = trial_harness(lambda y: ecp_decode(pair, y), self.rs.code, 4, 10, seed=5, jobs=2)
        self.assertEqual(report.successes, 10)
        self.assertEqual(report.miscorrections, 0)

    def test_one_error_too_many_never_yields_a_far_codeword(self):
        pair = build_ecp(self.rs, 4)
        rng = np.random.default_rng(7)
        for _ in range(30):
            _, received = plant_errors(self.rs.code, 5, rng)
            for result in (basic_decode(self.rs, received, 4), ecp_decode(pair, received)):
                if result.ok:
                    self.assertTrue(self.rs.code.contains(result.codeword))
                    self.assertLessEqual(weight(result.codeword - received), 4)

    def test_pair_conditions_are_enforced(self):
        with self.assertRaises(AssertionFailure):
            build_ecp(self.rs, 5)
        with self.assertRaises(DomainError):
            build_ecp(self.rs, 0)

    def test_residue_code_pair(self):
        curve = HermitianCurve(2)
        ag = comega_code(curve, curve.affine_points(), curve.one_point(6))
        pair = build_ecp(ag, 1)
        sent, received = plant_errors(ag.code, 1, np.random.default_rng(4))
        result = ecp_decode(pair, received)
        self.assertEqual(result.status, DecodeStatus.OK)
        self.assertTrue(np.array_equal(result.codeword, sent))

    def test_goppa_through_its_supercode(self):
        gf16, gf2 = make_field(2, [4]), make_field(2)
        goppa = goppa_code(gf16, gf16.from_index(list(range(16))), irreducible_poly(gf16, 2), gf2)
        pair = build_ecp(goppa.parent, 1)
        sent, received = plant_errors(goppa.code, 1, np.random.default_rng(6))
        result = ecp_decode(pair, received, base=gf2)
        self.assertTrue(result.ok)
        self.assertTrue(np.array_equal(result.codeword, sent))
        self.assertEqual(weight(result.error), 1)


class TestListDecoding(unittest.TestCase):
    def test_parameter_search(self):
        params = gs_params(16, 3, 0, 7)
        self.assertEqual((params.s, params.ell, params.degree), (1, 2, 8))
        self.assertGreaterEqual(params.radius, 7)
        self.assertEqual(gs_radius(16, 3, 0, 1, 2), params.radius)
        with self.assertRaises(DomainError):
            gs_params(16, 3, 0, 16)

    def test_reed_solomon_beyond_half_distance(self):
        gf16 = make_field(2, [4])
        ag = rs_code(gf16, list(range(16)), 4)
        sent, received = plant_errors(ag.code, 7, np.random.default_rng(11))
        listed = gs_list_decode(ag, received, 7)
        self.assertTrue(any(np.array_equal(word, sent) for word in listed.codewords))
        for word in listed.codewords:
            self.assertLessEqual(weight(word - received), 7)
        self.assertGreater(listed.unknowns, listed.equations)

    def test_hermitian_with_multiplicity(self):
        curve = HermitianCurve(2)
        ag = cl_code(curve, curve.affine_points(), curve.one_point(3))
        sent, received = plant_errors(ag.code, 2, np.random.default_rng(12))
        listed = gs_list_decode(ag, received, 2)
        self.assertEqual((listed.params.s, listed.params.ell), (2, 3))
        self.assertTrue(any(np.array_equal(word, sent) for word in listed.codewords))
        self.assertTrue(listed.notes)

    def test_list_is_the_whole_hamming_sphere(self):
        gf11 = make_field(11)
        ag = rs_code(gf11, list(range(1, 11)), 3)
        words = ag.code.codewords()
        rng = np.random.default_rng(13)
        for i in range(6):
            received = plant_errors(ag.code, 5, rng)[1] if i % 2 == 0 else gf11.random_elements(rng, 10)
            near = np.count_nonzero((words - received).view(np.ndarray), axis=1) <= 5
            expected = {tuple(row) for row in words[near].view(np.ndarray).tolist()}
            listed = gs_list_decode(ag, received, 5)
            self.assertEqual({tuple(w.view(np.ndarray).tolist()) for w in listed.codewords}, expected)

    def test_equidistant_word_lists_both_codewords(self):
        gf11 = make_field(11)
        ag = rs_code(gf11, list(range(1, 11)), 3)
        x = gf11.from_index(list(range(1, 11)))
        # (x - 1)(x - 2) has weight 8; keep half of its support to sit at distance 4 from it and from 0
        other = x ** 2 + gf11.from_index(8) * x + gf11.from_index(2)
        self.assertTrue(ag.code.contains(other))
        received = other.copy()
        received[6:] = 0
        self.assertEqual((weight(received), weight(received - other)), (4, 4))
        listed = gs_list_decode(ag, received, 5)
        self.assertEqual(len(listed.codewords), 2)
        self.assertTrue(any(np.array_equal(word, other) for word in listed.codewords))
        self.assertTrue(any(weight(word) == 0 for word in listed.codewords))

    def test_smallest_parameters_match_the_basic_algorithm(self):
        gf13 = make_field(13)
        ag = rs_code(gf13, list(range(1, 13)), 4)
        params = gs_params(12, 3, 0, 4)
        self.assertEqual((params.s, params.ell), (1, 1))
        rng = np.random.default_rng(14)
        for errors in (0, 2, 4, 5, 6, 5, 4, 6):
            _, received = plant_errors(ag.code, errors, rng)
            unique = basic_decode(ag, received, 4)
            listed = gs_list_decode(ag, received, 4, params).codewords
            if unique.ok:
                self.assertEqual(len(listed), 1)
                self.assertTrue(np.array_equal(listed[0], unique.codeword))
            else:
                self.assertEqual(listed, [])


if __name__ == "__main__":
    unittest.main()
