import unittest
from fractions import Fraction

import numpy as np

from agcodes.core.errors import DomainError, RecoverySetDamagedError
from agcodes.core.field_arith import irreducible_poly, make_field
from agcodes.models.applications import LrcDescriptor
from agcodes.models.codes import CodeDescriptor, FieldDescriptor, FloorRequest, OrderRequest
from agcodes.services import bounds as bound_service
from agcodes.services import crypto
from agcodes.services.codes import (
    build_from_args,
    code_descriptor,
    code_from_descriptor,
    code_params,
    decode_word,
    encode_message,
)
from agcodes.services.lrc import lrc_from_descriptor, lrc_summary, repair_word
from agcodes.services.selftest import SUZUKI_TABLE


def _corrupt(word: str, positions) -> str:
    symbols = list(word)
    for i in positions:
        symbols[i] = "0" if symbols[i] != "0" else "1"
    return "".join(symbols)


class TestCodeService(unittest.TestCase):
    def setUp(self):
        points = [[x] for x in range(1, 13)]
        self.rs, self.desc = build_from_args("RS", "p1", 13, [], None, None, 4, None, None, points)

    def test_descriptor_rebuilds_the_code(self):
        self.assertEqual((self.desc.n, self.desc.dimension, self.desc.designed_distance), (12, 4, 9))
        rebuilt = code_from_descriptor(self.desc)
        self.assertEqual(rebuilt.code, self.rs.code)
        self.assertEqual(self.desc.digest, rebuilt.code.digest())

    def test_grs_multipliers_survive_the_descriptor(self):
        desc = CodeDescriptor(family="GRS", gf=FieldDescriptor(p=7), points=[[1], [2], [3], [4], [5]], k=3,
                              multipliers=[1, 2, 3, 4, 5])
        ag = code_from_descriptor(desc)
        written = code_descriptor(ag)
        self.assertEqual(code_from_descriptor(written).code, ag.code)

    def test_hermitian_code(self):
        ag, desc = build_from_args("CL", "hermitian", None, [], 2, "3Pinf", None, None, None)
        self.assertEqual((desc.gf.p, desc.gf.tower), (2, [2]))
        self.assertEqual(desc.divisor, "3Pinf")
        params = code_params(ag, exact=True)
        self.assertEqual((params.n, params.k, params.genus), (8, 3, 1))
        self.assertEqual(params.exact_distance, 5)

    def test_goppa_descriptor(self):
        gf16 = make_field(2, [4])
        f = irreducible_poly(gf16, 2)
        coeffs = np.atleast_1d(gf16.to_index(f.coeffs[::-1])).tolist()
        ag, desc = build_from_args("Goppa", "p1", 2, [4], None, None, None, coeffs, (2, []))
        self.assertEqual(desc.goppa_poly, coeffs)
        self.assertEqual(code_from_descriptor(desc).code, ag.code)

    def test_missing_inputs(self):
        with self.assertRaises(DomainError):
            build_from_args("CL", "p1", 13, [], None, None, None, None, None)
        with self.assertRaises(DomainError):
            build_from_args("RS", "p1", 13, [], None, None, None, None, None)
        with self.assertRaises(DomainError):
            build_from_args("CL", "hermitian", None, [], 6, "3Pinf", None, None, None)

    def test_encode_and_decode(self):
        codeword = encode_message(self.rs, "1234")
        self.assertEqual(len(codeword), 12)
        for method in ("basic", "ecp"):
            result = decode_word(self.rs, method, _corrupt(codeword, [0, 5, 9]))
            self.assertEqual(result.status, "OK")
            self.assertEqual(result.codeword, codeword)
        listed = decode_word(self.rs, "gs", _corrupt(codeword, [1, 2, 3, 4]), t=4)
        self.assertIn(codeword, listed.codewords)

    def test_erasures(self):
        codeword = encode_message(self.rs, "1234")
        result = decode_word(self.rs, "erasure", "??" + codeword[2:6] + "???" + codeword[9:])
        self.assertEqual(result.codeword, codeword)
        result = decode_word(self.rs, "erasure", "?" * 9 + codeword[9:])
        self.assertEqual(result.status, "FAIL")

    def test_decoder_input_checks(self):
        codeword = encode_message(self.rs, "1234")
        with self.assertRaises(DomainError):
            decode_word(self.rs, "viterbi", codeword)
        with self.assertRaises(DomainError):
            decode_word(self.rs, "basic", "?" + codeword[1:])
        with self.assertRaises(DomainError):
            decode_word(self.rs, "gs", codeword)
        with self.assertRaises(DomainError):
            encode_message(self.rs, "12?4")


class TestBoundService(unittest.TestCase):
    def test_table_lists_refusals(self):
        rows = bound_service.bounds_table(9, Fraction(1, 4))
        by_name = {row["bound"]: row for row in rows}
        self.assertEqual(by_name["TVZ"]["value"], "1/4")
        self.assertTrue(any(row["note"] for row in rows))
        csv_text = bound_service.table_csv(rows)
        self.assertTrue(csv_text.startswith("bound,value,note\n"))

    def test_tvz_gv_csv(self):
        lines = bound_service.tvz_gv_csv(49, grid=10).splitlines()
        self.assertEqual(lines[0], "delta,gv,tvz")
        self.assertEqual(len(bound_service.tvz_gv_rows(49, grid=10)), len(lines) - 1)

    def test_floor_and_order_reports(self):
        report = bound_service.floor_report(FloorRequest(kind="ABZ", genus=14, table=SUZUKI_TABLE, g="22P+6Q",
                                                         a="14P", b="8P", z="6Q"))
        self.assertEqual(report.value, 6)
        self.assertTrue(report.accepted)
        with self.assertRaises(DomainError):
            bound_service.floor_report(FloorRequest(kind="MMP", genus=14, g="22P+6Q"))
        order = bound_service.order_report(OrderRequest(q0=2, m=3))
        self.assertEqual(order.d_ord, 3)
        self.assertTrue(order.certified)


class TestLrcService(unittest.TestCase):
    def setUp(self):
        self.desc = LrcDescriptor(construction="tamo-barg", gf=FieldDescriptor(p=13), size=4, k=6)
        self.lrc = lrc_from_descriptor(self.desc)
        gf13 = self.lrc.field
        self.word = gf13.encode_hex(self.lrc.code.encode(gf13.from_index([1, 2, 3, 4, 5, 6])))

    def test_summary(self):
        summary = lrc_summary(self.lrc)
        self.assertEqual((summary.n, summary.k, summary.designed_distance), (12, 6, 6))
        self.assertEqual(summary.locality, [3])

    def test_repair(self):
        erased = self.word[:4] + "?" + self.word[5:]
        results = repair_word(self.lrc, erased)
        self.assertEqual([r.position for r in results], [4])
        self.assertEqual(results[0].value, self.word[4])
        self.assertEqual(results[0].downloads, 3)

    def test_repair_needs_an_intact_recovery_set(self):
        part = self.lrc.structure.recovery_set(4)
        erased = "".join("?" if i in part else c for i, c in enumerate(self.word))
        with self.assertRaises(RecoverySetDamagedError):
            repair_word(self.lrc, erased)

    def test_descriptor_checks(self):
        with self.assertRaises(DomainError):
            lrc_from_descriptor(LrcDescriptor(construction="btv", q0=3))
        with self.assertRaises(DomainError):
            lrc_from_descriptor(LrcDescriptor(construction="pyramid"))
        with self.assertRaises(DomainError):
            repair_word(self.lrc, self.word)


class TestCryptoService(unittest.TestCase):
    def test_mceliece_through_models(self):
        keypair = crypto.keygen(FieldDescriptor(p=2), 4, 12, 2, seed=0)
        self.assertEqual(keypair.public.t, 1)
        message = "1" * keypair.public.k
        cipher = crypto.encrypt(keypair.public, message, seed=3)
        result = crypto.decrypt(keypair, cipher)
        self.assertEqual(result.status, "OK")
        self.assertEqual(result.message, message)

    def test_bilinear_multiply(self):
        result = crypto.multiply(7, 3, 5, 100)
        self.assertTrue(result.agrees)
        self.assertEqual(result.product, result.direct)
        model = crypto.bilinear_model(crypto.build_bilinear(4, 2))
        self.assertEqual((model.q, model.k, model.length), (4, 2, 3))
        self.assertEqual(len(model.alpha), 3)


if __name__ == "__main__":
    unittest.main()
