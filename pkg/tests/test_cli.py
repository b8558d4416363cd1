import contextlib
import io
import json
import os
import tempfile
import unittest

from agcodes.cli import EXIT_DECODE_FAIL, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main
from agcodes.core.field_arith import make_field
from agcodes.models.applications import LrcDescriptor
from agcodes.services.lrc import lrc_from_descriptor


def run(*argv):
    """Run the CLI, returning (exit code, stdout)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.code_file = os.path.join(self.tmp.name, "rs.json")
        code, _ = run("code", "build", "--family", "RS", "--p", "13", "--xs", "1,2,3,4,5,6,7,8,9,10,11,12",
                      "--k", "4", "--out", self.code_file)
        self.assertEqual(code, EXIT_OK)

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.tmp.name, name)

    def test_code_params(self):
        code, out = run("code", "params", "--code", self.code_file)
        self.assertEqual(code, EXIT_OK)
        params = json.loads(out)
        self.assertEqual((params["n"], params["k"], params["d_star"]), (12, 4, 9))

    def test_exact_distance_is_cached(self):
        cache_dir = self.path("cache")
        code, out = run("--cache-dir", cache_dir, "--jobs", "2", "code", "params", "--code", self.code_file,
                        "--exact")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["exact_distance"], 9)
        self.assertEqual(len(os.listdir(cache_dir)), 1)

    def test_encode_then_decode(self):
        code, out = run("encode", "--code", self.code_file, "--message", "1234")
        self.assertEqual(code, EXIT_OK)
        codeword = out.strip()
        received = ("0" if codeword[3] != "0" else "1").join([codeword[:3], codeword[4:]])
        code, out = run("decode", "ecp", "--code", self.code_file, "--word", received)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["codeword"], codeword)

    def test_decoder_failure_exit_code(self):
        code, out = run("decode", "erasure", "--code", self.code_file, "--word", "?" * 9 + "000")
        self.assertEqual(code, EXIT_DECODE_FAIL)
        self.assertEqual(json.loads(out)["status"], "FAIL")

    def test_library_errors_exit_code(self):
        code, _ = run("code", "build", "--family", "CL", "--p", "13")
        self.assertEqual(code, EXIT_DOMAIN)
        code, _ = run("code", "params", "--code", self.path("missing.json"))
        self.assertEqual(code, EXIT_DOMAIN)

    def test_usage_exit_code(self):
        self.assertEqual(run()[0], EXIT_USAGE)
        self.assertEqual(run("code")[0], EXIT_USAGE)
        self.assertEqual(run("bounds", "table", "--q", "nine", "--delta", "0.25")[0], EXIT_USAGE)
        self.assertEqual(run("cc-mult", "mul", "--x", "1", "--y", "2")[0], EXIT_USAGE)

    def test_bounds_table(self):
        code, out = run("bounds", "table", "--q", "49", "--delta", "1/4")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "bound,value,note")
        self.assertIn("TVZ,7/12,", lines)
        code, out = run("bounds", "order", "--q0", "2", "--m", "5")
        self.assertEqual(json.loads(out)["d_ord"], 5)

    def test_tvz_gv_csv(self):
        code, out = run("bounds", "tvz-gv", "--q", "64", "--grid", "20")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "delta,gv,tvz")
        self.assertEqual(len(lines), 20)
        self.assertEqual(len(lines[1].split(",")), 3)

    def test_list_decoding_beyond_half_distance(self):
        _, out = run("encode", "--code", self.code_file, "--message", "1234")
        codeword = out.strip()
        received = "".join(f"{(int(c, 16) + 1) % 13:x}" for c in codeword[:5]) + codeword[5:]
        code, out = run("decode", "gs", "--code", self.code_file, "--word", received, "--t", "5")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)
        self.assertEqual(result["status"], "OK")
        self.assertIn(codeword, result["codewords"])

    def test_same_seed_gives_identical_output(self):
        outputs = []
        for run_id in ("a", "b"):
            public, secret = self.path(f"pub_{run_id}.json"), self.path(f"sec_{run_id}.json")
            _, keys = run("mceliece", "keygen", "--m", "4", "--n", "12", "--deg-f", "2", "--seed", "3",
                          "--public", public, "--secret", secret)
            _, cipher = run("mceliece", "enc", "--public", public, "--message", "1" * json.loads(keys)["k"],
                            "--seed", "9")
            _, table = run("bounds", "tvz-gv", "--q", "49", "--grid", "30")
            with open(public, "rb") as file:
                outputs.append((keys, cipher, table, file.read()))
        self.assertEqual(outputs[0], outputs[1])

    def test_lrc_build_and_repair(self):
        lrc_file = self.path("lrc.json")
        code, out = run("lrc", "build", "--construction", "tamo-barg", "--p", "13", "--size", "4", "--k", "6",
                        "--out", lrc_file)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["designed_distance"], 6)
        with open(lrc_file) as file:
            lrc = lrc_from_descriptor(LrcDescriptor.parse_obj(json.load(file)))
        gf13 = make_field(13)
        word = gf13.encode_hex(lrc.code.encode(gf13.from_index([6, 5, 4, 3, 2, 1])))
        code, out = run("lrc", "repair", "--lrc", lrc_file, "--word", "?" + word[1:])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)[0]["value"], word[0])

    def test_mceliece_files(self):
        public, secret = self.path("pub.json"), self.path("sec.json")
        code, out = run("mceliece", "keygen", "--m", "4", "--n", "12", "--deg-f", "2", "--seed", "7",
                        "--public", public, "--secret", secret)
        self.assertEqual(code, EXIT_OK)
        message = "10" * (json.loads(out)["k"] // 2) + "1" * (json.loads(out)["k"] % 2)
        code, out = run("mceliece", "enc", "--public", public, "--message", message, "--seed", "1")
        self.assertEqual(code, EXIT_OK)
        code, out = run("mceliece", "dec", "--public", public, "--secret", secret, "--ciphertext", out.strip())
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["message"], message)

    def test_bilinear_multiplication(self):
        algorithm = self.path("cc.json")
        self.assertEqual(run("cc-mult", "build", "--q", "7", "--k", "3", "--out", algorithm)[0], EXIT_OK)
        code, out = run("cc-mult", "mul", "--algorithm", algorithm, "--x", "17", "--y", "250")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(out)["agrees"])

    def test_selftest_subset(self):
        code, out = run("selftest", "--only", "grs-mds", "tvz-gv")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertTrue(report["passed"])
        self.assertEqual([c["name"] for c in report["checks"]], ["grs-mds", "tvz-gv"])
        self.assertFalse(report["full"])

    def test_selftest_full_sizes(self):
        code, out = run("selftest", "--only", "frameproof", "duality", "--full")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertTrue(report["full"])
        self.assertEqual([c["name"] for c in report["checks"]], ["duality", "frameproof"])


if __name__ == "__main__":
    unittest.main()
