import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel

from agcodes.core import config
from agcodes.core.cache import DistanceCache, load_model, save_model
from agcodes.core.decoding import DecodeStatus
from agcodes.core.errors import AGCodesError
from agcodes.models.applications import (
    BilinearModel,
    LrcDescriptor,
    McElieceKeyPairModel,
    McEliecePublicKeyModel,
    McElieceSecretKeyModel,
)
from agcodes.models.codes import CodeDescriptor, FieldDescriptor, FloorRequest, OrderRequest
from agcodes.services import bounds as bound_service
from agcodes.services import crypto
from agcodes.services.codes import DECODERS, build_from_args, code_from_descriptor, code_params, decode_word, encode_message
from agcodes.services.lrc import CONSTRUCTIONS, lrc_from_descriptor, lrc_summary, repair_word
from agcodes.services.selftest import run_selftest

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_DECODE_FAIL = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse with the sysexits usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v, 0) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def emit(model) -> None:
    if isinstance(model, BaseModel):
        data = json.loads(model.json())
    elif isinstance(model, list):
        data = [json.loads(m.json()) if isinstance(m, BaseModel) else m for m in model]
    else:
        data = model
    print(json.dumps(data, indent=2, sort_keys=True))


def write_or_emit(model: BaseModel, path: Optional[str]) -> None:
    if path:
        save_model(model, path)
    else:
        emit(model)


# ------------------------
# Subcommands
# ------------------------
def cmd_code_build(args) -> int:
    points = [[x] for x in args.xs] if args.xs is not None else None
    base = (args.base_p, args.base_tower) if args.base_p is not None else None
    _, desc = build_from_args(args.family, args.curve, args.p, args.tower, args.q0, args.divisor, args.k,
                              args.goppa_poly, base, points)
    write_or_emit(desc, args.out)
    return EXIT_OK


def cmd_code_params(args) -> int:
    ag = code_from_descriptor(load_model(CodeDescriptor, args.code))
    cache = DistanceCache(args.cache_dir) if args.cache_dir else None
    emit(code_params(ag, exact=args.exact, cache=cache, jobs=args.jobs))
    return EXIT_OK


def cmd_encode(args) -> int:
    ag = code_from_descriptor(load_model(CodeDescriptor, args.code))
    print(encode_message(ag, args.message))
    return EXIT_OK


def cmd_decode(args) -> int:
    ag = code_from_descriptor(load_model(CodeDescriptor, args.code))
    result = decode_word(ag, args.method, args.word, args.t)
    emit(result)
    return EXIT_OK if result.status == DecodeStatus.OK.value else EXIT_DECODE_FAIL


def cmd_bounds_table(args) -> int:
    rows = bound_service.bounds_table(args.q, Fraction(args.delta), p=args.p, m=args.m, ell=args.ell)
    if args.out == "json":
        emit(rows)
    else:
        sys.stdout.write(bound_service.table_csv(rows))
    return EXIT_OK


def cmd_bounds_tvz_gv(args) -> int:
    if args.out == "json":
        emit(bound_service.tvz_gv_rows(args.q, args.grid))
    else:
        sys.stdout.write(bound_service.tvz_gv_csv(args.q, args.grid))
    return EXIT_OK


def cmd_bounds_order(args) -> int:
    emit(bound_service.order_report(OrderRequest(q0=args.q0, m=args.m, split=args.split, limit=args.limit)))
    return EXIT_OK


def cmd_bounds_floor(args) -> int:
    with open(args.table, "r") as file:
        table = json.load(file)
    request = FloorRequest(kind=args.kind, genus=args.genus, table=table, places=args.places.split(","),
                           g=args.g, a=args.a, b=args.b, z=args.z, c=args.c)
    emit(bound_service.floor_report(request))
    return EXIT_OK


def cmd_lrc_build(args) -> int:
    gf = FieldDescriptor(p=args.p, tower=args.tower) if args.p is not None else None
    desc = LrcDescriptor(construction=args.construction, gf=gf, partition=args.partition, size=args.size, k=args.k,
                         q0=args.q0, deg_g=args.deg_g, s=args.s, a=args.a, b=args.b)
    summary = lrc_summary(lrc_from_descriptor(desc))
    if args.out:
        save_model(desc, args.out)
    emit(summary)
    return EXIT_OK


def cmd_lrc_repair(args) -> int:
    lrc = lrc_from_descriptor(load_model(LrcDescriptor, args.lrc))
    emit(repair_word(lrc, args.word, args.which))
    return EXIT_OK


def cmd_mceliece_keygen(args) -> int:
    keypair = crypto.keygen(FieldDescriptor(p=args.base_p, tower=args.base_tower), args.m, args.n, args.deg_f,
                            args.seed)
    save_model(keypair.public, args.public)
    save_model(keypair.secret, args.secret)
    emit(keypair.public)
    return EXIT_OK


def cmd_mceliece_enc(args) -> int:
    public = load_model(McEliecePublicKeyModel, args.public)
    print(crypto.encrypt(public, args.message, args.seed))
    return EXIT_OK


def cmd_mceliece_dec(args) -> int:
    keypair = McElieceKeyPairModel(public=load_model(McEliecePublicKeyModel, args.public),
                                   secret=load_model(McElieceSecretKeyModel, args.secret))
    result = crypto.decrypt(keypair, args.ciphertext)
    emit(result)
    return EXIT_OK if result.status == DecodeStatus.OK.value else EXIT_DECODE_FAIL


def cmd_cc_build(args) -> int:
    model = crypto.bilinear_model(crypto.build_bilinear(args.q, args.k))
    write_or_emit(model, args.out)
    return EXIT_OK


def cmd_cc_mul(args) -> int:
    if args.algorithm:
        model = load_model(BilinearModel, args.algorithm)
        q, k = model.q, model.k
    elif args.q is not None and args.k is not None:
        q, k = args.q, args.k
    else:
        raise UsageError("cc-mult mul needs --algorithm or both --q and --k")
    emit(crypto.multiply(q, k, args.x, args.y))
    return EXIT_OK


def cmd_selftest(args) -> int:
    report = run_selftest(args.only, full=args.full)
    emit(report.to_pydantic())
    return EXIT_OK if report.passed else EXIT_DOMAIN


# ------------------------
# Parser
# ------------------------
def _field_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--p", type=int, required=required, help="Field characteristic")
    parser.add_argument("--tower", type=int_list, default=[], help="Extension degrees, e.g. 2,3 for GF(p^6)")


def build_parser() -> Parser:
    parser = Parser(prog="agcodes", description="Exact-arithmetic algebraic-geometry codes.")
    parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS, help="Threads for brute-force enumeration")
    parser.add_argument("--cache-dir", type=str, default=None, help="Directory of cached exact distances")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at INFO level on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    code = commands.add_parser("code", help="Build codes and report their parameters")
    code_commands = code.add_subparsers(dest="action", required=True)
    build = code_commands.add_parser("build", help="Build a code and write its descriptor")
    build.add_argument("--family", required=True, choices=["CL", "COmega", "GRS", "RS", "Goppa"])
    build.add_argument("--curve", default="p1", choices=["p1", "hermitian"])
    _field_flags(build, required=False)
    build.add_argument("--q0", type=int, help="Hermitian parameter; the field is GF(q0^2)")
    build.add_argument("--xs", type=int_list, help="Evaluation points on P1 as canonical indices (default: all)")
    build.add_argument("--divisor", help="One-point divisor, e.g. 12Pinf")
    build.add_argument("--k", type=int, help="Dimension of a GRS/RS code")
    build.add_argument("--goppa-poly", type=int_list, help="Goppa polynomial coefficients, constant term first")
    build.add_argument("--base-p", type=int, help="Characteristic of the Goppa subfield")
    build.add_argument("--base-tower", type=int_list, default=[], help="Tower of the Goppa subfield")
    build.add_argument("--out", help="Descriptor file (default: stdout)")
    build.set_defaults(handler=cmd_code_build)
    params = code_commands.add_parser("params", help="Designed (and optionally exact) parameters")
    params.add_argument("--code", required=True, help="Descriptor file")
    params.add_argument("--exact", action="store_true", help="Brute-force the minimum distance")
    params.set_defaults(handler=cmd_code_params)

    encode = commands.add_parser("encode", help="Encode a hex message")
    encode.add_argument("--code", required=True)
    encode.add_argument("--message", required=True)
    encode.set_defaults(handler=cmd_encode)

    decode = commands.add_parser("decode", help="Decode a hex word")
    decode.add_argument("method", choices=DECODERS)
    decode.add_argument("--code", required=True)
    decode.add_argument("--word", required=True, help="Hex word; '?' runs mark erasures")
    decode.add_argument("--t", type=int, help="Decoding radius")
    decode.set_defaults(handler=cmd_decode)

    bounds = commands.add_parser("bounds", help="Bound tables and evaluators")
    bound_commands = bounds.add_subparsers(dest="action", required=True)
    table = bound_commands.add_parser("table", help="Asymptotic bounds at (q, delta)")
    table.add_argument("--q", type=int, required=True)
    table.add_argument("--delta", type=str, required=True, help="Relative distance, e.g. 1/4 or 0.25")
    table.add_argument("--p", type=int, help="BBGS characteristic")
    table.add_argument("--m", type=int, help="BBGS exponent q = p^(2m+1); literal KTW window symbol")
    table.add_argument("--ell", type=int, help="KTW extension degree")
    table.add_argument("--out", choices=["csv", "json"], default="csv")
    table.set_defaults(handler=cmd_bounds_table)
    tvz = bound_commands.add_parser("tvz-gv", help="TVZ and GV rates on a delta grid")
    tvz.add_argument("--q", type=int, required=True)
    tvz.add_argument("--grid", type=int, default=200)
    tvz.add_argument("--out", choices=["csv", "json"], default="csv")
    tvz.set_defaults(handler=cmd_bounds_tvz_gv)
    order = bound_commands.add_parser("order", help="Order bound for Hermitian C_Omega(m Pinf)")
    order.add_argument("--q0", type=int, required=True)
    order.add_argument("--m", type=int, required=True)
    order.add_argument("--split", type=int, default=0)
    order.add_argument("--limit", type=int, default=256)
    order.set_defaults(handler=cmd_bounds_order)
    floor = bound_commands.add_parser("floor", help="Floor bounds from a table of l(D) values")
    floor.add_argument("--kind", required=True, choices=["LM", "GST", "ABZ"])
    floor.add_argument("--genus", type=int, required=True)
    floor.add_argument("--table", required=True, help="JSON file mapping divisor text to l(D)")
    floor.add_argument("--places", default="P,Q")
    floor.add_argument("--g", required=True)
    for name in ("a", "b", "z", "c"):
        floor.add_argument(f"--{name}")
    floor.set_defaults(handler=cmd_bounds_floor)

    lrc = commands.add_parser("lrc", help="Locally recoverable codes")
    lrc_commands = lrc.add_subparsers(dest="action", required=True)
    lrc_build = lrc_commands.add_parser("build", help="Build and verify an LRC")
    lrc_build.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    _field_flags(lrc_build, required=False)
    lrc_build.add_argument("--partition", default="multiplicative", choices=["multiplicative", "additive"])
    lrc_build.add_argument("--size", type=int, help="Recovery set size l + 1")
    lrc_build.add_argument("--k", type=int)
    lrc_build.add_argument("--q0", type=int)
    lrc_build.add_argument("--deg-g", type=int)
    lrc_build.add_argument("--s", type=int)
    lrc_build.add_argument("--a", type=int)
    lrc_build.add_argument("--b", type=int)
    lrc_build.add_argument("--out", help="Descriptor file for later repairs")
    lrc_build.set_defaults(handler=cmd_lrc_build)
    repair = lrc_commands.add_parser("repair", help="Repair erased symbols locally")
    repair.add_argument("--lrc", required=True, help="Descriptor file")
    repair.add_argument("--word", required=True, help="Hex codeword with '?' erasures")
    repair.add_argument("--which", type=int, default=0, help="Preferred partition")
    repair.set_defaults(handler=cmd_lrc_repair)

    mceliece = commands.add_parser("mceliece", help="Toy McEliece with Goppa codes")
    mc_commands = mceliece.add_subparsers(dest="action", required=True)
    keygen = mc_commands.add_parser("keygen")
    keygen.add_argument("--base-p", type=int, default=2)
    keygen.add_argument("--base-tower", type=int_list, default=[])
    keygen.add_argument("--m", type=int, required=True)
    keygen.add_argument("--n", type=int, required=True)
    keygen.add_argument("--deg-f", type=int, required=True)
    keygen.add_argument("--seed", type=int, required=True)
    keygen.add_argument("--public", required=True, help="Public key file")
    keygen.add_argument("--secret", required=True, help="Secret key file")
    keygen.set_defaults(handler=cmd_mceliece_keygen)
    enc = mc_commands.add_parser("enc")
    enc.add_argument("--public", required=True)
    enc.add_argument("--message", required=True)
    enc.add_argument("--seed", type=int, required=True)
    enc.set_defaults(handler=cmd_mceliece_enc)
    dec = mc_commands.add_parser("dec")
    dec.add_argument("--public", required=True)
    dec.add_argument("--secret", required=True)
    dec.add_argument("--ciphertext", required=True)
    dec.set_defaults(handler=cmd_mceliece_dec)

    cc = commands.add_parser("cc-mult", help="Bilinear multiplication in GF(q^k)")
    cc_commands = cc.add_subparsers(dest="action", required=True)
    cc_build = cc_commands.add_parser("build")
    cc_build.add_argument("--q", type=int, required=True)
    cc_build.add_argument("--k", type=int, required=True)
    cc_build.add_argument("--out")
    cc_build.set_defaults(handler=cmd_cc_build)
    cc_mul = cc_commands.add_parser("mul")
    cc_mul.add_argument("--algorithm", help="File written by cc-mult build")
    cc_mul.add_argument("--q", type=int)
    cc_mul.add_argument("--k", type=int)
    cc_mul.add_argument("--x", type=int, required=True, help="Canonical index in GF(q^k)")
    cc_mul.add_argument("--y", type=int, required=True)
    cc_mul.set_defaults(handler=cmd_cc_mul)

    selftest = commands.add_parser("selftest", help="Run the desk-scale acceptance checks")
    selftest.add_argument("--only", nargs="*", help="Check names to run")
    selftest.add_argument("--full", action="store_true", help="Run every check at its full acceptance size")
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else config.LOG_LEVEL,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"agcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AGCodesError as e:
        log.error(f"{type(e).__name__}: {e}")
        return EXIT_DOMAIN
    except (OSError, ValueError) as e:
        # unreadable files, malformed JSON and descriptors that fail validation
        log.error(f"📂 {e}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
