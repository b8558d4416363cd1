"""
Desk-scale acceptance checks, shared by the ``selftest`` subcommand and the test suite.

Every check takes a ``full`` flag: the quick default keeps the suite under a
minute, ``full=True`` runs the acceptance sizes (500 decoding trials, 1000
random products and so on). A raised library error counts as a failure with
its message as detail.
"""
import itertools
import logging
from typing import Callable, List, Optional

import numpy as np

from agcodes.core.ag_codes import cl_code, comega_code, grs_code, logarithmic_differential_divisor, rs_code
from agcodes.core.bilinear import cc_multiply, cc_verify
from agcodes.core.bounds import (
    EllOracle,
    FloorKind,
    floor_bound,
    gopalan_bound,
    one_point_order_bound,
    product_singleton_bound,
    tvz_beats_gv_interval,
)
from agcodes.core.curves import Divisor, HermitianCurve, ProjectiveLine
from agcodes.core.decoding import (
    basic_decode,
    build_ecp,
    ecp_decode,
    gs_list_decode,
    gs_params,
    plant_errors,
    trial_harness,
    unique_radius,
)
from agcodes.core.errors import AGCodesError
from agcodes.core.field_arith import make_field
from agcodes.core.linear_codes import LinearCode
from agcodes.core.lrc import availability2_code, btv_code, invariant_partition, local_recover, tamo_barg
from agcodes.core.mceliece import mceliece_decrypt, mceliece_encrypt, mceliece_keygen
from agcodes.core.rr_conditions import rr_condition_check
from agcodes.core.secret_sharing import asss_verify, shamir_privacy_count, shamir_scheme, shamir_share
from agcodes.models.codes import SelftestCheck, SelftestReport
from agcodes.services.crypto import build_bilinear

log = logging.getLogger(__name__)

# ------------------------
# Fixtures
# ------------------------
# l(D) values on the genus-14 Suzuki curve over GF(8) at two rational places P and Q
SUZUKI_GENUS = 14
SUZUKI_TABLE = {
    "16P": 6,
    "17P+2Q": 6,
    "5P+4Q": 1,
    "6P+6Q": 1,
    "14P+2Q": 5,
    "14P": 5,
    "8P+4Q": 2,
    "8P+6Q": 2,
    "8P": 2,
    "K-14P-2Q": 2,
    "K-14P-6Q": 0,
}
SUZUKI_G = "22P+6Q"

HERMITIAN2_ORDER_BOUND = [2, 2, 3, 4, 5, 6, 7]

# q -> (characteristic, tower degrees)
SMALL_FIELDS = {4: (2, [2]), 5: (5, []), 7: (7, []), 8: (2, [3]), 9: (3, [2]), 11: (11, []), 13: (13, []),
                16: (2, [4])}

# (q, n, k, s) with s(k - 1) < n, so l(sG - D_P) = 0 for G = (k - 1)Pinf
RS_FRAMEPROOF_CASES = [
    (4, 4, 2, 3),
    (5, 5, 2, 2),
    (5, 5, 3, 2),
    (7, 7, 2, 3),
    (7, 7, 3, 3),
    (7, 7, 4, 2),
    (8, 7, 2, 3),
    (8, 8, 3, 3),
    (9, 9, 3, 4),
    (11, 11, 3, 4),
]
# fails the criterion and has two codewords with disjoint supports
RS_NOT_FRAMEPROOF = (5, 4, 3, 2)

# most codewords a brute-force distance in these checks may enumerate
DISTANCE_BUDGET = 20000


def small_field(q: int):
    p, tower = SMALL_FIELDS[q]
    return make_field(p, tower)


def suzuki_oracle() -> EllOracle:
    return EllOracle.table(SUZUKI_GENUS, SUZUKI_TABLE)


def suzuki_floor_values() -> dict:
    """LM, GST and ABZ floors of C_Omega(22P + 6Q) on the Suzuki curve."""
    values = {}
    oracle = suzuki_oracle()
    g = oracle.divisor(SUZUKI_G)
    values["LM"] = floor_bound(FloorKind.LM, oracle, g, a=oracle.divisor("16P"), b=oracle.divisor("5P+4Q"),
                               z=oracle.divisor("P+2Q")).value
    oracle = suzuki_oracle()
    values["GST"] = floor_bound(FloorKind.GST, oracle, g, a=oracle.divisor("14P+2Q"), b=oracle.divisor("8P+4Q"),
                                c=oracle.divisor("8P"), z=oracle.divisor("2Q")).value
    oracle = suzuki_oracle()
    values["ABZ"] = floor_bound(FloorKind.ABZ, oracle, g, a=oracle.divisor("14P"), b=oracle.divisor("8P"),
                                z=oracle.divisor("6Q")).value
    return values


def rs_frameproof_instance(q: int, n: int, k: int):
    """(line, points, G) for the Reed-Solomon code C_L((k - 1)Pinf) on the first n affine points."""
    line = ProjectiveLine(small_field(q))
    return line, line.affine_points()[:n], line.one_point(k - 1)


def _max_dimension(q: int) -> int:
    k = 1
    while q ** (k + 1) <= DISTANCE_BUDGET:
        k += 1
    return k


# ------------------------
# Checks
# ------------------------
def check_grs_mds(full: bool = False, seed: int = 0) -> SelftestCheck:
    rng = np.random.default_rng(seed)
    instances = 50 if full else 5
    wrong = []
    for _ in range(instances):
        q = int(rng.choice(list(SMALL_FIELDS)))
        field_ = small_field(q)
        n = int(rng.integers(2, min(q, 12) + 1))
        k = int(rng.integers(1, min(n, _max_dimension(q)) + 1))
        x = field_.from_index(rng.choice(q, size=n, replace=False))
        ag = grs_code(field_, x, field_.random_elements(rng, n, nonzero=True), k)
        d = ag.code.min_distance()
        if d != n - k + 1:
            wrong.append(f"GF({q}) [{n}, {k}] has d={d}")
    return SelftestCheck("grs-mds", not wrong, "; ".join(wrong) or f"{instances} seeded GRS codes are MDS")


def check_duality(full: bool = False) -> SelftestCheck:
    details, ok = [], True
    curve = HermitianCurve(2)
    points = curve.affine_points()
    for m in (2, 4, 6):
        same = comega_code(curve, points, curve.one_point(m)).code == cl_code(curve, points,
                                                                               curve.one_point(m)).code.dual()
        ok &= same
        details.append(f"Hermitian q0=2 m={m}: {same}")
    for q, n, g_inf, g_zero in ((7, 6, 2, 0), (8, 7, 3, 0), (11, 10, 1, 2)):
        line = ProjectiveLine(small_field(q))
        points = line.affine_points()[1:n + 1]
        g = line.one_point(g_inf) + Divisor.point(line.point(0), g_zero)
        residue = comega_code(line, points, g).code
        differential = cl_code(line, points, logarithmic_differential_divisor(line, points) - g).code
        same = residue == cl_code(line, points, g).code.dual() and residue == differential
        ok &= same
        details.append(f"P1 GF({q}) G={g}: {same}")
    return SelftestCheck("duality", ok, "; ".join(details))


def check_goppa_bound(full: bool = False, seed: int = 0) -> SelftestCheck:
    """d >= n - deg G and Singleton defect <= g on random P1 and one-point Hermitian codes."""
    rng = np.random.default_rng(seed)
    instances = []
    for _ in range(30 if full else 10):
        q = int(rng.choice([5, 7, 8, 9, 11]))
        line = ProjectiveLine(small_field(q))
        n = int(rng.integers(4, q))
        degree = int(rng.integers(0, min(n - 2, _max_dimension(q) - 1) + 1))
        at_infinity = int(rng.integers(0, degree + 1))
        g = line.one_point(at_infinity) + Divisor.point(line.point(0), degree - at_infinity)
        instances.append(cl_code(line, line.affine_points()[1:n + 1], g))
    for q0, ms in ((2, range(1, 8)), (3, (3, 4, 6))):
        curve = HermitianCurve(q0)
        instances.extend(cl_code(curve, curve.affine_points(), curve.one_point(m)) for m in ms)
    wrong = []
    for ag in instances:
        d = ag.code.min_distance()
        defect = ag.n + 1 - ag.k - d
        if d < ag.n - ag.divisor.degree or defect > ag.genus:
            wrong.append(f"{ag}: d={d}, defect={defect}")
    return SelftestCheck("goppa-bound", not wrong, "; ".join(wrong) or f"{len(instances)} codes meet the bound")


def check_floor_bounds(full: bool = False) -> SelftestCheck:
    values = suzuki_floor_values()
    ok = values == {"LM": 5, "GST": 6, "ABZ": 6}
    return SelftestCheck("floor-bounds", ok, f"Suzuki C_Omega({SUZUKI_G}): {values}")


def check_order_bound(full: bool = False) -> SelftestCheck:
    curve = HermitianCurve(2)
    points = curve.affine_points()
    d_ord, strict, sound = [], False, True
    for m in range(1, 8):
        report = one_point_order_bound(curve, m, len(points))
        brute = comega_code(curve, points, curve.one_point(m)).code.min_distance()
        d_ord.append(report.d_ord)
        sound &= report.certified and brute >= report.d_ord >= report.d_gop
        strict |= report.d_ord > report.d_gop
    ok = sound and strict and d_ord == HERMITIAN2_ORDER_BOUND
    return SelftestCheck("order-bound", ok, f"Hermitian q0=2, m=1..7: d_Ord = {d_ord}")


def check_unique_decoding(full: bool = False, seed: int = 0) -> SelftestCheck:
    trials = 500 if full else 50
    gf13 = make_field(13)
    instances = [rs_code(gf13, list(range(1, 13)), 4)]
    curve = HermitianCurve(3)
    instances.append(cl_code(curve, curve.affine_points(), curve.one_point(12)))
    details, ok = [], True
    for ag in instances:
        t = unique_radius(ag).basic
        pair = build_ecp(ag, t)
        for name, decoder in (("basic", lambda y, ag=ag, t=t: basic_decode(ag, y, t)),
                              ("ecp", lambda y, pair=pair: ecp_decode(pair, y))):
            report = trial_harness(decoder, ag.code, t, trials, seed)
            ok &= report.successes == trials
            details.append(f"{name} [{ag.n},{ag.k}] t={t}: {report.successes}/{trials}")
    return SelftestCheck("unique-decoding", ok, "; ".join(details))


def check_list_decoding(full: bool = False, seed: int = 0) -> SelftestCheck:
    trials = 200 if full else 10
    gf16 = make_field(2, [4])
    ag = rs_code(gf16, list(range(16)), 4)
    params = gs_params(ag.n, ag.divisor.degree, ag.genus, 7)
    rng = np.random.default_rng(seed)
    found = 0
    for _ in range(trials):
        sent, received = plant_errors(ag.code, 7, rng)
        listed = gs_list_decode(ag, received, 7, params)
        found += any(np.array_equal(word, sent) for word in listed.codewords)

    # completeness against the full Hamming sphere on a [10, 3] code
    small = rs_code(make_field(11), list(range(1, 11)), 3)
    words = small.code.codewords()
    mismatches = 0
    spheres = 40 if full else 2
    for i in range(spheres):
        received = plant_errors(small.code, 5, rng)[1] if i % 2 == 0 else small.field.random_elements(rng, 10)
        near = np.count_nonzero((words - received).view(np.ndarray), axis=1) <= 5
        expected = {tuple(row) for row in words[near].view(np.ndarray).tolist()}
        listed = {tuple(w.view(np.ndarray).tolist()) for w in gs_list_decode(small, received, 5).codewords}
        mismatches += expected != listed
    ok = (params.s, params.ell, params.degree) == (1, 2, 8) and found == trials and mismatches == 0
    return SelftestCheck("list-decoding", ok, f"RS [16, 4], t=7, (s, l)=({params.s}, {params.ell}): "
                                              f"{found}/{trials} recovered; RS [10, 3], t=5: "
                                              f"{mismatches}/{spheres} sphere mismatches")


def check_tvz_gv(full: bool = False) -> SelftestCheck:
    intervals = {q: tvz_beats_gv_interval(q) for q in (16, 49, 64)}
    ok = intervals[16] is None and intervals[49] is not None and intervals[64] is not None
    if ok:
        refined = {q: tvz_beats_gv_interval(q, grid=20000) for q in (49, 64)}
        ok = all(abs(a - b) < 1e-9 for q in refined for a, b in zip(intervals[q], refined[q]))
    return SelftestCheck("tvz-gv", ok, f"TVZ beats GV on {intervals}")


def check_lrc(full: bool = False) -> SelftestCheck:
    gf13 = make_field(13)
    tb = tamo_barg(gf13, invariant_partition(gf13, "multiplicative", 4), 6, 3)
    d_tb = tb.code.min_distance()
    btv = btv_code(HermitianCurve(3), 2, 2)
    d_btv = btv.code.min_distance()
    avail = availability2_code(HermitianCurve(3), 2, 1)
    word = avail.code.encode(avail.field.gf.Ones(avail.k))
    repaired = True
    # knock out one x-fiber; every erased symbol comes back through its y-fiber
    outage = avail.structure.partitions[0][0]
    for i in outage:
        recovery = local_recover(avail, word, i, damaged=outage, which=1)
        repaired &= recovery.value == word[i]
    ok = (d_tb == 6 == gopalan_bound(12, 6, 3) and btv.k == 6 and d_btv >= btv.designed_distance
          and avail.k == 6 and avail.n == 24 and repaired)
    return SelftestCheck("lrc", ok, f"Tamo-Barg d={d_tb}, BTV d={d_btv} >= {btv.designed_distance}, "
                                    f"availability-2 [{avail.n}, {avail.k}] repaired={repaired}")


def random_full_support_pairs(field_, n: int, count: int, rng: np.random.Generator):
    """Pairs of random codes of dimension 1 to 3 whose generators have no zero column."""
    pairs = []
    while len(pairs) < count:
        a, b = (LinearCode(field_, field_.random_elements(rng, (int(rng.integers(1, 4)), n))) for _ in range(2))
        if a.k and b.k and a.has_full_support() and b.has_full_support():
            pairs.append((a, b))
    return pairs


def check_star_products(full: bool = False, seed: int = 0) -> SelftestCheck:
    rng = np.random.default_rng(seed)
    details, ok = [], True

    gf11 = make_field(11)
    triples = 1000 if full else 100
    x, y, z = (gf11.random_elements(rng, (triples, 10)) for _ in range(3))
    adjoint = all((x[i] * y[i]) @ z[i] == x[i] @ (y[i] * z[i]) for i in range(triples))
    ok &= adjoint
    details.append(f"adjunction on {triples} triples: {adjoint}")

    # C_L(A) * C_L(B) = C_L(A + B) once deg A >= 2g and deg B >= 2g + 1
    line = ProjectiveLine(gf11)
    points = line.affine_points()[1:]
    zero = line.point(0)
    line_ok = all(
        cl_code(line, points, line.one_point(a)).code.star_product(
            cl_code(line, points, Divisor.point(zero, b)).code)
        == cl_code(line, points, line.one_point(a) + Divisor.point(zero, b)).code
        for a, b in itertools.product(range(5), (1, 2)))
    curve = HermitianCurve(2)
    pairs = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5)]
    codes = {m: cl_code(curve, curve.affine_points(), curve.one_point(m)).code for m in range(2, 11)}
    curve_ok = all(codes[a].star_product(codes[b]) == codes[a + b] for a, b in pairs)
    ok &= line_ok and curve_ok
    details.append(f"C_L(A+B) products: P1 {line_ok}, Hermitian {curve_ok}")

    gf5 = make_field(5)
    kneser = singleton = True
    count = 20 if full else 5
    for a, b in random_full_support_pairs(gf5, 6, count, rng):
        product = a.star_product(b)
        kneser &= product.k >= a.k + b.k - product.stabilizer().k
        singleton &= product.min_distance() <= product_singleton_bound(6, [a.k, b.k])
    ok &= kneser and singleton
    details.append(f"{count} random pairs: Kneser {kneser}, product Singleton {singleton}")
    return SelftestCheck("star-products", ok, "; ".join(details))


def check_frameproof(full: bool = False) -> SelftestCheck:
    details, ok = [], True
    for q, n, k, s in RS_FRAMEPROOF_CASES + [RS_NOT_FRAMEPROOF]:
        line, points, g = rs_frameproof_instance(q, n, k)
        criterion = rr_condition_check("frameproof", EllOracle.computed(line), g, points, s=s).passed
        exhaustive = cl_code(line, points, g).code.is_frameproof(s)
        expected = (q, n, k, s) != RS_NOT_FRAMEPROOF
        ok &= criterion == exhaustive == expected
        if criterion != exhaustive or criterion != expected:
            details.append(f"GF({q}) [{n}, {k}] s={s}: criterion {criterion}, exhaustive {exhaustive}")
    return SelftestCheck("frameproof", ok, "; ".join(details) or
                         f"{len(RS_FRAMEPROOF_CASES)} frameproof RS codes and one counterexample agree")


def check_bilinear(full: bool = False, seed: int = 0) -> SelftestCheck:
    alg = build_bilinear(7, 3)
    pairs = 1000 if full else 50
    rng = np.random.default_rng(seed)
    xs = alg.extension.random_elements(rng, pairs)
    ys = alg.extension.random_elements(rng, pairs)
    agree = sum(cc_multiply(alg, x, y) == x * y for x, y in zip(xs, ys))
    ok = alg.length == 5 and not cc_verify(alg) and agree == pairs
    return SelftestCheck("bilinear", ok, f"GF(7^3) over GF(7): length {alg.length}, {agree}/{pairs} random products")


def check_mceliece(full: bool = False, seed: int = 0) -> SelftestCheck:
    trials = 100 if full else 20
    gf2 = make_field(2)
    keypair = mceliece_keygen(gf2, 4, 12, 2, seed)
    public = keypair.public
    again = mceliece_keygen(gf2, 4, 12, 2, seed)
    deterministic = np.array_equal(again.public.generator, public.generator)
    rng = np.random.default_rng(seed)
    good = 0
    for trial in range(trials):
        message = gf2.random_elements(rng, public.k)
        cipher = mceliece_encrypt(public, message, seed + trial)
        result = mceliece_decrypt(keypair, cipher)
        good += result.ok and np.array_equal(result.message, message)
    ok = public.t == 1 and deterministic and good == trials
    return SelftestCheck("mceliece", ok, f"[{public.n}, {public.k}] Goppa, t={public.t}: {good}/{trials} round-trips")


def check_secret_sharing(full: bool = False, seed: int = 0) -> SelftestCheck:
    """Shamir with threshold t is a (t - 1, 2, 2t - 1) ASSS and t - 1 shares leave every secret equally likely."""
    rng = np.random.default_rng(seed)
    details, ok = [], True
    for q, t, n in ((7, 2, 6), (7, 3, 6), (11, 3, 8), (11, 4, 8)):
        scheme = shamir_scheme(small_field(q), t, n)
        asss = asss_verify(scheme.code, t - 1, 2, 2 * t - 1).passed
        shares = shamir_share(scheme, int(rng.integers(q)), rng)
        blind = all(set(shamir_privacy_count(scheme, {i: shares[i] for i in coalition}).values()) == {1}
                    for coalition in itertools.combinations(range(n), t - 1))
        ok &= asss and blind
        details.append(f"GF({q}) t={t} n={n}: asss={asss}, private={blind}")
    return SelftestCheck("secret-sharing", ok, "; ".join(details))


CHECKS: List[Callable[..., SelftestCheck]] = [
    check_grs_mds,
    check_duality,
    check_goppa_bound,
    check_floor_bounds,
    check_order_bound,
    check_unique_decoding,
    check_list_decoding,
    check_tvz_gv,
    check_lrc,
    check_star_products,
    check_frameproof,
    check_bilinear,
    check_mceliece,
    check_secret_sharing,
]


def check_name(check: Callable[..., SelftestCheck]) -> str:
    return check.__name__[len("check_"):].replace("_", "-")


def run_selftest(only: Optional[List[str]] = None, full: bool = False) -> SelftestReport:
    report = SelftestReport(full=full)
    for check in CHECKS:
        name = check_name(check)
        if only and name not in only:
            continue
        try:
            result = check(full=full)
        except AGCodesError as e:
            result = SelftestCheck(name, False, f"{type(e).__name__}: {e}")
        marker = "✅" if result.passed else "⚠️"
        log.info(f"{marker} {result.name}: {result.detail}")
        report.checks.append(result)
    return report
