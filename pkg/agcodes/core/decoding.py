"""
Decoders: erasure decoding, the basic algorithm for C_L codes, error correcting
pairs, and Guruswami-Sudan list decoding.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core import config
from agcodes.core.ag_codes import AGCode, Family, cl_code
from agcodes.core.curves import Divisor, HermitianCurve, Place, ProjectiveLine, RationalFunction
from agcodes.core.errors import (
    AmbiguousSolutionError,
    AssertionFailure,
    CapabilityError,
    DomainError,
    ErasureDecodingError,
    GuardExceededError,
    NoSolutionError,
)
from agcodes.core.field_arith import FiniteField, binomial, is_zero_poly
from agcodes.core.linear_codes import LinearCode, kernel, solve_affine, weight

log = logging.getLogger(__name__)


class DecodeStatus(str, Enum):
    OK = "OK"
    FAIL = "FAIL"


@dataclass
class DecodeResult:
    status: DecodeStatus
    error: Optional[galois.FieldArray] = None
    codeword: Optional[galois.FieldArray] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == DecodeStatus.OK

    @classmethod
    def fail(cls, reason: str) -> "DecodeResult":
        log.debug(f"Decoder returned FAIL: {reason}")
        return cls(DecodeStatus.FAIL, reason=reason)


def _as_word(code: LinearCode, y):
    word = y if isinstance(y, galois.FieldArray) else code.field.from_index(y)
    if word.shape != (code.n,):
        raise DomainError(f"Received word must have length {code.n}, got shape {word.shape}")
    return word


# ------------------------
# Erasures
# ------------------------
def erasure_decode(code: LinearCode, y, erasures: Sequence[int]) -> galois.FieldArray:
    """The unique e supported on the erasure set with y - e in the code."""
    y = _as_word(code, y)
    positions = sorted(set(int(i) for i in erasures))
    if positions and (positions[0] < 0 or positions[-1] >= code.n):
        raise DomainError("Erasure positions out of range")
    checks = code.parity_check
    syndrome = checks @ y
    e = code.field.gf.Zeros(code.n)
    if not positions:
        if np.any(syndrome.view(np.ndarray)):
            raise NoSolutionError("Word is not a codeword and nothing is erased")
        return e
    solution, free = solve_affine(checks[:, positions], syndrome)
    if solution is None:
        raise NoSolutionError(f"No error supported on {len(positions)} erased positions")
    if free.shape[0] > 0:
        raise AmbiguousSolutionError(f"{code.field.order ** free.shape[0]} errors fit the erasure set")
    e[positions] = solution
    return e


def _finish(code: LinearCode, y, locator, t: int) -> DecodeResult:
    zeros = [i for i, v in enumerate(locator.view(np.ndarray)) if v == 0]
    try:
        e = erasure_decode(code, y, zeros)
    except ErasureDecodingError as err:
        return DecodeResult.fail(str(err))
    if weight(e) > t:
        return DecodeResult.fail(f"error of weight {weight(e)} exceeds t={t}")
    return DecodeResult(DecodeStatus.OK, e, y - e)


@dataclass
class UniqueRadius:
    half_distance: int
    basic: int


def unique_radius(ag: AGCode) -> UniqueRadius:
    d_star = ag.designed_distance
    if d_star is None or d_star < 1:
        raise DomainError("Code has no positive designed distance")
    return UniqueRadius((d_star - 1) // 2, max(0, (d_star - 1 - ag.genus) // 2))


def _auxiliary_point(ag: AGCode) -> Place:
    """A rational place off the evaluation points to carry F."""
    used = set(ag.points)
    inf = ag.backend.infinity()
    if inf not in used:
        return inf
    if isinstance(ag.backend, ProjectiveLine):
        for p in ag.backend.rational_points():
            if p not in used and p not in ag.divisor.support:
                return p
    raise CapabilityError("No rational point outside the evaluation set to place F on")


# ------------------------
# Basic algorithm
# ------------------------
def basic_decode(ag: AGCode, y, t: Optional[int] = None) -> DecodeResult:
    """Locate errors with a nonzero lambda in K_y, then solve the erasure system."""
    if ag.family not in (Family.CL, Family.GRS):
        raise DomainError("The basic algorithm decodes C_L codes")
    radius = unique_radius(ag).basic
    t = radius if t is None else t
    if not 0 <= t <= radius:
        raise DomainError(f"Basic algorithm needs t <= (d* - 1)/2 - g/2 = {radius}, got {t}")
    y = _as_word(ag.code, y)
    backend = ag.backend
    aux = Divisor.point(_auxiliary_point(ag), t + ag.genus)
    lambdas = backend.rr_basis(aux)
    values = backend.evaluate(lambdas, ag.points)
    extended = cl_code(backend, ag.points, ag.divisor + aux).code
    if extended.k == extended.n:
        return DecodeResult.fail("C_L(G+F) is the full space")
    # lambda * y in C_L(G+F)
    system = extended.parity_check @ (values * y).T
    ky = kernel(system, len(lambdas))
    if ky.shape[0] == 0:
        return DecodeResult.fail("K_y = {0}")
    return _finish(ag.code, y, ky[0] @ values, t)


# ------------------------
# Error correcting pairs
# ------------------------
@dataclass
class ECP:
    a: LinearCode
    b: LinearCode
    code: LinearCode
    t: int
    d_a: int
    d_code: int
    exact: bool


def _distance_or_designed(code: LinearCode, designed: Optional[int]) -> Tuple[int, bool]:
    try:
        return code.min_distance(), True
    except GuardExceededError:
        if designed is None:
            raise
        return designed, False


def certify_ecp(a: LinearCode, b: LinearCode, code: LinearCode, t: int, d_a: Optional[int] = None,
                d_code: Optional[int] = None, d_b_dual: Optional[int] = None) -> ECP:
    """Check the pair conditions; distances are exact when enumerable, designed otherwise."""
    if not a.star_product(b).is_subcode_of(code.dual()):
        raise AssertionFailure("A * B is not contained in the dual code")
    if a.k <= t:
        raise AssertionFailure(f"dim A = {a.k} must exceed t = {t}")
    if code.n - b.k <= t:
        raise AssertionFailure(f"dim B^⊥ = {code.n - b.k} must exceed t = {t}")
    db, exact_b = _distance_or_designed(b.dual(), d_b_dual)
    if db <= t:
        raise AssertionFailure(f"d(B^⊥) = {db} must exceed t = {t}")
    da, exact_a = _distance_or_designed(a, d_a)
    dc, exact_c = _distance_or_designed(code, d_code)
    if da + dc <= code.n:
        raise AssertionFailure(f"d(A) + d(C) = {da + dc} does not exceed n = {code.n}")
    return ECP(a, b, code, t, da, dc, exact_a and exact_b and exact_c)


def build_ecp(ag: AGCode, t: int) -> ECP:
    """A = C_L(F) with deg F = t + g; B = C_Omega(G+F) for C_L codes, C_L(G-F) for C_Omega codes."""
    if t < 1:
        raise DomainError(f"ECP needs t >= 1, got {t}")
    backend, points = ag.backend, ag.points
    aux = Divisor.point(_auxiliary_point(ag), t + ag.genus)
    a = cl_code(backend, points, aux)
    if ag.family in (Family.CL, Family.GRS):
        b = cl_code(backend, points, ag.divisor + aux).code.dual()
        d_b_dual = ag.n - (ag.divisor + aux).degree
    elif ag.family == Family.COMEGA:
        b = cl_code(backend, points, ag.divisor - aux).code
        d_b_dual = (ag.divisor - aux).degree + 2 - 2 * ag.genus
    else:
        raise DomainError("Decode Goppa codes through the ECP of their C_Omega supercode")
    pair = certify_ecp(a.code, b, ag.code, t, a.designed_distance, ag.designed_distance, d_b_dual)
    log.info(f"✅ Certified {t}-error correcting pair for {ag!r} (exact distances: {pair.exact})")
    return pair


def ecp_decode(pair: ECP, y, base: Optional[FiniteField] = None) -> DecodeResult:
    """Decode with a certified pair.

    With ``base`` the word lies in base^n (a subfield subcode); decoding runs in
    the supercode and the error must come back inside the subfield.
    """
    top = pair.code.field
    if base is not None and base != top:
        y = top.embed(y if isinstance(y, galois.FieldArray) else base.from_index(y), base)
    y = _as_word(pair.code, y)
    # M = {a in A : <a * y, b> = 0 for all b in B}
    system = (pair.b.generator * y) @ pair.a.generator.T
    locators = kernel(system, pair.a.k)
    if locators.shape[0] == 0:
        return DecodeResult.fail("M = {0}")
    result = _finish(pair.code, y, locators[0] @ pair.a.generator, pair.t)
    if not result.ok or base is None or base == top:
        return result
    if not np.all(top.in_subfield(result.error, base)):
        return DecodeResult.fail("error leaves the subfield")
    return DecodeResult(DecodeStatus.OK, top.restrict(result.error, base), top.restrict(result.codeword, base))


# ------------------------
# Guruswami-Sudan
# ------------------------
def gs_radius(n: int, deg_g: int, genus: int, s: int, ell: int) -> Fraction:
    return n - Fraction(n * (s + 1), 2 * (ell + 1)) - Fraction(ell * deg_g, 2 * s) - Fraction(genus, s)


@dataclass
class GSParams:
    s: int
    ell: int
    degree: int
    t: int
    radius: Fraction

    @property
    def constraints_per_point(self) -> int:
        return self.s * (self.s + 1) // 2


def _gs_window(n: int, deg_g: int, genus: int, t: int, s: int, ell: int) -> Optional[int]:
    """Smallest integer deg(F + lG) with (b) < deg < (a), if any."""
    lower = Fraction(n * s * (s + 1), 2 * (ell + 1)) + Fraction(ell * deg_g, 2) + genus - 1
    degree = int(lower // 1) + 1
    return degree if degree < s * (n - t) else None


def _gs_search(n: int, deg_g: int, genus: int, t: int, s_max: int) -> Optional[GSParams]:
    for s in range(1, s_max + 1):
        ell = s
        while ell <= s * n:
            degree = _gs_window(n, deg_g, genus, t, s, ell)
            if degree is not None:
                return GSParams(s, ell, degree, t, gs_radius(n, deg_g, genus, s, ell))
            if deg_g and Fraction(ell * deg_g, 2) + genus - 1 >= s * (n - t):
                break
            ell += 1
    return None


def gs_params(n: int, deg_g: int, genus: int, t: int, s_max: Optional[int] = None) -> GSParams:
    """Smallest s, then smallest l, admitting an integer deg(F + lG) inside the window."""
    if t < 0 or t >= n:
        raise DomainError(f"No GS parameters for t={t} with n={n}")
    s_max = n if s_max is None else s_max
    params = _gs_search(n, deg_g, genus, t, s_max)
    if params is None:
        raise DomainError(f"No feasible (s, l) for t={t}; largest achievable radius is "
                          f"{gs_max_radius(n, deg_g, genus, s_max)}")
    return params


def gs_max_radius(n: int, deg_g: int, genus: int, s_max: int) -> int:
    best = -1
    for t in range(n):
        if _gs_search(n, deg_g, genus, t, s_max) is None:
            break
        best = t
    return best


@dataclass
class ListDecodeResult:
    codewords: List[galois.FieldArray]
    params: GSParams
    unknowns: int
    equations: int
    notes: List[str] = field(default_factory=list)


def _interpolate(ag: AGCode, y, params: GSParams):
    """Nonzero Q = sum_j Q_j Y^j, Q_j in L(F + (l-j)G), with multiplicity s at every (P_i, y_i)."""
    backend, field_ = ag.backend, ag.field
    gf = field_.gf
    s, ell = params.s, params.ell
    deg_g = ag.divisor.degree
    aux = Divisor.point(_auxiliary_point(ag), params.degree - ell * deg_g)
    blocks = []
    for j in range(ell + 1):
        space = aux + ag.divisor * (ell - j)
        blocks.append(backend.rr_basis(space) if space.degree >= 0 else [])
    columns = [(j, f) for j, basis in enumerate(blocks) for f in basis]
    rows = []
    for i, point in enumerate(ag.points):
        expansions = [backend.local_expansion(f, point, s) for _, f in columns]
        for a in range(s):
            for b in range(s - a):
                row = gf.Zeros(len(columns))
                for c, (j, _) in enumerate(columns):
                    if j >= b:
                        row[c] = binomial(field_, j, b) * y[i] ** (j - b) * expansions[c][a]
                rows.append(row)
    matrix = gf(np.vstack([r.view(np.ndarray) for r in rows]))
    null = kernel(matrix, len(columns))
    if null.shape[0] == 0:
        raise AssertionFailure("GS interpolation system has no nonzero solution")
    coeffs = null[0]
    parts, c = [], 0
    for basis in blocks:
        terms = None
        for f in basis:
            if coeffs[c] != 0:
                scaled = f.scale(coeffs[c])
                terms = scaled if terms is None else terms + scaled
            c += 1
        parts.append(terms)
    return parts, len(columns), len(rows)


def _shift_bivariate(gf, coeffs: List[galois.Poly], gamma) -> List[galois.Poly]:
    """Q(x, xY + gamma), coefficients listed by power of Y."""
    x = galois.Poly.Identity(gf)
    out = [galois.Poly.Zero(gf) for _ in coeffs]
    for j, a_j in enumerate(coeffs):
        if is_zero_poly(a_j):
            continue
        for b in range(j + 1):
            c = gf(math.comb(j, b) % gf.characteristic) * gamma ** (j - b)
            if c != 0:
                out[b] = out[b] + a_j * (x ** b) * c
    return out


def _strip_x(gf, coeffs: List[galois.Poly]) -> List[galois.Poly]:
    """Divide out the largest power of x common to every coefficient."""
    nonzero = [c for c in coeffs if not is_zero_poly(c)]
    shift = min(int(min(c.nonzero_degrees)) for c in nonzero)
    if shift == 0:
        return coeffs
    x_shift = galois.Poly.Degrees([shift], coeffs=gf([1]))
    return [c if is_zero_poly(c) else c // x_shift for c in coeffs]


def _roth_ruckenstein(gf, coeffs: List[galois.Poly], size: int) -> List[List]:
    """Coefficients (low degree first) of the candidates p, deg p < size, for Q(x, p(x)) = 0."""
    found = []

    def walk(current: List[galois.Poly], prefix: List):
        current = _strip_x(gf, current)
        if len(prefix) == size:
            found.append(prefix)
            return
        constant = gf([int(c.coeffs[-1]) for c in current])
        if not np.any(constant.view(np.ndarray)[1:]):
            return
        for gamma in galois.Poly(constant, order="asc").roots():
            walk(_shift_bivariate(gf, current, gamma), prefix + [gamma])

    walk(list(coeffs), [])
    return found


def _genus0_roots(ag: AGCode, parts) -> List[RationalFunction]:
    """All f in L(G) with Q(f) = 0, on the projective line."""
    field_ = ag.field
    gf = field_.gf
    basis = ag.backend.rr_basis(ag.divisor)
    if not basis:
        return []
    # L(G) = {N p / D : deg p <= deg G}
    numerator, denominator = basis[0].num, basis[0].den
    base = RationalFunction(field_, numerator, denominator)
    scaled = [None if q_j is None else q_j * base ** j for j, q_j in enumerate(parts)]
    common = galois.Poly.One(gf)
    for r in scaled:
        if r is not None:
            common = galois.lcm(common, r.den)
    coeffs = [galois.Poly.Zero(gf) if r is None else r.num * (common // r.den) for r in scaled]
    roots = []
    for candidate in _roth_ruckenstein(gf, coeffs, len(basis)):
        p = galois.Poly(gf([int(c) for c in candidate]), order="asc")
        value, power = galois.Poly.Zero(gf), galois.Poly.One(gf)
        for c in coeffs:
            value = value + c * power
            power = power * p
        if is_zero_poly(value):
            roots.append(RationalFunction(field_, numerator * p, denominator))
    return roots


def _scan_roots(ag: AGCode, parts, y, t: int, limit: Optional[int]) -> List[galois.FieldArray]:
    """Exhaustive scan of L(G): keep codewords within t of y and confirm Q(f) = 0 symbolically."""
    basis = list(ag.backend.rr_basis(ag.divisor))
    values = ag.backend.evaluate(basis, ag.points)
    evaluation = LinearCode(ag.field, values)
    words = evaluation.codewords(limit)
    close = words[np.count_nonzero((words - y).view(np.ndarray), axis=1) <= t]
    out = []
    for word in close:
        coeffs, _ = solve_affine(values.T, word)
        f = None
        for c, phi in zip(coeffs, basis):
            if c != 0:
                f = phi.scale(c) if f is None else f + phi.scale(c)
        if f is not None:
            total, power = None, f.one_like()
            for q_j in parts:
                if q_j is not None:
                    term = q_j * power
                    total = term if total is None else total + term
                power = power * f
            if total is not None and not total.is_zero():
                raise AssertionFailure("A codeword within the GS radius is not a root of Q")
        out.append(word)
    return out


def gs_list_decode(ag: AGCode, y, t: int, params: Optional[GSParams] = None,
                   limit: Optional[int] = None) -> ListDecodeResult:
    """Every codeword within distance t of y."""
    if ag.family not in (Family.CL, Family.GRS):
        raise DomainError("Guruswami-Sudan decodes C_L codes")
    y = _as_word(ag.code, y)
    params = params or gs_params(ag.n, ag.divisor.degree, ag.genus, t)
    parts, unknowns, equations = _interpolate(ag, y, params)
    notes = []
    if isinstance(ag.backend, ProjectiveLine):
        functions = _genus0_roots(ag, parts)
        words = []
        for f in functions:
            words.append(ag.field.gf([int(f.evaluate(p)) for p in ag.points]))
    elif isinstance(ag.backend, HermitianCurve):
        words = _scan_roots(ag, parts, y, t, limit)
        notes.append("roots found by exhaustive scan of L(G)")
    else:
        raise CapabilityError(f"No root finder for {ag.backend.name}")
    seen, result = set(), []
    for word in words:
        key = tuple(word.view(np.ndarray).tolist())
        if key in seen or int(np.count_nonzero((word - y).view(np.ndarray))) > t:
            continue
        if not ag.code.contains(word):
            raise AssertionFailure("List decoder produced a non-codeword")
        seen.add(key)
        result.append(word)
    result.sort(key=lambda w: w.view(np.ndarray).tolist())
    log.info(f"GS (s={params.s}, l={params.ell}) returned {len(result)} codewords within t={t}")
    return ListDecodeResult(result, params, unknowns, equations, notes)


# ------------------------
# Seeded trials
# ------------------------
@dataclass
class TrialReport:
    trials: int
    successes: int
    failures: int
    miscorrections: int


def plant_errors(code: LinearCode, t: int, rng: np.random.Generator):
    """A random codeword and a received word at distance exactly t from it."""
    message = code.field.random_elements(rng, code.k)
    word = code.encode(message)
    error = code.field.gf.Zeros(code.n)
    if t:
        positions = rng.permutation(code.n)[:t]
        error[positions] = code.field.random_elements(rng, t, nonzero=True)
    return word, word + error


def trial_harness(decoder: Callable[[galois.FieldArray], DecodeResult], code: LinearCode, t: int,
                  trials: int, seed: int, jobs: Optional[int] = None) -> TrialReport:
    rng = np.random.default_rng(seed)
    planted = [plant_errors(code, t, rng) for _ in range(trials)]
    jobs = config.DEFAULT_JOBS if jobs is None else jobs

    def run(pair):
        sent, received = pair
        result = decoder(received)
        if not result.ok:
            return "fail"
        return "ok" if np.array_equal(result.codeword, sent) else "wrong"

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, planted))
    else:
        outcomes = [run(p) for p in planted]
    report = TrialReport(trials, outcomes.count("ok"), outcomes.count("fail"), outcomes.count("wrong"))
    log.info(f"Trials: {report}")
    return report
