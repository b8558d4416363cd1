"""
Parameter bounds: asymptotic evaluators, locality and Singleton bounds,
floor bounds driven by an l(D) oracle, and the order bound on semigroups.
"""
import functools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from agcodes.core.curves import CurveBackend, Divisor, Place, parse_divisor
from agcodes.core.errors import AssertionFailure, BoundRefusedError, CapabilityError, DomainError

log = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


def _isqrt_exact(q: int) -> Optional[int]:
    r = math.isqrt(q)
    return r if r * r == q else None


def _as_float(x: Number) -> float:
    return float(x)


# ------------------------
# Finite-length bounds
# ------------------------
def singleton_bound(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise DomainError(f"Need 0 <= k <= n, got n={n}, k={k}")
    return n - k + 1


def singleton_defect(n: int, k: int, d: int) -> int:
    return n + 1 - k - d


def product_singleton_bound(n: int, dims: Sequence[int]) -> int:
    """d(C_1 * ... * C_t) <= max(t - 1, n - sum(k_i) + t) for factors with full support."""
    t = len(dims)
    if t < 2:
        raise DomainError(f"Product Singleton needs at least 2 factors, got {t}")
    if not all(1 <= k <= n for k in dims):
        raise DomainError(f"Factor dimensions must lie in [1, {n}], got {list(dims)}")
    return max(t - 1, n - sum(dims) + t)


def gopalan_bound(n: int, k: int, ell: int) -> int:
    """d <= n - k - ceil(k / l) + 2 for a code of locality l."""
    if not 1 <= ell <= k <= n:
        raise DomainError(f"Need 1 <= l <= k <= n, got n={n}, k={k}, l={ell}")
    return n - k - (-(-k // ell)) + 2


# ------------------------
# Gilbert-Varshamov and asymptotic curves
# ------------------------
def q_entropy(q: int, x: float) -> float:
    if x == 0:
        return 0.0
    return (x * math.log(q - 1, q) - x * math.log(x, q) - (1 - x) * math.log(1 - x, q))


def gv_bound(q: int, delta: Number) -> float:
    """R = 1 - H_q(delta) on 0 < delta < 1 - 1/q."""
    if q < 2:
        raise DomainError(f"q must be at least 2, got {q}")
    if not 0 < delta < 1 - Fraction(1, q):
        raise DomainError(f"GV bound needs 0 < delta < 1 - 1/q, got {delta}")
    return 1 - q_entropy(q, _as_float(delta))


class AsymptoticKind(str, Enum):
    TVZ = "TVZ"
    TVZ_GENERAL = "TVZGeneral"
    DV = "DV"
    IHARA = "Ihara"
    BBGS = "BBGS"
    SERRE = "Serre"
    KTW = "KTW"
    XING_NONLINEAR = "XingNonlinear"
    XING_FRAMEPROOF = "XingFrameproof"
    HR2_FRAMEPROOF = "HR2Frameproof"
    HASSE_WEIL = "HasseWeil"


@dataclass
class KtwLine:
    """Rate line of subfield subcodes over GF(q) of codes over GF(q^l).

    The upper end of the delta window is printed with an undefined symbol m;
    both the m = l reading and the literal reading (m supplied) are kept.
    """
    rate: Number
    window_low: Number
    window_high: Number
    window_high_literal: Optional[Number]
    flagged: bool = True

    def in_window(self, delta: Number) -> bool:
        return self.window_low <= delta <= self.window_high


def _ktw(q: int, ell: int, delta: Number, m: Optional[int]) -> KtwLine:
    if ell < 2 or ell % 2:
        raise DomainError(f"KTW needs an even positive l, got {ell}")
    half = q ** (ell // 2) - 1
    rate = 1 - Fraction(2 * (q - 1) * ell, q * half) - Fraction((q - 1) * ell, q) * delta
    low = Fraction(q - 2, half)
    high = Fraction(q, ell * (q - 1)) - Fraction(2, half)
    literal = Fraction(q, m * (q - 1)) - Fraction(2, half) if m else None
    return KtwLine(rate, low, high, literal)


def _ihara_lower(q: int) -> Number:
    root = _isqrt_exact(q)
    if root is None:
        raise DomainError(f"Ihara's bound A(q) >= sqrt(q) - 1 needs a square q, got {q}")
    return Fraction(root - 1)


def asymptotic_bound(kind: Union[AsymptoticKind, str], **params) -> Union[Number, KtwLine]:
    """Evaluate one asymptotic formula; exact Fractions whenever the formula is rational."""
    kind = AsymptoticKind(kind)
    q = params.get("q")
    delta = params.get("delta")

    if kind == AsymptoticKind.TVZ:
        root = _isqrt_exact(q)
        if root is None or root < 2:
            raise DomainError(f"TVZ needs a square q >= 4, got {q}")
        if isinstance(delta, float):
            return 1 - delta - 1 / (root - 1)
        return 1 - Fraction(delta) - Fraction(1, root - 1)

    if kind == AsymptoticKind.TVZ_GENERAL:
        a = params["A"]
        if a <= 1:
            raise DomainError(f"TVZ needs A(q) > 1, got {a}")
        if isinstance(delta, float) or isinstance(a, float):
            return 1 - _as_float(delta) - 1 / _as_float(a)
        return 1 - Fraction(delta) - 1 / Fraction(a)

    if kind == AsymptoticKind.DV:
        root = _isqrt_exact(q)
        return Fraction(root - 1) if root is not None else math.sqrt(q) - 1

    if kind == AsymptoticKind.IHARA:
        return _ihara_lower(q)

    if kind == AsymptoticKind.HASSE_WEIL:
        root = _isqrt_exact(q)
        return Fraction(2 * root) if root is not None else 2 * math.sqrt(q)

    if kind == AsymptoticKind.BBGS:
        p, m = params["p"], params["m"]
        if m < 1 or not _is_prime(p):
            raise DomainError(f"BBGS needs q = p^(2m+1) with p prime and m >= 1, got p={p}, m={m}")
        return Fraction(2 * (p ** (m + 1) - 1)) / (p + 1 + Fraction(p - 1, p ** m - 1))

    if kind == AsymptoticKind.SERRE:
        if q < 2:
            raise DomainError(f"q must be at least 2, got {q}")
        return math.log2(q) / 96

    if kind == AsymptoticKind.KTW:
        return _ktw(q, params["ell"], Fraction(delta) if not isinstance(delta, float) else delta, params.get("m"))

    if kind == AsymptoticKind.XING_NONLINEAR:
        a = params.get("A") or _ihara_lower(q)
        value = 1 - _as_float(delta) - 1 / _as_float(a) + math.log(1 + q ** -3, q)
        if value <= 0:
            raise DomainError("Xing's nonlinear rate is not positive at this delta")
        return value

    if kind == AsymptoticKind.XING_FRAMEPROOF:
        s = params["s"]
        a = _as_float(params.get("A") or _ihara_lower(q))
        if not 2 <= s <= a:
            raise DomainError(f"Frameproof rate needs 2 <= s <= A(q), got s={s}, A={a}")
        return 1 / s - 1 / a + (1 - 2 * math.log(s, q)) / (s * a)

    if kind == AsymptoticKind.HR2_FRAMEPROOF:
        a = params.get("A") or _ihara_lower(q)
        if a < 4:
            raise DomainError(f"2-frameproof rate needs A(q) >= 4, got {a}")
        return Fraction(1, 2) - 1 / (2 * Fraction(a)) if not isinstance(a, float) else 0.5 - 1 / (2 * a)

    raise DomainError(f"Unknown asymptotic bound {kind}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def _tvz_minus_gv(q: int, delta: float) -> float:
    # GV extends continuously to R = 1 at delta = 0 and to R = 0 at delta = 1 - 1/q
    if delta <= 0:
        gv = 1.0
    elif delta >= 1 - 1 / q:
        gv = 0.0
    else:
        gv = gv_bound(q, delta)
    return asymptotic_bound(AsymptoticKind.TVZ, q=q, delta=delta) - gv


def tvz_gv_table(q: int, grid: int = 200) -> List[Tuple[float, float, float]]:
    """Rows (delta, gv_rate, tvz_rate) on a uniform grid inside (0, 1 - 1/q)."""
    if grid < 2:
        raise DomainError("Grid needs at least 2 intervals")
    top = 1 - 1 / q
    rows = []
    for i in range(1, grid):
        delta = top * i / grid
        rows.append((delta, gv_bound(q, delta), asymptotic_bound(AsymptoticKind.TVZ, q=q, delta=delta)))
    return rows


def _bisect(fn: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    f_lo = fn(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        f_mid = fn(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2


def tvz_beats_gv_interval(q: int, tol: float = 1e-12, grid: int = 2000) -> Optional[Tuple[float, float]]:
    """The delta interval where TVZ exceeds GV, located by sign changes and bisection."""
    top = 1 - 1 / q
    deltas = [top * i / grid for i in range(1, grid)]
    above = [d for d in deltas if _tvz_minus_gv(q, d) > 0]
    if not above:
        log.info(f"TVZ never beats GV for q={q} on a {grid}-point grid")
        return None
    first, last = deltas.index(above[0]), deltas.index(above[-1])
    fn = lambda d: _tvz_minus_gv(q, d)  # noqa: E731
    # TVZ - GV is concave and negative at both ends of [0, 1 - 1/q], so each crossover is bracketed
    lo_end = deltas[first - 1] if first > 0 else 0.0
    hi_end = deltas[last + 1] if last + 1 < len(deltas) else top
    if fn(lo_end) > 0 or fn(hi_end) > 0:
        raise AssertionFailure(f"TVZ - GV does not change sign around the grid region for q={q}")
    return _bisect(fn, lo_end, deltas[first], tol), _bisect(fn, deltas[last], hi_end, tol)


# ------------------------
# Numerical semigroups
# ------------------------
@dataclass(frozen=True)
class SemigroupOracle:
    """H - shift, where H is the numerical semigroup spanned by ``generators``.

    With shift = a this is the set of F-non-gaps of F = a*P at P.
    """
    generators: Tuple[int, ...]
    shift: int = 0

    @classmethod
    def generated(cls, gens: Sequence[int]) -> "SemigroupOracle":
        gens = tuple(sorted(set(int(g) for g in gens)))
        if not gens or gens[0] < 1:
            raise DomainError(f"Semigroup generators must be positive, got {gens}")
        if functools.reduce(math.gcd, gens) != 1:
            raise DomainError(f"Generators {gens} have a common factor, so infinitely many gaps")
        return cls(gens)

    @classmethod
    def from_backend(cls, backend: CurveBackend) -> "SemigroupOracle":
        return cls.generated(backend.weierstrass_semigroup())

    def shifted(self, a: int) -> "SemigroupOracle":
        return SemigroupOracle(self.generators, self.shift + a)

    def _in_base(self, v: int) -> bool:
        if v < 0:
            return False
        if v >= self._base_conductor:
            return True
        return self._base_members[v]

    @functools.cached_property
    def _base_members(self) -> List[bool]:
        members = [True]
        smallest = self.generators[0]
        run = 1
        while run < smallest:
            s = len(members)
            ok = any(s >= g and members[s - g] for g in self.generators)
            members.append(ok)
            run = run + 1 if ok else 0
        return members

    @functools.cached_property
    def _base_conductor(self) -> int:
        members = self._base_members
        c = len(members)
        while c > 0 and members[c - 1]:
            c -= 1
        return c

    def contains(self, v: int) -> bool:
        return self._in_base(v + self.shift)

    @property
    def minimum(self) -> int:
        return -self.shift

    @property
    def conductor(self) -> int:
        """Smallest c with every v >= c a member."""
        return self._base_conductor - self.shift

    @property
    def genus(self) -> int:
        return len(self.gaps())

    def gaps(self) -> List[int]:
        return [v for v in range(self.minimum, self.conductor) if not self.contains(v)]

    def elements_up_to(self, top: int) -> List[int]:
        return [v for v in range(self.minimum, top + 1) if self.contains(v)]


@dataclass
class OrderTerm:
    r: int
    value: int
    count: int


@dataclass
class OrderBoundReport:
    terms: List[OrderTerm]
    d_ord: Optional[int]
    certified: bool
    d_gop: Optional[int] = None

    @property
    def n_sequence(self) -> List[int]:
        return [t.count for t in self.terms]


def order_bound(s1: SemigroupOracle, s2: SemigroupOracle, sg: SemigroupOracle, limit: int = 256,
                n: Optional[int] = None, genus: Optional[int] = None, deg_g: Optional[int] = None) -> OrderBoundReport:
    """min over r >= 0 of n_r, counting pairs mu + nu = r + 1 over the F1- and F2-non-gaps.

    Shifts r + 1 that are not G-non-gaps leave C_Omega(G + rP) unchanged and are skipped.
    With (n, genus, deg_g) the sequence stops once C_Omega(G + rP) is zero.
    """
    if limit < 1:
        raise DomainError("Order bound needs limit >= 1")
    cutoff = None
    if n is not None and genus is not None and deg_g is not None:
        cutoff = n + 2 * genus - 2 - deg_g
    # counts grow strictly once value >= c1 + c2 - 1
    top = max(s1.conductor + s2.conductor - 1, 1)
    stop = min(limit, top) if cutoff is None else min(limit, top, cutoff + 1)
    certified = limit >= top or (cutoff is not None and limit > cutoff)
    terms: List[OrderTerm] = []
    for r in range(max(stop, 0)):
        value = r + 1
        if not sg.contains(value):
            continue
        second = set(s2.elements_up_to(value - s1.minimum))
        count = sum(1 for mu in s1.elements_up_to(value - s2.minimum) if value - mu in second)
        terms.append(OrderTerm(r, value, count))
    d_ord = min((t.count for t in terms), default=None)
    if not certified:
        log.warning(f"⚠️ Order bound not certified within limit={limit}")
    d_gop = deg_g + 2 - 2 * genus if deg_g is not None and genus is not None else None
    return OrderBoundReport(terms, d_ord, certified, d_gop)


def one_point_order_bound(backend: CurveBackend, m: int, n: int, split: int = 0, limit: int = 256) -> OrderBoundReport:
    """Order bound for C_Omega(m*P) with F1 = split*P, F2 = (m - split)*P at the base point."""
    h = SemigroupOracle.from_backend(backend)
    return order_bound(h.shifted(split), h.shifted(m - split), h.shifted(m), limit=limit,
                       n=n, genus=backend.genus, deg_g=m)


# ------------------------
# l(D) oracles and floor bounds
# ------------------------
COMPUTED = "computed"
TABLE = "table"
RIEMANN_ROCH = "riemann-roch"


@dataclass
class EllQuery:
    divisor: str
    value: int
    provenance: str


class EllOracle:
    """l(D) from a curve backend, or from a user-supplied table on a named curve."""

    def __init__(self, genus: int, canonical: Divisor, lookup: Callable[[Divisor], Optional[int]],
                 provenance: str, places: Optional[Dict[str, Place]] = None):
        self.genus = genus
        self.canonical = canonical
        self._lookup = lookup
        self.provenance = provenance
        self.places = places or {}
        self.queries: List[EllQuery] = []

    @classmethod
    def computed(cls, backend: CurveBackend) -> "EllOracle":
        return cls(backend.genus, backend.canonical_divisor(), backend.rr_dim, COMPUTED,
                   {"Pinf": backend.infinity()})

    @classmethod
    def table(cls, genus: int, entries: Dict[str, int], place_labels: Sequence[str] = ("P", "Q")) -> "EllOracle":
        """Entries keyed by divisor text such as "17P+2Q" or "K-14P-6Q"; K is canonical."""
        places = {label: Place.symbolic(label) for label in place_labels}
        places["K"] = Place.symbolic("K", 2 * genus - 2)
        values: Dict[Divisor, int] = {}
        for text, value in entries.items():
            divisor = parse_divisor(text, places)
            deg = divisor.degree
            if deg < 0 and value != 0:
                raise DomainError(f"l({text}) must be 0 for negative degree")
            if deg >= 0 and not max(0, deg + 1 - genus) <= value <= deg + 1:
                raise DomainError(f"l({text}) = {value} contradicts Riemann-Roch for g={genus}")
            values[divisor] = int(value)
        canonical = Divisor.point(places["K"])
        for divisor, value in values.items():
            dual = canonical - divisor
            if dual in values and value - values[dual] != divisor.degree + 1 - genus:
                raise DomainError(f"l({divisor}) and l(K - {divisor}) contradict Riemann-Roch")
        return cls(genus, canonical, values.get, TABLE, places)

    def divisor(self, text: str) -> Divisor:
        return parse_divisor(text, self.places)

    def __call__(self, divisor: Divisor) -> int:
        value, source = self._evaluate(divisor)
        self.queries.append(EllQuery(str(divisor), value, source))
        return value

    def _evaluate(self, divisor: Divisor) -> Tuple[int, str]:
        g, deg = self.genus, divisor.degree
        if deg < 0:
            return 0, RIEMANN_ROCH
        if self.provenance == COMPUTED:
            return self._lookup(divisor), COMPUTED
        found = self._lookup(divisor)
        if found is not None:
            return found, TABLE
        if not divisor.terms:
            return 1, RIEMANN_ROCH
        if divisor == self.canonical:
            return g, RIEMANN_ROCH
        if deg > 2 * g - 2:
            return deg + 1 - g, RIEMANN_ROCH
        dual = self._lookup(self.canonical - divisor)
        if dual is not None:
            return dual + deg + 1 - g, RIEMANN_ROCH
        raise CapabilityError(f"l({divisor}) is neither tabulated nor forced by Riemann-Roch")


class FloorKind(str, Enum):
    LM = "LM"
    GST = "GST"
    ABZ = "ABZ"
    MMP = "MMP"


@dataclass
class Hypothesis:
    name: str
    holds: bool
    provenance: str


@dataclass
class FloorReport:
    kind: FloorKind
    value: Optional[int]
    d_gop: Optional[int]
    hypotheses: List[Hypothesis] = field(default_factory=list)
    queries: List[EllQuery] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return all(h.holds for h in self.hypotheses)


def _support_hypothesis(name: str, divisor: Divisor, points: Optional[Sequence[Place]]) -> Hypothesis:
    if points is None:
        return Hypothesis(name, True, "user-asserted")
    return Hypothesis(name, not (set(divisor.support) & set(points)), "checked")


def _ell_equal(oracle: EllOracle, name: str, a: Divisor, b: Divisor) -> Hypothesis:
    """L(a) = L(b) for comparable divisors, through l(min(a, b)) = l(a) = l(b)."""
    start = len(oracle.queries)
    meet = Divisor({p: min(a[p], b[p]) for p in set(a.support) | set(b.support)})
    holds = oracle(a) == oracle(b) == oracle(meet)
    sources = {q.provenance for q in oracle.queries[start:]}
    return Hypothesis(name, holds, oracle.provenance if sources <= {COMPUTED} else "+".join(sorted(sources)))


def floor_bound(kind: Union[FloorKind, str], oracle: EllOracle, g_div: Divisor, a: Optional[Divisor] = None,
                b: Optional[Divisor] = None, z: Optional[Divisor] = None, c: Optional[Divisor] = None,
                points: Optional[Sequence[Place]] = None, n: Optional[int] = None,
                backend: Optional[CurveBackend] = None) -> FloorReport:
    """Floor-type lower bounds on d(C_Omega(G)) (MMP: on d(C_L(G)) for one-point G).

    A failed hypothesis raises BoundRefusedError carrying the report.
    """
    kind = FloorKind(kind)
    zero = Divisor()
    genus, canonical = oracle.genus, oracle.canonical
    d_gop = g_div.degree + 2 - 2 * genus
    report = FloorReport(kind, None, d_gop)

    if kind == FloorKind.MMP:
        if backend is None or n is None:
            raise DomainError("MMP floor needs the backend and the length n")
        inf = backend.infinity()
        m = g_div[inf]
        if g_div != Divisor.point(inf, m):
            raise CapabilityError("MMP floor implemented for one-point divisors")
        report.d_gop = n - m
        report.value = n - backend.floor_divisor(m)
        return report

    a = a if a is not None else zero
    b = b if b is not None else zero
    z = z if z is not None else zero

    if kind in (FloorKind.LM, FloorKind.ABZ):
        report.hypotheses.append(Hypothesis("G = A + B + Z", g_div == a + b + z, "checked"))
        report.hypotheses.append(Hypothesis("Z >= 0", z.is_effective(), "checked"))
        report.hypotheses.append(_support_hypothesis("supp Z disjoint from P", z, points))
        if kind == FloorKind.LM:
            report.hypotheses.append(_ell_equal(oracle, "L(A+Z) = L(A)", a + z, a))
            report.hypotheses.append(_ell_equal(oracle, "L(B+Z) = L(B)", b + z, b))
            value = d_gop + z.degree
        else:
            value = (oracle(a) - oracle(a - g_div + canonical) + oracle(b) - oracle(b - g_div + canonical))
    else:
        if c is None:
            raise DomainError("GST needs the divisor C")
        report.hypotheses.append(Hypothesis("G = A + B", g_div == a + b, "checked"))
        report.hypotheses.append(_support_hypothesis("supp(A+B+C+Z) disjoint from P", a + b + c + z, points))
        report.hypotheses.append(_ell_equal(oracle, "L(A) = L(A-Z)", a, a - z))
        report.hypotheses.append(_ell_equal(oracle, "L(B) = L(B+Z)", b, b + z))
        report.hypotheses.append(_ell_equal(oracle, "L(B) = L(C)", b, c))
        value = d_gop + z.degree + oracle(canonical - a) - oracle(canonical - g_div + c)

    report.queries = list(oracle.queries)
    if not report.accepted:
        failed = [h.name for h in report.hypotheses if not h.holds]
        log.warning(f"⚠️ {kind.value} bound refused: {failed}")
        raise BoundRefusedError(f"{kind.value} hypotheses failed: {', '.join(failed)}", report)
    report.value = value
    return report
