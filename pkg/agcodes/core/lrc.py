"""
Locally recoverable codes: Tamo-Barg on the projective line, the Hermitian
x-cover construction (with its higher local distance variant), the two-cover
availability construction, and local repair.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core import config
from agcodes.core.curves import (
    CurveBackend,
    CurveFunction,
    HermitianCurve,
    HermitianFunction,
    Place,
    ProjectiveLine,
    RationalFunction,
)
from agcodes.core.errors import (
    AmbiguousSolutionError,
    AssertionFailure,
    DomainError,
    NoSolutionError,
    RecoverySetDamagedError,
)
from agcodes.core.field_arith import FiniteField, poly_from_roots, poly_x
from agcodes.core.linear_codes import LinearCode, kernel, solve_affine

log = logging.getLogger(__name__)


# ------------------------
# Recovery structure
# ------------------------
@dataclass
class RecoveryStructure:
    """One or two partitions of the coordinates into recovery sets."""
    partitions: List[List[List[int]]]
    locality: List[int]
    local_distance: List[int]

    def validate(self, n: int) -> None:
        if not 1 <= len(self.partitions) <= 2:
            raise DomainError("A recovery structure holds one or two partitions")
        for which, (parts, ell) in enumerate(zip(self.partitions, self.locality)):
            seen = sorted(i for part in parts for i in part)
            if seen != list(range(n)):
                raise DomainError(f"Partition {which} does not cover 0..{n - 1} exactly once")
            if any(len(part) != ell + 1 for part in parts):
                raise DomainError(f"Partition {which} has a part whose size is not l + 1 = {ell + 1}")
        if any(rho < 2 for rho in self.local_distance):
            raise DomainError("Local distance must be at least 2")

    @property
    def availability(self) -> int:
        return len(self.partitions)

    def recovery_set(self, i: int, which: int = 0) -> List[int]:
        for part in self.partitions[which]:
            if i in part:
                return part
        raise DomainError(f"Position {i} is not covered by partition {which}")


@dataclass
class LocalityCheck:
    which: int
    part: List[int]
    distance: int
    required: int

    @property
    def ok(self) -> bool:
        return self.distance >= self.required


@dataclass
class LrcCode:
    code: LinearCode
    structure: RecoveryStructure
    backend: CurveBackend
    points: Tuple[Place, ...]
    basis: Tuple[CurveFunction, ...]
    construction: str
    designed_distance: Optional[int] = None
    checks: List[LocalityCheck] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def field(self) -> FiniteField:
        return self.code.field

    def __repr__(self) -> str:
        return (f"<{self.construction} LRC [{self.n}, {self.k}] locality={self.structure.locality} "
                f"rho={self.structure.local_distance} d*={self.designed_distance}>")


def verify_locality(code: LinearCode, structure: RecoveryStructure, jobs: Optional[int] = None) -> List[LocalityCheck]:
    """Exact distance of every restriction to a recovery set."""
    tasks = [(which, part) for which, parts in enumerate(structure.partitions) for part in parts]

    def check(task) -> LocalityCheck:
        which, part = task
        local = code.restrict(part)
        distance = local.min_distance() if local.k else len(part) + 1
        return LocalityCheck(which, list(part), distance, structure.local_distance[which])

    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(check, tasks))
    return [check(t) for t in tasks]


def _finish(code: LinearCode, structure: RecoveryStructure, backend: CurveBackend, points: Sequence[Place],
            basis: Sequence[CurveFunction], construction: str, designed: Optional[int]) -> LrcCode:
    structure.validate(code.n)
    checks = verify_locality(code, structure)
    bad = [c for c in checks if not c.ok]
    if bad:
        raise AssertionFailure(f"Recovery set {bad[0].part} has local distance {bad[0].distance} "
                               f"< {bad[0].required}")
    lrc = LrcCode(code, structure, backend, tuple(points), tuple(basis), construction, designed, checks)
    log.info(f"✅ Built {lrc!r}")
    return lrc


# ------------------------
# Invariant partitions
# ------------------------
class PartitionKind(str, Enum):
    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"


@dataclass
class InvariantPartition:
    """Point set (canonical indices), its parts (positions into ``points``) and g constant on each part."""
    points: List[int]
    parts: List[List[int]]
    g: galois.Poly


def invariant_partition(field_: FiniteField, kind: PartitionKind, size: int,
                        subgroup: Optional[Sequence[int]] = None) -> InvariantPartition:
    """Cosets of a subgroup of order ``size`` and a polynomial g constant on every coset.

    Multiplicative: cosets of the order-s subgroup of F_q^*, g = X^s.
    Additive: cosets x + H of an F_p-subspace H, g = prod_{h in H} (X - h).
    ``subgroup`` lists an F_p basis of H (canonical indices); by default the
    first a coordinate directions are used.
    """
    kind = PartitionKind(kind)
    q = field_.order
    if kind == PartitionKind.MULTIPLICATIVE:
        if size < 1 or (q - 1) % size:
            raise DomainError(f"Multiplicative parts need s | q - 1 = {q - 1}, got s = {size}")
        elements = field_.nonzero_elements()
        g = galois.Poly.Degrees([size], coeffs=field_.gf([1]))
    else:
        a = 0
        while field_.p ** a < size:
            a += 1
        if field_.p ** a != size or a > field_.degree:
            raise DomainError(f"Additive parts need s = p^a with a <= {field_.degree}, got s = {size}")
        generators = field_.from_index(list(subgroup) if subgroup is not None else [field_.p ** j for j in range(a)])
        span = field_.gf.Zeros(1)
        for h in np.atleast_1d(generators):
            span = field_.gf(np.concatenate([(span + field_.scalar(c) * h).view(np.ndarray) for c in range(field_.p)]))
        if np.unique(span.view(np.ndarray)).size != size:
            raise DomainError(f"Subgroup generators are not independent over GF({field_.p})")
        elements = field_.elements()
        g = poly_from_roots(field_, span)

    values = field_.to_index(g(elements))
    groups = {}
    for pos, v in enumerate(np.atleast_1d(values).tolist()):
        groups.setdefault(v, []).append(pos)
    parts = [groups[v] for v in sorted(groups, key=lambda v: groups[v][0])]
    if any(len(part) != size for part in parts):
        raise AssertionFailure(f"g = {g} is not constant on parts of size {size}")
    points = np.atleast_1d(field_.to_index(elements)).tolist()
    log.debug(f"{kind.value} partition of {field_}: {len(parts)} parts of size {size}, g = {g}")
    return InvariantPartition(points, parts, g)


# ------------------------
# Constructions
# ------------------------
def tamo_barg(field_: FiniteField, partition: InvariantPartition, k: int, ell: int) -> LrcCode:
    """Span of x^i g(x)^j, i < l, j < k/l, evaluated on the partitioned point set."""
    n = len(partition.points)
    if n % (ell + 1):
        raise DomainError(f"(l + 1) = {ell + 1} must divide n = {n}")
    if ell < 1 or k % ell:
        raise DomainError(f"l = {ell} must divide k = {k}")
    if partition.g.degree != ell + 1:
        raise DomainError(f"deg g = {partition.g.degree} must equal l + 1 = {ell + 1}")
    if any(len(part) != ell + 1 for part in partition.parts):
        raise DomainError("Parts must have size l + 1")
    top = k + k // ell - 2
    if top >= n:
        raise DomainError(f"k + k/l - 2 = {top} must be < n = {n}")

    line = ProjectiveLine(field_)
    points = [line.point(int(i)) for i in partition.points]
    x = poly_x(field_)
    basis = [RationalFunction(field_, x ** i * partition.g ** j) for j in range(k // ell) for i in range(ell)]
    code = LinearCode(field_, line.evaluate(basis, points), name="Tamo-Barg")
    if code.k != k:
        raise AssertionFailure(f"Tamo-Barg dimension {code.k} != {k}")
    structure = RecoveryStructure([partition.parts], [ell], [2])
    return _finish(code, structure, line, points, basis, "Tamo-Barg", n - top)


def btv_code(curve: HermitianCurve, deg_g: int, s: int) -> LrcCode:
    """sum_{i<s} f_i(x) y^i with deg f_i <= deg G, on all affine points; recovery sets are x-fibers."""
    q0 = curve.q0
    ell = q0 - 1
    if not 1 <= s <= ell:
        raise DomainError(f"s must lie in 1..{ell}, got {s}")
    if deg_g < 0:
        raise DomainError(f"deg G must be nonnegative, got {deg_g}")
    points = curve.affine_points()
    n = len(points)
    # (y)_inf has degree q0 + 1, (x)_inf has degree q0 = l + 1
    designed = n - (s - 1) * (q0 + 1) - (ell + 1) * deg_g
    if designed <= 0:
        raise DomainError(f"Distance bound n - (s-1)(q0+1) - (l+1)deg G = {designed} is not positive")
    basis = [HermitianFunction.monomial(curve, i, j) for j in range(s) for i in range(deg_g + 1)]
    code = LinearCode(curve.field, curve.evaluate(basis, points), name="BTV")
    if code.k != s * (deg_g + 1):
        raise AssertionFailure(f"BTV dimension {code.k} != s (deg G + 1) = {s * (deg_g + 1)}")
    structure = RecoveryStructure([curve.fibers("x")], [ell], [ell - s + 2])
    return _finish(code, structure, curve, points, basis, "BTV", designed)


def _fibers_of(points: Sequence[Place], axis: int) -> List[List[int]]:
    groups = {}
    for pos, p in enumerate(points):
        groups.setdefault(p.coords[axis], []).append(pos)
    return [groups[key] for key in sorted(groups)]


def availability2_code(curve: HermitianCurve, a: int, b: int) -> LrcCode:
    """Span of x^i y^j (i <= a, j <= b) on the points with x != 0; recovery along x- and y-fibers."""
    q0 = curve.q0
    if not 0 <= a <= q0 - 1:
        raise DomainError(f"a must lie in 0..{q0 - 1}, got {a}")
    if not 0 <= b <= q0 - 2:
        raise DomainError(f"b must lie in 0..{q0 - 2}, got {b}")
    # the y-map ramifies over the x = 0 fiber
    points = [p for p in curve.affine_points() if p.coords[0] != 0]
    basis = [HermitianFunction.monomial(curve, i, j) for j in range(b + 1) for i in range(a + 1)]
    code = LinearCode(curve.field, curve.evaluate(basis, points), name="availability-2")
    if code.k != (a + 1) * (b + 1):
        raise AssertionFailure(f"Availability-2 dimension {code.k} != (a+1)(b+1) = {(a + 1) * (b + 1)}")
    x_fibers, y_fibers = _fibers_of(points, 0), _fibers_of(points, 1)
    structure = RecoveryStructure([x_fibers, y_fibers], [q0 - 1, q0], [q0 - b, q0 + 1 - a])
    # weighted degree of x^a y^b bounds the number of zeros
    designed = len(points) - (a * q0 + b * (q0 + 1))
    return _finish(code, structure, curve, points, basis, "availability-2", designed)


# ------------------------
# Repair
# ------------------------
@dataclass
class Recovery:
    position: int
    value: object
    which: int
    downloaded: List[int]

    @property
    def downloads(self) -> int:
        return len(self.downloaded)


def local_recover(lrc: LrcCode, word, i: int, damaged: Iterable[int] = (), which: int = 0,
                  use: Optional[Sequence[int]] = None) -> Recovery:
    """Rebuild symbol i from its recovery set in partition ``which``.

    ``use`` picks the helper positions; any l - rho + 2 of them suffice.
    """
    word = word if isinstance(word, galois.FieldArray) else lrc.field.from_index(word)
    part = lrc.structure.recovery_set(i, which)
    damaged = set(int(j) for j in damaged) - {i}
    helpers = [j for j in part if j != i] if use is None else [int(j) for j in use]
    if i in helpers or any(j not in part for j in helpers):
        raise DomainError(f"Helpers {helpers} must lie in the recovery set {part} and exclude {i}")
    if damaged & set(helpers):
        raise RecoverySetDamagedError(f"Recovery set {part} of partition {which} holds erased symbols "
                                      f"{sorted(damaged & set(helpers))}")
    local = lrc.code.generator[:, part]
    at = {j: c for c, j in enumerate(part)}
    columns = local[:, [at[j] for j in helpers]]
    message, free = solve_affine(columns.T, word[helpers])
    if message is None:
        raise NoSolutionError(f"Helper symbols at {helpers} are not a local codeword")
    target = local[:, at[i]]
    if free.shape[0] and np.any((free @ target).view(np.ndarray)):
        raise AmbiguousSolutionError(f"{len(helpers)} helpers do not determine position {i}")
    value = message @ target
    log.debug(f"Recovered position {i} from {len(helpers)} symbols of partition {which}")
    return Recovery(i, value, which, helpers)


def local_dual_codeword(lrc: LrcCode, part: Sequence[int], i: Optional[int] = None):
    """A dual codeword supported on ``part`` (nonzero at i when given)."""
    local = lrc.code.generator[:, list(part)]
    candidates = kernel(local)
    gf = lrc.field.gf
    for row in candidates:
        if i is None or row[list(part).index(i)] != 0:
            dual = gf.Zeros(lrc.n)
            dual[list(part)] = row
            return dual
    raise DomainError(f"No dual codeword on {list(part)} covers position {i}")


def recover_with_dual(word, i: int, dual):
    """c_i = -(1/d_i) sum_{j != i} c_j d_j."""
    if dual[i] == 0:
        raise DomainError(f"Dual codeword vanishes at position {i}")
    others = word * dual
    others[i] = 0
    return -np.sum(others) / dual[i]
