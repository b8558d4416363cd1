"""
Evaluation (C_L) and residue (C_Ω) codes on a curve backend, plus the genus-0
families: generalized Reed-Solomon and classical Goppa codes.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core.curves import (
    CurveBackend,
    CurveFunction,
    Divisor,
    HermitianCurve,
    Mobius,
    Place,
    ProjectiveLine,
    RationalFunction,
)
from agcodes.core.errors import AssertionFailure, CapabilityError, DomainError
from agcodes.core.field_arith import FiniteField, coeffs_asc, irreducible_poly, lagrange_interpolate, poly_x
from agcodes.core.linear_codes import LinearCode, kernel

log = logging.getLogger(__name__)


class Family(str, Enum):
    CL = "CL"
    COMEGA = "COmega"
    GRS = "GRS"
    GOPPA = "Goppa"


@dataclass
class AGCode:
    code: LinearCode
    backend: CurveBackend
    points: Tuple[Place, ...]
    divisor: Divisor
    family: Family
    designed_distance: Optional[int]
    basis: Tuple[CurveFunction, ...] = ()
    parent: Optional["AGCode"] = None
    goppa_poly: Optional[galois.Poly] = None

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def field(self) -> FiniteField:
        return self.code.field

    @property
    def genus(self) -> int:
        return self.backend.genus

    def __repr__(self) -> str:
        return (f"<{self.family.value} [{self.n}, {self.k}] on {self.backend.name}, "
                f"G={self.divisor}, d*={self.designed_distance}>")


@dataclass
class DesignedParams:
    n: int
    k: int
    k_formula: Optional[int]
    k_lower: int
    d_star: Optional[int]
    singleton_defect: Optional[int]
    genus: int
    in_window: bool
    notes: List[str] = field(default_factory=list)


def _check_disjoint(points: Sequence[Place], divisor: Divisor) -> None:
    clash = set(points) & set(divisor.support)
    if clash:
        raise DomainError(f"Support of G meets the evaluation points at {sorted(map(str, clash))}")


def cl_code(backend: CurveBackend, points: Sequence[Place], divisor: Divisor) -> AGCode:
    points = tuple(points)
    backend.check_points(points)
    _check_disjoint(points, divisor)
    if not backend.supports(divisor):
        raise CapabilityError(f"{backend.name} cannot compute L({divisor})")
    n = len(points)
    basis = backend.rr_basis(divisor)
    if basis:
        matrix = backend.evaluate(basis, points)
    else:
        matrix = backend.field.gf.Zeros((0, n))
    code = LinearCode(backend.field, matrix, name="C_L")

    # k = l(G) - l(G - D_P)
    try:
        ell_kernel = backend.rr_dim(divisor - backend.point_sum(points))
    except CapabilityError:
        ell_kernel = 0 if divisor.degree < n else None
    if ell_kernel is not None and code.k != len(basis) - ell_kernel:
        raise AssertionFailure(f"dim C_L = {code.k}, expected l(G) - l(G-D_P) = {len(basis) - ell_kernel}")

    d_star = n - divisor.degree if divisor.degree < n else None
    log.debug(f"Built C_L [{n}, {code.k}] on {backend.name} with G={divisor}")
    return AGCode(code, backend, points, divisor, Family.CL, d_star, basis=tuple(basis))


def comega_code(backend: CurveBackend, points: Sequence[Place], divisor: Divisor) -> AGCode:
    points = tuple(points)
    evaluation = cl_code(backend, points, divisor)
    code = evaluation.code.dual()
    code.name = "C_Omega"
    n, g = len(points), backend.genus

    if isinstance(backend, HermitianCurve):
        m = divisor[backend.infinity()]
        if set(points) != set(backend.affine_points()) or divisor != backend.one_point(m):
            raise CapabilityError("Hermitian C_Omega needs all affine points and G = m*Pinf")
        # C_L(m Pinf)^⊥ = C_L((n + 2g - 2 - m) Pinf)
        twin = cl_code(backend, points, backend.one_point(n + 2 * g - 2 - m)).code
        if twin != code:
            raise AssertionFailure("Hermitian duality identity failed")
    elif isinstance(backend, ProjectiveLine) and backend.infinity() not in points:
        twin = cl_code(backend, points, logarithmic_differential_divisor(backend, points) - divisor).code
        if twin != code:
            raise AssertionFailure("C_Omega differs from C_L(div(dh/h) + D_P - G)")

    d_gop = divisor.degree + 2 - 2 * g
    if 2 * g - 2 < divisor.degree < n and code.k != n + g - 1 - divisor.degree:
        raise AssertionFailure(f"dim C_Omega = {code.k}, expected {n + g - 1 - divisor.degree}")
    return AGCode(code, backend, points, divisor, Family.COMEGA, d_gop if d_gop > 0 else None)


def logarithmic_differential_divisor(line: ProjectiveLine, points: Sequence[Place]) -> Divisor:
    """div(dh/h) + D_P = (h')_0 + (n - deg h' - 2) Pinf, where h = prod (x - x_i)."""
    xs = line.field.gf(np.array([int(line.x_of(p)) for p in points], dtype=np.int64))
    h = galois.Poly.Roots(xs)
    derivative = h.derivative()
    zeros = line.principal_divisor(RationalFunction(line.field, derivative)).positive_part()
    zeros = zeros - Divisor.point(line.infinity(), zeros[line.infinity()])
    return zeros + Divisor.point(line.infinity(), len(points) - derivative.degree - 2)


def grs_code(field_: FiniteField, x, y, k: int) -> AGCode:
    """Rows (y_j x_j^i) for i < k; asserted equal to C_L(P1, P, (k-1)Pinf - div(h))."""
    x = x if isinstance(x, galois.FieldArray) else field_.from_index(x)
    y = y if isinstance(y, galois.FieldArray) else field_.from_index(y)
    n = x.size
    if y.size != n:
        raise DomainError("x and y must have the same length")
    if np.unique(x.view(np.ndarray)).size != n:
        raise DomainError("GRS support x must have distinct entries")
    if np.any(y.view(np.ndarray) == 0):
        raise DomainError("GRS multiplier y must be nonzero")
    if not 0 <= k <= n:
        raise DomainError(f"GRS dimension must satisfy 0 <= k <= n, got k={k}, n={n}")

    rows = field_.gf.Zeros((k, n))
    for i in range(k):
        rows[i] = y * x ** i
    code = LinearCode(field_, rows, name="GRS")

    line = ProjectiveLine(field_)
    points = tuple(line.point(v) for v in x)
    h = RationalFunction(field_, lagrange_interpolate(field_, x, y))
    divisor = Divisor.point(line.infinity(), k - 1) - line.principal_divisor(h)
    evaluation = cl_code(line, points, divisor)
    if evaluation.code != code:
        raise AssertionFailure("GRS code differs from its C_L description")
    return AGCode(code, line, points, divisor, Family.GRS, n - k + 1, basis=evaluation.basis)


def rs_code(field_: FiniteField, x, k: int) -> AGCode:
    x = x if isinstance(x, galois.FieldArray) else field_.from_index(x)
    return grs_code(field_, x, field_.gf.Ones(x.size), k)


def goppa_parity_check(field_: FiniteField, x, f: galois.Poly) -> galois.FieldArray:
    """Column i holds the coefficients of (X - x_i)^-1 mod f."""
    r = f.degree
    checks = field_.gf.Zeros((r, x.size))
    X = poly_x(field_)
    for i, xi in enumerate(x):
        fx = f(xi)
        quotient = (f - galois.Poly(fx.reshape(1))) // (X - galois.Poly(xi.reshape(1)))
        checks[:, i] = coeffs_asc(quotient * -(fx ** -1), r)
    return checks


def goppa_code(field_: FiniteField, x, f: galois.Poly, base: FiniteField) -> AGCode:
    """Γ(x, f, base) = C_Omega(P1, P, (f)_0 - Pinf) ∩ base^n."""
    x = x if isinstance(x, galois.FieldArray) else field_.from_index(x)
    field_.check_subfield(base)
    if f.degree < 1:
        raise DomainError("Goppa polynomial must have positive degree")
    if np.any(f(x).view(np.ndarray) == 0):
        raise DomainError("Goppa polynomial has a root on the support")

    line = ProjectiveLine(field_)
    points = tuple(line.point(v) for v in x)
    zeros = line.principal_divisor(RationalFunction(field_, f)).positive_part()
    divisor = zeros - Divisor.point(line.infinity(), 1)
    parent = comega_code(line, points, divisor)
    code = parent.code.subfield_subcode(base)

    congruence = LinearCode(field_, kernel(goppa_parity_check(field_, x, f))).subfield_subcode(base)
    if congruence != code:
        raise AssertionFailure("Goppa congruence code differs from the subfield subcode of C_Omega")
    code.name = "Goppa"
    log.info(f"✅ Goppa code [{code.n}, {code.k}] over {base} (deg f = {f.degree})")
    return AGCode(code, line, points, divisor, Family.GOPPA, f.degree + 1, parent=parent, goppa_poly=f)


def designed_params(ag: AGCode) -> DesignedParams:
    n, k, g = ag.n, ag.k, ag.genus
    deg = ag.divisor.degree
    notes: List[str] = []
    if ag.family == Family.GRS:
        return DesignedParams(n, k, k, k, n - k + 1, 0, 0, True)
    if ag.family == Family.GOPPA:
        m = ag.parent.field.degree // ag.field.degree
        r = ag.goppa_poly.degree
        d_star = r + 1
        return DesignedParams(n, k, None, max(0, n - m * r), d_star, n + 1 - k - d_star, 0, False,
                              ["k >= n - m deg f for the subfield subcode"])
    if ag.family == Family.CL:
        in_window = 2 * g - 2 < deg < n
        k_formula = deg + 1 - g if in_window else None
        k_lower = max(0, deg + 1 - g) if deg < n else 0
    else:
        in_window = 2 * g - 2 < deg < n
        k_formula = n + g - 1 - deg if in_window else None
        k_lower = max(0, n + g - 1 - deg) if deg > 2 * g - 2 else 0
    if not in_window:
        notes.append("degree window violated: only bounds are reported")
    d_star = ag.designed_distance
    defect = n + 1 - k - d_star if d_star is not None else None
    if defect is not None and in_window and defect > g:
        raise AssertionFailure(f"Singleton defect {defect} exceeds genus {g}")
    return DesignedParams(n, k, k_formula, k_lower, d_star, defect, g, in_window, notes)


def floor_improved_distance(ag: AGCode) -> int:
    """n - deg floor(G) for a one-point C_L code."""
    if ag.family != Family.CL:
        raise DomainError("Floor refinement applies to C_L codes")
    inf = ag.backend.infinity()
    m = ag.divisor[inf]
    if ag.divisor != Divisor.point(inf, m):
        raise CapabilityError("Floor refinement implemented for one-point divisors")
    return ag.n - ag.backend.floor_divisor(m)


# ------------------------
# Diagonal equivalence and automorphisms (projective line)
# ------------------------
def diagonal_equivalence_vector(points: Sequence[Place], h: RationalFunction):
    """a = h(P). With div(h) = G1 - G2 this gives C_L(G1) * a = C_L(G2)."""
    a = h.field.gf([int(h.evaluate(p)) for p in points])
    if np.any(a.view(np.ndarray) == 0):
        raise DomainError("h vanishes on an evaluation point")
    return a


def suggest_shift(line: ProjectiveLine, points: Sequence[Place], divisor: Divisor) -> Tuple[Divisor, RationalFunction]:
    """G' ~ G with support off P, and h with div(h) = G' - G."""
    used = set(points)
    free = [p for p in line.rational_points() if p not in used]
    deg = divisor.degree
    if free:
        shifted = Divisor.point(free[0], deg)
    else:
        q2 = line.place_of(irreducible_poly(line.field, 2))
        q3 = line.place_of(irreducible_poly(line.field, 3))
        shifted = Divisor.point(q2, -deg) + Divisor.point(q3, deg)
    h = line.function_with_divisor(shifted - divisor)
    return shifted, h


@dataclass
class CodeAutomorphism:
    """c -> c P_sigma * v, i.e. out[i] = c[permutation[i]] * v[i]."""
    permutation: List[int]
    scaling: galois.FieldArray

    def apply(self, word):
        return word[..., self.permutation] * self.scaling


def code_automorphism(ag: AGCode, sigma: Mobius, h: Optional[RationalFunction] = None) -> CodeAutomorphism:
    line = ag.backend
    if not isinstance(line, ProjectiveLine):
        raise CapabilityError("Code automorphisms are implemented on the projective line")
    sigma.check(line.field)
    position = {p: i for i, p in enumerate(ag.points)}
    permutation = []
    for p in ag.points:
        image = sigma.apply(line, p)
        if image not in position:
            raise DomainError("sigma does not permute the evaluation points")
        permutation.append(position[image])
    if h is None:
        h = line.function_with_divisor(line.pullback(sigma, ag.divisor) - ag.divisor)
    try:
        values = [h.evaluate(p) for p in ag.points]
    except DomainError:
        raise DomainError("h has a pole on the evaluation points")
    scaling = line.field.gf([int(v) for v in values])
    if np.any(scaling.view(np.ndarray) == 0):
        raise DomainError("h has a zero on the evaluation points")
    auto = CodeAutomorphism(permutation, scaling)
    if ag.k and not ag.code.contains(auto.apply(ag.code.generator)):
        raise AssertionFailure("Mapped generators leave the code")
    return auto
