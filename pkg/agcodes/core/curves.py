"""
Curve backends: rational points, Riemann-Roch bases and dimensions.

Two curves are fully explicit:
  - ``ProjectiveLine``: genus 0, every divisor supported (rational and
    higher-degree places).
  - ``HermitianCurve``: y^q0 + y = x^(q0+1) over GF(q0^2), one-point divisors
    m*P∞ plus shifts by the sum of all affine points.
"""
import logging
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core.errors import CapabilityError, DomainError
from agcodes.core.field_arith import (
    FiniteField,
    coeffs_asc,
    is_zero_poly,
    make_field,
    poly,
    poly_x,
    taylor_shift,
)

log = logging.getLogger(__name__)

AFFINE = "affine"
INFINITY = "infinity"
HIGHER = "place"
SYMBOLIC = "symbolic"


# ------------------------
# Places and divisors
# ------------------------
@dataclass(frozen=True)
class Place:
    kind: str
    coords: Tuple[int, ...] = ()
    degree: int = 1
    poly: Tuple[int, ...] = ()
    label: str = ""
    backend: str = ""

    @classmethod
    def symbolic(cls, label: str, degree: int = 1) -> "Place":
        """A named place on a curve the library has no backend for."""
        return cls(kind=SYMBOLIC, degree=degree, label=label)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1 and self.kind in (AFFINE, INFINITY)

    def sort_key(self):
        order = {AFFINE: 0, HIGHER: 1, INFINITY: 2, SYMBOLIC: 3}
        return order[self.kind], self.label, self.coords, self.degree, self.poly

    def __str__(self) -> str:
        if self.kind == INFINITY:
            return "Pinf"
        if self.kind == AFFINE:
            return "P(" + ",".join(str(c) for c in self.coords) + ")"
        if self.kind == HIGHER:
            return "Q[" + ",".join(str(c) for c in self.poly) + "]"
        return self.label


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    def __init__(self, terms: Optional[Dict[Place, int]] = None):
        self._terms = {p: int(m) for p, m in (terms or {}).items() if int(m) != 0}

    @classmethod
    def point(cls, place: Place, multiplicity: int = 1) -> "Divisor":
        return cls({place: multiplicity})

    @classmethod
    def sum_of(cls, places: Iterable[Place]) -> "Divisor":
        terms: Dict[Place, int] = {}
        for p in places:
            terms[p] = terms.get(p, 0) + 1
        return cls(terms)

    @property
    def terms(self) -> Dict[Place, int]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Place, int]]:
        return sorted(self._terms.items(), key=lambda pm: pm[0].sort_key())

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self._terms.items())

    @property
    def support(self) -> List[Place]:
        return [p for p, _ in self.items()]

    def __getitem__(self, place: Place) -> int:
        return self._terms.get(place, 0)

    def __add__(self, other: "Divisor") -> "Divisor":
        terms = dict(self._terms)
        for p, m in other._terms.items():
            terms[p] = terms.get(p, 0) + m
        return Divisor(terms)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -m for p, m in self._terms.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({p: k * m for p, m in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def __le__(self, other: "Divisor") -> bool:
        return (other - self).is_effective()

    def positive_part(self) -> "Divisor":
        return Divisor({p: m for p, m in self._terms.items() if m > 0})

    def negative_part(self) -> "Divisor":
        """The effective divisor -min(D, 0)."""
        return Divisor({p: -m for p, m in self._terms.items() if m < 0})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, m in self.items():
            coeff = "" if abs(m) == 1 else f"{abs(m)}"
            parts.append(("-" if m < 0 else "+") + coeff + str(p))
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    __str__ = __repr__


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_divisor(text: str, places: Dict[str, Place]) -> Divisor:
    """Parse sums like ``16P+2Q`` or ``K-14P-2Q`` over named places."""
    text = text.strip()
    if text in ("", "0"):
        return Divisor()
    terms: Dict[Place, int] = {}
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise DomainError(f"Cannot parse divisor {text!r} at position {pos}")
        sign, count, label = match.groups()
        if label not in places:
            raise DomainError(f"Unknown place {label!r} in divisor {text!r}")
        value = int(count) if count else 1
        terms[places[label]] = terms.get(places[label], 0) + (-value if sign == "-" else value)
        pos = match.end()
    return Divisor(terms)


# ------------------------
# Functions
# ------------------------
class CurveFunction(ABC):
    @abstractmethod
    def evaluate(self, place: Place):
        ...

    @abstractmethod
    def __mul__(self, other):
        ...

    @abstractmethod
    def __add__(self, other):
        ...

    @abstractmethod
    def scale(self, c):
        ...

    @abstractmethod
    def is_zero(self) -> bool:
        ...

    def __sub__(self, other):
        return self + other.scale(-other.field.one())

    def __pow__(self, e: int):
        result = self.one_like()
        for _ in range(e):
            result = result * self
        return result

    @abstractmethod
    def one_like(self):
        ...


class RationalFunction(CurveFunction):
    """num(x) / den(x) on the projective line."""

    def __init__(self, field: FiniteField, num: galois.Poly, den: Optional[galois.Poly] = None):
        den = galois.Poly.One(field.gf) if den is None else den
        if is_zero_poly(den):
            raise DomainError("Zero denominator")
        # keep the denominator monic
        lead = den.coeffs[0]
        self.field = field
        inverse = lead ** -1
        self.num = num * inverse
        self.den = den * inverse

    @classmethod
    def constant(cls, field: FiniteField, c) -> "RationalFunction":
        return cls(field, galois.Poly(field.gf.Zeros(1) + c))

    def one_like(self) -> "RationalFunction":
        return RationalFunction(self.field, galois.Poly.One(self.field.gf))

    def is_zero(self) -> bool:
        return is_zero_poly(self.num)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.field, self.num * c, self.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunction) and self.num * other.den == other.num * self.den

    def __repr__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def valuation_at_infinity(self) -> float:
        if self.is_zero():
            return float("inf")
        return self.den.degree - self.num.degree

    def evaluate(self, place: Place):
        gf = self.field.gf
        if place.kind == INFINITY:
            v = self.valuation_at_infinity()
            if v < 0:
                raise DomainError("Function has a pole at infinity")
            if v > 0:
                return gf(0)
            return self.num.coeffs[0] / self.den.coeffs[0]
        if place.kind != AFFINE:
            raise CapabilityError("Only rational places can be evaluated")
        x = self.field.from_index(place.coords[0])
        d = self.den(x)
        if d == 0:
            raise DomainError(f"Function has a pole at {place}")
        return self.num(x) / d

    def local_expansion(self, place: Place, order: int):
        """Power series in a local parameter: x - a at finite points, 1/x at infinity."""
        gf = self.field.gf
        if place.kind == INFINITY:
            v = self.valuation_at_infinity()
            if v < 0:
                raise DomainError("Function has a pole at infinity")
            top = max(self.num.degree, self.den.degree)
            num = coeffs_asc(self.num, top + 1)[::-1]
            den = coeffs_asc(self.den, top + 1)[::-1]
            return series_divide(num, den, order)
        x = self.field.from_index(place.coords[0])
        num = taylor_shift(self.field, self.num, x, order)
        den = taylor_shift(self.field, self.den, x, order)
        if den[0] == 0:
            raise DomainError(f"Function has a pole at {place}")
        return series_divide(num, den, order)


def series_multiply(a, b, order: int):
    gf = type(a)
    out = gf.Zeros(order)
    for i in range(min(order, a.size)):
        if a[i] == 0:
            continue
        span = min(order - i, b.size)
        out[i:i + span] += a[i] * b[:span]
    return out


def series_divide(a, b, order: int):
    """a / b as a power series, b[0] != 0."""
    gf = type(a)
    a = _pad(a, order)
    b = _pad(b, order)
    inv0 = b[0] ** -1
    out = gf.Zeros(order)
    for r in range(order):
        acc = a[r]
        if r:
            acc = acc - np.sum(out[:r] * b[r:0:-1])
        out[r] = acc * inv0
    return out


def _pad(a, order: int):
    gf = type(a)
    out = gf.Zeros(order)
    span = min(order, a.size)
    out[:span] = a[:span]
    return out


class HermitianFunction(CurveFunction):
    """sum_j F_j(x) y^j with j < q0, reduced modulo y^q0 + y - x^(q0+1)."""

    def __init__(self, curve: "HermitianCurve", parts: Sequence[galois.Poly]):
        q0 = curve.q0
        if len(parts) > q0:
            raise DomainError("Hermitian function must be reduced in y")
        zero = galois.Poly.Zero(curve.field.gf)
        self.curve = curve
        self.field = curve.field
        self.parts: Tuple[galois.Poly, ...] = tuple(parts) + (zero,) * (q0 - len(parts))

    @classmethod
    def monomial(cls, curve: "HermitianCurve", i: int, j: int, c=None) -> "HermitianFunction":
        gf = curve.field.gf
        coeff = gf([1]) if c is None else gf.Zeros(1) + c
        parts = [galois.Poly.Zero(gf)] * curve.q0
        parts[j] = galois.Poly.Degrees([i], coeffs=coeff)
        return cls(curve, parts)

    @classmethod
    def from_x_poly(cls, curve: "HermitianCurve", f: galois.Poly) -> "HermitianFunction":
        return cls(curve, [f])

    def one_like(self) -> "HermitianFunction":
        return HermitianFunction(self.curve, [galois.Poly.One(self.field.gf)])

    def is_zero(self) -> bool:
        return all(is_zero_poly(f) for f in self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianFunction) and all(a == b for a, b in zip(self.parts, other.parts))

    def __add__(self, other: "HermitianFunction") -> "HermitianFunction":
        return HermitianFunction(self.curve, [a + b for a, b in zip(self.parts, other.parts)])

    def scale(self, c) -> "HermitianFunction":
        return HermitianFunction(self.curve, [a * c for a in self.parts])

    def __mul__(self, other: "HermitianFunction") -> "HermitianFunction":
        q0 = self.curve.q0
        gf = self.field.gf
        prod = [galois.Poly.Zero(gf) for _ in range(2 * q0 - 1)]
        for i, a in enumerate(self.parts):
            if is_zero_poly(a):
                continue
            for j, b in enumerate(other.parts):
                if not is_zero_poly(b):
                    prod[i + j] = prod[i + j] + a * b
        # y^q0 = x^(q0+1) - y
        shift = galois.Poly.Degrees([q0 + 1], coeffs=gf([1]))
        for k in range(2 * q0 - 2, q0 - 1, -1):
            top = prod[k]
            if is_zero_poly(top):
                continue
            prod[k - q0] = prod[k - q0] + top * shift
            prod[k - q0 + 1] = prod[k - q0 + 1] - top
            prod[k] = galois.Poly.Zero(gf)
        return HermitianFunction(self.curve, prod[:q0])

    def terms(self) -> List[Tuple[int, int, object]]:
        out = []
        for j, f in enumerate(self.parts):
            if is_zero_poly(f):
                continue
            for i, c in zip(f.nonzero_degrees, f.nonzero_coeffs):
                out.append((int(i), j, c))
        return out

    def pole_order(self) -> int:
        q0 = self.curve.q0
        if self.is_zero():
            raise DomainError("The zero function has no pole order")
        return max(i * q0 + j * (q0 + 1) for i, j, _ in self.terms())

    def evaluate(self, place: Place):
        gf = self.field.gf
        if place.kind == INFINITY:
            if self.is_zero():
                return gf(0)
            if self.pole_order() > 0:
                raise DomainError("Function has a pole at infinity")
            return self.parts[0].coeffs[-1]
        if place.kind != AFFINE:
            raise CapabilityError("Only rational places can be evaluated")
        x, y = self.field.from_index(list(place.coords))
        value = gf(0)
        y_power = gf(1)
        for f in self.parts:
            value = value + f(x) * y_power
            y_power = y_power * y
        return value

    def local_expansion(self, place: Place, order: int):
        """Power series in the local parameter u = x - x(P) at an affine point."""
        if place.kind != AFFINE:
            raise CapabilityError("Hermitian local expansions are taken at affine points")
        field = self.field
        gf = field.gf
        q0 = self.curve.q0
        x, y = field.from_index(list(place.coords))
        w = self.curve.y_expansion(x, order)
        y_series = w.copy()
        y_series[0] = y
        out = gf.Zeros(order)
        y_power = _pad(gf([1]), order)
        for f in self.parts:
            if not is_zero_poly(f):
                out = out + series_multiply(taylor_shift(field, f, x, order), y_power, order)
            y_power = series_multiply(y_power, y_series, order)
        return out

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*x^{i}*y^{j}" for i, j, c in self.terms())


# ------------------------
# Backends
# ------------------------
class CurveBackend(ABC):
    name: str = "curve"
    genus: int = 0

    def __init__(self, field: FiniteField):
        self.field = field

    @abstractmethod
    def rational_points(self) -> List[Place]:
        ...

    @abstractmethod
    def infinity(self) -> Place:
        ...

    @abstractmethod
    def rr_basis(self, divisor: Divisor) -> List[CurveFunction]:
        ...

    @abstractmethod
    def rr_dim(self, divisor: Divisor) -> int:
        ...

    @abstractmethod
    def canonical_divisor(self) -> Divisor:
        ...

    @abstractmethod
    def supports(self, divisor: Divisor) -> bool:
        """Capability descriptor: can rr_basis handle this divisor?"""

    @abstractmethod
    def weierstrass_generators(self) -> List[int]:
        """Generators of the Weierstrass semigroup at the point at infinity."""

    def weierstrass_semigroup(self) -> List[int]:
        return sorted(self.weierstrass_generators())

    def affine_points(self) -> List[Place]:
        return [p for p in self.rational_points() if p.kind == AFFINE]

    def is_nongap(self, v: int) -> bool:
        """Membership of v in the Weierstrass semigroup at infinity."""
        if v < 0:
            return False
        reachable = [True] + [False] * v
        for s in range(1, v + 1):
            reachable[s] = any(s >= g and reachable[s - g] for g in self.weierstrass_generators())
        return reachable[v]

    def floor_divisor(self, m: int) -> int:
        """Largest non-gap <= m, so that L(m*Pinf) = L(floor*Pinf)."""
        if m < 0:
            raise DomainError("Floor of a negative one-point divisor is undefined")
        while not self.is_nongap(m):
            m -= 1
        return m

    def point_sum(self, points: Iterable[Place]) -> Divisor:
        return Divisor.sum_of(points)

    def one_point(self, m: int) -> Divisor:
        return Divisor.point(self.infinity(), m)

    def evaluate(self, functions: Sequence[CurveFunction], points: Sequence[Place]) -> galois.FieldArray:
        gf = self.field.gf
        matrix = gf.Zeros((len(functions), len(points)))
        for i, f in enumerate(functions):
            for j, p in enumerate(points):
                matrix[i, j] = f.evaluate(p)
        return matrix

    def local_expansion(self, f: CurveFunction, point: Place, order: int):
        return f.local_expansion(point, order)

    def check_points(self, points: Sequence[Place]) -> None:
        if len(set(points)) != len(points):
            raise DomainError("Evaluation points must be distinct")
        known = set(self.rational_points())
        for p in points:
            if not p.is_rational or p not in known:
                raise DomainError(f"{p} is not a rational point of {self.name}")

    def descriptor(self) -> dict:
        return {"curve": self.name, "field": self.field.descriptor()}


class ProjectiveLine(CurveBackend):
    name = "p1"
    genus = 0

    def __init__(self, field: FiniteField):
        super().__init__(field)
        self._points = [Place(AFFINE, (i,), backend=self.name) for i in range(field.order)]
        self._infinity = Place(INFINITY, backend=self.name)

    def __repr__(self) -> str:
        return f"ProjectiveLine({self.field})"

    def rational_points(self) -> List[Place]:
        return self._points + [self._infinity]

    def infinity(self) -> Place:
        return self._infinity

    def point(self, x) -> Place:
        idx = x if isinstance(x, int) else self.field.to_index(x)
        return self._points[int(idx)]

    def x_of(self, place: Place):
        return self.field.from_index(place.coords[0])

    def place_of(self, f: galois.Poly) -> Place:
        """Place of a monic irreducible polynomial (rational for degree 1)."""
        if f.degree < 1 or f.coeffs[0] != 1:
            raise DomainError("Places are given by monic polynomials of positive degree")
        if f.degree == 1:
            return self.point(-f.coeffs[1])
        if not f.is_irreducible():
            raise DomainError(f"{f} is not irreducible")
        return Place(HIGHER, degree=f.degree, poly=tuple(np.atleast_1d(self.field.to_index(f.coeffs[::-1])).tolist()),
                     backend=self.name)

    def place_poly(self, place: Place) -> galois.Poly:
        if place.kind == AFFINE:
            return poly_x(self.field) - galois.Poly(self.x_of(place).reshape(1))
        if place.kind == HIGHER:
            return poly(self.field, self.field.from_index(list(place.poly)))
        raise DomainError(f"{place} has no local polynomial")

    def supports(self, divisor: Divisor) -> bool:
        return all(p.backend == self.name and p.kind in (AFFINE, INFINITY, HIGHER) for p in divisor.support)

    def _check(self, divisor: Divisor) -> None:
        if not self.supports(divisor):
            raise CapabilityError(f"Divisor {divisor} is not a divisor on {self.name}")

    def _finite_product(self, divisor: Divisor) -> galois.Poly:
        result = galois.Poly.One(self.field.gf)
        for place, m in divisor.items():
            if place.kind != INFINITY and m > 0:
                result = result * self.place_poly(place) ** m
        return result

    def rr_basis(self, divisor: Divisor) -> List[RationalFunction]:
        """{N_-(x) x^i / D_+(x) : 0 <= i <= deg D} with monic normalizers."""
        self._check(divisor)
        if divisor.degree < 0:
            return []
        denominator = self._finite_product(divisor.positive_part())
        numerator = self._finite_product(divisor.negative_part())
        x = poly_x(self.field)
        return [RationalFunction(self.field, numerator * x ** i, denominator) for i in range(divisor.degree + 1)]

    def rr_dim(self, divisor: Divisor) -> int:
        self._check(divisor)
        return max(0, divisor.degree + 1)

    def canonical_divisor(self) -> Divisor:
        return Divisor.point(self._infinity, -2)

    def weierstrass_generators(self) -> List[int]:
        return [1]

    def principal_divisor(self, f: RationalFunction) -> Divisor:
        if f.is_zero():
            raise DomainError("The zero function has no divisor")
        terms: Dict[Place, int] = {}
        for part, sign in ((f.num, 1), (f.den, -1)):
            if part.degree == 0:
                continue
            monic = part * (part.coeffs[0] ** -1)
            factors, multiplicities = monic.factors()
            for factor, m in zip(factors, multiplicities):
                place = self.place_of(factor)
                terms[place] = terms.get(place, 0) + sign * int(m)
        terms[self._infinity] = terms.get(self._infinity, 0) + f.den.degree - f.num.degree
        return Divisor(terms)

    def function_with_divisor(self, divisor: Divisor) -> RationalFunction:
        """The monic h with div(h) = D, for D of degree 0 (every such D is principal)."""
        self._check(divisor)
        if divisor.degree != 0:
            raise DomainError(f"Only degree-0 divisors are principal on P1, got degree {divisor.degree}")
        return RationalFunction(self.field, self._finite_product(divisor.positive_part()),
                                self._finite_product(divisor.negative_part()))

    def function_from_divisor_shift(self, g1: Divisor, g2: Divisor) -> RationalFunction:
        """Monic h with div(h) = G1 - G2."""
        return self.function_with_divisor(g1 - g2)

    def pullback(self, sigma: "Mobius", divisor: Divisor) -> Divisor:
        """sigma^* D = sum v_P(D) sigma^-1(P) (rational places only)."""
        self._check(divisor)
        inverse = sigma.inverse()
        terms: Dict[Place, int] = {}
        for place, m in divisor.items():
            if not place.is_rational:
                raise CapabilityError("Pullback is implemented for rational places only")
            image = inverse.apply(self, place)
            terms[image] = terms.get(image, 0) + m
        return Divisor(terms)


@dataclass(frozen=True)
class Mobius:
    """x -> (a x + b) / (c x + d), coefficients as canonical indices."""
    a: int
    b: int
    c: int
    d: int

    def coefficients(self, field: FiniteField):
        return field.from_index([self.a, self.b, self.c, self.d])

    def check(self, field: FiniteField) -> None:
        a, b, c, d = self.coefficients(field)
        if a * d - b * c == 0:
            raise DomainError("Mobius map is degenerate (ad - bc = 0)")

    def inverse(self) -> "InverseMobius":
        return InverseMobius(self)

    def apply(self, line: ProjectiveLine, place: Place) -> Place:
        return _mobius_apply(line, self.coefficients(line.field), place)

    def compose(self, line: ProjectiveLine, f: RationalFunction) -> RationalFunction:
        """f o sigma."""
        a, b, c, d = self.coefficients(line.field)
        gf = line.field.gf
        lin_num = _linear_poly(gf, a, b)
        lin_den = _linear_poly(gf, c, d)
        top = max(f.num.degree, f.den.degree)

        def homogenize(g: galois.Poly) -> galois.Poly:
            asc = coeffs_asc(g, top + 1)
            total = galois.Poly.Zero(gf)
            for e in range(top + 1):
                if asc[e] != 0:
                    total = total + (lin_num ** e) * (lin_den ** (top - e)) * asc[e]
            return total

        return RationalFunction(line.field, homogenize(f.num), homogenize(f.den))


@dataclass(frozen=True)
class InverseMobius:
    forward: Mobius

    def apply(self, line: ProjectiveLine, place: Place) -> Place:
        a, b, c, d = self.forward.coefficients(line.field)
        return _mobius_apply(line, type(a)([int(x) for x in (d, -b, -c, a)]), place)


def _linear_poly(gf, hi, lo) -> galois.Poly:
    coeffs = gf.Zeros(2)
    coeffs[0], coeffs[1] = hi, lo
    return galois.Poly(coeffs)


def _mobius_apply(line: ProjectiveLine, coeffs, place: Place) -> Place:
    a, b, c, d = coeffs
    if place.kind == INFINITY:
        return line.infinity() if c == 0 else line.point(a / c)
    x = line.x_of(place)
    den = c * x + d
    if den == 0:
        return line.infinity()
    return line.point((a * x + b) / den)


class HermitianCurve(CurveBackend):
    name = "hermitian"

    def __init__(self, q0: int):
        if not galois.is_prime_power(q0):
            raise DomainError(f"q0 = {q0} is not a prime power")
        primes, exponents = galois.factors(q0)
        p, e = int(primes[0]), int(exponents[0])
        super().__init__(make_field(p, [2 * e]))
        self.q0 = q0
        self.genus = q0 * (q0 - 1) // 2
        self._infinity = Place(INFINITY, backend=self.name)
        self._points = self._enumerate_affine()
        self._affine_sum = Divisor.sum_of(self._points)
        log.info(f"✅ Hermitian curve q0={q0}: {len(self._points)} affine points, genus {self.genus}")

    def __repr__(self) -> str:
        return f"HermitianCurve(q0={self.q0})"

    def _enumerate_affine(self) -> List[Place]:
        field = self.field
        elems = field.elements()
        trace_idx = np.asarray(field.to_index(elems ** self.q0 + elems))
        norm_idx = np.asarray(field.to_index(elems ** (self.q0 + 1)))
        by_trace: Dict[int, List[int]] = {}
        for y, t in enumerate(trace_idx.tolist()):
            by_trace.setdefault(t, []).append(y)
        points = []
        for x, nx in enumerate(norm_idx.tolist()):
            for y in by_trace.get(nx, []):
                points.append(Place(AFFINE, (x, y), backend=self.name))
        return points

    def rational_points(self) -> List[Place]:
        return self._points + [self._infinity]

    def affine_points(self) -> List[Place]:
        return list(self._points)

    def infinity(self) -> Place:
        return self._infinity

    @property
    def n_affine(self) -> int:
        return len(self._points)

    def weierstrass_generators(self) -> List[int]:
        return [self.q0, self.q0 + 1]

    def canonical_divisor(self) -> Divisor:
        return Divisor.point(self._infinity, 2 * self.genus - 2)

    def _shape(self, divisor: Divisor) -> Optional[Tuple[int, int]]:
        """(m, c) when D = m*P∞ - c*D_aff, else None."""
        m = divisor[self._infinity]
        rest = divisor - Divisor.point(self._infinity, m)
        if not rest.terms:
            return m, 0
        mults = set(rest.terms.values())
        if len(mults) == 1 and set(rest.terms) == set(self._points):
            return m, -mults.pop()
        return None

    def supports(self, divisor: Divisor) -> bool:
        return self._shape(divisor) is not None

    def nongaps_up_to(self, m: int) -> List[Tuple[int, int, int]]:
        """(pole order, i, j) for x^i y^j with pole order <= m, sorted."""
        q0 = self.q0
        out = []
        for j in range(q0):
            i = 0
            while i * q0 + j * (q0 + 1) <= m:
                out.append((i * q0 + j * (q0 + 1), i, j))
                i += 1
        return sorted(out)

    def rr_basis(self, divisor: Divisor) -> List[HermitianFunction]:
        shape = self._shape(divisor)
        if shape is None:
            raise CapabilityError(f"Hermitian backend supports m*Pinf - c*D_aff only, got {divisor}")
        m, c = shape
        if c < 0:
            raise CapabilityError("Hermitian rr_basis needs c >= 0 in m*Pinf - c*D_aff")
        basis = [HermitianFunction.monomial(self, i, j) for _, i, j in self.nongaps_up_to(m - c * self.n_affine)]
        if c == 0:
            return basis
        vanish = self.affine_vanishing_function() ** c
        return [vanish * f for f in basis]

    def rr_dim(self, divisor: Divisor) -> int:
        shape = self._shape(divisor)
        if shape is None:
            raise CapabilityError(f"Hermitian backend supports m*Pinf - c*D_aff only, got {divisor}")
        m, c = shape
        return len(self.nongaps_up_to(m - c * self.n_affine))

    def affine_vanishing_function(self) -> HermitianFunction:
        """x^(q0^2) - x, with divisor D_aff - q0^3 * Pinf."""
        q = self.field.order
        gf = self.field.gf
        return HermitianFunction.from_x_poly(self, galois.Poly.Degrees([q, 1], coeffs=gf([1, self.field.p - 1])))

    def affine_sum(self) -> Divisor:
        return self._affine_sum

    def coordinates(self, place: Place):
        return self.field.from_index(list(place.coords))

    def fibers(self, which: str = "x") -> List[List[int]]:
        """Indices (into affine_points) grouped by x or y value, in canonical order."""
        if which not in ("x", "y"):
            raise DomainError(f"Unknown fiber map {which!r}")
        axis = 0 if which == "x" else 1
        groups: Dict[int, List[int]] = {}
        for idx, p in enumerate(self._points):
            groups.setdefault(p.coords[axis], []).append(idx)
        return [groups[key] for key in sorted(groups)]

    def y_expansion(self, x, order: int):
        """w(u) with y = y(P) + w(u) near an affine point with x(P) = x, u = x - x(P)."""
        gf = self.field.gf
        q0 = self.q0
        rhs = gf.Zeros(order)
        # (x+u)^(q0+1) - x^(q0+1) = x^q0 u + x u^q0 + u^(q0+1)
        if order > 1:
            rhs[1] += x ** q0
        if order > q0:
            rhs[q0] += x
        if order > q0 + 1:
            rhs[q0 + 1] += gf(1)
        w = gf.Zeros(order)
        for _ in range(order):
            w_power = _pad(gf([1]), order)
            for _ in range(q0):
                w_power = series_multiply(w_power, w, order)
            w = rhs - w_power
        return w


def backend_from_descriptor(curve: str, field: Dict, q0: Optional[int] = None) -> CurveBackend:
    if curve == "p1":
        return ProjectiveLine(make_field(field["p"], field.get("tower", [])))
    if curve == "hermitian":
        if q0 is None:
            raise DomainError("Hermitian descriptor needs q0")
        return HermitianCurve(q0)
    raise DomainError(f"Unknown curve {curve!r}")
