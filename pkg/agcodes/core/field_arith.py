"""
Finite fields GF(p) ⊂ GF(p^d1) ⊂ GF(p^(d1 d2)) ⊂ ... built deterministically.

Every tower level is represented twice:
  - canonically, as a coefficient vector over the previous level. The canonical
    index of an element is sum_t c_t * q_prev^t, nested down to GF(p). This index
    fixes element order, serialization and subfield embeddings.
  - as a flat ``galois`` field class used for all arithmetic.

Embedding a lower level is coefficient-vector inclusion, so an element of a
declared subfield keeps the same canonical index at every level above it.
"""
import functools
import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from agcodes.core.errors import DomainError

log = logging.getLogger(__name__)

# Degree of the zero polynomial
NEG_INF = float("-inf")

IndexLike = Union[int, Sequence[int], np.ndarray]


class FiniteField:
    """One level of a field tower, wrapping a flat ``galois`` field class."""

    def __init__(
            self,
            p: int,
            tower_degrees: Tuple[int, ...],
            gf: type,
            base: Optional["FiniteField"] = None,
            defining_poly: Optional[galois.Poly] = None,
            to_gf: Optional[np.ndarray] = None,
    ):
        self.p = p
        self.tower_degrees = tower_degrees
        self.degree = math.prod(tower_degrees) if tower_degrees else 1
        self.order = p ** self.degree
        self.gf = gf
        self.base = base
        self.defining_poly = defining_poly
        # canonical index -> galois integer (None means identity)
        self._to_gf = to_gf
        self._from_gf = None
        if to_gf is not None:
            self._from_gf = np.empty_like(to_gf)
            self._from_gf[to_gf] = np.arange(to_gf.size, dtype=to_gf.dtype)
        self.levels: Tuple["FiniteField", ...] = (base.levels if base else ()) + (self,)

    # ------------------------
    # Identity
    # ------------------------
    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def top_degree(self) -> int:
        """Degree over the immediate base level."""
        return self.tower_degrees[-1] if self.tower_degrees else 1

    def __eq__(self, other) -> bool:
        return (
                isinstance(other, FiniteField)
                and self.p == other.p
                and self.tower_degrees == other.tower_degrees
        )

    def __hash__(self) -> int:
        return hash((self.p, self.tower_degrees))

    def __repr__(self) -> str:
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}, tower={list(self.tower_degrees)})"

    def descriptor(self) -> dict:
        return {"p": self.p, "tower": list(self.tower_degrees)}

    # ------------------------
    # Canonical indices
    # ------------------------
    def from_index(self, index: IndexLike):
        idx = np.asarray(index, dtype=np.int64)
        if np.any(idx < 0) or np.any(idx >= self.order):
            raise DomainError(f"Element index out of range for {self}")
        if self._to_gf is not None:
            idx = self._to_gf[idx]
        return self.gf(idx)

    def to_index(self, x) -> Union[int, np.ndarray]:
        raw = np.asarray(x.view(np.ndarray), dtype=np.int64)
        if self._from_gf is not None:
            raw = self._from_gf[raw]
        if raw.ndim == 0:
            return int(raw)
        return raw

    def elements(self):
        """All elements in canonical order."""
        return self.from_index(np.arange(self.order))

    def nonzero_elements(self):
        return self.from_index(np.arange(1, self.order))

    def zero(self):
        return self.gf(0)

    def one(self):
        return self.gf(1)

    def scalar(self, k: int):
        """The image of the integer k in the prime subfield."""
        return self.gf(k % self.p)

    # ------------------------
    # Coefficient vectors over the immediate base
    # ------------------------
    def coefficients(self, x) -> List[int]:
        """Canonical indices of the coefficients of x over the immediate base."""
        if self.is_prime:
            return [self.to_index(x)]
        q_base = self.base.order
        t = self.to_index(x)
        coeffs = []
        for _ in range(self.top_degree):
            coeffs.append(t % q_base)
            t //= q_base
        return coeffs

    def element(self, coeffs: Sequence[int]):
        """Inverse of :meth:`coefficients`."""
        if len(coeffs) != self.top_degree:
            raise DomainError(f"Expected {self.top_degree} coefficients, got {len(coeffs)}")
        q_base = self.base.order if self.base else self.p
        t = 0
        for c in reversed(coeffs):
            if not 0 <= c < q_base:
                raise DomainError(f"Coefficient {c} is not a base element")
            t = t * q_base + int(c)
        return self.from_index(t)

    def prime_coordinates(self, x) -> np.ndarray:
        """Coordinates over GF(p): base-p digits of the canonical index."""
        idx = np.atleast_1d(np.asarray(self.to_index(x)))
        digits = np.empty(idx.shape + (self.degree,), dtype=np.int64)
        rest = idx.copy()
        for j in range(self.degree):
            digits[..., j] = rest % self.p
            rest //= self.p
        return digits

    # ------------------------
    # Subfields
    # ------------------------
    def check_subfield(self, sub: "FiniteField") -> None:
        if sub not in self.levels:
            raise DomainError(f"{sub} is not a declared subfield of {self}")

    def coordinates_over(self, x, sub: "FiniteField") -> np.ndarray:
        """Canonical indices of the sub-linear coordinates of x, shape (..., [self:sub])."""
        self.check_subfield(sub)
        m = self.degree // sub.degree
        rest = np.asarray(self.to_index(x), dtype=np.int64).copy()
        digits = np.empty(rest.shape + (m,), dtype=np.int64)
        for j in range(m):
            digits[..., j] = rest % sub.order
            rest //= sub.order
        return digits

    def embed(self, x, sub: "FiniteField"):
        self.check_subfield(sub)
        return self.from_index(sub.to_index(x))

    def in_subfield(self, x, sub: "FiniteField") -> np.ndarray:
        """Frobenius test: x lies in GF(q_sub) iff x^q_sub = x."""
        self.check_subfield(sub)
        return np.asarray((x ** sub.order) == x)

    def restrict(self, x, sub: "FiniteField"):
        if not np.all(self.in_subfield(x, sub)):
            raise DomainError(f"Element not in subfield {sub}")
        return sub.from_index(self.to_index(x))

    def trace(self, x, sub: "FiniteField"):
        self.check_subfield(sub)
        m = self.degree // sub.degree
        total = self.gf.Zeros(np.shape(x)) if np.ndim(x) else self.gf(0)
        power = x
        for _ in range(m):
            total = total + power
            power = power ** sub.order
        return total

    def norm(self, x, sub: "FiniteField"):
        self.check_subfield(sub)
        exponent = (self.order - 1) // (sub.order - 1)
        return x ** exponent

    # ------------------------
    # Randomness and encoding
    # ------------------------
    def random_elements(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        low = 1 if nonzero else 0
        return self.from_index(rng.integers(low, self.order, size=size))

    @property
    def symbol_width(self) -> int:
        return len(format(self.order - 1, "x"))

    def encode_hex(self, vector) -> str:
        width = self.symbol_width
        return "".join(format(int(i), f"0{width}x") for i in np.atleast_1d(self.to_index(vector)))

    def decode_hex(self, text: str) -> Tuple[np.ndarray, List[int]]:
        """Parse a hex vector. Erased symbols are written as a run of '?'."""
        width = self.symbol_width
        text = text.strip()
        if len(text) % width:
            raise DomainError(f"Hex vector length {len(text)} is not a multiple of {width}")
        indices, erasures = [], []
        for pos in range(len(text) // width):
            chunk = text[pos * width:(pos + 1) * width]
            if set(chunk) == {"?"}:
                erasures.append(pos)
                indices.append(0)
                continue
            try:
                value = int(chunk, 16)
            except ValueError:
                raise DomainError(f"Invalid hex symbol {chunk!r}")
            indices.append(value)
        return self.from_index(indices), erasures


# ------------------------
# Construction
# ------------------------
def make_field(p: int, tower_degrees: Sequence[int] = ()) -> FiniteField:
    """Build GF(p^(d1*d2*...)) as a tower. Same inputs give the same object."""
    degrees = tuple(int(d) for d in tower_degrees)
    if any(d < 1 for d in degrees):
        raise DomainError(f"Extension degrees must be positive, got {list(degrees)}")
    return _make_field(int(p), tuple(d for d in degrees if d > 1))


@functools.lru_cache(maxsize=None)
def _make_field(p: int, degrees: Tuple[int, ...]) -> FiniteField:
    if not galois.is_prime(p):
        raise DomainError(f"Characteristic {p} is not prime")
    field = FiniteField(p, (), galois.GF(p))
    for d in degrees:
        field = _extend(field, d)
    log.debug(f"Built {field}")
    return field


def _extend(base: FiniteField, d: int) -> FiniteField:
    f = irreducible_poly(base, d)
    degrees = base.tower_degrees + (d,)
    if base.is_prime:
        gf = galois.GF(base.p ** d, irreducible_poly=f)
        return FiniteField(base.p, degrees, gf, base, f)

    p = base.p
    q_base = base.order
    total = base.degree * d
    prime = galois.GF(p)

    def as_poly(index: int) -> galois.Poly:
        digits = []
        for _ in range(d):
            digits.append(index % q_base)
            index //= q_base
        return galois.Poly(base.from_index(digits), order="asc")

    def flat_coordinates(g: galois.Poly) -> np.ndarray:
        coeffs = np.zeros(d, dtype=np.int64)
        asc = base.to_index(g.coeffs[::-1])
        coeffs[:np.size(asc)] = np.atleast_1d(asc)
        index = sum(int(c) * q_base ** j for j, c in enumerate(coeffs))
        digits = []
        for _ in range(total):
            digits.append(index % p)
            index //= p
        return np.array(digits, dtype=np.int64)

    # first element (canonical order) generating the level over GF(p)
    for candidate in range(1, q_base ** d):
        theta = as_poly(candidate)
        power = galois.Poly.One(base.gf)
        columns = []
        for _ in range(total + 1):
            columns.append(flat_coordinates(power))
            power = (power * theta) % f
        basis = prime(np.array(columns[:total]).T)
        if np.linalg.matrix_rank(basis) == total:
            break
    else:
        raise DomainError(f"No generator found over GF({p}) for {base} extension of degree {d}")

    tail = np.linalg.solve(basis, prime(columns[total]))
    minimal = galois.Poly(prime(np.concatenate([(-tail).view(np.ndarray), [1]])), order="asc")
    gf = galois.GF(p ** total, irreducible_poly=minimal)

    every = np.arange(q_base ** d, dtype=np.int64)
    digits = np.empty((total, every.size), dtype=np.int64)
    rest = every.copy()
    for j in range(total):
        digits[j] = rest % p
        rest //= p
    power_coords = np.linalg.inv(basis) @ prime(digits)
    weights = p ** np.arange(total, dtype=np.int64)
    to_gf = weights @ power_coords.view(np.ndarray).astype(np.int64)
    return FiniteField(p, degrees, gf, base, f, to_gf=to_gf)


def irreducible_poly(field: FiniteField, d: int) -> galois.Poly:
    """Lex-smallest monic irreducible polynomial of degree d over ``field``.

    Candidates X^d + sum c_j X^j are ordered by sum idx(c_j) q^j, so the high
    coefficients are the most significant ones.
    """
    if d < 1:
        raise DomainError(f"Degree must be positive, got {d}")
    if field.is_prime:
        f = galois.irreducible_poly(field.p, d, method="min")
        return galois.Poly(f.coeffs.view(np.ndarray), field=field.gf)
    q = field.order
    for v in range(q ** d):
        digits = []
        for _ in range(d):
            digits.append(v % q)
            v //= q
        coeffs = field.gf(np.concatenate([field.from_index(digits).view(np.ndarray), [1]]))
        candidate = galois.Poly(coeffs, order="asc")
        if d == 1 or candidate.is_irreducible():
            return candidate
    raise DomainError(f"No irreducible polynomial of degree {d} over {field}")


# ------------------------
# Polynomials
# ------------------------
def poly(field: FiniteField, coeffs_asc) -> galois.Poly:
    """Polynomial from coefficients, lowest degree first."""
    arr = coeffs_asc if isinstance(coeffs_asc, galois.FieldArray) else field.gf(coeffs_asc)
    if arr.size == 0:
        return galois.Poly.Zero(field.gf)
    return galois.Poly(arr, order="asc")


def poly_x(field: FiniteField) -> galois.Poly:
    return galois.Poly.Identity(field.gf)


def is_zero_poly(f: galois.Poly) -> bool:
    return not np.any(f.coeffs)


def poly_degree(f: galois.Poly) -> Union[int, float]:
    return NEG_INF if is_zero_poly(f) else f.degree


def coeffs_asc(f: galois.Poly, length: Optional[int] = None):
    """Ascending coefficients, zero padded to ``length``."""
    asc = f.coeffs[::-1]
    if is_zero_poly(f):
        asc = asc[:0]
    if length is None:
        return asc
    if asc.size > length:
        raise DomainError(f"Polynomial of degree {f.degree} does not fit {length} coefficients")
    out = type(asc).Zeros(length)
    out[:asc.size] = asc
    return out


def poly_from_roots(field: FiniteField, roots) -> galois.Poly:
    if np.size(roots) == 0:
        return galois.Poly.One(field.gf)
    return galois.Poly.Roots(roots)


def lagrange_interpolate(field: FiniteField, xs, ys) -> galois.Poly:
    """Unique polynomial of degree < len(xs) through the pairs (xs[i], ys[i])."""
    xs = field.gf(xs) if not isinstance(xs, galois.FieldArray) else xs
    ys = field.gf(ys) if not isinstance(ys, galois.FieldArray) else ys
    if xs.size != ys.size:
        raise DomainError("Interpolation needs as many values as nodes")
    if xs.size == 0:
        return galois.Poly.Zero(field.gf)
    if np.unique(xs.view(np.ndarray)).size != xs.size:
        raise DomainError("Interpolation nodes must be distinct")
    if xs.size == 1:
        return galois.Poly(ys[:1])
    return galois.lagrange_poly(xs, ys)


def binomial(field: FiniteField, n: int, k: int):
    return field.scalar(math.comb(n, k) % field.p)


def taylor_shift(field: FiniteField, f: galois.Poly, a, order: int):
    """First ``order`` coefficients of f(a + u) as a power series in u."""
    asc = coeffs_asc(f)
    out = field.gf.Zeros(order)
    top = asc.size - 1
    for r in range(min(order, top + 1)):
        exps = np.arange(r, top + 1)
        binoms = field.gf([math.comb(int(e), r) % field.p for e in exps])
        out[r] = np.sum(asc[r:] * binoms * (a ** (exps - r)))
    return out


def poly_eval(f: galois.Poly, points):
    """Evaluate f at one element or an array of elements."""
    return f(points)
