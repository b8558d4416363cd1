"""
Chudnovsky-type bilinear multiplication in GF(q^k) over GF(q) by evaluation
and interpolation on the projective line.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import galois
import numpy as np

from agcodes.core.bounds import EllOracle
from agcodes.core.curves import Divisor, ProjectiveLine
from agcodes.core.errors import AssertionFailure, DomainError
from agcodes.core.field_arith import FiniteField, coeffs_asc, lagrange_interpolate, make_field
from agcodes.core.rr_conditions import ConditionKind, ConditionReport, rr_condition_check

log = logging.getLogger(__name__)


@dataclass
class BilinearAlgorithm:
    """x * x' = sum_i alpha_i(x) beta_i(x') omega_i.

    alpha and beta hold the linear forms as rows acting on coordinate vectors
    over the base field; omega lists the output elements of the extension.
    """
    base: FiniteField
    extension: FiniteField
    k: int
    points: galois.FieldArray
    alpha: galois.FieldArray
    beta: galois.FieldArray
    omega: galois.FieldArray
    certificate: List[ConditionReport] = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.alpha.shape[0]

    @property
    def symmetric(self) -> bool:
        return bool(np.array_equal(self.alpha.view(np.ndarray), self.beta.view(np.ndarray)))


def coordinates(alg: BilinearAlgorithm, x) -> galois.FieldArray:
    """Coordinates of x over the base, lowest power of the generator first."""
    if alg.k == 1:
        return alg.base.from_index([alg.extension.to_index(x)])
    return alg.base.from_index(alg.extension.coefficients(x))


def from_coordinates(alg: BilinearAlgorithm, coords) -> galois.FieldArray:
    indices = np.atleast_1d(alg.base.to_index(coords)).tolist()
    if alg.k == 1:
        return alg.extension.from_index(indices[0])
    return alg.extension.element(indices)


def cc_build(q: int, k: int) -> BilinearAlgorithm:
    """Length 2k - 1 algorithm with G = (k-1)Pinf, Q the degree-k place of the defining polynomial."""
    if not galois.is_prime_power(q):
        raise DomainError(f"q = {q} is not a prime power")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    n = 2 * k - 1
    if n > q:
        raise DomainError(f"Length 2k - 1 = {n} needs at least that many rational points, but q = {q}")
    primes, exponents = galois.factors(q)
    base = make_field(int(primes[0]), [int(exponents[0])])
    extension = make_field(base.p, list(base.tower_degrees) + [k])
    gf = base.gf

    points = base.from_index(list(range(n)))
    powers = np.arange(k)
    alpha = gf(np.stack([(points ** int(e)).view(np.ndarray) for e in powers], axis=1))

    omega = extension.gf.Zeros(n)
    if k == 1:
        omega[:] = 1
        certificate = []
    else:
        modulus = extension.defining_poly
        for i in range(n):
            unit = gf.Zeros(n)
            unit[i] = 1
            lagrange = lagrange_interpolate(base, points, unit)
            omega[i] = extension.element(np.atleast_1d(base.to_index(coeffs_asc(lagrange % modulus, k))).tolist())
        line = ProjectiveLine(base)
        oracle = EllOracle.computed(line)
        q_place = Divisor.point(line.place_of(modulus))
        g_div = Divisor.point(line.infinity(), k - 1)
        certificate = [rr_condition_check(ConditionKind.MULTIPLICATION, oracle, g_div,
                                          [line.point(p) for p in points], q_div=q_place)]
        if not certificate[0].passed:
            raise AssertionFailure(f"Evaluation-interpolation conditions fail for q={q}, k={k}")

    alg = BilinearAlgorithm(base, extension, k, points, alpha, alpha.copy(), omega, certificate)
    log.info(f"✅ Built bilinear algorithm of length {alg.length} for {extension} over {base}")
    return alg


def cc_multiply(alg: BilinearAlgorithm, x, y):
    u = alg.alpha @ coordinates(alg, x)
    v = alg.beta @ coordinates(alg, y)
    products = alg.extension.embed(u * v, alg.base) if alg.k > 1 else u * v
    return np.sum(products * alg.omega)


def _basis(alg: BilinearAlgorithm) -> List:
    gf = alg.base.gf
    out = []
    for i in range(alg.k):
        unit = gf.Zeros(alg.k)
        unit[i] = 1
        out.append(from_coordinates(alg, unit))
    return out


def cc_verify(alg: BilinearAlgorithm) -> List[Tuple[int, int]]:
    """Basis pairs (i, j) where the algorithm disagrees with field multiplication."""
    basis = _basis(alg)
    wrong = []
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if cc_multiply(alg, a, b) != a * b:
                wrong.append((i, j))
    if wrong:
        log.warning(f"⚠️ Bilinear algorithm disagrees on {len(wrong)} basis pairs")
    return wrong
