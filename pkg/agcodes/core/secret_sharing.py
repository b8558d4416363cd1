"""
Shamir secret sharing and the arithmetic secret sharing predicate.

A scheme is a linear code in F_q^k x F_q^n: the first k coordinates carry the
secret, the last n the shares.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

import galois
import numpy as np

from agcodes.core import config
from agcodes.core.errors import DomainError, GuardExceededError, NoSolutionError
from agcodes.core.field_arith import FiniteField, lagrange_interpolate
from agcodes.core.linear_codes import LinearCode, rank

log = logging.getLogger(__name__)


@dataclass
class SharingScheme:
    field: FiniteField
    t: int
    points: galois.FieldArray
    code: LinearCode
    secret_length: int = 1

    @property
    def n(self) -> int:
        return self.points.size


def _element(field_: FiniteField, value):
    return value if isinstance(value, galois.FieldArray) else field_.from_index(value)


def shamir_scheme(field_: FiniteField, t: int, n: int, points=None) -> SharingScheme:
    """Threshold t: polynomials of degree <= t - 1, players at distinct nonzero points."""
    q = field_.order
    if not n < q:
        raise DomainError(f"Shamir sharing needs n < q, got n={n}, q={q}")
    if not 1 <= t <= n:
        raise DomainError(f"Threshold must satisfy 1 <= t <= n, got t={t}, n={n}")
    if points is None:
        points = field_.from_index(list(range(1, n + 1)))
    elif not isinstance(points, galois.FieldArray):
        points = field_.from_index(points)
    if points.size != n or np.unique(points.view(np.ndarray)).size != n or np.any(points.view(np.ndarray) == 0):
        raise DomainError("Players need n distinct nonzero points")
    nodes = field_.gf(np.concatenate([[0], points.view(np.ndarray)]))
    rows = field_.gf(np.stack([(nodes ** j).view(np.ndarray) for j in range(t)]))
    return SharingScheme(field_, t, points, LinearCode(field_, rows, name="Shamir"))


def shamir_share(scheme: SharingScheme, secret, rng: np.random.Generator) -> galois.FieldArray:
    field_ = scheme.field
    s = _element(field_, secret)
    coeffs = field_.gf.Zeros(scheme.t)
    coeffs[0] = s
    if scheme.t > 1:
        coeffs[1:] = field_.random_elements(rng, scheme.t - 1)
    poly = galois.Poly(coeffs, order="asc")
    return poly(scheme.points)


def _interpolate_at_zero(scheme: SharingScheme, shares: Mapping[int, object], degree: int):
    field_ = scheme.field
    if len(shares) < degree + 1:
        raise DomainError(f"Need at least {degree + 1} shares, got {len(shares)}")
    players = sorted(shares)
    xs = scheme.points[players]
    ys = field_.gf([int(_element(field_, shares[i])) for i in players])
    poly = lagrange_interpolate(field_, xs, ys)
    if poly.degree > degree:
        raise NoSolutionError(f"Shares are not consistent with a polynomial of degree <= {degree}")
    return poly(field_.gf(0))


def shamir_reconstruct(scheme: SharingScheme, shares: Mapping[int, object]):
    """Secret from at least t shares, keyed by player position."""
    return _interpolate_at_zero(scheme, shares, scheme.t - 1)


def product_reconstruct(scheme: SharingScheme, shares: Mapping[int, object]):
    """Product of two secrets from at least 2t - 1 products of shares."""
    return _interpolate_at_zero(scheme, shares, 2 * scheme.t - 2)


def shamir_privacy_count(scheme: SharingScheme, coalition: Mapping[int, object]) -> Dict[int, int]:
    """For every secret, the number of sharing polynomials consistent with the coalition's shares."""
    field_ = scheme.field
    words = scheme.code.codewords()
    mask = np.ones(words.shape[0], dtype=bool)
    for player, share in coalition.items():
        mask &= words[:, 1 + player].view(np.ndarray) == int(_element(field_, share))
    secrets = np.asarray(field_.to_index(words[mask, 0])).reshape(-1)
    counts = {s: 0 for s in range(field_.order)}
    for s in secrets.tolist():
        counts[int(s)] += 1
    return counts


# ------------------------
# Arithmetic secret sharing
# ------------------------
@dataclass
class AsssReport:
    t: int
    d: int
    r: int
    disconnected: bool
    uniform: bool
    reconstructing: bool
    violations: List[Tuple[str, List[int]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.disconnected and self.reconstructing


def asss_verify(code: LinearCode, t: int, d: int, r: int, secret_length: int = 1) -> AsssReport:
    """(n, t, d, r) arithmetic secret sharing checks by rank computations.

    t-disconnectedness: pi_{0,B} is onto F^k x pi_B(C) for |B| = t.
    d-th power r-reconstruction: ker pi_B ∩ C^{*d} ⊆ ker pi_0 for |B| = r.
    """
    k = secret_length
    n = code.n - k
    if n > config.SUBSET_LIMIT:
        raise GuardExceededError("subset enumeration", n, config.SUBSET_LIMIT)
    if not (0 <= t <= n and 1 <= r <= n and d >= 1):
        raise DomainError(f"Invalid parameters t={t}, d={d}, r={r} for n={n}")
    gen = code.generator
    secret_cols = list(range(k))
    report = AsssReport(t, d, r, True, True, True)
    for subset in itertools.combinations(range(n), t):
        cols = [k + i for i in subset]
        shares_rank = rank(gen[:, cols]) if cols else 0
        if rank(gen[:, secret_cols + cols]) != k + shares_rank:
            report.disconnected = False
            report.violations.append(("disconnectedness", list(subset)))
        if shares_rank != t:
            report.uniform = False
            report.violations.append(("uniformity", list(subset)))
    power = code.star_power(d).generator
    for subset in itertools.combinations(range(n), r):
        cols = [k + i for i in subset]
        if rank(power[:, cols]) != rank(power[:, secret_cols + cols]):
            report.reconstructing = False
            report.violations.append(("reconstruction", list(subset)))
    log.info(f"ASSS check (t={t}, d={d}, r={r}): passed={report.passed}, uniform={report.uniform}")
    return report
