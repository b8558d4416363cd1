"""
Riemann-Roch systems behind frameproof codes, multiplication algorithms and
arithmetic secret sharing: every equation asks for some l(D) to vanish.
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Union

from agcodes.core import config
from agcodes.core.bounds import EllOracle
from agcodes.core.curves import Divisor, Place
from agcodes.core.errors import DomainError, GuardExceededError

log = logging.getLogger(__name__)


class ConditionKind(str, Enum):
    FRAMEPROOF = "frameproof"
    MULTIPLICATION = "multiplication"
    ASYMMETRIC = "asymmetric"
    ASSS = "asss"


@dataclass
class Equation:
    label: str
    divisor: str
    ell: int

    @property
    def ok(self) -> bool:
        return self.ell == 0


@dataclass
class ConditionReport:
    kind: ConditionKind
    equations: List[Equation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.equations)

    @property
    def failures(self) -> List[Equation]:
        return [e for e in self.equations if not e.ok]


def _require(value, name: str, kind: ConditionKind):
    if value is None:
        raise DomainError(f"{kind.value} condition needs {name}")
    return value


def rr_condition_check(kind: Union[ConditionKind, str], oracle: EllOracle, g_div: Divisor,
                       points: Sequence[Place], s: int = 2, q_div: Optional[Divisor] = None,
                       g_prime: Optional[Divisor] = None, t: Optional[int] = None, d: int = 2,
                       r: Optional[int] = None) -> ConditionReport:
    """Evaluate one system of l(D) = 0 equations.

    frameproof:      l(sG - D_P) = 0
    multiplication:  l(K - G + Q) = 0, l(2G - D_P) = 0
    asymmetric:      l(K - G + Q) = 0, l(K - G' + Q) = 0, l(G + G' - D_P) = 0
    asss:            l(K - G + P_B + Q) = 0 for |B| = t, l(dG - P_B) = 0 for |B| = r
    """
    kind = ConditionKind(kind)
    canonical = oracle.canonical
    d_p = Divisor.sum_of(points)
    report = ConditionReport(kind)

    def add(label: str, divisor: Divisor):
        report.equations.append(Equation(label, str(divisor), oracle(divisor)))

    if kind == ConditionKind.FRAMEPROOF:
        if s < 2:
            raise DomainError(f"Frameproof order must be >= 2, got {s}")
        add(f"l({s}G - D_P)", g_div * s - d_p)
    elif kind == ConditionKind.MULTIPLICATION:
        q_div = _require(q_div, "Q", kind)
        add("l(K - G + Q)", canonical - g_div + q_div)
        add("l(2G - D_P)", g_div * 2 - d_p)
    elif kind == ConditionKind.ASYMMETRIC:
        q_div = _require(q_div, "Q", kind)
        g_prime = _require(g_prime, "G'", kind)
        add("l(K - G + Q)", canonical - g_div + q_div)
        add("l(K - G' + Q)", canonical - g_prime + q_div)
        add("l(G + G' - D_P)", g_div + g_prime - d_p)
    else:
        q_div = _require(q_div, "Q", kind)
        t = _require(t, "t", kind)
        r = _require(r, "r", kind)
        n = len(points)
        if n > config.SUBSET_LIMIT:
            raise GuardExceededError("subset enumeration", n, config.SUBSET_LIMIT)
        for subset in itertools.combinations(range(n), t):
            p_b = Divisor.sum_of(points[i] for i in subset)
            add(f"l(K - G + P_B + Q), B={list(subset)}", canonical - g_div + p_b + q_div)
        for subset in itertools.combinations(range(n), r):
            p_b = Divisor.sum_of(points[i] for i in subset)
            add(f"l({d}G - P_B), B={list(subset)}", g_div * d - p_b)

    log.debug(f"{kind.value} system: {len(report.equations)} equations, passed={report.passed}")
    return report
