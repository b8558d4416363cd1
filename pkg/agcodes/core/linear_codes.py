"""
Linear codes over a FiniteField, stored as a generator matrix in reduced row
echelon form (so two codes are equal iff their generators are equal).
"""
import functools
import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core import config
from agcodes.core.errors import DomainError, GuardExceededError
from agcodes.core.field_arith import FiniteField

log = logging.getLogger(__name__)


# ------------------------
# Matrix helpers over galois fields
# ------------------------
def rref(matrix) -> galois.FieldArray:
    """Nonzero rows of the reduced row echelon form."""
    if matrix.shape[0] == 0:
        return matrix
    reduced = matrix.row_reduce()
    nonzero = np.any(reduced.view(np.ndarray) != 0, axis=1)
    return reduced[nonzero]


def pivot_columns(reduced) -> List[int]:
    return [int(np.argmax(row.view(np.ndarray) != 0)) for row in reduced]


def rank(matrix) -> int:
    return rref(matrix).shape[0]


def kernel(matrix, n: Optional[int] = None) -> galois.FieldArray:
    """Basis (as rows) of {x : matrix @ x = 0}."""
    gf = type(matrix)
    n = matrix.shape[1] if n is None else n
    reduced = rref(matrix)
    pivots = pivot_columns(reduced)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = gf.Zeros((len(free), n))
    for i, col in enumerate(free):
        basis[i, col] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = -reduced[r, col]
    return basis


def solve_affine(matrix, rhs) -> Tuple[Optional[galois.FieldArray], galois.FieldArray]:
    """One solution of matrix @ x = rhs (or None) and the kernel basis."""
    gf = type(matrix)
    rows, n = matrix.shape
    augmented = gf(np.hstack([matrix.view(np.ndarray), rhs.view(np.ndarray).reshape(rows, 1)]))
    reduced = rref(augmented)
    pivots = pivot_columns(reduced)
    if n in pivots:
        return None, kernel(matrix)
    x = gf.Zeros(n)
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r, n]
    return x, kernel(matrix)


def stack(gf, blocks: Sequence, n: int) -> galois.FieldArray:
    arrays = [np.asarray(b.view(np.ndarray)).reshape(-1, n) for b in blocks if np.size(b)]
    if not arrays:
        return gf.Zeros((0, n))
    return gf(np.vstack(arrays))


def weight(word) -> int:
    return int(np.count_nonzero(np.asarray(word.view(np.ndarray))))


def distance(u, v) -> int:
    return weight(u - v)


def support(word) -> List[int]:
    return [int(i) for i in np.flatnonzero(np.asarray(word.view(np.ndarray)))]


@dataclass
class QuadricRelations:
    """Quadratic forms sum c_ab X_a X_b vanishing on every generator column."""
    monomials: List[Tuple[int, int]]
    coefficients: galois.FieldArray

    @property
    def dimension(self) -> int:
        return self.coefficients.shape[0]

    def evaluate(self, columns) -> galois.FieldArray:
        """Value of each form at each column (columns given as a k x n matrix)."""
        products = type(columns)(np.vstack([
            (columns[a] * columns[b]).view(np.ndarray) for a, b in self.monomials
        ])) if self.monomials else type(columns).Zeros((0, columns.shape[1]))
        return self.coefficients @ products


class LinearCode:
    def __init__(self, field: FiniteField, generator, name: Optional[str] = None):
        gen = generator if isinstance(generator, galois.FieldArray) else field.from_index(generator)
        if gen.ndim != 2:
            raise DomainError(f"Generator must be a matrix, got shape {gen.shape}")
        if type(gen) is not field.gf:
            gen = field.gf(gen.view(np.ndarray))
        self.field = field
        self.n = gen.shape[1]
        self.generator = rref(gen)
        self.name = name

    # ------------------------
    # Constructors
    # ------------------------
    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "LinearCode":
        return cls(field, field.gf.Zeros((0, n)), name="zero")

    @classmethod
    def full(cls, field: FiniteField, n: int) -> "LinearCode":
        return cls(field, field.gf.Identity(n), name="full")

    @classmethod
    def repetition(cls, field: FiniteField, n: int) -> "LinearCode":
        return cls(field, field.gf.Ones((1, n)), name="repetition")

    @classmethod
    def from_indices(cls, field: FiniteField, rows: List[List[int]], n: int) -> "LinearCode":
        if not rows:
            return cls.zero(field, n)
        return cls(field, field.from_index(rows))

    # ------------------------
    # Basic structure
    # ------------------------
    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def dimension(self) -> int:
        return self.k

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<{label}[{self.n}, {self.k}] code over {self.field}>"

    def __eq__(self, other) -> bool:
        return (
                isinstance(other, LinearCode)
                and self.field == other.field
                and self.n == other.n
                and self.k == other.k
                and bool(np.array_equal(self.generator.view(np.ndarray), other.generator.view(np.ndarray)))
        )

    def __hash__(self) -> int:
        return hash(self.digest())

    def _check_compatible(self, other: "LinearCode") -> None:
        if self.field != other.field:
            raise DomainError(f"Field mismatch: {self.field} vs {other.field}")
        if self.n != other.n:
            raise DomainError(f"Length mismatch: {self.n} vs {other.n}")

    @functools.cached_property
    def parity_check(self) -> galois.FieldArray:
        if self.k == 0:
            return self.field.gf.Identity(self.n)
        return kernel(self.generator)

    @functools.cached_property
    def information_set(self) -> List[int]:
        """Pivot columns of the RREF generator (systematic positions)."""
        return pivot_columns(self.generator)

    def dual(self) -> "LinearCode":
        return LinearCode(self.field, self.parity_check, name=f"dual({self.name})" if self.name else None)

    def encode(self, message):
        msg = message if isinstance(message, galois.FieldArray) else self.field.from_index(message)
        if msg.shape[-1] != self.k:
            raise DomainError(f"Message length {msg.shape[-1]} does not match k={self.k}")
        return msg @ self.generator

    def unencode(self, codeword):
        """Message of a codeword under the RREF (systematic) encoder."""
        return codeword[..., self.information_set]

    def syndrome(self, word):
        return self.parity_check @ word

    def contains(self, words) -> bool:
        w = words if isinstance(words, galois.FieldArray) else self.field.from_index(words)
        w = w.reshape(-1, self.n)
        if self.parity_check.shape[0] == 0:
            return True
        return not np.any((self.parity_check @ w.T).view(np.ndarray))

    def is_subcode_of(self, other: "LinearCode") -> bool:
        self._check_compatible(other)
        return self.k == 0 or other.contains(self.generator)

    def has_full_support(self) -> bool:
        return bool(np.all(np.any(self.generator.view(np.ndarray) != 0, axis=0)))

    def scale(self, a) -> "LinearCode":
        """The diagonally equivalent code C * a."""
        return LinearCode(self.field, self.generator * a)

    def is_diagonally_equivalent(self, other: "LinearCode", a) -> bool:
        return self.scale(a) == other

    def restrict(self, indices: Iterable[int]) -> "LinearCode":
        idx = [int(i) for i in indices]
        if not idx:
            raise DomainError("Restriction needs a nonempty index set")
        if min(idx) < 0 or max(idx) >= self.n:
            raise DomainError(f"Restriction indices out of range for n={self.n}")
        return LinearCode(self.field, self.generator[:, idx])

    def direct_sum(self, other: "LinearCode") -> "LinearCode":
        if self.field != other.field:
            raise DomainError(f"Field mismatch: {self.field} vs {other.field}")
        gen = self.field.gf.Zeros((self.k + other.k, self.n + other.n))
        gen[:self.k, :self.n] = self.generator
        gen[self.k:, self.n:] = other.generator
        return LinearCode(self.field, gen)

    # ------------------------
    # Subfield subcodes
    # ------------------------
    def subfield_subcode(self, base: FiniteField) -> "LinearCode":
        """C ∩ base^n, computed by expanding the parity checks over base."""
        self.field.check_subfield(base)
        if base == self.field:
            return self
        checks = self.parity_check
        if checks.shape[0] == 0 or self.k == self.n:
            return LinearCode.full(base, self.n)
        coords = self.field.coordinates_over(checks, base)  # (r, n, m)
        r, n, m = coords.shape
        expanded = base.from_index(coords.transpose(0, 2, 1).reshape(r * m, n))
        return LinearCode(base, kernel(expanded))

    def extend_scalars(self, field: FiniteField) -> "LinearCode":
        """The same generator read over an extension field."""
        field.check_subfield(self.field)
        return LinearCode(field, field.embed(self.generator, self.field))

    # ------------------------
    # Star products
    # ------------------------
    def star_product(self, other: "LinearCode") -> "LinearCode":
        self._check_compatible(other)
        if self.k == 0 or other.k == 0:
            return LinearCode.zero(self.field, self.n)
        if other is self:
            a, b = np.triu_indices(self.k)
            rows = self.generator[a] * self.generator[b]
        else:
            rows = (self.generator[:, None, :] * other.generator[None, :, :]).reshape(-1, self.n)
        return LinearCode(self.field, rows)

    def star_power(self, t: int) -> "LinearCode":
        if t < 1:
            raise DomainError(f"Star power needs t >= 1, got {t}")
        power = self
        for _ in range(t - 1):
            power = power.star_product(self)
        return power

    def hilbert_sequence(self, t_max: int) -> List[int]:
        dims, power = [], self
        for t in range(1, t_max + 1):
            if t > 1:
                power = power.star_product(self)
            dims.append(power.k)
        return dims

    def regularity(self) -> int:
        if not self.has_full_support():
            raise DomainError("Regularity needs a code with full support")
        r, power = 1, self
        while True:
            nxt = power.star_product(self)
            if nxt.k == power.k:
                return r
            r, power = r + 1, nxt

    def stabilizer(self) -> "LinearCode":
        """Stab(C) = {x : x * C ⊆ C}."""
        checks = self.parity_check
        if checks.shape[0] == 0:
            return LinearCode.full(self.field, self.n)
        blocks = [checks * row for row in self.generator]
        return LinearCode(self.field, kernel(stack(self.field.gf, blocks, self.n), self.n))

    def quadric_relations(self) -> QuadricRelations:
        monomials = [(a, b) for a in range(self.k) for b in range(a, self.k)]
        if not monomials:
            return QuadricRelations([], self.field.gf.Zeros((0, 0)))
        products = stack(self.field.gf, [self.generator[a] * self.generator[b] for a, b in monomials], self.n)
        return QuadricRelations(monomials, kernel(products.T))

    # ------------------------
    # Enumeration
    # ------------------------
    def _check_guard(self, what: str, limit: Optional[int]) -> int:
        limit = config.ENUMERATION_LIMIT if limit is None else limit
        size = self.field.order ** self.k
        if size > limit:
            log.warning(f"⚠️ Refusing {what} on {self}: q^k = {size}")
            raise GuardExceededError(what, size, limit)
        return size

    def _messages(self, start: int, stop: int, width: int):
        q = self.field.order
        idx = np.arange(start, stop, dtype=np.int64)
        digits = (idx[:, None] // (q ** np.arange(width, dtype=np.int64))[None, :]) % q
        return self.field.from_index(digits)

    def codewords(self, limit: Optional[int] = None) -> galois.FieldArray:
        """All q^k codewords (guarded)."""
        size = self._check_guard("codeword enumeration", limit)
        if self.k == 0:
            return self.field.gf.Zeros((1, self.n))
        return self._messages(0, size, self.k) @ self.generator

    def _projective_tasks(self) -> List[Tuple[int, int, int]]:
        q = self.field.order
        tasks = []
        for lead in range(self.k):
            count = q ** (self.k - lead - 1)
            for start in range(0, count, config.CHUNK_SIZE):
                tasks.append((lead, start, min(count, start + config.CHUNK_SIZE)))
        return tasks

    def _projective_words(self, task: Tuple[int, int, int]):
        """Codewords whose message has its first nonzero entry equal to 1 at ``lead``."""
        lead, start, stop = task
        tail = self.k - lead - 1
        head = self.generator[lead]
        if tail == 0:
            return head.reshape(1, self.n)
        return head + self._messages(start, stop, tail) @ self.generator[lead + 1:]

    def projective_codewords(self, limit: Optional[int] = None) -> galois.FieldArray:
        self._check_guard("codeword enumeration", limit)
        return stack(self.field.gf, [self._projective_words(t) for t in self._projective_tasks()], self.n)

    def min_weight_codeword(self, limit: Optional[int] = None, jobs: Optional[int] = None):
        if self.k == 0:
            raise DomainError("The zero code has no minimum distance")
        self._check_guard("minimum distance", limit)
        jobs = config.DEFAULT_JOBS if jobs is None else jobs

        def best_in(task):
            words = self._projective_words(task)
            weights = np.count_nonzero(words.view(np.ndarray), axis=1)
            i = int(np.argmin(weights))
            return int(weights[i]), words[i]

        tasks = self._projective_tasks()
        if jobs > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(best_in, tasks))
        else:
            results = [best_in(t) for t in tasks]
        # first minimum in task order keeps the answer schedule independent
        best = min(range(len(results)), key=lambda i: (results[i][0], i))
        return results[best]

    def min_distance(self, limit: Optional[int] = None, jobs: Optional[int] = None) -> int:
        return self.min_weight_codeword(limit, jobs)[0]

    def is_frameproof(self, t: int, limit: Optional[int] = None) -> bool:
        """True iff any t nonzero codewords have intersecting supports."""
        if t < 2:
            raise DomainError(f"Frameproof order must be >= 2, got {t}")
        if self.k == 0:
            return True
        limit = config.ENUMERATION_LIMIT if limit is None else limit
        words = self.projective_codewords(limit).view(np.ndarray) != 0
        masks = {sum(1 << int(i) for i in np.flatnonzero(row)) for row in words}
        # support intersections reachable with at most `depth` codewords
        reachable = {(1 << self.n) - 1}
        for depth in range(1, t + 1):
            work = len(reachable) * len(masks)
            if work > limit:
                log.warning(f"⚠️ Refusing frameproof search on {self}: {work} intersections at depth {depth}")
                raise GuardExceededError("frameproof search", work, limit)
            reachable = {acc & mask for acc in reachable for mask in masks}
            if 0 in reachable:
                return False
        return True

    # ------------------------
    # Serialization
    # ------------------------
    def to_indices(self) -> List[List[int]]:
        if self.k == 0:
            return []
        return np.asarray(self.field.to_index(self.generator)).tolist()

    def digest(self) -> str:
        payload = json.dumps({"field": self.field.descriptor(), "n": self.n, "rows": self.to_indices()})
        return hashlib.sha256(payload.encode()).hexdigest()
