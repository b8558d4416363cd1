"""
Toy McEliece encryption with a binary (or q0-ary) Goppa code.

The public key is the RREF generator of the Goppa code, so messages sit on
the information set and decryption is decode-then-read-off.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import galois
import numpy as np

from agcodes.core.ag_codes import AGCode, goppa_code
from agcodes.core.decoding import DecodeResult, DecodeStatus, build_ecp, ecp_decode
from agcodes.core.errors import AssertionFailure, DomainError
from agcodes.core.field_arith import FiniteField, make_field
from agcodes.core.linear_codes import LinearCode, weight

log = logging.getLogger(__name__)


@dataclass
class McEliecePublicKey:
    field: FiniteField
    generator: galois.FieldArray
    t: int

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def code(self) -> LinearCode:
        return LinearCode(self.field, self.generator, name="McEliece")


@dataclass
class McElieceSecretKey:
    field: FiniteField
    support: galois.FieldArray
    goppa_poly: galois.Poly
    seed: int


@dataclass
class McElieceKeyPair:
    public: McEliecePublicKey
    secret: McElieceSecretKey


@dataclass
class Decryption:
    status: DecodeStatus
    message: Optional[galois.FieldArray] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == DecodeStatus.OK


def fisher_yates(rng: np.random.Generator, size: int, count: int) -> List[int]:
    """First ``count`` entries of a seeded Fisher-Yates shuffle of range(size)."""
    if not 0 <= count <= size:
        raise DomainError(f"Cannot draw {count} distinct positions out of {size}")
    pool = list(range(size))
    for i in range(count):
        j = int(rng.integers(i, size))
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:count]


def _random_goppa_poly(top: FiniteField, degree: int, support, rng: np.random.Generator) -> galois.Poly:
    while True:
        tail = top.random_elements(rng, degree)
        f = galois.Poly(top.gf(np.concatenate([tail.view(np.ndarray), [1]])), order="asc")
        if f.is_irreducible() and not np.any(f(support).view(np.ndarray) == 0):
            return f


def secret_code(secret: McElieceSecretKey, base: FiniteField) -> AGCode:
    return goppa_code(secret.field, secret.support, secret.goppa_poly, base)


def mceliece_keygen(base: FiniteField, m: int, n: int, deg_f: int, seed: int) -> McElieceKeyPair:
    """Random support of size n in GF(q0^m) and a random irreducible f of degree deg_f."""
    if deg_f < 1:
        raise DomainError(f"Goppa polynomial degree must be at least 1, got {deg_f}")
    if m < 1:
        raise DomainError(f"Extension degree must be at least 1, got {m}")
    top = make_field(base.p, list(base.tower_degrees) + [m])
    if n > top.order:
        raise DomainError(f"n = {n} exceeds the {top.order} elements of {top}")
    rng = np.random.default_rng(seed)
    support = top.from_index(fisher_yates(rng, top.order, n))
    f = _random_goppa_poly(top, deg_f, support, rng)
    secret = McElieceSecretKey(top, support, f, seed)
    goppa = secret_code(secret, base)
    if goppa.k == 0:
        raise DomainError(f"Goppa code with n={n}, deg f={deg_f} over {base} has dimension 0")
    public = McEliecePublicKey(base, goppa.code.generator, deg_f // 2)
    log.info(f"✅ McEliece key: [{public.n}, {public.k}] Goppa code over {base}, t={public.t}")
    return McElieceKeyPair(public, secret)


def mceliece_encrypt(public: McEliecePublicKey, message, seed: int) -> galois.FieldArray:
    """m G + e with w(e) = t exactly."""
    field_ = public.field
    msg = message if isinstance(message, galois.FieldArray) else field_.from_index(message)
    if msg.shape != (public.k,):
        raise DomainError(f"Message must have length k = {public.k}, got shape {msg.shape}")
    rng = np.random.default_rng(seed)
    error = field_.gf.Zeros(public.n)
    positions = fisher_yates(rng, public.n, public.t)
    if positions:
        error[positions] = field_.random_elements(rng, len(positions), nonzero=True)
    codeword = msg @ public.generator
    cipher = codeword + error
    if weight(cipher - codeword) != public.t:
        raise AssertionFailure("Planted error does not have weight t")
    return cipher


def mceliece_decrypt(keypair: McElieceKeyPair, ciphertext) -> Decryption:
    """Decode in the parent C_Omega code over GF(q0^m), then read the message off the information set."""
    public, secret = keypair.public, keypair.secret
    base = public.field
    code = public.code
    goppa = secret_code(secret, base)
    if goppa.code != code:
        raise AssertionFailure("Public key does not match the secret Goppa code")
    y = ciphertext if isinstance(ciphertext, galois.FieldArray) else base.from_index(ciphertext)
    if y.shape != (public.n,):
        raise DomainError(f"Ciphertext must have length n = {public.n}, got shape {y.shape}")
    if public.t == 0:
        if not code.contains(y):
            return Decryption(DecodeStatus.FAIL, reason="ciphertext is not a codeword")
        result = DecodeResult(DecodeStatus.OK, base.gf.Zeros(public.n), y)
    else:
        pair = build_ecp(goppa.parent, public.t)
        result = ecp_decode(pair, y, base=base)
    if not result.ok:
        log.warning(f"⚠️ McEliece decryption failed: {result.reason}")
        return Decryption(DecodeStatus.FAIL, reason=result.reason)
    if not code.contains(result.codeword):
        return Decryption(DecodeStatus.FAIL, reason="decoded word left the Goppa code")
    return Decryption(DecodeStatus.OK, code.unencode(result.codeword))
