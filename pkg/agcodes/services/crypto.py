import logging
from typing import List

import galois
import numpy as np

from agcodes.core.bilinear import BilinearAlgorithm, cc_build, cc_multiply, cc_verify
from agcodes.core.errors import AssertionFailure, DomainError
from agcodes.core.field_arith import FiniteField, make_field
from agcodes.core.mceliece import (
    McElieceKeyPair,
    McEliecePublicKey,
    McElieceSecretKey,
    mceliece_decrypt,
    mceliece_encrypt,
    mceliece_keygen,
)
from agcodes.models.applications import (
    BilinearModel,
    BilinearMultiplyResult,
    McElieceDecryptResult,
    McElieceKeyPairModel,
    McEliecePublicKeyModel,
    McElieceSecretKeyModel,
)
from agcodes.models.codes import FieldDescriptor

log = logging.getLogger(__name__)


def _indices(field_: FiniteField, values) -> List[int]:
    return np.atleast_1d(field_.to_index(values)).tolist()


# ------------------------
# McEliece key files
# ------------------------
def public_key_model(public: McEliecePublicKey) -> McEliecePublicKeyModel:
    return McEliecePublicKeyModel(
        gf=FieldDescriptor(**public.field.descriptor()),
        t=public.t,
        n=public.n,
        k=public.k,
        rows=[public.field.encode_hex(row) for row in public.generator],
    )


def secret_key_model(secret: McElieceSecretKey) -> McElieceSecretKeyModel:
    return McElieceSecretKeyModel(
        gf=FieldDescriptor(**secret.field.descriptor()),
        support=_indices(secret.field, secret.support),
        goppa_poly=_indices(secret.field, secret.goppa_poly.coeffs[::-1]),
        seed=secret.seed,
    )


def keypair_model(keypair: McElieceKeyPair) -> McElieceKeyPairModel:
    return McElieceKeyPairModel(public=public_key_model(keypair.public), secret=secret_key_model(keypair.secret))


def public_key_from_model(model: McEliecePublicKeyModel) -> McEliecePublicKey:
    field_ = make_field(model.gf.p, model.gf.tower)
    rows = []
    for text in model.rows:
        row, erasures = field_.decode_hex(text)
        if erasures or row.size != model.n:
            raise DomainError(f"Public key row {text!r} is not a length-{model.n} vector")
        rows.append(row.view(np.ndarray))
    generator = field_.gf(np.stack(rows)) if rows else field_.gf.Zeros((0, model.n))
    if generator.shape[0] != model.k:
        raise DomainError(f"Public key lists {generator.shape[0]} rows but k = {model.k}")
    return McEliecePublicKey(field_, generator, model.t)


def keypair_from_model(model: McElieceKeyPairModel) -> McElieceKeyPair:
    public = public_key_from_model(model.public)
    top = make_field(model.secret.gf.p, model.secret.gf.tower)
    goppa_poly = galois.Poly(top.from_index(model.secret.goppa_poly), order="asc")
    secret = McElieceSecretKey(top, top.from_index(model.secret.support), goppa_poly, model.secret.seed)
    return McElieceKeyPair(public, secret)


def keygen(base: FieldDescriptor, m: int, n: int, deg_f: int, seed: int) -> McElieceKeyPairModel:
    keypair = mceliece_keygen(make_field(base.p, base.tower), m, n, deg_f, seed)
    return keypair_model(keypair)


def encrypt(public: McEliecePublicKeyModel, message_hex: str, seed: int) -> str:
    key = public_key_from_model(public)
    message, erasures = key.field.decode_hex(message_hex)
    if erasures:
        raise DomainError("Messages cannot contain erasures")
    return key.field.encode_hex(mceliece_encrypt(key, message, seed))


def decrypt(keypair: McElieceKeyPairModel, ciphertext_hex: str) -> McElieceDecryptResult:
    pair = keypair_from_model(keypair)
    field_ = pair.public.field
    cipher, erasures = field_.decode_hex(ciphertext_hex)
    if erasures:
        raise DomainError("Ciphertexts cannot contain erasures")
    result = mceliece_decrypt(pair, cipher)
    return McElieceDecryptResult(
        status=result.status.value,
        message=field_.encode_hex(result.message) if result.message is not None else None,
        reason=result.reason,
    )


# ------------------------
# Bilinear multiplication
# ------------------------
def bilinear_model(alg: BilinearAlgorithm) -> BilinearModel:
    base = alg.base
    return BilinearModel(
        q=base.order,
        k=alg.k,
        length=alg.length,
        symmetric=alg.symmetric,
        points=_indices(base, alg.points),
        alpha=[_indices(base, row) for row in alg.alpha],
        beta=[_indices(base, row) for row in alg.beta],
        omega=_indices(alg.extension, alg.omega),
    )


def build_bilinear(q: int, k: int) -> BilinearAlgorithm:
    alg = cc_build(q, k)
    wrong = cc_verify(alg)
    if wrong:
        raise AssertionFailure(f"Bilinear algorithm fails on basis pairs {wrong}")
    return alg


def multiply(q: int, k: int, x: int, y: int) -> BilinearMultiplyResult:
    """x and y are canonical indices of GF(q^k) elements."""
    alg = build_bilinear(q, k)
    a, b = alg.extension.from_index(x), alg.extension.from_index(y)
    product = cc_multiply(alg, a, b)
    direct = a * b
    return BilinearMultiplyResult(
        product=int(alg.extension.to_index(product)),
        direct=int(alg.extension.to_index(direct)),
        agrees=bool(product == direct),
    )
