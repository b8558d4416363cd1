import logging
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from agcodes.core.ag_codes import (
    AGCode,
    Family,
    cl_code,
    comega_code,
    designed_params,
    floor_improved_distance,
    goppa_code,
    grs_code,
    rs_code,
)
from agcodes.core.cache import DistanceCache
from agcodes.core.curves import (
    CurveBackend,
    Divisor,
    HermitianCurve,
    Place,
    ProjectiveLine,
    backend_from_descriptor,
    parse_divisor,
)
from agcodes.core.decoding import (
    DecodeResult,
    DecodeStatus,
    basic_decode,
    build_ecp,
    ecp_decode,
    erasure_decode,
    gs_list_decode,
    unique_radius,
)
from agcodes.core.errors import CapabilityError, DomainError, ErasureDecodingError
from agcodes.core.field_arith import FiniteField, make_field, poly
from agcodes.models.codes import CodeDescriptor, DecodeResultModel, DesignedParamsModel, FieldDescriptor

log = logging.getLogger(__name__)

DECODERS = ("basic", "ecp", "gs", "erasure")


# ------------------------
# Descriptors
# ------------------------
def field_from_descriptor(desc: FieldDescriptor) -> FiniteField:
    return make_field(desc.p, desc.tower)


def backend_for(desc: CodeDescriptor) -> CurveBackend:
    return backend_from_descriptor(desc.curve, desc.gf.dict(), desc.q0)


def _points(backend: CurveBackend, coords: Optional[List[List[int]]]) -> List[Place]:
    affine = backend.affine_points()
    if coords is None:
        return affine
    by_coords = {p.coords: p for p in affine}
    points = []
    for c in coords:
        place = by_coords.get(tuple(int(v) for v in c))
        if place is None:
            raise DomainError(f"{c} is not an affine rational point of {backend.name}")
        points.append(place)
    return points


def _x_values(field_: FiniteField, points: Sequence[Place]):
    return field_.from_index([p.coords[0] for p in points])


def code_from_descriptor(desc: CodeDescriptor) -> AGCode:
    family = desc.family
    backend = backend_for(desc)
    points = _points(backend, desc.points)
    field_ = backend.field
    if family in (Family.CL.value, Family.COMEGA.value):
        if desc.divisor is None:
            raise DomainError(f"{family} code needs a divisor")
        divisor = parse_divisor(desc.divisor, {"Pinf": backend.infinity()})
        build = cl_code if family == Family.CL.value else comega_code
        return build(backend, points, divisor)
    if not isinstance(backend, ProjectiveLine):
        raise DomainError(f"{family} codes live on the projective line")
    if desc.k is None and family in ("RS", Family.GRS.value):
        raise DomainError(f"{family} code needs k")
    if family == "RS":
        return rs_code(field_, _x_values(field_, points), desc.k)
    if family == Family.GRS.value:
        multipliers = desc.multipliers if desc.multipliers is not None else [1] * len(points)
        return grs_code(field_, _x_values(field_, points), field_.from_index(multipliers), desc.k)
    if family == Family.GOPPA.value:
        if desc.goppa_poly is None or desc.base is None:
            raise DomainError("Goppa code needs goppa_poly and base")
        f = poly(field_, field_.from_index(desc.goppa_poly))
        return goppa_code(field_, _x_values(field_, points), f, field_from_descriptor(desc.base))
    raise DomainError(f"Unknown code family {family!r}")


def _divisor_text(ag: AGCode) -> str:
    inf = ag.backend.infinity()
    if ag.divisor != Divisor.point(inf, ag.divisor[inf]):
        raise CapabilityError(f"Only one-point divisors are written to descriptors, got {ag.divisor}")
    return str(ag.divisor)


def code_descriptor(ag: AGCode) -> CodeDescriptor:
    """Inputs that rebuild ``ag`` plus its derived parameters."""
    backend = ag.backend
    top = ag.parent.field if ag.family == Family.GOPPA else ag.field
    desc = CodeDescriptor(
        family=ag.family.value,
        curve=backend.name,
        gf=FieldDescriptor(**top.descriptor()),
        q0=getattr(backend, "q0", None),
        points=[list(p.coords) for p in ag.points],
    )
    if ag.family in (Family.CL, Family.COMEGA):
        desc.divisor = _divisor_text(ag)
    elif ag.family == Family.GRS:
        desc.k = ag.k
        # div(y) = (k - 1)Pinf - G recovers the multipliers up to a constant
        y = backend.function_with_divisor(Divisor.point(backend.infinity(), ag.k - 1) - ag.divisor)
        desc.multipliers = [int(top.to_index(y.evaluate(p))) for p in ag.points]
    else:
        desc.goppa_poly = np.atleast_1d(top.to_index(ag.goppa_poly.coeffs[::-1])).tolist()
        desc.base = FieldDescriptor(**ag.field.descriptor())
    desc.n = ag.n
    desc.dimension = ag.k
    desc.designed_distance = ag.designed_distance
    desc.digest = ag.code.digest()
    desc.generator = [ag.field.encode_hex(row) for row in ag.code.generator]
    return desc


# ------------------------
# Parameters, encoding, decoding
# ------------------------
def code_params(ag: AGCode, exact: bool = False, cache: Optional[DistanceCache] = None,
                jobs: Optional[int] = None) -> DesignedParamsModel:
    params = designed_params(ag)
    model = DesignedParamsModel(**params.__dict__)
    if exact:
        model.exact_distance = cache.min_distance(ag.code, jobs) if cache else ag.code.min_distance(jobs=jobs)
    if ag.family == Family.CL and isinstance(ag.backend, HermitianCurve):
        try:
            model.floor_distance = floor_improved_distance(ag)
        except CapabilityError:
            pass
    return model


def encode_message(ag: AGCode, message_hex: str) -> str:
    message, erasures = ag.field.decode_hex(message_hex)
    if erasures:
        raise DomainError("Messages cannot contain erasures")
    return ag.field.encode_hex(ag.code.encode(message))


def result_model(field_: FiniteField, result: DecodeResult) -> DecodeResultModel:
    return DecodeResultModel(
        status=result.status.value,
        error=field_.encode_hex(result.error) if result.error is not None else None,
        codeword=field_.encode_hex(result.codeword) if result.codeword is not None else None,
        reason=result.reason,
    )


def decode_word(ag: AGCode, method: str, word_hex: str, t: Optional[int] = None) -> DecodeResultModel:
    """Run one decoder on a hex word ('?' marks erasures, used by the erasure decoder only)."""
    if method not in DECODERS:
        raise DomainError(f"Unknown decoder {method!r}; choose from {', '.join(DECODERS)}")
    field_ = ag.field
    word, erasures = field_.decode_hex(word_hex)
    if erasures and method != "erasure":
        raise DomainError(f"Decoder {method} does not take erasures")

    if method == "erasure":
        try:
            error = erasure_decode(ag.code, word, erasures)
        except ErasureDecodingError as e:
            return result_model(field_, DecodeResult.fail(str(e)))
        return result_model(field_, DecodeResult(DecodeStatus.OK, error, word - error))
    if method == "basic":
        return result_model(field_, basic_decode(ag, word, t))
    if method == "ecp":
        if ag.family == Family.GOPPA:
            radius = ag.goppa_poly.degree // 2 if t is None else t
            pair = build_ecp(ag.parent, radius)
            return result_model(field_, ecp_decode(pair, word, base=ag.field))
        radius = unique_radius(ag).basic if t is None else t
        return result_model(field_, ecp_decode(build_ecp(ag, radius), word))
    if t is None:
        raise DomainError("List decoding needs an explicit radius t")
    listed = gs_list_decode(ag, word, t)
    status = DecodeStatus.OK if listed.codewords else DecodeStatus.FAIL
    return DecodeResultModel(
        status=status.value,
        codewords=[field_.encode_hex(c) for c in listed.codewords],
        reason="; ".join(listed.notes),
    )


def build_from_args(family: str, curve: str, p: Optional[int], tower: List[int], q0: Optional[int],
                    divisor: Optional[str], k: Optional[int], goppa_poly: Optional[List[int]],
                    base: Optional[Tuple[int, List[int]]],
                    points: Optional[List[List[int]]] = None) -> Tuple[AGCode, CodeDescriptor]:
    if curve == "hermitian" and p is None:
        if q0 is None or not galois.is_prime_power(q0):
            raise DomainError(f"Hermitian curve needs a prime power q0, got {q0}")
        primes, exponents = galois.factors(q0)
        p, tower = int(primes[0]), [2 * int(exponents[0])]
    if p is None:
        raise DomainError("Field characteristic p is required")
    desc = CodeDescriptor(
        family=family,
        curve=curve,
        gf=FieldDescriptor(p=p, tower=tower),
        q0=q0,
        points=points,
        divisor=divisor,
        k=k,
        goppa_poly=goppa_poly,
        base=FieldDescriptor(p=base[0], tower=base[1]) if base else None,
    )
    ag = code_from_descriptor(desc)
    log.info(f"✅ Built {ag!r}")
    return ag, code_descriptor(ag)
