from fastapi import APIRouter

from agcodes.api.errors import to_http
from agcodes.models.codes import CodeDescriptor, DecodeRequest, DecodeResultModel, DesignedParamsModel, EncodeRequest
from agcodes.services.codes import code_descriptor, code_from_descriptor, code_params, decode_word, encode_message

router = APIRouter()


@router.post("/build", response_model=CodeDescriptor)
def build_code(request: CodeDescriptor):
    """
    Build a code and return its descriptor with dimension, designed distance and generator.
    """
    try:
        return code_descriptor(code_from_descriptor(request))
    except Exception as e:
        raise to_http(e)


@router.post("/params", response_model=DesignedParamsModel)
def params(request: CodeDescriptor, exact: bool = False):
    try:
        return code_params(code_from_descriptor(request), exact=exact)
    except Exception as e:
        raise to_http(e)


@router.post("/encode")
def encode(request: EncodeRequest):
    try:
        return {"codeword": encode_message(code_from_descriptor(request.code), request.message)}
    except Exception as e:
        raise to_http(e)


@router.post("/decode/{method}", response_model=DecodeResultModel)
def decode(method: str, request: DecodeRequest):
    """
    Decode a hex word with basic, ecp, gs or erasure. A FAIL is a normal response, not an error.
    """
    try:
        return decode_word(code_from_descriptor(request.code), method, request.word, request.t)
    except Exception as e:
        raise to_http(e)
