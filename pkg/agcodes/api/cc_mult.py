from fastapi import APIRouter

from agcodes.api.errors import to_http
from agcodes.models.applications import BilinearBuildRequest, BilinearModel, BilinearMultiplyRequest, BilinearMultiplyResult
from agcodes.services.crypto import bilinear_model, build_bilinear, multiply

router = APIRouter()


@router.post("/build", response_model=BilinearModel)
def build(request: BilinearBuildRequest):
    try:
        return bilinear_model(build_bilinear(request.q, request.k))
    except Exception as e:
        raise to_http(e)


@router.post("/mul", response_model=BilinearMultiplyResult)
def mul(request: BilinearMultiplyRequest):
    try:
        return multiply(request.q, request.k, request.x, request.y)
    except Exception as e:
        raise to_http(e)
