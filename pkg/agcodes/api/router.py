from fastapi import APIRouter

from agcodes.api.bounds import router as bounds_router
from agcodes.api.cc_mult import router as cc_mult_router
from agcodes.api.codes import router as codes_router
from agcodes.api.lrc import router as lrc_router
from agcodes.api.mceliece import router as mceliece_router

router = APIRouter()
router.include_router(codes_router, prefix="/codes", tags=["codes"])
router.include_router(bounds_router, prefix="/bounds", tags=["bounds"])
router.include_router(lrc_router, prefix="/lrc", tags=["lrc"])
router.include_router(mceliece_router, prefix="/mceliece", tags=["mceliece"])
router.include_router(cc_mult_router, prefix="/cc-mult", tags=["cc-mult"])
