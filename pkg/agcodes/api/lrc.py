from typing import List

from fastapi import APIRouter

from agcodes.api.errors import to_http
from agcodes.models.applications import LrcDescriptor, LrcRepairRequest, LrcRepairResult, LrcSummary
from agcodes.services.lrc import lrc_from_descriptor, lrc_summary, repair_word

router = APIRouter()


@router.post("/build", response_model=LrcSummary)
def build_lrc(request: LrcDescriptor):
    try:
        return lrc_summary(lrc_from_descriptor(request))
    except Exception as e:
        raise to_http(e)


@router.post("/repair", response_model=List[LrcRepairResult])
def repair(request: LrcRepairRequest):
    try:
        return repair_word(lrc_from_descriptor(request.lrc), request.word, request.which)
    except Exception as e:
        raise to_http(e)
