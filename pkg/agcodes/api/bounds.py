from typing import List

from fastapi import APIRouter

from agcodes.api.errors import to_http
from agcodes.models.codes import FloorReportModel, FloorRequest, OrderReportModel, OrderRequest, TvzGvRow
from agcodes.services.bounds import floor_report, order_report, tvz_gv_rows

router = APIRouter()


@router.get("/tvz-gv", response_model=List[TvzGvRow])
def tvz_gv(q: int, grid: int = 200):
    try:
        return tvz_gv_rows(q, grid)
    except Exception as e:
        raise to_http(e)


@router.post("/floor", response_model=FloorReportModel)
def floor(request: FloorRequest):
    """
    LM, GST or ABZ floor bound from a table of l(D) values; failed hypotheses answer 400.
    """
    try:
        return floor_report(request)
    except Exception as e:
        raise to_http(e)


@router.post("/order", response_model=OrderReportModel)
def order(request: OrderRequest):
    try:
        return order_report(request)
    except Exception as e:
        raise to_http(e)
