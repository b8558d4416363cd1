import csv
import io
import logging
from fractions import Fraction
from typing import Dict, List, Optional

from agcodes.core.bounds import (
    AsymptoticKind,
    EllOracle,
    FloorKind,
    KtwLine,
    asymptotic_bound,
    floor_bound,
    one_point_order_bound,
    tvz_gv_table,
)
from agcodes.core.curves import HermitianCurve
from agcodes.core.errors import AGCodesError, DomainError
from agcodes.models.codes import (
    FloorReportModel,
    FloorRequest,
    HypothesisModel,
    OrderReportModel,
    OrderRequest,
    TvzGvRow,
)

log = logging.getLogger(__name__)

# kinds evaluated by ``bounds table``; the rest need parameters beyond q and delta
TABLE_KINDS = (
    AsymptoticKind.TVZ,
    AsymptoticKind.DV,
    AsymptoticKind.IHARA,
    AsymptoticKind.HASSE_WEIL,
    AsymptoticKind.SERRE,
    AsymptoticKind.XING_NONLINEAR,
    AsymptoticKind.HR2_FRAMEPROOF,
)


def _number(value) -> str:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    return repr(float(value))


# ------------------------
# Asymptotic tables
# ------------------------
def tvz_gv_rows(q: int, grid: int = 200) -> List[TvzGvRow]:
    return [TvzGvRow(delta=d, gv=gv, tvz=tvz) for d, gv, tvz in tvz_gv_table(q, grid)]


def tvz_gv_csv(q: int, grid: int = 200) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["delta", "gv", "tvz"])
    for row in tvz_gv_table(q, grid):
        writer.writerow([repr(float(v)) for v in row])
    return buffer.getvalue()


def bounds_table(q: int, delta: Fraction, p: Optional[int] = None, m: Optional[int] = None,
                 ell: Optional[int] = None) -> List[Dict[str, str]]:
    """One row per asymptotic formula that applies at (q, delta); refusals are listed with their reason."""
    rows = []
    kinds = list(TABLE_KINDS)
    extra: Dict[AsymptoticKind, dict] = {}
    if p is not None and m is not None:
        kinds.append(AsymptoticKind.BBGS)
        extra[AsymptoticKind.BBGS] = {"p": p, "m": m}
    if ell is not None:
        kinds.append(AsymptoticKind.KTW)
        extra[AsymptoticKind.KTW] = {"ell": ell, "m": m}
    for kind in kinds:
        try:
            value = asymptotic_bound(kind, q=q, delta=delta, **extra.get(kind, {}))
        except AGCodesError as e:
            rows.append({"bound": kind.value, "value": "", "note": str(e)})
            continue
        if isinstance(value, KtwLine):
            rows.append({"bound": kind.value, "value": _number(value.rate),
                         "note": f"window [{_number(value.window_low)}, {_number(value.window_high)}], flagged"})
        else:
            rows.append({"bound": kind.value, "value": _number(value), "note": ""})
    return rows


def table_csv(rows: List[Dict[str, str]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=["bound", "value", "note"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


# ------------------------
# Floor and order bounds
# ------------------------
def floor_report(request: FloorRequest) -> FloorReportModel:
    oracle = EllOracle.table(request.genus, request.table, request.places)

    def parse(text: Optional[str]):
        return oracle.divisor(text) if text is not None else None

    kind = FloorKind(request.kind)
    if kind == FloorKind.MMP:
        raise DomainError("The MMP floor needs a curve backend; use the order/params commands instead")
    report = floor_bound(kind, oracle, parse(request.g), a=parse(request.a), b=parse(request.b),
                         z=parse(request.z), c=parse(request.c))
    return FloorReportModel(
        kind=report.kind.value,
        value=report.value,
        d_gop=report.d_gop,
        accepted=report.accepted,
        hypotheses=[HypothesisModel(**h.__dict__) for h in report.hypotheses],
        queries=[q.__dict__ for q in report.queries],
    )


def order_report(request: OrderRequest) -> OrderReportModel:
    curve = HermitianCurve(request.q0)
    report = one_point_order_bound(curve, request.m, curve.n_affine, request.split, request.limit)
    log.info(f"Order bound for C_Omega({request.m}Pinf), q0={request.q0}: {report.d_ord}")
    return OrderReportModel(d_ord=report.d_ord, d_gop=report.d_gop, certified=report.certified,
                            n_sequence=report.n_sequence)
