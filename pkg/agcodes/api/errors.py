from fastapi import HTTPException

from agcodes.core.errors import AGCodesError, DomainError


def to_http(e: Exception) -> HTTPException:
    """Malformed input is 422, other library refusals 400, anything else 500."""
    if isinstance(e, DomainError):
        return HTTPException(status_code=422, detail=str(e))
    if isinstance(e, AGCodesError):
        return HTTPException(status_code=400, detail=str(e))
    return HTTPException(status_code=500, detail=str(e))
