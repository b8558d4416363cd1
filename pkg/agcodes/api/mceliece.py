from fastapi import APIRouter

from agcodes.api.errors import to_http
from agcodes.models.applications import (
    McElieceDecryptRequest,
    McElieceDecryptResult,
    McElieceEncryptRequest,
    McElieceKeygenRequest,
    McElieceKeyPairModel,
)
from agcodes.services.crypto import decrypt, encrypt, keygen

router = APIRouter()


@router.post("/keygen", response_model=McElieceKeyPairModel)
def generate_keys(request: McElieceKeygenRequest):
    try:
        return keygen(request.base, request.m, request.n, request.deg_f, request.seed)
    except Exception as e:
        raise to_http(e)


@router.post("/encrypt")
def encrypt_message(request: McElieceEncryptRequest):
    try:
        return {"ciphertext": encrypt(request.public, request.message, request.seed)}
    except Exception as e:
        raise to_http(e)


@router.post("/decrypt", response_model=McElieceDecryptResult)
def decrypt_message(request: McElieceDecryptRequest):
    try:
        return decrypt(request.keypair, request.ciphertext)
    except Exception as e:
        raise to_http(e)
