from typing import List, Optional

from pydantic import BaseModel

from agcodes.models.codes import FieldDescriptor


# ------------------------
# Locally recoverable codes
# ------------------------
class LrcDescriptor(BaseModel):
    """tamo-barg: gf, partition, size, k; btv: q0, deg_g, s; availability2: q0, a, b."""
    construction: str
    gf: Optional[FieldDescriptor] = None
    partition: str = "multiplicative"
    size: Optional[int] = None
    k: Optional[int] = None
    q0: Optional[int] = None
    deg_g: Optional[int] = None
    s: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None


class LrcSummary(BaseModel):
    construction: str
    n: int
    k: int
    locality: List[int]
    local_distance: List[int]
    designed_distance: Optional[int] = None
    partitions: List[List[List[int]]]


class LrcRepairRequest(BaseModel):
    lrc: LrcDescriptor
    # hex word; erased symbols written as '?'
    word: str
    which: int = 0


class LrcRepairResult(BaseModel):
    position: int
    value: str
    partition: int
    downloads: int
    helpers: List[int]


# ------------------------
# McEliece
# ------------------------
class McElieceKeygenRequest(BaseModel):
    base: FieldDescriptor
    m: int
    n: int
    deg_f: int
    seed: int


class McEliecePublicKeyModel(BaseModel):
    gf: FieldDescriptor
    t: int
    n: int
    k: int
    rows: List[str]


class McElieceSecretKeyModel(BaseModel):
    gf: FieldDescriptor
    support: List[int]
    goppa_poly: List[int]
    seed: int


class McElieceKeyPairModel(BaseModel):
    public: McEliecePublicKeyModel
    secret: McElieceSecretKeyModel


class McElieceEncryptRequest(BaseModel):
    public: McEliecePublicKeyModel
    message: str
    seed: int


class McElieceDecryptRequest(BaseModel):
    keypair: McElieceKeyPairModel
    ciphertext: str


class McElieceDecryptResult(BaseModel):
    status: str
    message: Optional[str] = None
    reason: str = ""


# ------------------------
# Bilinear multiplication
# ------------------------
class BilinearModel(BaseModel):
    q: int
    k: int
    length: int
    symmetric: bool
    points: List[int]
    alpha: List[List[int]]
    beta: List[List[int]]
    omega: List[int]


class BilinearBuildRequest(BaseModel):
    q: int
    k: int


class BilinearMultiplyRequest(BaseModel):
    q: int
    k: int
    x: int
    y: int


class BilinearMultiplyResult(BaseModel):
    product: int
    direct: int
    agrees: bool
