import os

from dotenv import load_dotenv

# Load optional overrides from .env
load_dotenv()


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        raise ValueError(f"Invalid integer for {name}: {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


# Largest number of codewords (or candidate functions) enumerated by brute force
ENUMERATION_LIMIT = _int_setting("AGCODES_ENUMERATION_LIMIT", 2 ** 24)

# Largest n for subset-enumerating checks (arithmetic secret sharing and its Riemann-Roch system)
SUBSET_LIMIT = _int_setting("AGCODES_SUBSET_LIMIT", 14)

# Default worker threads for brute-force enumeration
DEFAULT_JOBS = _int_setting("AGCODES_JOBS", 1)

LOG_LEVEL = os.getenv("AGCODES_LOG_LEVEL", "WARNING").upper()

# Messages per chunk when enumerating codewords
CHUNK_SIZE = 1 << 15
