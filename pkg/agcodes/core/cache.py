import json
import logging
import os
from typing import Optional, Type, TypeVar

from pydantic import BaseModel

from agcodes.core.linear_codes import LinearCode

log = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


def save_model(model: BaseModel, filename: str) -> None:
    """Write a descriptor as JSON, creating parent directories."""
    directory = os.path.dirname(filename)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filename, "w") as file:
        json.dump(json.loads(model.json()), file, indent=4, sort_keys=True)
    log.info(f"📂 Saved {type(model).__name__} to {filename}")


def load_model(cls: Type[Model], filename: str) -> Model:
    """Read and validate a descriptor written by save_model."""
    with open(filename, "r") as file:
        data = json.load(file)
    log.info(f"📂 Loaded {cls.__name__} from {filename}")
    return cls.parse_obj(data)


class DistanceCache:
    """Exact minimum distances keyed by the SHA-256 of the code's RREF generator."""

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir
        os.makedirs(cache_dir, exist_ok=True)

    def _path(self, code: LinearCode) -> str:
        return os.path.join(self.cache_dir, f"{code.digest()}.json")

    def get(self, code: LinearCode) -> Optional[int]:
        path = self._path(code)
        if os.path.exists(path):
            with open(path, "r") as file:
                return json.load(file).get("min_distance")
        return None

    def put(self, code: LinearCode, distance: int) -> None:
        with open(self._path(code), "w") as file:
            json.dump({"n": code.n, "k": code.k, "min_distance": int(distance)}, file, indent=4)

    def min_distance(self, code: LinearCode, jobs: Optional[int] = None) -> int:
        cached = self.get(code)
        if cached is not None:
            log.info(f"📂 Using cached distance for {code!r}")
            return cached
        distance = code.min_distance(jobs=jobs)
        self.put(code, distance)
        return distance
