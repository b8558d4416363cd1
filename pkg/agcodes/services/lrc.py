import logging
from typing import List

from agcodes.core.curves import HermitianCurve
from agcodes.core.errors import DomainError, RecoverySetDamagedError
from agcodes.core.field_arith import make_field
from agcodes.core.lrc import (
    LrcCode,
    availability2_code,
    btv_code,
    invariant_partition,
    local_recover,
    tamo_barg,
)
from agcodes.models.applications import LrcDescriptor, LrcRepairResult, LrcSummary

log = logging.getLogger(__name__)

CONSTRUCTIONS = ("tamo-barg", "btv", "availability2")


def _required(desc: LrcDescriptor, *names: str) -> None:
    missing = [name for name in names if getattr(desc, name) is None]
    if missing:
        raise DomainError(f"{desc.construction} needs {', '.join(missing)}")


def lrc_from_descriptor(desc: LrcDescriptor) -> LrcCode:
    if desc.construction == "tamo-barg":
        _required(desc, "gf", "size", "k")
        field_ = make_field(desc.gf.p, desc.gf.tower)
        partition = invariant_partition(field_, desc.partition, desc.size)
        return tamo_barg(field_, partition, desc.k, desc.size - 1)
    if desc.construction == "btv":
        _required(desc, "q0", "deg_g", "s")
        return btv_code(HermitianCurve(desc.q0), desc.deg_g, desc.s)
    if desc.construction == "availability2":
        _required(desc, "q0", "a", "b")
        return availability2_code(HermitianCurve(desc.q0), desc.a, desc.b)
    raise DomainError(f"Unknown LRC construction {desc.construction!r}; choose from {', '.join(CONSTRUCTIONS)}")


def lrc_summary(lrc: LrcCode) -> LrcSummary:
    structure = lrc.structure
    return LrcSummary(
        construction=lrc.construction,
        n=lrc.n,
        k=lrc.k,
        locality=structure.locality,
        local_distance=structure.local_distance,
        designed_distance=lrc.designed_distance,
        partitions=structure.partitions,
    )


def repair_word(lrc: LrcCode, word_hex: str, which: int = 0) -> List[LrcRepairResult]:
    """Rebuild every erased symbol from one recovery set.

    A recovery set that itself holds erasures is swapped for the other partition
    when the code has availability 2. Repaired symbols are used by later repairs.
    """
    field_ = lrc.field
    word, erasures = field_.decode_hex(word_hex)
    if word.size != lrc.n:
        raise DomainError(f"Word has length {word.size}, code has length {lrc.n}")
    if not erasures:
        raise DomainError("Nothing to repair: the word has no '?' symbols")
    pending = set(erasures)
    results = []
    for i in sorted(erasures):
        pending.discard(i)
        options = [which] + [w for w in range(lrc.structure.availability) if w != which]
        for attempt, w in enumerate(options):
            try:
                recovery = local_recover(lrc, word, i, damaged=pending, which=w)
                break
            except RecoverySetDamagedError:
                if attempt + 1 == len(options):
                    raise
                log.warning(f"⚠️ Recovery set of {i} in partition {w} is damaged, trying partition {options[attempt + 1]}")
        word[i] = recovery.value
        results.append(LrcRepairResult(
            position=i,
            value=field_.encode_hex(word[i:i + 1]),
            partition=recovery.which,
            downloads=recovery.downloads,
            helpers=recovery.downloaded,
        ))
        log.info(f"✅ Repaired position {i} with {recovery.downloads} downloads")
    return results
