"""Bitset helpers: subgroups are stored as Python ints keyed by element index."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def bool_to_mask(arr: np.ndarray) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def indices_to_mask(idx: np.ndarray, n: int) -> int:
    arr = np.zeros(n, dtype=bool)
    arr[idx] = True
    return bool_to_mask(arr)


def mask_to_bool(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def members_of(mask: int) -> tuple[int, ...]:
    if mask == 0:
        return ()
    nbytes = (mask.bit_length() + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return tuple(int(i) for i in np.flatnonzero(np.unpackbits(raw, bitorder="little")))


def popcount(mask: int) -> int:
    return mask.bit_count()
