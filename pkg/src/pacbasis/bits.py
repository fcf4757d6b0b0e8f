"""Bitmask kernels shared by the context, implication and learning code.

Attribute sets are plain ``int`` masks. Attribute ``j`` of an ``n``-element
universe lives at bit ``n - 1 - j``, so the first attribute is the most
significant bit. With this layout the lectic order on subsets coincides with
the natural order of the integers, and ``range(2 ** n)`` walks every subset
lectically.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence

import numpy as np

#: Largest universe that fits the int64 fast paths.
INT64_BITS = 62

DEFAULT_ENUMERATION_CAP = 24

Pair = tuple[int, int]


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bit_of(j: int, n: int) -> int:
    """Mask of the single attribute at position ``j``."""
    return 1 << (n - 1 - j)


def indices(mask: int, n: int) -> Iterator[int]:
    """Attribute positions contained in ``mask``, ascending."""
    for j in range(n):
        if mask >> (n - 1 - j) & 1:
            yield j


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_model(x: int, premise: int, conclusion: int) -> bool:
    return premise & x != premise or conclusion & x == conclusion


def close_under(pairs: Sequence[Pair], x: int) -> int:
    """Least superset of ``x`` closed under every implication in ``pairs``.

    Repeated passes over the list; implications that already fired are dropped
    from later passes.
    """
    pending = list(pairs)
    changed = True
    while changed and pending:
        changed = False
        rest = []
        for premise, conclusion in pending:
            if premise & x == premise:
                if conclusion & ~x:
                    x |= conclusion
                    changed = True
            else:
                rest.append((premise, conclusion))
        pending = rest
    return x


def close_in_rows(rows: Sequence[int], x: int, full: int) -> int:
    """Intersection of all rows containing ``x``; ``full`` if there are none."""
    result = full
    for row in rows:
        if row & x == x:
            result &= row
    return result


def next_closure(a: int, close: Callable[[int], int], n: int) -> Optional[int]:
    """Lectically next closed set after ``a``, or ``None`` when ``a`` is last."""
    for j in range(n - 1, -1, -1):
        bit = 1 << (n - 1 - j)
        if a & bit:
            a &= ~bit
            continue
        b = close(a | bit)
        # attributes with a smaller index than j sit above ``bit``
        if (b & ~a) >> (n - j) == 0:
            return b
    return None


def check_cap(n: int, cap: Optional[int], hint: Optional[str] = None) -> None:
    from .errors import CapacityError

    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if n > limit:
        raise CapacityError(n, limit, hint)


# -- numpy paths -------------------------------------------------------------

def mask_dtype(n: int):
    return np.int64 if n <= INT64_BITS else object


def all_subsets(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Turn a ``(k, n)`` boolean matrix into ``k`` masks, column 0 most significant."""
    k, n = bits.shape
    if n <= INT64_BITS:
        weights = np.left_shift(np.int64(1), np.arange(n - 1, -1, -1, dtype=np.int64))
        return bits.astype(np.int64) @ weights
    out = np.empty(k, dtype=object)
    for r in range(k):
        m = 0
        for flag in bits[r]:
            m = (m << 1) | int(bool(flag))
        out[r] = m
    return out


def unpack_masks(masks: Sequence[int], n: int) -> np.ndarray:
    out = np.zeros((len(masks), n), dtype=bool)
    for r, m in enumerate(masks):
        for j in range(n):
            out[r, j] = bool(m >> (n - 1 - j) & 1)
    return out


def models_mask(pairs: Sequence[Pair], xs: np.ndarray, n: int) -> np.ndarray:
    """Boolean array: which entries of ``xs`` are models of every implication."""
    result = np.ones(len(xs), dtype=bool)
    if not pairs or len(xs) == 0:
        return result
    dtype = mask_dtype(n)
    premises = np.array([p for p, _ in pairs], dtype=dtype)
    conclusions = np.array([c for _, c in pairs], dtype=dtype)
    # chunk so the (k, |H|) intermediates stay small
    step = max(1, (1 << 20) // max(1, len(pairs)))
    for lo in range(0, len(xs), step):
        x = xs[lo:lo + step, None]
        fires = (x & premises) == premises
        broken = fires & ((x & conclusions) != conclusions)
        result[lo:lo + step] = ~broken.any(axis=1)
    return result


def closures_in_rows(rows: Sequence[int], xs: np.ndarray, n: int) -> np.ndarray:
    """Vectorised ``close_in_rows`` over an array of masks."""
    full = full_mask(n)
    dtype = mask_dtype(n)
    if len(rows) == 0:
        return np.full(len(xs), full, dtype=dtype)
    r = np.array(rows, dtype=dtype)
    out = np.empty(len(xs), dtype=dtype)
    step = max(1, (1 << 20) // len(rows))
    for lo in range(0, len(xs), step):
        x = xs[lo:lo + step, None]
        contains = (x & r) == x
        picked = np.where(contains, r, full)
        out[lo:lo + step] = np.bitwise_and.reduce(picked, axis=1) if dtype is np.int64 \
            else [_and_all(row, full) for row in picked]
    return out


def _and_all(values, full):
    acc = full
    for v in values:
        acc &= v
    return acc
