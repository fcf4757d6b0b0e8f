"""Formal contexts, attribute sets and the derivation operators."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import bits
from .errors import InvalidArgumentError


class AttributeUniverse:
    """Ordered, duplicate-free attribute labels.

    The order fixes bit positions for every :class:`AttributeSet` built over
    this universe, and with it the lectic order.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index = {}
        for pos, name in enumerate(names):
            if not isinstance(name, str) or not name:
                raise InvalidArgumentError(f"attribute labels must be non-empty strings, got {name!r}")
            if name in index:
                raise InvalidArgumentError(f"duplicate attribute label {name!r}")
            index[name] = pos
        self.names = names
        self._index = index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, AttributeUniverse) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"AttributeUniverse({list(self.names)!r})"

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return bits.full_mask(len(self.names))

    def position(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidArgumentError(f"unknown attribute {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        n = len(self.names)
        mask = 0
        for name in names:
            mask |= bits.bit_of(self.position(name), n)
        return mask

    def set(self, names: Iterable[str] = ()) -> "AttributeSet":
        """Attribute set holding the given labels."""
        return AttributeSet(self, self.mask_of(names))

    def from_mask(self, mask: int) -> "AttributeSet":
        return AttributeSet(self, mask)

    @property
    def empty(self) -> "AttributeSet":
        return AttributeSet(self, 0)

    @property
    def full(self) -> "AttributeSet":
        return AttributeSet(self, self.full_mask)


class AttributeSet:
    """Immutable subset of an :class:`AttributeUniverse`, stored as a bitmask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: AttributeUniverse, mask: int):
        mask = int(mask)
        if mask < 0 or mask >> len(universe):
            raise InvalidArgumentError(f"mask {mask:#x} has bits outside a universe of size {len(universe)}")
        self.universe = universe
        self.mask = mask

    def _other(self, other: "AttributeSet") -> int:
        if not isinstance(other, AttributeSet):
            raise TypeError(f"expected AttributeSet, got {type(other).__name__}")
        same_universe(self.universe, other.universe)
        return other.mask

    def __or__(self, other):
        return AttributeSet(self.universe, self.mask | self._other(other))

    def __and__(self, other):
        return AttributeSet(self.universe, self.mask & self._other(other))

    def __sub__(self, other):
        return AttributeSet(self.universe, self.mask & ~self._other(other))

    def __xor__(self, other):
        return AttributeSet(self.universe, self.mask ^ self._other(other))

    def __le__(self, other):
        m = self._other(other)
        return self.mask & m == self.mask

    def __lt__(self, other):
        m = self._other(other)
        return self.mask != m and self.mask & m == self.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __eq__(self, other) -> bool:
        if not isinstance(other, AttributeSet):
            return NotImplemented
        return self.mask == other.mask and self.universe == other.universe

    def __hash__(self) -> int:
        return hash((self.universe, self.mask))

    def __len__(self) -> int:
        return bits.popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        names = self.universe.names
        return (names[j] for j in bits.indices(self.mask, len(names)))

    def __contains__(self, name: str) -> bool:
        pos = self.universe._index.get(name)
        return pos is not None and bool(self.mask & bits.bit_of(pos, len(self.universe)))

    def __repr__(self) -> str:
        return "{" + ", ".join(self) + "}"

    def lectic_key(self) -> int:
        """Sort key realising the lectic order."""
        return self.mask


def same_universe(a: AttributeUniverse, b: AttributeUniverse) -> None:
    if a is not b and a != b:
        raise InvalidArgumentError("attribute sets belong to different universes")


class FormalContext:
    """Objects with their attribute rows over a shared universe.

    Instances are immutable; derived tables are cached on first use.
    """

    def __init__(self, universe: AttributeUniverse, objects: Iterable[tuple[str, AttributeSet]] = ()):
        objects = tuple((label, row) for label, row in objects)
        seen = set()
        for label, row in objects:
            if label in seen:
                raise InvalidArgumentError(f"duplicate object label {label!r}")
            seen.add(label)
            same_universe(universe, row.universe)
        self.universe = universe
        self.objects = objects
        self.rows = tuple(row.mask for _, row in objects)

    @classmethod
    def from_rows(cls, attributes: Sequence[str], rows: Iterable[tuple[str, Iterable[str]]]) -> "FormalContext":
        """Build a context from ``(object label, attribute labels)`` pairs."""
        universe = AttributeUniverse(attributes)
        return cls(universe, [(label, universe.set(names)) for label, names in rows])

    @classmethod
    def from_matrix(cls, matrix, attributes: Optional[Sequence[str]] = None,
                    objects: Optional[Sequence[str]] = None) -> "FormalContext":
        """Build a context from a boolean object-by-attribute matrix."""
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2:
            raise InvalidArgumentError("incidence matrix must be two-dimensional")
        k, n = matrix.shape
        attributes = [f"m{j}" for j in range(n)] if attributes is None else list(attributes)
        objects = [f"g{i}" for i in range(k)] if objects is None else list(objects)
        if len(attributes) != n or len(objects) != k:
            raise InvalidArgumentError("label count does not match the matrix shape")
        universe = AttributeUniverse(attributes)
        masks = bits.pack_rows(matrix) if k else []
        return cls(universe, [(objects[i], AttributeSet(universe, int(masks[i]))) for i in range(k)])

    def __len__(self) -> int:
        return len(self.objects)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.universe == other.universe and self.rows == other.rows
                and [g for g, _ in self.objects] == [g for g, _ in other.objects])

    def __repr__(self) -> str:
        return f"FormalContext({len(self.objects)} objects x {len(self.universe)} attributes)"

    @property
    def object_labels(self) -> list[str]:
        return [label for label, _ in self.objects]

    def to_matrix(self) -> np.ndarray:
        return bits.unpack_masks(self.rows, len(self.universe))

    def density(self) -> float:
        cells = len(self.rows) * len(self.universe)
        return sum(bits.popcount(r) for r in self.rows) / cells if cells else 0.0

    # int-level kernels used by the learning and metric code
    def close_mask(self, x: int) -> int:
        table = self._intent_table
        if table is not None:
            return int(table[x])
        return bits.close_in_rows(self.rows, x, self.universe.full_mask)

    def close_masks(self, xs: np.ndarray) -> np.ndarray:
        table = self._intent_table
        if table is not None:
            return table[xs]
        return bits.closures_in_rows(self.rows, xs, len(self.universe))

    @cached_property
    def _intent_table(self) -> Optional[np.ndarray]:
        # lookup table of every closure; only worth it for small universes
        n = len(self.universe)
        if n > 14 or len(self.rows) * (1 << n) > (1 << 26):
            return None
        return bits.closures_in_rows(self.rows, bits.all_subsets(n), n)


def _check(ctx: FormalContext, b: AttributeSet) -> None:
    same_universe(ctx.universe, b.universe)


def derive_objects(ctx: FormalContext, b: AttributeSet) -> frozenset[int]:
    """Indices of the objects having every attribute of ``b``."""
    _check(ctx, b)
    x = b.mask
    return frozenset(i for i, row in enumerate(ctx.rows) if row & x == x)


def derive_attributes(ctx: FormalContext, objects: Iterable[int]) -> AttributeSet:
    """Attributes shared by all given objects (the whole universe for none)."""
    mask = ctx.universe.full_mask
    for i in objects:
        mask &= ctx.rows[i]
    return AttributeSet(ctx.universe, mask)


def close_attributes(ctx: FormalContext, b: AttributeSet) -> AttributeSet:
    """``b''``: intersection of all rows containing ``b``."""
    _check(ctx, b)
    return AttributeSet(ctx.universe, ctx.close_mask(b.mask))


def is_intent(ctx: FormalContext, b: AttributeSet) -> bool:
    _check(ctx, b)
    return ctx.close_mask(b.mask) == b.mask


def enumerate_intents(ctx: FormalContext, cap: Optional[int] = None) -> list[AttributeSet]:
    """All intents of ``ctx`` in lectic order, by NextClosure."""
    n = len(ctx.universe)
    bits.check_cap(n, cap)
    close = ctx.close_mask
    out = []
    a: Optional[int] = close(0)
    while a is not None:
        out.append(AttributeSet(ctx.universe, a))
        a = bits.next_closure(a, close, n)
    return out
