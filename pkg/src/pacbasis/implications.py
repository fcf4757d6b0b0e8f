"""Implications, their models, entailment and the canonical basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from . import bits
from .context import AttributeSet, AttributeUniverse, FormalContext, same_universe
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class Implication:
    """``premise -> conclusion``, stored verbatim."""

    premise: AttributeSet
    conclusion: AttributeSet

    def __post_init__(self):
        same_universe(self.premise.universe, self.conclusion.universe)

    @property
    def universe(self) -> AttributeUniverse:
        return self.premise.universe

    @property
    def pair(self) -> bits.Pair:
        return self.premise.mask, self.conclusion.mask

    def __str__(self) -> str:
        return format_implication(self)


class ImplicationList(Sequence[Implication]):
    """Ordered implications over one universe. Order matters and duplicates are kept."""

    def __init__(self, universe: AttributeUniverse, implications: Iterable[Implication] = ()):
        items = tuple(implications)
        for imp in items:
            same_universe(universe, imp.universe)
        self.universe = universe
        self._items = items

    @classmethod
    def from_pairs(cls, universe: AttributeUniverse, pairs: Iterable[bits.Pair]) -> "ImplicationList":
        return cls(universe, [Implication(AttributeSet(universe, a), AttributeSet(universe, b)) for a, b in pairs])

    def pairs(self) -> list[bits.Pair]:
        return [imp.pair for imp in self._items]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ImplicationList(self.universe, self._items[i])
        return self._items[i]

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Implication]:
        return iter(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImplicationList):
            return NotImplemented
        return self.universe == other.universe and self._items == other._items

    def __repr__(self) -> str:
        return f"ImplicationList({len(self._items)} implications)"

    def __str__(self) -> str:
        return "\n".join(format_implication(imp) for imp in self._items)

    def normalized(self) -> frozenset[bits.Pair]:
        """Order-insensitive form: ``(premise, closure of premise and conclusion)`` pairs.

        Two lists with the same normal form are the same basis up to ordering
        and the redundancy of their conclusions.
        """
        pairs = self.pairs()
        return frozenset((a, bits.close_under(pairs, a | b)) for a, b in pairs)


def _check_universe(universe: AttributeUniverse, *sets: AttributeSet) -> None:
    for s in sets:
        same_universe(universe, s.universe)


def is_model(a: AttributeSet, imp: Implication) -> bool:
    """``a`` respects ``imp``: premise not contained, or conclusion contained."""
    _check_universe(imp.universe, a)
    return bits.is_model(a.mask, *imp.pair)


def closure(implications: ImplicationList, x: AttributeSet) -> AttributeSet:
    """Smallest superset of ``x`` closed under every implication in the list."""
    _check_universe(implications.universe, x)
    return AttributeSet(x.universe, bits.close_under(implications.pairs(), x.mask))


def entails(implications: ImplicationList, imp: Implication) -> bool:
    _check_universe(implications.universe, imp.premise)
    a, b = imp.pair
    return b & ~bits.close_under(implications.pairs(), a) == 0


def models_table(implications: ImplicationList, cap: Optional[int] = None) -> np.ndarray:
    """Boolean vector over all ``2**|M|`` subsets, indexed by mask."""
    n = len(implications.universe)
    bits.check_cap(n, cap)
    return bits.models_mask(implications.pairs(), bits.all_subsets(n), n)


def enumerate_models(implications: ImplicationList, cap: Optional[int] = None) -> list[AttributeSet]:
    """All models of the list in lectic order."""
    table = models_table(implications, cap)
    u = implications.universe
    return [AttributeSet(u, int(m)) for m in np.flatnonzero(table)]


def is_valid_in(ctx: FormalContext, imp: Implication) -> bool:
    """Every object having the premise also has the conclusion."""
    same_universe(ctx.universe, imp.universe)
    a, b = imp.pair
    return b & ~ctx.close_mask(a) == 0


def refuting_objects(ctx: FormalContext, imp: Implication) -> list[str]:
    """Labels of the objects that violate ``imp``."""
    same_universe(ctx.universe, imp.universe)
    a, b = imp.pair
    return [label for label, row in ctx.objects if not bits.is_model(row.mask, a, b)]


def canonical_basis_pairs(ctx: FormalContext, cap: Optional[int] = None) -> list[bits.Pair]:
    n = len(ctx.universe)
    bits.check_cap(n, cap)
    full = ctx.universe.full_mask
    basis: list[bits.Pair] = []

    def pseudo_close(x: int) -> int:
        # close under implications whose premise is a proper subset
        changed = True
        while changed:
            changed = False
            for p, c in basis:
                if p & x == p and p != x and c & ~x:
                    x |= c
                    changed = True
        return x

    a: Optional[int] = 0
    while a is not None:
        closed = ctx.close_mask(a)
        if closed != a:
            basis.append((a, closed))
        if a == full:
            break
        a = bits.next_closure(a, pseudo_close, n)
    return basis


def canonical_basis(ctx: FormalContext, cap: Optional[int] = None) -> ImplicationList:
    """Duquenne-Guigues basis ``{P -> P''}``, premises in lectic order."""
    return ImplicationList.from_pairs(ctx.universe, canonical_basis_pairs(ctx, cap))


def equivalent(first: ImplicationList, second: ImplicationList, cap: Optional[int] = None) -> bool:
    """Same model sets, decided by exhaustive enumeration."""
    same_universe(first.universe, second.universe)
    return bool(np.array_equal(models_table(first, cap), models_table(second, cap)))


# -- text format ----------------------------------------------------------

BOTTOM = "⊥"
EMPTY = "{}"


def _format_set(s: AttributeSet) -> str:
    return ", ".join(s) if s else EMPTY


def format_implication(imp: Implication) -> str:
    """``a, b -> c``; the conclusion is shown minus the premise, a full one as ``⊥``."""
    premise, conclusion = imp.premise, imp.conclusion
    full = premise.universe.full_mask
    if conclusion.mask == full and premise.mask != full:
        rhs = BOTTOM
    else:
        rhs = _format_set(conclusion - premise)
    return f"{_format_set(premise)} -> {rhs}"


def format_implications(implications: ImplicationList) -> str:
    return "".join(format_implication(imp) + "\n" for imp in implications)


def _parse_side(universe: AttributeUniverse, text: str, line: int, allow_bottom: bool) -> AttributeSet:
    from .errors import ContextParseError

    text = text.strip()
    if text in (EMPTY, ""):
        return universe.empty
    if text == BOTTOM:
        if not allow_bottom:
            raise ContextParseError(f"{BOTTOM} is only allowed as a conclusion", line)
        return universe.full
    names = [t.strip() for t in text.split(",")]
    try:
        return universe.set(names)
    except InvalidArgumentError as exc:
        raise ContextParseError(str(exc), line) from None


def parse_implications(text: str, universe: AttributeUniverse) -> ImplicationList:
    """Parse one ``premise -> conclusion`` per line; blank lines and ``#`` comments are skipped."""
    from .errors import ContextParseError

    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count("->") != 1:
            raise ContextParseError("expected exactly one '->'", lineno)
        lhs, rhs = line.split("->")
        items.append(Implication(_parse_side(universe, lhs, lineno, False),
                                 _parse_side(universe, rhs, lineno, True)))
    return ImplicationList(universe, items)


ImplicationTarget = Union[FormalContext, ImplicationList]
