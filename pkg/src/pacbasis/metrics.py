"""Quality measures of a hypothesis against a context or a target theory."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import bits
from .context import FormalContext, same_universe
from .errors import InvalidArgumentError
from .implications import ImplicationList, canonical_basis_pairs, models_table

Target = Union[FormalContext, ImplicationList]

_SAMPLED_HINT = "use horn_distance_sampled for large attribute sets"


def _target_table(target: Target, cap: Optional[int]) -> np.ndarray:
    n = len(target.universe)
    bits.check_cap(n, cap, _SAMPLED_HINT)
    if isinstance(target, FormalContext):
        xs = bits.all_subsets(n)
        return target.close_masks(xs) == xs
    return models_table(target, cap)


def _target_membership(target: Target, xs: np.ndarray) -> np.ndarray:
    if isinstance(target, FormalContext):
        return target.close_masks(xs) == xs
    return bits.models_mask(target.pairs(), xs, len(target.universe))


def symmetric_difference_count(h: ImplicationList, target: Target, cap: Optional[int] = None) -> int:
    """Number of subsets that are models of exactly one of ``h`` and ``target``."""
    same_universe(h.universe, target.universe)
    bits.check_cap(len(h.universe), cap, _SAMPLED_HINT)
    return int(np.count_nonzero(models_table(h, cap) != _target_table(target, cap)))


def horn_distance(h: ImplicationList, target: Target, cap: Optional[int] = None) -> Fraction:
    """Exact fraction of all ``2**|M|`` subsets on which ``h`` and ``target`` disagree."""
    count = symmetric_difference_count(h, target, cap)
    return Fraction(count, 1 << len(h.universe))


def horn_distance_sampled(h: ImplicationList, target: Target, n: int, seed: int = 0) -> Fraction:
    """Monte-Carlo estimate of the Horn-distance from ``n`` uniform subsets."""
    same_universe(h.universe, target.universe)
    if n < 1:
        raise InvalidArgumentError(f"sample count must be positive, got {n}")
    from .learning import uniform_sampler

    sampler = uniform_sampler(h.universe, seed)
    size = len(h.universe)
    pairs = h.pairs()
    hits = 0
    for lo in range(0, n, 1 << 16):
        xs = sampler.draw_masks(min(1 << 16, n - lo))
        hits += int(np.count_nonzero(bits.models_mask(pairs, xs, size) != _target_membership(target, xs)))
    return Fraction(hits, n)


def precision(ctx: FormalContext, h: ImplicationList) -> Optional[Fraction]:
    """Fraction of implications in ``h`` valid in ``ctx``; ``None`` for an empty ``h``."""
    same_universe(ctx.universe, h.universe)
    if len(h) == 0:
        return None
    valid = sum(1 for a, b in h.pairs() if b & ~ctx.close_mask(a) == 0)
    return Fraction(valid, len(h))


def recall(ctx: FormalContext, h: ImplicationList, cap: Optional[int] = None,
           canonical: Optional[ImplicationList] = None) -> Optional[Fraction]:
    """Fraction of the canonical basis entailed by ``h``; ``None`` if the basis is empty."""
    same_universe(ctx.universe, h.universe)
    target = canonical.pairs() if canonical is not None else canonical_basis_pairs(ctx, cap)
    if not target:
        return None
    pairs = h.pairs()
    entailed = sum(1 for a, b in target if b & ~bits.close_under(pairs, a) == 0)
    return Fraction(entailed, len(target))


@dataclass(frozen=True)
class EvalReport:
    horn_distance: Fraction
    precision: Optional[Fraction]
    recall: Optional[Fraction]
    basis_size: int
    canonical_size: int
    mode: str = "exact"
    samples: Optional[int] = None
    seed: Optional[int] = None

    def lines(self) -> list[str]:
        def show(v):
            return "undefined" if v is None else f"{float(v):.6g}"
        mode = self.mode if self.mode == "exact" else f"sampled(n={self.samples}, seed={self.seed})"
        return [f"horn_distance={show(self.horn_distance)}",
                f"precision={show(self.precision)}",
                f"recall={show(self.recall)}",
                f"basis_size={self.basis_size}",
                f"canonical_size={self.canonical_size}",
                f"mode={mode}"]


def evaluate(ctx: FormalContext, h: ImplicationList, samples: Optional[int] = None, seed: int = 0,
             cap: Optional[int] = None) -> EvalReport:
    """Horn-distance, precision and recall of ``h`` against ``ctx`` in one report."""
    canonical = ImplicationList.from_pairs(ctx.universe, canonical_basis_pairs(ctx, cap))
    if samples is None:
        dist = horn_distance(h, ctx, cap)
    else:
        dist = horn_distance_sampled(h, ctx, samples, seed)
    return EvalReport(horn_distance=dist, precision=precision(ctx, h),
                      recall=recall(ctx, h, canonical=canonical), basis_size=len(h),
                      canonical_size=len(canonical), mode="exact" if samples is None else "sampled",
                      samples=samples, seed=None if samples is None else seed)
