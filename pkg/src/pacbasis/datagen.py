"""Artificial formal contexts and the bundled Star-Alliance context."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from .context import FormalContext
from .errors import GenerationExhaustedError, InvalidArgumentError
from .implications import canonical_basis_pairs
from .io import parse_context
from .seeding import derive_seed, normalize_seed

DEFAULT_MAX_OBJECTS = 4096


@dataclass(frozen=True)
class GenSpec:
    """Parameters of the random context generator.

    The object count is uniform on ``object_count_range`` and the cross density
    uniform on ``density_range``, both inclusive.
    """

    num_attributes: int = 10
    object_count_range: tuple[int, int] = (1, 400)
    density_range: tuple[float, float] = (0.0, 1.0)
    seed: int = 0
    max_objects: int = DEFAULT_MAX_OBJECTS

    def __post_init__(self):
        lo, hi = self.object_count_range
        dlo, dhi = self.density_range
        if self.num_attributes < 0:
            raise InvalidArgumentError("num_attributes must be non-negative")
        if not 1 <= lo <= hi <= self.max_objects:
            raise InvalidArgumentError(
                f"object count range must satisfy 1 <= lo <= hi <= {self.max_objects}, got {(lo, hi)}")
        if not 0.0 <= dlo <= dhi <= 1.0:
            raise InvalidArgumentError(f"density range must lie in [0, 1], got {(dlo, dhi)}")

    def with_seed(self, seed: int) -> "GenSpec":
        return GenSpec(self.num_attributes, self.object_count_range, self.density_range, seed,
                       self.max_objects)


def random_context(spec: GenSpec) -> FormalContext:
    """Draw a context: pick an object count and a density, then flip a biased coin per cell."""
    rng = np.random.default_rng(normalize_seed(spec.seed))
    lo, hi = spec.object_count_range
    k = int(rng.integers(lo, hi, endpoint=True))
    dlo, dhi = spec.density_range
    p = float(rng.uniform(dlo, dhi)) if dhi > dlo else dlo
    crosses = rng.random((k, spec.num_attributes)) < p
    return FormalContext.from_matrix(crosses)


@dataclass(frozen=True)
class CorpusEntry:
    index: int
    seed: int
    context: FormalContext
    canonical_size: int


def generate_corpus(spec: GenSpec, count: int, min_basis_size: int = 0,
                    max_attempts: Optional[int] = None) -> list[CorpusEntry]:
    """Contexts whose canonical basis has at least ``min_basis_size`` implications.

    Attempt ``t`` uses the seed ``derive_seed(spec.seed, t)``, so the corpus is a
    function of ``spec`` alone.
    """
    if count < 1:
        raise InvalidArgumentError("count must be at least 1")
    limit = 100 * count if max_attempts is None else max_attempts
    out: list[CorpusEntry] = []
    for attempt in range(limit):
        seed = derive_seed(spec.seed, attempt)
        ctx = random_context(spec.with_seed(seed))
        size = len(canonical_basis_pairs(ctx))
        if size >= min_basis_size:
            out.append(CorpusEntry(len(out), seed, ctx, size))
            if len(out) == count:
                return out
    raise GenerationExhaustedError(
        f"only {len(out)} of {count} contexts reached {min_basis_size} implications in {limit} attempts")


def corpus(spec: GenSpec, count: int, min_basis_size: int = 0) -> list[FormalContext]:
    return [entry.context for entry in generate_corpus(spec, count, min_basis_size)]


def star_alliance() -> FormalContext:
    """The 13 x 9 Star-Alliance airline/region context."""
    data = resources.files("pacbasis").joinpath("data/star-alliance.cxt").read_bytes()
    return parse_context(data, "burmeister")


def star_alliance_path():
    return resources.files("pacbasis").joinpath("data/star-alliance.cxt")
