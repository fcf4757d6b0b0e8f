"""Query learning of implication bases.

HORN1 learns an implication list from a membership oracle and an equivalence
oracle. Replacing the equivalence oracle by random sampling turns it into
``pac_basis``, whose output is probably approximately correct: with
probability at least ``1 - delta`` its models disagree with the target on at
most an ``epsilon`` fraction of attribute subsets.

Oracles work on integer masks (``AttributeSet.mask``); hypotheses are handed
to equivalence oracles as lists of ``(premise, conclusion)`` mask pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import bits
from .context import AttributeSet, AttributeUniverse, FormalContext
from .errors import InvalidArgumentError, ProtocolError
from .implications import ImplicationList
from .seeding import normalize_seed

_TIE_GUARD = 2.0 ** -40


def sample_count(epsilon: float, delta: float, i: int) -> int:
    """Number of samples for the ``i``-th equivalence query: ``ceil((i - log2 delta) / epsilon)``."""
    _check_accuracy(epsilon, delta)
    if isinstance(i, bool) or int(i) != i or i < 1:
        raise InvalidArgumentError(f"query index must be a positive integer, got {i!r}")
    value = (i - math.log2(delta)) / epsilon
    nearest = round(value)
    if 0 < value - nearest <= _TIE_GUARD:
        # float noise just above an integer must not cost an extra sample
        value = float(nearest)
    return max(1, math.ceil(value))


def _check_accuracy(epsilon, delta):
    if not 0 < epsilon <= 1:
        raise InvalidArgumentError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    if not 0 < delta <= 1:
        raise InvalidArgumentError(f"delta must lie in (0, 1], got {delta!r}")


# -- samplers ----------------------------------------------------------------

class SubsetSampler:
    """Draws random attribute sets, each attribute included independently.

    ``probabilities`` gives the inclusion probability per attribute; ``None``
    means the uniform distribution over all subsets.
    """

    def __init__(self, universe: AttributeUniverse, probabilities: Optional[Sequence[float]] = None,
                 seed: int = 0):
        n = len(universe)
        if probabilities is not None:
            probabilities = np.asarray(probabilities, dtype=float)
            if probabilities.shape != (n,):
                raise InvalidArgumentError(f"need {n} probabilities, got {probabilities.shape}")
            if np.any(~np.isfinite(probabilities)) or np.any(probabilities < 0) or np.any(probabilities > 1):
                raise InvalidArgumentError("probabilities must lie in [0, 1]")
        self.universe = universe
        self.probabilities = probabilities
        self.seed = normalize_seed(seed)
        self._rng = np.random.default_rng(self.seed)

    @property
    def descriptor(self) -> str:
        if self.probabilities is None:
            return "uniform"
        return "biased:" + ",".join(f"{p:g}" for p in self.probabilities)

    def with_seed(self, seed: int) -> "SubsetSampler":
        """Fresh sampler with the same distribution, restarted at ``seed``."""
        return SubsetSampler(self.universe, self.probabilities, seed)

    def draw_masks(self, k: int) -> np.ndarray:
        n = len(self.universe)
        if n == 0:
            return np.zeros(k, dtype=np.int64)
        if self.probabilities is None and n <= bits.INT64_BITS:
            return self._rng.integers(0, 1 << n, size=k, dtype=np.int64)
        p = np.full(n, 0.5) if self.probabilities is None else self.probabilities
        return bits.pack_rows(self._rng.random((k, n)) < p)

    def draw(self) -> AttributeSet:
        return AttributeSet(self.universe, int(self.draw_masks(1)[0]))


def uniform_sampler(universe: AttributeUniverse, seed: int = 0) -> SubsetSampler:
    return SubsetSampler(universe, None, seed)


def biased_sampler(universe: AttributeUniverse, probabilities: Sequence[float], seed: int = 0) -> SubsetSampler:
    return SubsetSampler(universe, probabilities, seed)


# -- oracles -----------------------------------------------------------------

class MembershipOracle:
    """Answers whether an attribute set is a model of the hidden theory.

    ``query`` maps a mask to a bool. ``batch``, if given, maps an array of
    masks to a bool array and is used to speed up sequential scans; the query
    counter still advances once per set actually examined.
    """

    def __init__(self, query: Callable[[int], bool],
                 batch: Optional[Callable[[np.ndarray], np.ndarray]] = None):
        self._query = query
        self._batch = batch
        self.queries = 0

    def __call__(self, x: int) -> bool:
        self.queries += 1
        return bool(self._query(int(x)))

    def first_disagreement(self, xs: np.ndarray, predicted: np.ndarray) -> int:
        """Query ``xs`` in order and stop at the first answer differing from ``predicted``.

        Returns the index of that element, or -1 if all agree.
        """
        if self._batch is None:
            for k, x in enumerate(xs):
                if self(x) != bool(predicted[k]):
                    return k
            return -1
        answers = np.asarray(self._batch(xs), dtype=bool)
        hits = np.flatnonzero(answers != predicted)
        if len(hits):
            self.queries += int(hits[0]) + 1
            return int(hits[0])
        self.queries += len(xs)
        return -1


class EquivalenceOracle:
    """Answers ``None`` if a hypothesis is equivalent to the target, else a counterexample mask."""

    def __init__(self, query: Callable[[list[bits.Pair]], Optional[int]]):
        self._query = query
        self.calls = 0

    def __call__(self, hypothesis: Sequence[bits.Pair]) -> Optional[int]:
        self.calls += 1
        return self._query(list(hypothesis))


class SamplingEquivalenceOracle(EquivalenceOracle):
    """Equivalence by random search for a set in the symmetric difference.

    Call ``i`` draws up to ``sample_count(epsilon, delta, i)`` sets and returns
    the first one on which the hypothesis and the membership oracle disagree.
    """

    def __init__(self, universe: AttributeUniverse, member: MembershipOracle, epsilon: float,
                 delta: float, sampler: SubsetSampler):
        _check_accuracy(epsilon, delta)
        super().__init__(self._search)
        self.universe = universe
        self.member = member
        self.epsilon = epsilon
        self.delta = delta
        self.sampler = sampler
        self.samples_drawn = 0

    def _search(self, hypothesis: list[bits.Pair]) -> Optional[int]:
        n = len(self.universe)
        remaining = sample_count(self.epsilon, self.delta, self.calls)
        chunk = 16
        while remaining > 0:
            k = min(chunk, remaining)
            xs = self.sampler.draw_masks(k)
            in_hypothesis = bits.models_mask(hypothesis, xs, n)
            # a set is a counterexample iff membership differs from being a model of H
            hit = self.member.first_disagreement(xs, in_hypothesis)
            if hit >= 0:
                self.samples_drawn += hit + 1
                return int(xs[hit])
            self.samples_drawn += k
            remaining -= k
            chunk = min(chunk * 2, 8192)
        return None


def context_membership_oracle(ctx: FormalContext) -> MembershipOracle:
    """Membership oracle of the theory of ``ctx``: true exactly on intents."""
    return MembershipOracle(lambda x: ctx.close_mask(x) == x,
                            lambda xs: ctx.close_masks(xs) == xs)


def theory_membership_oracle(implications: ImplicationList) -> MembershipOracle:
    pairs = implications.pairs()
    n = len(implications.universe)
    return MembershipOracle(lambda x: all(bits.is_model(x, a, b) for a, b in pairs),
                            lambda xs: bits.models_mask(pairs, xs, n))


def exact_equivalence_oracle(ctx: FormalContext, cap: Optional[int] = None) -> EquivalenceOracle:
    """Brute-force equivalence oracle; counterexamples are lectically smallest."""
    n = len(ctx.universe)
    bits.check_cap(n, cap)
    subsets = bits.all_subsets(n)
    intents = ctx.close_masks(subsets) == subsets

    def query(hypothesis):
        diff = bits.models_mask(hypothesis, subsets, n) != intents
        hits = np.flatnonzero(diff)
        return int(hits[0]) if len(hits) else None

    return EquivalenceOracle(query)


# -- learners ----------------------------------------------------------------

def horn1_pairs(n: int, member: MembershipOracle, equiv: EquivalenceOracle,
                max_queries: Optional[int] = None) -> list[bits.Pair]:
    full = bits.full_mask(n)
    hypothesis: list[bits.Pair] = []
    while True:
        if max_queries is not None and equiv.calls >= max_queries:
            raise ProtocolError(f"no convergence after {max_queries} equivalence queries")
        c = equiv(hypothesis)
        if c is None:
            return hypothesis
        violated = [k for k, (a, b) in enumerate(hypothesis) if not bits.is_model(c, a, b)]
        if member(c) != bool(violated):
            kind = "model" if violated else "non-model"
            raise ProtocolError(f"counterexample {c:#x} is a {kind} of both hypothesis and target", c)
        if violated:
            # positive counterexample: shrink the conclusions it violates
            for k in violated:
                a, b = hypothesis[k]
                hypothesis[k] = (a, b & c)
            continue
        for k, (a, b) in enumerate(hypothesis):
            reduced = c & a
            if reduced != a and not member(reduced):
                hypothesis[k] = (reduced, b | (a & ~c))
                break
        else:
            hypothesis.append((c, full))


def horn1(universe: AttributeUniverse, member: MembershipOracle, equiv: EquivalenceOracle,
          max_queries: Optional[int] = None) -> ImplicationList:
    """Learn an implication list with membership and equivalence queries.

    With exact oracles the result is the canonical basis of the target theory
    (up to redundant conclusion attributes).

    Raises
    ------
    ProtocolError
        If a returned counterexample is neither positive nor negative, or
        ``max_queries`` equivalence queries pass without convergence.
    """
    return ImplicationList.from_pairs(universe, horn1_pairs(len(universe), member, equiv, max_queries))


@dataclass(frozen=True)
class PacParams:
    epsilon: float
    delta: float
    seed: int = 0
    sampler: Optional[SubsetSampler] = field(default=None, compare=False)

    def __post_init__(self):
        _check_accuracy(self.epsilon, self.delta)


@dataclass(frozen=True)
class RunStats:
    seed: int
    epsilon: float
    delta: float
    i_final: int
    membership_queries: int
    samples_drawn: int
    basis_size: int
    sampler: str = "uniform"

    def to_record(self) -> str:
        """Flat ``key=value`` record."""
        return (f"seed={self.seed} epsilon={self.epsilon:g} delta={self.delta:g} i_final={self.i_final} "
                f"membership_queries={self.membership_queries} samples_drawn={self.samples_drawn} "
                f"basis_size={self.basis_size}")


def make_sampling_equivalence_oracle(universe: AttributeUniverse, member: MembershipOracle,
                                     params: PacParams) -> SamplingEquivalenceOracle:
    sampler = params.sampler or uniform_sampler(universe)
    if sampler.universe != universe:
        raise InvalidArgumentError("sampler is defined over a different universe")
    return SamplingEquivalenceOracle(universe, member, params.epsilon, params.delta,
                                     sampler.with_seed(params.seed))


def pac_basis(universe: AttributeUniverse, member: MembershipOracle,
              params: PacParams) -> tuple[ImplicationList, RunStats]:
    """HORN1 driven by the sampling equivalence oracle.

    The result depends only on the target, ``params`` and the sampler's
    distribution; the sampler is restarted at ``params.seed``.
    """
    equiv = make_sampling_equivalence_oracle(universe, member, params)
    basis = horn1(universe, member, equiv)
    stats = RunStats(seed=normalize_seed(params.seed), epsilon=params.epsilon, delta=params.delta,
                     i_final=equiv.calls, membership_queries=member.queries,
                     samples_drawn=equiv.samples_drawn, basis_size=len(basis),
                     sampler=equiv.sampler.descriptor)
    return basis, stats


def pac_basis_of_context(ctx: FormalContext, params: PacParams) -> tuple[ImplicationList, RunStats]:
    return pac_basis(ctx.universe, context_membership_oracle(ctx), params)
