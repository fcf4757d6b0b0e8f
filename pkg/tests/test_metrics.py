from fractions import Fraction

import numpy as np
import pytest

from pacbasis import (AttributeUniverse, CapacityError, FormalContext, ImplicationList, InvalidArgumentError,
                      canonical_basis, evaluate, horn_distance, horn_distance_sampled, parse_implications,
                      precision, recall)
from pacbasis.cli import CASE_STUDY_COARSE_BASIS, CASE_STUDY_MISSED

from conftest import small_context
from oracles import as_pairs, intents, models


def brute_distance(h, ctx):
    names = ctx.universe.names
    return Fraction(len(models(as_pairs(h), names) ^ intents(ctx)), 2 ** len(names))


def test_exact_basis_has_distance_zero(sa):
    can = canonical_basis(sa)
    assert horn_distance(can, sa) == 0
    assert horn_distance(can, can) == 0


def test_empty_hypothesis_on_one_object(one_object):
    h = ImplicationList(one_object.universe)
    assert brute_distance(h, one_object) == Fraction(6, 8)
    assert horn_distance(h, one_object) == Fraction(6, 8)


def test_coarse_star_alliance_basis(sa):
    coarse = parse_implications(CASE_STUDY_COARSE_BASIS, sa.universe)
    assert len(coarse) == 5
    exact = brute_distance(coarse, sa)
    assert exact == Fraction(57, 512)
    assert horn_distance(coarse, sa) == exact
    assert abs(float(exact) - 0.11) <= 0.02


def test_distance_cap():
    ctx = FormalContext.from_matrix(np.zeros((1, 6), dtype=bool))
    with pytest.raises(CapacityError, match="horn_distance_sampled"):
        horn_distance(ImplicationList(ctx.universe), ctx, cap=5)


@pytest.mark.parametrize("seed", range(25))
def test_distance_against_definition_and_any_exact_basis(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    ctx = small_context(rng, n, max_objects=20)
    u = ctx.universe
    h = ImplicationList.from_pairs(u, [(int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
                                       for _ in range(rng.integers(0, 6))])
    d = horn_distance(h, ctx)
    assert d == brute_distance(h, ctx)
    assert 0 <= d <= 1
    # any exact basis of the context represents the same target
    every_closure = ImplicationList.from_pairs(u, [(m, ctx.close_mask(m)) for m in range(1 << n)])
    assert horn_distance(h, every_closure) == d
    assert horn_distance(h, canonical_basis(ctx)) == d


@pytest.mark.parametrize("seed", range(15))
def test_distance_is_symmetric(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(1, 7))
    ctx = small_context(rng, n)
    u = ctx.universe
    h = ImplicationList.from_pairs(u, [(int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
                                       for _ in range(3)])
    # a context whose intents are exactly Mod(h): one object per model
    mod_h = models(as_pairs(h), u.names)
    realizing = FormalContext(u, [(f"g{m}", u.from_mask(m)) for m in range(1 << n)
                                  if frozenset(u.from_mask(m)) in mod_h])
    assert horn_distance(canonical_basis(ctx), realizing) == horn_distance(h, ctx)


def test_sampled_estimator(one_object, sa):
    h = ImplicationList(one_object.universe)
    est = horn_distance_sampled(h, one_object, 100_000, seed=3)
    assert abs(float(est) - 0.75) <= 0.01
    assert horn_distance_sampled(h, one_object, 100_000, seed=3) == est
    for seed in range(20):
        assert horn_distance_sampled(h, one_object, 1, seed) in (0, 1)
    can = canonical_basis(sa)
    assert horn_distance_sampled(can, sa, 500, seed=9) == 0
    with pytest.raises(InvalidArgumentError):
        horn_distance_sampled(h, one_object, 0)


def test_sampled_estimator_is_unbiased(sa):
    coarse = parse_implications(CASE_STUDY_COARSE_BASIS, sa.universe)
    exact = float(horn_distance(coarse, sa))
    n, seeds = 200, 100
    mean = np.mean([float(horn_distance_sampled(coarse, sa, n, seed)) for seed in range(seeds)])
    sigma = np.sqrt(exact * (1 - exact) / (n * seeds))
    assert abs(mean - exact) <= 3 * sigma


def test_precision_examples(sa, one_object):
    can = canonical_basis(sa)
    assert precision(sa, can) == 1
    invalid = parse_implications("{} -> c", one_object.universe)
    assert precision(one_object, invalid) == 0
    eq2 = parse_implications(CASE_STUDY_MISSED, sa.universe)[0]
    swapped = ImplicationList(sa.universe, [eq2] + list(can)[1:])
    assert precision(sa, swapped) == Fraction(12, 13)
    assert precision(sa, ImplicationList(sa.universe)) is None


def test_recall_examples(sa):
    can = canonical_basis(sa)
    assert recall(sa, can) == 1
    assert recall(sa, ImplicationList(sa.universe)) == 0
    # entails everything and carries an invalid extra: recall ignores precision
    eq2 = parse_implications(CASE_STUDY_MISSED, sa.universe)[0]
    padded = ImplicationList(sa.universe, list(can) + [eq2])
    assert recall(sa, padded) == 1
    assert precision(sa, padded) < 1
    full = FormalContext.from_rows("ab", [(f"g{m}", s) for m, s in enumerate(["", "a", "b", "ab"])])
    assert recall(full, ImplicationList(full.universe)) is None


@pytest.mark.parametrize("seed", range(20))
def test_measures_in_unit_interval(seed):
    rng = np.random.default_rng(200 + seed)
    ctx = small_context(rng, int(rng.integers(2, 7)), max_objects=20)
    n = len(ctx.universe)
    h = ImplicationList.from_pairs(ctx.universe, [(int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
                                                  for _ in range(rng.integers(0, 5))])
    can = canonical_basis(ctx)
    if len(can):
        assert precision(ctx, can) == recall(ctx, can) == 1
    for value in (precision(ctx, h), recall(ctx, h), horn_distance(h, ctx)):
        assert value is None or 0 <= value <= 1


def test_evaluate_report(sa):
    can = canonical_basis(sa)
    report = evaluate(sa, can)
    assert (report.horn_distance, report.precision, report.recall) == (0, 1, 1)
    assert report.lines()[-1] == "mode=exact"
    sampled = evaluate(sa, ImplicationList(sa.universe), samples=1000, seed=4)
    assert sampled.precision is None
    assert "precision=undefined" in sampled.lines()
    assert sampled.lines()[-1] == "mode=sampled(n=1000, seed=4)"


def test_universe_mismatch(sa):
    other = AttributeUniverse("ab")
    with pytest.raises(InvalidArgumentError):
        horn_distance(ImplicationList(other), sa)
