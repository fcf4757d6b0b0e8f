"""Accuracy/confidence sweeps and stability runs, reported as CSV.

Each run computes a PAC basis of one context and records its Horn-distance,
precision and recall against the canonical basis. Runs are grouped by
``(epsilon, delta)`` cell and summarised by mean and population standard
deviation, skipping undefined precision/recall values.

CSV layout: one data row per run, then one ``aggregate`` row per cell. In an
aggregate row, ``repetition`` holds the number of runs in the cell, ``seed``
is empty and every numeric column holds ``mean;std;n`` where ``n`` counts
the defined values that entered the mean.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO, Union

from .context import FormalContext
from .datagen import GenSpec, generate_corpus, star_alliance
from .errors import InvalidArgumentError, PacBasisError
from .implications import ImplicationList, canonical_basis_pairs
from .io import read_context
from .learning import PacParams, pac_basis_of_context
from .metrics import horn_distance, precision, recall
from .seeding import derive_seed

CSV_HEADER = ("context_id,epsilon,delta,repetition,seed,basis_size,canonical_size,"
              "horn_distance,precision,recall,membership_queries,samples_drawn")
COLUMNS = tuple(CSV_HEADER.split(","))
METRICS = ("basis_size", "canonical_size", "horn_distance", "precision", "recall",
           "membership_queries", "samples_drawn")

_CORPUS_STREAM = 1 << 63


class DataError(PacBasisError):
    """Experiment input is unusable (empty corpus, bad spec file)."""


@dataclass(frozen=True)
class RunRecord:
    context_id: str
    epsilon: float
    delta: float
    repetition: int
    seed: int
    basis_size: int
    canonical_size: int
    horn_distance: Fraction
    precision: Optional[Fraction]
    recall: Optional[Fraction]
    membership_queries: int
    samples_drawn: int

    def cells(self) -> list[str]:
        return [self.context_id, _num(self.epsilon), _num(self.delta), str(self.repetition),
                str(self.seed), str(self.basis_size), str(self.canonical_size),
                _num(self.horn_distance), _num(self.precision), _num(self.recall),
                str(self.membership_queries), str(self.samples_drawn)]


@dataclass(frozen=True)
class Summary:
    mean: Optional[float]
    std: Optional[float]
    n: int

    def cell(self) -> str:
        return f"{_num(self.mean)};{_num(self.std)};{self.n}"


@dataclass(frozen=True)
class Aggregate:
    epsilon: float
    delta: float
    runs: int
    stats: dict

    def __getitem__(self, metric: str) -> Summary:
        return self.stats[metric]

    def skipped(self, metric: str) -> int:
        return self.runs - self.stats[metric].n

    def cells(self) -> list[str]:
        return (["aggregate", _num(self.epsilon), _num(self.delta), str(self.runs), ""]
                + [self.stats[m].cell() for m in METRICS])


def _num(value) -> str:
    if value is None:
        return ""
    return f"{float(value):.6g}"


def summarize(values: Iterable) -> Summary:
    """Mean and population standard deviation of the defined values."""
    data = [float(v) for v in values if v is not None]
    if not data:
        return Summary(None, None, 0)
    mean = math.fsum(data) / len(data)
    var = math.fsum((v - mean) ** 2 for v in data) / len(data)
    return Summary(mean, math.sqrt(var), len(data))


def aggregate(records: Sequence[RunRecord]) -> list[Aggregate]:
    cells: dict = {}
    for rec in records:
        cells.setdefault((rec.epsilon, rec.delta), []).append(rec)
    out = []
    for (eps, delta), recs in sorted(cells.items()):
        out.append(Aggregate(eps, delta, len(recs),
                             {m: summarize(getattr(r, m) for r in recs) for m in METRICS}))
    return out


@dataclass
class SweepResult:
    records: list[RunRecord]
    aggregates: list[Aggregate] = field(default_factory=list)

    def cell(self, epsilon: float, delta: float) -> Aggregate:
        for agg in self.aggregates:
            if agg.epsilon == epsilon and agg.delta == delta:
                return agg
        raise KeyError((epsilon, delta))

    def write_csv(self, out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        out.write(CSV_HEADER + "\n")
        for rec in self.records:
            writer.writerow(rec.cells())
        for agg in self.aggregates:
            writer.writerow(agg.cells())

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


# -- running -------------------------------------------------------------

def run_once(ctx: FormalContext, canonical: ImplicationList, epsilon: float, delta: float,
             seed: int, context_id: str, repetition: int) -> RunRecord:
    basis, stats = pac_basis_of_context(ctx, PacParams(epsilon, delta, seed))
    return RunRecord(context_id=context_id, epsilon=epsilon, delta=delta, repetition=repetition,
                     seed=stats.seed, basis_size=len(basis), canonical_size=len(canonical),
                     horn_distance=horn_distance(basis, canonical), precision=precision(ctx, basis),
                     recall=recall(ctx, basis, canonical=canonical),
                     membership_queries=stats.membership_queries, samples_drawn=stats.samples_drawn)


def run_seed(master: int, context_index: int, repetition: int) -> int:
    """Seed of one run; shared by all cells so cells see common random numbers."""
    return derive_seed(derive_seed(master, context_index + 1), repetition)


def _check_values(name, values):
    values = [float(v) for v in values]
    if not values:
        raise InvalidArgumentError(f"{name} must not be empty")
    for v in values:
        if not 0 < v <= 1:
            raise InvalidArgumentError(f"{name} values must lie in (0, 1], got {v}")
    return values


@dataclass
class SweepSpec:
    """Grid of ``(epsilon, delta)`` cells run over a corpus.

    Either ``corpus_dir`` names a directory of context files, or a corpus is
    generated from ``gen`` with ``count`` contexts of at least
    ``min_basis_size`` implications.
    """

    epsilons: list
    deltas: list
    repetitions: int = 1
    seed: int = 0
    corpus_dir: Optional[str] = None
    gen: GenSpec = field(default_factory=GenSpec)
    count: int = 10
    min_basis_size: int = 0

    def __post_init__(self):
        self.epsilons = _check_values("epsilons", self.epsilons)
        self.deltas = _check_values("deltas", self.deltas)
        if self.repetitions < 1:
            raise InvalidArgumentError("repetitions must be at least 1")


def load_corpus(spec: SweepSpec) -> list[tuple[str, FormalContext]]:
    if spec.corpus_dir is not None:
        root = Path(spec.corpus_dir)
        if not root.is_dir():
            raise DataError(f"corpus directory {root} does not exist")
        files = sorted(p for p in root.iterdir() if p.suffix.lower() in (".cxt", ".csv"))
        corpus = [(p.stem, read_context(p)) for p in files]
    else:
        gen = spec.gen.with_seed(derive_seed(spec.seed, _CORPUS_STREAM))
        corpus = [(f"ctx{e.index:04d}", e.context)
                  for e in generate_corpus(gen, spec.count, spec.min_basis_size)]
    if not corpus:
        raise DataError("corpus is empty")
    return corpus


def run_sweep(spec: SweepSpec, corpus: Optional[Sequence[tuple[str, FormalContext]]] = None) -> SweepResult:
    """Run every ``(context, epsilon, delta, repetition)`` combination."""
    if corpus is None:
        corpus = load_corpus(spec)
    if not corpus:
        raise DataError("corpus is empty")
    records = []
    for index, (cid, ctx) in enumerate(corpus):
        canonical = ImplicationList.from_pairs(ctx.universe, canonical_basis_pairs(ctx))
        for eps in spec.epsilons:
            for delta in spec.deltas:
                for rep in range(spec.repetitions):
                    seed = run_seed(spec.seed, index, rep)
                    records.append(run_once(ctx, canonical, eps, delta, seed, cid, rep))
    records.sort(key=lambda r: (r.epsilon, r.delta, r.context_id, r.repetition))
    return SweepResult(records, aggregate(records))


def run_stability(ctx: FormalContext, epsilons: Sequence[float], delta: float, runs: int,
                  seed: int = 0, fixed_seed: bool = False, context_id: str = "stability") -> SweepResult:
    """Repeat ``pac_basis`` on one context ``runs`` times per epsilon.

    Run ``r`` uses ``derive_seed(seed, r)``, or ``seed`` itself for every run
    when ``fixed_seed`` is set.
    """
    epsilons = _check_values("epsilons", epsilons)
    _check_values("delta", [delta])
    if runs < 2:
        raise InvalidArgumentError("stability needs at least two runs")
    canonical = ImplicationList.from_pairs(ctx.universe, canonical_basis_pairs(ctx))
    records = []
    for eps in epsilons:
        for r in range(runs):
            run = seed if fixed_seed else derive_seed(seed, r)
            records.append(run_once(ctx, canonical, eps, float(delta), run, context_id, r))
    return SweepResult(records, aggregate(records))


# -- spec files ----------------------------------------------------------

def read_spec_file(path: Union[str, os.PathLike]) -> dict:
    """Parse flat ``key=value`` lines; ``#`` starts a comment."""
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            entries[key] = value
    return entries


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _range(text, cast):
    lo, _, hi = text.partition("-") if cast is int else text.partition(":")
    lo = cast(lo)
    return lo, cast(hi) if hi else lo


def _gen_from(entries: dict, seed: int) -> GenSpec:
    kwargs = {"seed": seed}
    if "attributes" in entries:
        kwargs["num_attributes"] = int(entries["attributes"])
    if "objects" in entries:
        kwargs["object_count_range"] = _range(entries["objects"], int)
    if "density" in entries:
        kwargs["density_range"] = _range(entries["density"], float)
    return GenSpec(**kwargs)


_SWEEP_KEYS = {"epsilons", "deltas", "repetitions", "seed", "corpus_dir", "attributes", "objects",
               "density", "count", "min_basis_size"}
_STABILITY_KEYS = {"epsilons", "delta", "runs", "seed", "context", "attributes", "objects", "density",
                   "min_basis_size", "fixed_seed"}


def _reject_unknown(entries, allowed):
    unknown = sorted(set(entries) - allowed)
    if unknown:
        raise DataError(f"unknown spec keys: {', '.join(unknown)}")


def sweep_spec_from_file(path: Union[str, os.PathLike]) -> SweepSpec:
    """Spec keys: ``epsilons``, ``deltas``, ``repetitions``, ``seed``, and either
    ``corpus_dir`` or the generator keys ``attributes``, ``objects=lo-hi``,
    ``density=lo:hi``, ``count``, ``min_basis_size``."""
    entries = read_spec_file(path)
    _reject_unknown(entries, _SWEEP_KEYS)
    try:
        seed = int(entries.get("seed", "0"))
        corpus_dir = entries.get("corpus_dir")
        if corpus_dir is not None:
            corpus_dir = str(Path(path).parent / corpus_dir)
        return SweepSpec(epsilons=_floats(entries.get("epsilons", "")),
                         deltas=_floats(entries.get("deltas", "")),
                         repetitions=int(entries.get("repetitions", "1")), seed=seed,
                         corpus_dir=corpus_dir, gen=_gen_from(entries, seed),
                         count=int(entries.get("count", "10")),
                         min_basis_size=int(entries.get("min_basis_size", "0")))
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


@dataclass
class StabilitySpec:
    context: FormalContext
    epsilons: list
    delta: float
    runs: int
    seed: int = 0
    fixed_seed: bool = False


def stability_spec_from_file(path: Union[str, os.PathLike]) -> StabilitySpec:
    """Spec keys: ``epsilons``, ``delta``, ``runs``, ``seed``, ``fixed_seed``, and either
    ``context`` (a file path or ``star-alliance``) or generator keys."""
    entries = read_spec_file(path)
    _reject_unknown(entries, _STABILITY_KEYS)
    try:
        seed = int(entries.get("seed", "0"))
        source = entries.get("context")
        if source == "star-alliance":
            ctx = star_alliance()
        elif source is not None:
            ctx = read_context(Path(path).parent / source)
        else:
            gen = _gen_from(entries, derive_seed(seed, _CORPUS_STREAM))
            ctx = generate_corpus(gen, 1, int(entries.get("min_basis_size", "0")))[0].context
        return StabilitySpec(context=ctx, epsilons=_floats(entries.get("epsilons", "")),
                             delta=float(entries.get("delta", "0.1")),
                             runs=int(entries.get("runs", "100")), seed=seed,
                             fixed_seed=entries.get("fixed_seed", "false").lower() in ("1", "true", "yes"))
    except (ValueError, OSError) as exc:
        raise DataError(f"{path}: {exc}") from None
