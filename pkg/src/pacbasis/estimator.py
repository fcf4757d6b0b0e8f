"""scikit-learn style wrappers.

``fit`` takes a boolean object-by-attribute matrix (or DataFrame) as the
formal context and learns an implication basis. ``predict`` tells for each
row whether it is a model of the learned basis; ``transform`` closes each row
under it.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import bits
from .context import FormalContext
from .implications import ImplicationList, canonical_basis
from .learning import PacParams, SubsetSampler, pac_basis_of_context
from .metrics import horn_distance


def _as_context(X, attribute_names=None):
    if attribute_names is None and hasattr(X, "columns"):
        attribute_names = [str(c) for c in X.columns]
    matrix = check_array(X, dtype=None, ensure_min_samples=0, ensure_all_finite=True)
    return FormalContext.from_matrix(matrix.astype(bool), attributes=attribute_names)


class _BasisMixin(TransformerMixin):
    def _rows(self, X):
        check_is_fitted(self, "basis_")
        matrix = check_array(X, dtype=None, ensure_min_samples=0).astype(bool)
        if matrix.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {matrix.shape[1]} features, expected {self.n_features_in_}")
        return bits.pack_rows(matrix) if len(matrix) else np.zeros(0, dtype=np.int64)

    def predict(self, X) -> np.ndarray:
        """Whether each row is closed under the learned basis."""
        rows = self._rows(X)
        return bits.models_mask(self.basis_.pairs(), rows, self.n_features_in_)

    def transform(self, X) -> np.ndarray:
        """Closure of every row under the learned basis, as a boolean matrix."""
        rows = self._rows(X)
        pairs = self.basis_.pairs()
        closed = [bits.close_under(pairs, int(x)) for x in rows]
        return bits.unpack_masks(closed, self.n_features_in_)

    def score(self, X, y=None) -> float:
        """One minus the Horn-distance between the basis and the context ``X``."""
        check_is_fitted(self, "basis_")
        ctx = _as_context(X, list(self.feature_names_in_))
        return 1.0 - float(horn_distance(self.basis_, ctx))

    def _store(self, ctx: FormalContext, basis: ImplicationList):
        self.basis_ = basis
        self.n_features_in_ = len(ctx.universe)
        self.feature_names_in_ = np.asarray(ctx.universe.names, dtype=object)


class CanonicalBasis(_BasisMixin, BaseEstimator):
    """Exact canonical (Duquenne-Guigues) basis of the training context."""

    def __init__(self, enumeration_cap: int = bits.DEFAULT_ENUMERATION_CAP):
        self.enumeration_cap = enumeration_cap

    def fit(self, X, y=None, attribute_names=None):
        ctx = _as_context(X, attribute_names)
        self._store(ctx, canonical_basis(ctx, cap=self.enumeration_cap))
        return self


class PacBasis(_BasisMixin, BaseEstimator):
    """Probably approximately correct basis learned by sampling.

    Parameters
    ----------
    epsilon : float
        Accuracy: tolerated fraction of attribute subsets on which the basis
        may disagree with the context.
    delta : float
        Confidence: tolerated probability of exceeding ``epsilon``.
    random_state : int
        Seed of the subset sampler.
    probabilities : array-like or None
        Per-attribute inclusion probabilities of the sampler; ``None`` samples
        subsets uniformly.
    """

    def __init__(self, epsilon: float = 0.1, delta: float = 0.1, random_state: int = 0,
                 probabilities=None):
        self.epsilon = epsilon
        self.delta = delta
        self.random_state = random_state
        self.probabilities = probabilities

    def fit(self, X, y=None, attribute_names=None):
        ctx = _as_context(X, attribute_names)
        sampler = None
        if self.probabilities is not None:
            sampler = SubsetSampler(ctx.universe, self.probabilities)
        seed = 0 if self.random_state is None else int(self.random_state)
        basis, stats = pac_basis_of_context(ctx, PacParams(self.epsilon, self.delta, seed, sampler))
        self._store(ctx, basis)
        self.stats_ = stats
        return self
