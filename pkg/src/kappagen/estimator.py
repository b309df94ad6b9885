"""Scikit-learn style front end for the generators."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .errors import ValidationError
from .generation import (empirical_kappa_matrix, generate_multivariate,
                         sorting_generate_bivariate)
from .types import GenerationSpec, KappaMatrix, RatingsDataset
from .validation import validate_generation_spec, validate_marginals


class KappaSampler(BaseEstimator):
    """Sample correlated categorical ratings with a target kappa structure.

    Follows the fit/sample pattern of generative estimators such as
    KernelDensity. The target marginals and kappa matrix come either from the
    constructor or, when ``fit`` receives a dataset of integer labels
    (n samples x d raters, labels 1..K), from that dataset's empirical
    marginals and pairwise kappas, enabling "fit on real ratings, sample
    synthetic clones". Note an empirical kappa matrix is not guaranteed to be
    positive definite; fit raises when the estimated target fails validation.

    Parameters
    ----------
    pmat : sequence of per-variable marginal vectors, or None to estimate.
    kmat : square pairwise kappa target matrix, or None to estimate.
    method : 'lp' (any feasible target) or 'sorting' (bivariate only,
        narrower reachable range).
    pc_source : 'specified' or 'generated'; chance-agreement source for the
        LP method's p0 targets.
    random_state : default 64-bit seed used when ``sample`` gets none.
    """

    def __init__(self, pmat=None, kmat=None, *, method: str = "lp",
                 pc_source: str = "specified", random_state=None):
        self.pmat = pmat
        self.kmat = kmat
        self.method = method
        self.pc_source = pc_source
        self.random_state = random_state

    def fit(self, X=None, y=None):
        """Validate the configured targets, or estimate them from X."""
        if self.method not in ("lp", "sorting"):
            raise ValidationError(f"method must be 'lp' or 'sorting', got {self.method!r}")
        if X is None:
            if self.pmat is None or self.kmat is None:
                raise ValidationError("fit needs X when pmat/kmat are not set")
            pmat = validate_marginals(list(self.pmat))
            kmat = (self.kmat if isinstance(self.kmat, KappaMatrix)
                    else KappaMatrix(np.asarray(self.kmat, dtype=float)))
        else:
            X = np.asarray(X)
            if X.ndim != 2 or X.shape[1] < 2:
                raise ValidationError("X must be n x d with d >= 2")
            cats = tuple(int(X[:, j].max()) for j in range(X.shape[1]))
            data = RatingsDataset(values=X, cats=cats)
            pmat = validate_marginals(data.empirical_marginals())
            kmat = KappaMatrix(empirical_kappa_matrix(data))
        spec = validate_generation_spec(GenerationSpec(pmat=tuple(pmat), kmat=kmat))
        if self.method == "sorting" and spec.d != 2:
            raise ValidationError("method='sorting' supports exactly 2 variables")
        self.spec_ = spec
        self.n_features_in_ = spec.d
        return self

    def sample(self, n_samples: int, random_state=None) -> np.ndarray:
        """Draw n_samples rows of integer labels (shape n_samples x d)."""
        if not hasattr(self, "spec_"):
            raise ValidationError("this KappaSampler instance is not fitted yet")
        seed = self.random_state if random_state is None else random_state
        if self.method == "sorting":
            pa, pb = self.spec_.pmat
            result = sorting_generate_bivariate(
                pa, pb, float(self.spec_.kmat.values[0, 1]), n_samples, seed)
        else:
            result = generate_multivariate(self.spec_, n_samples, seed,
                                           pc_source=self.pc_source, validate=False)
        return np.asarray(result.dataset.values)
