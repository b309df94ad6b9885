import numpy as np
import pytest
from sklearn.base import clone

from kappagen import KappaSampler
from kappagen.errors import ValidationError
from kappagen.generation import generate_multivariate
from kappagen.metrics import kappa_from_ratings
from kappagen.types import GenerationSpec, KappaMatrix


PMAT = ((0.3, 0.3, 0.4), (0.25, 0.35, 0.4))
KMAT = ((1.0, 0.35), (0.35, 1.0))


def test_fit_from_parameters_and_sample():
    est = KappaSampler(pmat=PMAT, kmat=KMAT, random_state=5)
    assert est.fit() is est
    assert est.n_features_in_ == 2
    x = est.sample(5000)
    assert x.shape == (5000, 2)
    assert x.min() >= 1 and x.max() <= 3
    emp = kappa_from_ratings(x[:, 0], x[:, 1]).kappa
    assert emp == pytest.approx(0.35, abs=0.05)


def test_fit_accepts_prebuilt_target_objects():
    # Reusing a validated spec's own pmat/kmat objects must work as-is.
    spec = GenerationSpec(pmat=PMAT, kmat=KappaMatrix(np.asarray(KMAT)))
    est = KappaSampler(pmat=spec.pmat, kmat=spec.kmat, random_state=1).fit()
    assert est.sample(50).shape == (50, 2)


def test_sample_random_state_overrides_default():
    est = KappaSampler(pmat=PMAT, kmat=KMAT, random_state=5).fit()
    a = est.sample(300)
    b = est.sample(300)
    assert np.array_equal(a, b)  # both use the default seed
    c = est.sample(300, random_state=6)
    assert not np.array_equal(a, c)


def test_unfitted_sample_raises():
    with pytest.raises(ValidationError, match="not fitted"):
        KappaSampler(pmat=PMAT, kmat=KMAT).sample(10)


def test_fit_requires_targets_or_data():
    with pytest.raises(ValidationError, match="fit needs X"):
        KappaSampler().fit()


def test_fit_estimates_targets_from_ratings():
    # Round trip: generate from a known spec, refit on the sample, and the
    # estimated targets must sit close to the source.
    spec = GenerationSpec(pmat=PMAT, kmat=KappaMatrix(np.asarray(KMAT)))
    source = generate_multivariate(spec, 20_000, seed=1).dataset
    est = KappaSampler().fit(source.values)
    assert est.n_features_in_ == 2
    assert np.max(np.abs(est.spec_.kmat.values[0, 1] - 0.35)) <= 0.03
    for got, want in zip(est.spec_.pmat, PMAT):
        assert np.max(np.abs(got.probs - np.asarray(want))) <= 0.03
    clone_sample = est.sample(20_000, random_state=2)
    emp = kappa_from_ratings(clone_sample[:, 0], clone_sample[:, 1]).kappa
    assert emp == pytest.approx(0.35, abs=0.05)


def test_fit_rejects_malformed_data():
    with pytest.raises(ValidationError):
        KappaSampler().fit(np.array([1, 2, 2, 1]))  # 1-d
    with pytest.raises(ValidationError):
        KappaSampler().fit(np.array([[1], [2]]))    # single column


def test_sorting_method_is_bivariate_only():
    est = KappaSampler(pmat=((0.3, 0.7), (0.4, 0.6), (0.5, 0.5)),
                       kmat=np.eye(3), method="sorting")
    with pytest.raises(ValidationError, match="2 variables"):
        est.fit()


def test_sorting_method_samples():
    est = KappaSampler(pmat=((0.3, 0.7), (0.4, 0.6)),
                       kmat=((1.0, 0.2), (0.2, 1.0)),
                       method="sorting", random_state=3).fit()
    x = est.sample(50_000)
    emp = kappa_from_ratings(x[:, 0], x[:, 1]).kappa
    assert emp == pytest.approx(0.2, abs=0.02)


def test_unknown_method_rejected():
    with pytest.raises(ValidationError, match="method"):
        KappaSampler(pmat=PMAT, kmat=KMAT, method="mcmc").fit()


def test_get_params_set_params_clone():
    est = KappaSampler(pmat=PMAT, kmat=KMAT, pc_source="generated",
                       random_state=9)
    params = est.get_params()
    assert params["pc_source"] == "generated"
    assert params["random_state"] == 9
    est.set_params(random_state=11)
    assert est.random_state == 11
    dup = clone(est)
    assert dup.get_params() == est.get_params()
    assert not hasattr(dup, "spec_")


def test_infeasible_configuration_fails_at_fit():
    est = KappaSampler(pmat=((0.8, 0.2), (0.7, 0.3)),
                       kmat=((1.0, 0.9), (0.9, 1.0)))
    with pytest.raises(ValidationError, match="feasible range"):
        est.fit()
