import math

import numpy as np
import pytest

from lapcert.complex import Filtration
from lapcert.harness import (
    CANONICAL_SEED,
    ExperimentConfig,
    InsufficientSimplicesError,
    pentagon_example,
    property_campaign,
    run_filtration_insertions,
    run_rips_insertion_experiment,
    sample_points,
    sharpness_example,
)

from oracles import charpoly_roots


@pytest.fixture(scope="module")
def canonical():
    return run_rips_insertion_experiment(ExperimentConfig())


def test_sample_points_reproducible():
    a, b = sample_points(7, 20), sample_points(7, 20)
    assert a.tobytes() == b.tobytes()
    assert a.shape == (20, 2) and np.all((a >= 0) & (a < 1))
    assert not np.array_equal(sample_points(8, 20), a)


def test_canonical_run(canonical):
    assert len(canonical.certificates) == 50
    assert all(c.lipschitz_ok and c.interlacing_ok and c.weyl_ok for c in canonical.certificates)
    assert canonical.max_ratio < 1
    assert all(c.spike_norm == math.sqrt(3) for c in canonical.certificates)
    assert all(d <= 2 * math.sqrt(3) + 1e-9 for _, d in canonical.scatter)


def test_scatter_count_identity(canonical):
    assert len(canonical.scatter) == sum(len(c.new) for c in canonical.certificates)


def test_canonical_reproducible(canonical):
    again = run_rips_insertion_experiment(ExperimentConfig())
    assert again.summary() == canonical.summary()
    assert [c.deltas.tobytes() for c in again.certificates] == [c.deltas.tobytes() for c in canonical.certificates]


def test_zero_insertions():
    r = run_rips_insertion_experiment(ExperimentConfig(n_insertions=0))
    assert r.scatter == [] and r.passed and r.max_ratio == 0.0


def test_insufficient_simplices():
    with pytest.raises(InsufficientSimplicesError) as exc:
        run_rips_insertion_experiment(ExperimentConfig(n_points=4, n_insertions=50))
    assert exc.value.found == 4
    assert "4" in str(exc.value)


def test_collinear_k0_edges():
    f = Filtration.from_events([(0, (0,)), (0, (1,)), (0, (2,)), (1, (0, 1)), (1, (1, 2)), (2, (0, 2))])
    r = run_filtration_insertions(f, 0, 3)
    laplacians = [
        [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[1, -1, 0], [-1, 1, 0], [0, 0, 0]],
        [[1, -1, 0], [-1, 2, -1], [0, -1, 1]],
        [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
    ]
    spectra = [charpoly_roots(m) for m in laplacians]
    for i, cert in enumerate(r.certificates):
        assert cert.old.values == pytest.approx(spectra[i], abs=1e-9)
        assert cert.new.values == pytest.approx(spectra[i + 1], abs=1e-9)
        assert cert.passed


def test_sharpness_example():
    cert = sharpness_example().certificates[0]
    assert cert.old.values == pytest.approx((0.0, 2.0), abs=1e-9)
    assert cert.new.values == pytest.approx((0.0, 4.0), abs=1e-9)
    assert cert.deltas.tolist() == pytest.approx([0.0, 2.0], abs=1e-9)


def test_pentagon_example():
    r = pentagon_example()
    cert = r.certificates[0]
    assert cert.old.values == pytest.approx((0.0,) * 5, abs=1e-9)
    assert cert.new.values == pytest.approx((0, 0, 0, 0, 3), abs=1e-9)
    assert cert.max_ratio == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert r.passed
    assert any("trailing" in f for f in r.findings)


def test_campaign_passes():
    s = property_campaign(200, CANONICAL_SEED, 6)
    assert s.passed, s.failures
    assert s.trials == s.reconstruction == s.monotone == s.interlacing == s.weyl == 200
    assert s.zero_spike_still == s.zero_spike_trials > 0
    assert s.adversarial_equality == s.adversarial_trials > 0


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(n_points=0)
    with pytest.raises(ValueError):
        ExperimentConfig(max_radius=0.0)
    with pytest.raises(ValueError):
        ExperimentConfig(k=2, max_dim=2)
