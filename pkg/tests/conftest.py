import numpy as np
import pytest

from pathloss_fit import AbgModel, CiModel, GeneratorSpec, Sample, generate

_acceptance = []


def make_samples(freqs, dists, pls, env="test", tx="low", state="NLOS"):
    return [Sample(float(f), float(d), float(p), env, tx, state) for f, d, p in zip(freqs, dists, pls)]


def random_dataset(seed, n=None, sigma=None, truth=None):
    """Small mixed-truth dataset with at least two frequencies and distances."""
    rng = np.random.default_rng(seed)
    if truth is None:
        if rng.random() < 0.5:
            truth = CiModel(float(rng.uniform(1.8, 4.0)))
        else:
            truth = AbgModel(float(rng.uniform(1.8, 4.0)), float(rng.uniform(10, 60)), float(rng.uniform(1.0, 3.0)))
    freqs = sorted(rng.choice([2.0, 5.6, 10.0, 18.0, 28.0, 39.3, 73.5], size=int(rng.integers(2, 5)), replace=False))
    spec = GeneratorSpec(
        truth=truth,
        sf_sigma=float(rng.uniform(0, 12)) if sigma is None else sigma,
        frequencies=freqs,
        distance_range=(float(rng.uniform(2, 50)), float(rng.uniform(200, 2000))),
        count=int(rng.integers(3, 40)) if n is None else n,
        seed=int(rng.integers(0, 2**63)),
    )
    return generate(spec)


@pytest.fixture
def two_sample_ci():
    # A = [20, 50], B = [10, 20] at 1 GHz
    fspl = 20 * np.log10(4 * np.pi * 1e9 / 299792458.0)
    return make_samples([1, 1], [10, 100], [fspl + 20, fspl + 50])


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
