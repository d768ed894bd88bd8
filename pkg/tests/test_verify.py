import pytest

from meyer_signature import verify
from meyer_signature.progress import SweepProgress
from meyer_signature.symplectic_meyer import CocycleValue
from meyer_signature.verify import SUITES, SweepConfig, run_sweeps

SMALL = SweepConfig(
    cocycle_trials=10,
    max_degree=12,
    euler_identity_trials=20,
    conic_corpus=10,
    fermat_points=5,
    oracle_trials=15,
    max_oracle_size=5,
)


def test_defaults():
    config = SweepConfig()
    assert config.seed == 20240607
    assert config.cocycle_trials == 200
    assert config.max_word_length == 6
    assert config.genera == (1, 2)
    assert config.max_degree == 50


@pytest.mark.parametrize(
    "overrides",
    [{"cocycle_trials": 0}, {"oracle_trials": -1}, {"genera": ()}, {"genera": (0,)}, {"max_degree": 3}],
)
def test_invalid_config(overrides):
    with pytest.raises(ValueError):
        SweepConfig(**overrides)


def test_small_sweep_passes():
    report = run_sweeps(SMALL)
    assert [s.name for s in report.suites] == list(SUITES)
    assert report.ok, [s.failures for s in report.suites if s.failures]
    assert report.checks == sum(s.checks for s in report.suites)

    meyer = next(s for s in report.suites if s.name == "meyer")
    assert meyer.checks == 2 + SMALL.cocycle_trials


def test_default_sweep_passes():
    config = SweepConfig()
    report = run_sweeps(config)
    assert report.ok, [s.failures for s in report.suites if s.failures]

    checks = {s.name: s.checks for s in report.suites}
    assert checks["meyer"] == 2 + config.cocycle_trials
    assert checks["signature oracle"] == config.oracle_trials


def test_sweep_is_deterministic():
    a = run_sweeps(SMALL)
    b = run_sweeps(SMALL)
    assert [(s.name, s.checks) for s in a.suites] == [(s.name, s.checks) for s in b.suites]


def test_sweep_reports_progress():
    sweep = SweepProgress(len(SUITES))
    report = run_sweeps(SMALL, sweep)
    assert sweep.n_suites_completed == len(SUITES)
    assert sweep.checks_completed == report.checks


def test_broken_cocycle_is_detected(monkeypatch):
    monkeypatch.setattr(verify, "meyer_cocycle", lambda A, B: CocycleValue(1, A.g))
    report = run_sweeps(SMALL)
    assert not report.ok
    failing = {s.name for s in report.suites if not s.ok}
    assert failing == {"meyer"}
