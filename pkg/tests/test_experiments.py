import json

import pytest

from adhocqos.experiments import EXPERIMENTS, ExperimentSpec, run_experiment


@pytest.mark.parametrize("name", sorted(EXPERIMENTS))
def test_experiment_passes_and_is_reproducible(name):
    spec = ExperimentSpec(name, seed=7, count=15)
    first = run_experiment(spec)
    second = run_experiment(ExperimentSpec(name, seed=7, count=15))
    assert first.passed, first.table()
    assert json.dumps(first.to_dict(), sort_keys=True) == json.dumps(second.to_dict(), sort_keys=True)
    assert first.instances
    for inst in first.instances:
        assert inst["provenance"]
        assert set(inst) == {"index", "inputs", "computed", "expected", "provenance", "pass"}


def test_unknown_experiment():
    with pytest.raises(ValueError, match="unknown experiment"):
        run_experiment(ExperimentSpec("nope"))


def test_negative_count():
    with pytest.raises(ValueError):
        run_experiment(ExperimentSpec("odd-cycle-schedule", count=-1))
