import pytest

from wallbot import ann


@pytest.fixture(scope="session")
def trained_net():
    """One default-hyperparameter training run shared across the suite."""
    return ann.train(ann.builtin_training_set())
