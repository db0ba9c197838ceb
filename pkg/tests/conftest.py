import pytest


def drive(gen):
    """Run a blocking-capable primitive outside the scheduler; it must not block."""
    try:
        next(gen)
    except StopIteration as stop:
        return stop.value
    raise AssertionError("primitive blocked outside a scheduler")


@pytest.fixture
def fresh_core():
    from tensixfft.sim import TensixCore

    return TensixCore()
