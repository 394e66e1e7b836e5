import random

from Transport.Channel import TrafficStats
from Utility.Configuration import ProverConfiguration
from Utility.utils import PhaseTimer


class StepCounter:

    def __init__(self):
        self.stats = TrafficStats()

    def send(self, n_bytes):
        self.stats = self.stats + TrafficStats(1, n_bytes, 0)

    def __call__(self):
        return self.stats.snapshot()


def test_repeated_phase_entries_accumulate():
    counter = StepCounter()
    timer = PhaseTimer(counter)
    with timer.phase("commit"):
        counter.send(10)
    with timer.phase("prove"):
        counter.send(7)
    with timer.phase("commit"):
        counter.send(5)
    assert list(timer.timings) == ["commit", "prove"]
    assert timer.count("commit") == TrafficStats(2, 15, 0)
    assert timer.count("prove") == TrafficStats(1, 7, 0)
    assert timer.count("verify") is None
    assert timer.milliseconds("verify") == 0.0


def test_merge_adds_timings_and_counts():
    counter = StepCounter()
    first, second = PhaseTimer(counter), PhaseTimer(counter)
    with first.phase("prove"):
        counter.send(3)
    with second.phase("prove"):
        counter.send(4)
    with second.phase("verify"):
        pass
    total = PhaseTimer().merge(first).merge(second)
    assert total.count("prove") == TrafficStats(2, 7, 0)
    assert total.count("verify") == TrafficStats(0, 0, 0)
    assert total.milliseconds("prove") == first.milliseconds("prove") + second.milliseconds("prove")
    assert total.milliseconds("verify") == second.milliseconds("verify")


def test_seeded_configuration_replays_its_randomness():
    rng = ProverConfiguration(seed=5).make_rng()
    reference = random.Random(5)
    assert [rng.getrandbits(64) for _ in range(4)] == [reference.getrandbits(64) for _ in range(4)]


def test_unseeded_configuration_draws_from_the_os():
    assert isinstance(ProverConfiguration().make_rng(), random.SystemRandom)
    assert isinstance(ProverConfiguration.from_env({}).make_rng(), random.SystemRandom)
