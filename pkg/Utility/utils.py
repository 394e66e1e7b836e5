import time
from collections import OrderedDict
from contextlib import contextmanager


def is_power_of_two(n):
    return n >= 1 and n & (n - 1) == 0


def next_power_of_two(n):
    """
    Smallest power of two that is at least max(n, 1).
    """
    if n <= 1:
        return 1
    return 1 << (n - 1).bit_length()


def log2_exact(n):
    if not is_power_of_two(n):
        raise ValueError("{} is not a power of two".format(n))
    return n.bit_length() - 1


def ceil_log2(n):
    if n < 1:
        raise ValueError("ceil_log2 needs a positive argument, got {}".format(n))
    return (n - 1).bit_length()


def split_halves(xs):
    half = len(xs) // 2
    return xs[:half], xs[half:]


class PhaseTimer:
    """
    Wall-clock bookkeeping for the named phases of one protocol run.

    Repeated entries of the same phase accumulate, so a phase that is split
    across several code regions still reports one number. With a counter
    (e.g. a transport's stats method) the difference of the counter over each
    phase is accumulated too.
    """

    def __init__(self, counter=None):
        self.timings = OrderedDict()
        self.counts = OrderedDict()
        self._counter = counter

    @contextmanager
    def phase(self, name):
        before = self._counter() if self._counter is not None else None
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + (time.perf_counter() - start) * 1000.0
            if before is not None:
                delta = self._counter() - before
                self.counts[name] = self.counts[name] + delta if name in self.counts else delta

    def milliseconds(self, name):
        return self.timings.get(name, 0.0)

    def count(self, name, default=None):
        return self.counts.get(name, default)

    def merge(self, other):
        for name, ms in other.timings.items():
            self.timings[name] = self.timings.get(name, 0.0) + ms
        for name, delta in other.counts.items():
            self.counts[name] = self.counts[name] + delta if name in self.counts else delta
        return self
