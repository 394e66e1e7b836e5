import os
import random
from dataclasses import dataclass
from dataclasses import replace

SEED_VARIABLE = "COLLAB_PROVER_SEED"
TIMEOUT_VARIABLE = "COLLAB_PROVER_TIMEOUT"
LOG_LEVEL_VARIABLE = "COLLAB_PROVER_LOG_LEVEL"

DEFAULT_TIMEOUT = 30.0


@dataclass(frozen=True)
class ProverConfiguration:
    """
    Runtime knobs shared by the command line and the test harness.

    Args:
        seed (int, optional): seed for every random source, None draws from the OS.
        timeout (float): seconds a blocking receive or connect may wait.
        log_level (str): structlog level name.
        mask_bits (int): statistical masking parameter used by bit decomposition.
    """
    seed: int = None
    timeout: float = DEFAULT_TIMEOUT
    log_level: str = "INFO"
    mask_bits: int = 40

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        seed = environ.get(SEED_VARIABLE)
        timeout = environ.get(TIMEOUT_VARIABLE)
        return cls(seed=int(seed) if seed not in (None, "") else None,
                   timeout=float(timeout) if timeout not in (None, "") else DEFAULT_TIMEOUT,
                   log_level=environ.get(LOG_LEVEL_VARIABLE, "INFO").upper())

    def override(self, **changes):
        # flags left unset on the command line arrive as None
        return replace(self, **{key: value for key, value in changes.items() if value is not None})

    def make_rng(self):
        return random.Random(self.seed) if self.seed is not None else random.SystemRandom()
