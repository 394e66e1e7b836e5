"""
Pedersen vector commitments c = g_0^o * prod_i g_i^{u_i}.
"""

from dataclasses import dataclass

from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Hashing import hash_to_g1
from Algebra.MultiExp import msm


@dataclass(frozen=True)
class CommitmentKey:
    generators: tuple

    @property
    def n(self):
        return len(self.generators) - 1

    @property
    def g0(self):
        return self.generators[0]

    @property
    def message_generators(self):
        return self.generators[1:]

    @classmethod
    def from_generators(cls, opening_generator, message_generators):
        generators = (opening_generator,) + tuple(message_generators)
        if any(g.is_identity() for g in generators):
            raise ValueError("commitment generators must not be the identity")
        return cls(generators)

    def sub_key(self, indices):
        """
        Key over a subset of message positions (0-based), same opening generator.
        """
        return CommitmentKey((self.g0,) + tuple(self.message_generators[i] for i in indices))


@dataclass(frozen=True)
class Commitment:
    point: GroupElement

    def __mul__(self, other):
        return Commitment(self.point * other.point)

    def to_bytes(self):
        return self.point.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        return cls(GroupElement.from_bytes(GroupId.G1, data))


def setup(n, label="ped"):
    """
    Deterministic key with n message generators. Different labels give independent keys.
    """
    if n < 1:
        raise ValueError("a commitment key needs at least one message slot")
    return CommitmentKey((hash_to_g1("{}/g0".format(label)),) +
                         tuple(hash_to_g1("{}/g/{}".format(label, i)) for i in range(1, n + 1)))


def commit(ck, u, o):
    if len(u) != ck.n:
        raise ValueError("key commits to {} values, got {}".format(ck.n, len(u)))
    return Commitment(msm(list(ck.generators), [o] + list(u)))


def ver_commit(ck, c, u, o):
    if len(u) != ck.n:
        return False
    return commit(ck, u, o).point == c.point


def product(commitments):
    commitments = list(commitments)
    if not commitments:
        raise ValueError("product of no commitments")
    result = commitments[0]
    for c in commitments[1:]:
        result = result * c
    return result
