"""
SPDZ share types. Summed over all parties, the values reconstruct x and the
MAC shares reconstruct alpha * x for the dealer's global key alpha.
"""

from dataclasses import dataclass

from Algebra.Field import P


@dataclass(frozen=True)
class AuthShare:
    party_id: int
    value: int
    mac: int

    def _check(self, other):
        if other.party_id != self.party_id:
            raise ValueError("cannot combine shares of party {} and party {}".format(self.party_id, other.party_id))

    def __add__(self, other):
        self._check(other)
        return AuthShare(self.party_id, (self.value + other.value) % P, (self.mac + other.mac) % P)

    def __sub__(self, other):
        self._check(other)
        return AuthShare(self.party_id, (self.value - other.value) % P, (self.mac - other.mac) % P)

    def __neg__(self):
        return AuthShare(self.party_id, -self.value % P, -self.mac % P)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return AuthShare(self.party_id, self.value * k % P, self.mac * k % P)

    __rmul__ = __mul__

    def add_public(self, constant, key):
        """
        Add a public constant: only party 0 moves its value, every party moves its MAC.
        """
        if key.party_id != self.party_id:
            raise ValueError("MAC key of party {} used on a share of party {}".format(key.party_id, self.party_id))
        value = (self.value + constant) % P if self.party_id == 0 else self.value
        return AuthShare(self.party_id, value, (self.mac + key.alpha * constant) % P)


@dataclass(frozen=True)
class MacKeyShare:
    party_id: int
    alpha: int


@dataclass(frozen=True)
class BeaverTriple:
    a: AuthShare
    b: AuthShare
    c: AuthShare


@dataclass(frozen=True)
class GroupShare:
    party_id: int
    element: object


def add_shares(x, y):
    return x + y


def mul_public(x, k):
    return x * k


def linear_combination(shares, coefficients):
    if len(shares) != len(coefficients):
        raise ValueError("linear combination of {} shares with {} coefficients".format(len(shares), len(coefficients)))
    if not shares:
        raise ValueError("linear combination needs at least one share")
    party_id = shares[0].party_id
    value = 0
    mac = 0
    for share, k in zip(shares, coefficients):
        if share.party_id != party_id:
            raise ValueError("linear combination mixes parties")
        value += share.value * k
        mac += share.mac * k
    return AuthShare(party_id, value % P, mac % P)
