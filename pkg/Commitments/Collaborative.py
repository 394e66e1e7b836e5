"""
Collaborative Pedersen commitments.

Commit-then-Share (CtS): every party commits to the slots it owns with its own
opening contribution o_i, the shares are multiplied into one commitment whose
opening o' = sum o_i exists only additively.

Share-then-Commit (StC): the witness is already secret-shared, every party
commits to its share vector and the group shares are opened.

Both cost one broadcast (N - 1 messages) per party.
"""

from dataclasses import dataclass

import structlog

from Algebra.Curve import GroupId
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.MultiExp import msm
from Commitments.Pedersen import Commitment
from MPC.AuthShare import GroupShare
from Utility.Exceptions import DecodingError
from Utility.Exceptions import ProtocolDesync

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class OwnershipMap:
    """
    party id -> tuple of 0-based message indices that party owns. Index sets are disjoint.
    """
    slots: dict

    def __post_init__(self):
        seen = set()
        for party, indices in self.slots.items():
            overlap = seen.intersection(indices)
            if overlap:
                raise ValueError("slots {} are owned by more than one party".format(sorted(overlap)))
            seen.update(indices)

    def owned_by(self, party_id):
        return tuple(sorted(self.slots.get(party_id, ())))

    def owner_of(self, index):
        for party, indices in self.slots.items():
            if index in indices:
                return party
        raise KeyError("slot {} has no owner".format(index))

    def validate(self, n_slots, n_parties, complete=False):
        for party, indices in self.slots.items():
            if not 0 <= party < n_parties:
                raise ValueError("ownership names party {} outside [0, {})".format(party, n_parties))
            if any(not 0 <= i < n_slots for i in indices):
                raise ValueError("party {} owns a slot outside [0, {})".format(party, n_slots))
        if complete and sum(len(indices) for indices in self.slots.values()) != n_slots:
            raise ValueError("ownership does not cover all {} slots".format(n_slots))

    @classmethod
    def contiguous(cls, n_slots, n_parties):
        base, extra = divmod(n_slots, n_parties)
        slots, start = {}, 0
        for party in range(n_parties):
            size = base + (1 if party < extra else 0)
            slots[party] = tuple(range(start, start + size))
            start += size
        return cls(slots)

    @classmethod
    def single(cls, owner):
        return cls({owner: (0,)})


def parse_ownership(text):
    """
    "0:0-3,7;1:4-6" -> OwnershipMap({0: (0, 1, 2, 3, 7), 1: (4, 5, 6)})
    """
    slots = {}
    for entry in filter(None, (part.strip() for part in text.split(";"))):
        party, ranges = entry.split(":", 1)
        indices = []
        for item in filter(None, (r.strip() for r in ranges.split(","))):
            if "-" in item:
                low, high = item.split("-", 1)
                indices.extend(range(int(low), int(high) + 1))
            else:
                indices.append(int(item))
        slots[int(party)] = tuple(indices)
    return OwnershipMap(slots)


@dataclass(frozen=True)
class CtsResult:
    commitment: Commitment
    opening_share: int


def cts_share(ck, my_slots, my_opening):
    """
    g_0^{o_i} * prod over owned j of g_j^{u_j}. Costs one exponentiation per owned slot plus one.
    """
    indices = sorted(my_slots)
    return msm([ck.g0] + [ck.message_generators[j] for j in indices], [my_opening] + [my_slots[j] for j in indices])


def _encode_g1(elements):
    return ByteWriter().elements(elements).getvalue()


def _decode_g1(data, expected):
    try:
        reader = ByteReader(data)
        elements = reader.elements(GroupId.G1)
        reader.expect_end()
    except DecodingError as error:
        raise ProtocolDesync("malformed commitment share: {}".format(error)) from error
    if len(elements) != expected:
        raise ProtocolDesync("expected {} commitment shares, received {}".format(expected, len(elements)))
    return elements


def cts_commit_many(ck, ownerships, my_slots, my_openings, transport):
    """
    Several CtS commitments under one key in a single broadcast.

    Args:
        ck (CommitmentKey): common key
        ownerships: one OwnershipMap per commitment
        my_slots: one dict (index -> value) per commitment, only owned indices
        my_openings: this party's opening contribution per commitment
        transport (Transport): this party's handle

    Returns:
        list of CtsResult, identical commitments at every party
    """
    if not len(ownerships) == len(my_slots) == len(my_openings):
        raise ValueError("cts_commit_many needs one ownership, slot dict and opening per commitment")
    shares = []
    for ownership, slots, opening in zip(ownerships, my_slots, my_openings):
        ownership.validate(ck.n, transport.n_parties)
        foreign = set(slots) - set(ownership.owned_by(transport.party_id))
        if foreign:
            raise ValueError("party {} does not own slots {}".format(transport.party_id, sorted(foreign)))
        shares.append(cts_share(ck, slots, opening))
    if transport.n_parties == 1:
        products = shares
    else:
        columns = [_decode_g1(payload, len(shares)) for payload in transport.exchange(_encode_g1(shares), "cts")]
        products = []
        for k in range(len(shares)):
            element = columns[0][k]
            for column in columns[1:]:
                element = element * column[k]
            products.append(element)
    transport.log.debug("cts_commit", commitments=len(shares))
    return [CtsResult(Commitment(c), o) for c, o in zip(products, my_openings)]


def cts_commit(ck, ownership, my_slots, my_opening, transport):
    return cts_commit_many(ck, [ownership], [my_slots], [my_opening], transport)[0]


def stc_share(ck, u_shares, o_share):
    if len(u_shares) != ck.n:
        raise ValueError("key commits to {} values, got {} shares".format(ck.n, len(u_shares)))
    return GroupShare(o_share.party_id, msm(list(ck.generators), [o_share.value] + [s.value for s in u_shares]))


def stc_commit_many(ck, u_share_lists, o_shares, engine):
    group_shares = [stc_share(ck, u_shares, o_share) for u_shares, o_share in zip(u_share_lists, o_shares)]
    return [Commitment(c) for c in engine.open_group_many(group_shares)]


def stc_commit(ck, u_shares, o_share, engine):
    return stc_commit_many(ck, [u_shares], [o_share], engine)[0]


def share_cts_witness(engine, ownership, n_slots, my_slots, my_opening):
    """
    After CtS, turn the owned plaintexts and the opening contributions into
    authenticated shares of the full vector u and of o' = sum o_i, in one round.
    """
    ownership.validate(n_slots, engine.n_parties, complete=True)
    counts = [len(ownership.owned_by(party)) + 1 for party in range(engine.n_parties)]
    mine = ownership.owned_by(engine.party_id)
    shares = engine.input_many(counts, [my_slots[j] for j in mine] + [my_opening])
    u_shares = [None] * n_slots
    for party in range(engine.n_parties):
        for index, share in zip(ownership.owned_by(party), shares[party]):
            u_shares[index] = share
    return u_shares, engine.sum([party_shares[-1] for party_shares in shares])
