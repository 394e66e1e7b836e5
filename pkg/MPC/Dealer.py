"""
Trusted dealer for the SPDZ online phase.

The dealer samples the global MAC key and hands every party a bundle with
authenticated Beaver triples, input masks (the owner also learns the mask in
the clear), unowned random values and random bits.
"""

import random
from dataclasses import dataclass
from dataclasses import field

import structlog

from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import random_scalar
from MPC.AuthShare import AuthShare
from MPC.AuthShare import BeaverTriple
from MPC.AuthShare import MacKeyShare
from Utility.Exceptions import DecodingError

log = structlog.get_logger(__name__)

BUNDLE_MAGIC = b"CPDB"
BUNDLE_VERSION = 1


@dataclass
class PreprocessingDemand:
    """
    How much correlated randomness a protocol run consumes per party.
    input_masks counts masks per input owner.
    """
    triples: int = 0
    input_masks: int = 0
    randoms: int = 0
    random_bits: int = 0

    def __add__(self, other):
        return PreprocessingDemand(self.triples + other.triples,
                                   self.input_masks + other.input_masks,
                                   self.randoms + other.randoms,
                                   self.random_bits + other.random_bits)


@dataclass
class PartyBundle:
    party_id: int
    n_parties: int
    mac_key: MacKeyShare
    triples: list = field(default_factory=list)
    masks: list = field(default_factory=list)
    mask_values: list = field(default_factory=list)
    randoms: list = field(default_factory=list)
    random_bits: list = field(default_factory=list)

    def to_bytes(self):
        writer = ByteWriter().raw(BUNDLE_MAGIC).u16(BUNDLE_VERSION).u16(self.n_parties).u16(self.party_id)
        writer.scalar(self.mac_key.alpha).u32(len(self.triples))
        for triple in self.triples:
            for share in (triple.a, triple.b, triple.c):
                writer.scalar(share.value).scalar(share.mac)
        writer.u16(len(self.masks))
        for owner_masks in self.masks:
            _write_shares(writer, owner_masks)
        writer.scalars(self.mask_values)
        _write_shares(writer, self.randoms)
        _write_shares(writer, self.random_bits)
        return writer.getvalue()

    @classmethod
    def from_bytes(cls, data):
        reader = ByteReader(data)
        if reader.raw(4) != BUNDLE_MAGIC:
            raise DecodingError("not a dealer bundle")
        version = reader.u16()
        if version != BUNDLE_VERSION:
            raise DecodingError("unsupported dealer bundle version {}".format(version))
        n_parties = reader.u16()
        party_id = reader.u16()
        alpha = reader.scalar()
        triples = []
        for _ in range(reader.u32()):
            a, b, c = (AuthShare(party_id, reader.scalar(), reader.scalar()) for _ in range(3))
            triples.append(BeaverTriple(a, b, c))
        masks = [_read_shares(reader, party_id) for _ in range(reader.u16())]
        mask_values = reader.scalars()
        randoms = _read_shares(reader, party_id)
        random_bits = _read_shares(reader, party_id)
        reader.expect_end()
        return cls(party_id, n_parties, MacKeyShare(party_id, alpha), triples, masks, mask_values, randoms, random_bits)

    def save(self, path):
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())


def _write_shares(writer, shares):
    writer.u32(len(shares))
    for share in shares:
        writer.scalar(share.value).scalar(share.mac)


def _read_shares(reader, party_id):
    return [AuthShare(party_id, reader.scalar(), reader.scalar()) for _ in range(reader.u32())]


class _Sharer:

    def __init__(self, n_parties, rng):
        self.n_parties = n_parties
        self.rng = rng
        self.alpha_shares = [random_scalar(rng) for _ in range(n_parties)]
        self.alpha = sum(self.alpha_shares) % P

    def additive(self, x):
        parts = [random_scalar(self.rng) for _ in range(self.n_parties - 1)]
        parts.append((x - sum(parts)) % P)
        return parts

    def share(self, x):
        values = self.additive(x)
        macs = self.additive(self.alpha * x % P)
        return [AuthShare(i, values[i], macs[i]) for i in range(self.n_parties)]


def dealer_setup(n_parties, num_triples=0, num_input_masks=0, num_randoms=0, num_random_bits=0, rng=None):
    """
    Args:
        n_parties (int): N, at least 2
        num_triples (int): Beaver triples per party
        num_input_masks (int): masks per input owner
        num_randoms (int): unowned authenticated random values
        num_random_bits (int): unowned authenticated random bits
        rng: random source, defaults to the OS

    Returns:
        list of N PartyBundle, index = party id
    """
    if n_parties < 2:
        raise ValueError("the dealer needs at least two parties, got {}".format(n_parties))
    rng = rng or random.SystemRandom()
    sharer = _Sharer(n_parties, rng)
    bundles = [PartyBundle(i, n_parties, MacKeyShare(i, sharer.alpha_shares[i]),
                           masks=[[] for _ in range(n_parties)]) for i in range(n_parties)]
    for _ in range(num_triples):
        a = random_scalar(rng)
        b = random_scalar(rng)
        for i, (sa, sb, sc) in enumerate(zip(sharer.share(a), sharer.share(b), sharer.share(a * b % P))):
            bundles[i].triples.append(BeaverTriple(sa, sb, sc))
    for owner in range(n_parties):
        for _ in range(num_input_masks):
            r = random_scalar(rng)
            bundles[owner].mask_values.append(r)
            for i, share in enumerate(sharer.share(r)):
                bundles[i].masks[owner].append(share)
    for _ in range(num_randoms):
        for i, share in enumerate(sharer.share(random_scalar(rng))):
            bundles[i].randoms.append(share)
    for _ in range(num_random_bits):
        for i, share in enumerate(sharer.share(rng.getrandbits(1))):
            bundles[i].random_bits.append(share)
    log.info("dealer_setup", parties=n_parties, triples=num_triples, masks=num_input_masks,
             randoms=num_randoms, random_bits=num_random_bits)
    return bundles


def dealer_setup_for(n_parties, demand, rng=None):
    return dealer_setup(n_parties, demand.triples, demand.input_masks, demand.randoms, demand.random_bits, rng=rng)
