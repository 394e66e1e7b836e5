"""
Online phase of SPDZ over Z_p for one party.

Openings are MAC-checked in batches: open_many records every opened value
together with this party's MAC share, and check() verifies the whole batch
with a single commit-then-reveal exchange. Protocols call check() at the end
of each phase. open() checks immediately.

With a single party the engine degrades to plaintext arithmetic: no triples,
no masks, no messages.
"""

import hashlib
import random
from collections import deque

import structlog

from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import powers
from Algebra.Field import random_scalar
from Algebra.Field import scalar_to_bytes
from Algebra.Hashing import hash_to_scalar
from Algebra.MultiExp import msm
from MPC.AuthShare import AuthShare
from MPC.AuthShare import GroupShare
from MPC.AuthShare import MacKeyShare
from MPC.AuthShare import linear_combination
from Utility.Exceptions import DecodingError
from Utility.Exceptions import MacCheckFailed
from Utility.Exceptions import PreprocessingExhausted
from Utility.Exceptions import ProtocolDesync

log = structlog.get_logger(__name__)


def encode_scalars(values):
    return ByteWriter().scalars(values).getvalue()


def decode_scalars(data, expected=None):
    try:
        reader = ByteReader(data)
        values = reader.scalars()
        reader.expect_end()
    except DecodingError as error:
        raise ProtocolDesync("malformed scalar message: {}".format(error)) from error
    if expected is not None and len(values) != expected:
        raise ProtocolDesync("expected {} scalars, received {}".format(expected, len(values)))
    return values


def encode_elements(elements):
    writer = ByteWriter().u32(len(elements))
    for element in elements:
        writer.u8(int(element.group)).element(element)
    return writer.getvalue()


def decode_elements(data, expected):
    try:
        reader = ByteReader(data)
        count = reader.u32()
        if count != expected:
            raise ProtocolDesync("expected {} group elements, received {}".format(expected, count))
        elements = [reader.element(GroupId(reader.u8())) for _ in range(count)]
        reader.expect_end()
    except ValueError as error:
        raise ProtocolDesync("malformed group element message: {}".format(error)) from error
    return elements


class SpdzEngine:

    def __init__(self, transport, bundle=None, rng=None, mask_bits=40):
        """
        Args:
            transport (Transport): this party's network handle
            bundle (PartyBundle): dealer output for this party, optional when N = 1
            rng: local randomness for MAC-check nonces and plaintext-mode sampling
            mask_bits (int): statistical masking parameter for bits_many
        """
        self.transport = transport
        self.party_id = transport.party_id
        self.n_parties = transport.n_parties
        if bundle is None and self.n_parties > 1:
            raise ValueError("a dealer bundle is required with {} parties".format(self.n_parties))
        if bundle is not None and (bundle.party_id != self.party_id or bundle.n_parties != self.n_parties):
            raise ValueError("bundle for party {}/{} handed to party {}/{}".format(
                bundle.party_id, bundle.n_parties, self.party_id, self.n_parties))
        self.key = bundle.mac_key if bundle is not None else MacKeyShare(self.party_id, 1)
        self._triples = deque(bundle.triples if bundle else [])
        self._masks = [deque(owner_masks) for owner_masks in bundle.masks] if bundle else []
        self._mask_values = deque(bundle.mask_values if bundle else [])
        self._randoms = deque(bundle.randoms if bundle else [])
        self._random_bits = deque(bundle.random_bits if bundle else [])
        self._pending = []
        self.rng = rng or random.SystemRandom()
        self.mask_bits = mask_bits
        self.multiplications = 0
        self.openings = 0
        self.mac_checks = 0
        self.log = log.bind(party=self.party_id)

    @property
    def plaintext(self):
        return self.n_parties == 1

    # local operations

    def zero(self):
        return AuthShare(self.party_id, 0, 0)

    def constant(self, c):
        return self.zero().add_public(c % P, self.key)

    def add_public(self, x, c):
        return x.add_public(c % P, self.key)

    def _plain(self, x):
        return AuthShare(self.party_id, x % P, self.key.alpha * x % P)

    def sum(self, shares):
        return linear_combination(shares, [1] * len(shares)) if shares else self.zero()

    # preprocessing

    def _pop(self, pool, what):
        if not pool:
            raise PreprocessingExhausted("party {} ran out of {}".format(self.party_id, what))
        return pool.popleft()

    def random(self):
        if self.plaintext:
            return self._plain(random_scalar(self.rng))
        return self._pop(self._randoms, "random values")

    def randoms(self, count):
        return [self.random() for _ in range(count)]

    def random_bit(self):
        if self.plaintext:
            return self._plain(self.rng.getrandbits(1))
        return self._pop(self._random_bits, "random bits")

    def remaining(self):
        return {"triples": len(self._triples), "randoms": len(self._randoms), "random_bits": len(self._random_bits),
                "masks": [len(owner_masks) for owner_masks in self._masks]}

    # inputs

    def input_many(self, counts, values=()):
        """
        Every party inputs its own values in one round.

        Args:
            counts: number of inputs per party, public and identical everywhere
            values: this party's inputs, len(values) == counts[party_id]

        Returns:
            list with one list of shares per owner
        """
        values = list(values)
        if len(counts) != self.n_parties or len(values) != counts[self.party_id]:
            raise ValueError("party {} announced {} inputs but holds {}".format(
                self.party_id, counts[self.party_id] if len(counts) == self.n_parties else "?", len(values)))
        if self.plaintext:
            return [[self._plain(v) for v in values]]
        masked = [(v - self._pop(self._mask_values, "input masks")) % P for v in values]
        received = self.transport.exchange(encode_scalars(masked), "input")
        shares = []
        for owner in range(self.n_parties):
            epsilons = decode_scalars(received[owner], counts[owner])
            shares.append([self._pop(self._masks[owner], "input masks of party {}".format(owner)).add_public(eps, self.key)
                           for eps in epsilons])
        return shares

    def input(self, owner, x=None):
        counts = [0] * self.n_parties
        counts[owner] = 1
        return self.input_many(counts, [x] if owner == self.party_id else [])[owner][0]

    share_input = input

    # openings

    def open_many(self, shares, check=False):
        shares = list(shares)
        if self.plaintext:
            return [s.value for s in shares]
        received = self.transport.exchange(encode_scalars([s.value for s in shares]), "open")
        columns = [decode_scalars(payload, len(shares)) for payload in received]
        opened = [sum(column[i] for column in columns) % P for i in range(len(shares))]
        self._pending.extend(zip(opened, (s.mac for s in shares)))
        self.openings += len(shares)
        if check:
            self.check()
        return opened

    def open(self, x, check=True):
        return self.open_many([x], check=check)[0]

    def check(self):
        """
        Batched MAC check over every opening since the previous check.
        """
        pending, self._pending = self._pending, []
        if self.plaintext or not pending:
            return
        seed = hashlib.sha256(b"mac-check" + b"".join(scalar_to_bytes(x) for x, _ in pending)).digest()
        coefficients = powers(hash_to_scalar(seed), len(pending))
        sigma = sum(r * (mac - self.key.alpha * x) for r, (x, mac) in zip(coefficients, pending)) % P
        nonce = self.rng.getrandbits(256).to_bytes(32, "big")
        opening = scalar_to_bytes(sigma) + nonce
        commitments = self.transport.exchange(hashlib.sha256(b"sigma" + opening).digest(), "mac-commit")
        openings = self.transport.exchange(opening, "mac-open")
        total = 0
        for party, (commitment, revealed) in enumerate(zip(commitments, openings)):
            if hashlib.sha256(b"sigma" + revealed).digest() != commitment:
                self.log.warning("mac_commitment_broken", peer=party)
                raise MacCheckFailed("party {} revealed a sigma that does not match its commitment".format(party))
            total += int.from_bytes(revealed[:32], "little")
        self.mac_checks += 1
        if total % P != 0:
            self.log.warning("mac_check_failed", values=len(pending))
            raise MacCheckFailed("MAC check over {} opened values failed".format(len(pending)))
        self.log.debug("mac_check_passed", values=len(pending))

    # multiplication

    def mul_many(self, xs, ys):
        if len(xs) != len(ys):
            raise ValueError("mul_many got {} left and {} right operands".format(len(xs), len(ys)))
        if self.plaintext:
            return [self._plain(x.value * y.value) for x, y in zip(xs, ys)]
        if len(self._triples) < len(xs):
            raise PreprocessingExhausted("party {} needs {} triples, {} left".format(self.party_id, len(xs), len(self._triples)))
        triples = [self._triples.popleft() for _ in xs]
        opened = self.open_many([x - t.a for x, t in zip(xs, triples)] + [y - t.b for y, t in zip(ys, triples)])
        epsilons, deltas = opened[:len(xs)], opened[len(xs):]
        self.multiplications += len(xs)
        return [(t.c + t.b * eps + t.a * delta).add_public(eps * delta % P, self.key)
                for t, eps, delta in zip(triples, epsilons, deltas)]

    def mul(self, x, y):
        return self.mul_many([x], [y])[0]

    mul_shares = mul

    def inner_products(self, pairs):
        """
        Shares of <x, y> for every (x, y) pair of share vectors, in one round.
        """
        lefts, rights, bounds = [], [], [0]
        for xs, ys in pairs:
            if len(xs) != len(ys):
                raise ValueError("inner product of vectors with lengths {} and {}".format(len(xs), len(ys)))
            lefts.extend(xs)
            rights.extend(ys)
            bounds.append(len(lefts))
        products = self.mul_many(lefts, rights)
        return [self.sum(products[bounds[i]:bounds[i + 1]]) for i in range(len(pairs))]

    # group shares

    def exp_to_group_share(self, base, x):
        return GroupShare(self.party_id, base ** x.value)

    def msm_share(self, bases, shares):
        return GroupShare(self.party_id, msm(list(bases), [s.value for s in shares]))

    def open_group_many(self, group_shares):
        group_shares = list(group_shares)
        if self.plaintext:
            return [gs.element for gs in group_shares]
        received = self.transport.exchange(encode_elements([gs.element for gs in group_shares]), "open-group")
        columns = [decode_elements(payload, len(group_shares)) for payload in received]
        opened = []
        for i in range(len(group_shares)):
            element = columns[0][i]
            for column in columns[1:]:
                element = element * column[i]
            opened.append(element)
        return opened

    def open_group(self, group_share):
        return self.open_group_many([group_share])[0]

    # bit decomposition

    def bits_many(self, xs, width):
        """
        Shared little-endian bits of values that lie in [0, 2^width).

        Opens x + r for a random r of width + mask_bits bits, then subtracts the
        low bits of r from the public low bits with a ripple borrow.
        Costs width - 1 multiplications per value and width - 1 rounds.
        """
        xs = list(xs)
        if not xs or width < 1:
            return [[] for _ in xs]
        if self.plaintext:
            return [[self._plain((x.value >> i) & 1) for i in range(width)] for x in xs]
        total = width + self.mask_bits
        r_bits = [[self.random_bit() for _ in range(total)] for _ in xs]
        weights = [1 << i for i in range(total)]
        masked = self.open_many([x + linear_combination(rb, weights) for x, rb in zip(xs, r_bits)])
        c_bits = [[(c >> i) & 1 for i in range(width)] for c in masked]
        bits = [[rb[0] if cb[0] == 0 else self.constant(1) - rb[0]] for rb, cb in zip(r_bits, c_bits)]
        borrows = [rb[0] if cb[0] == 0 else self.zero() for rb, cb in zip(r_bits, c_bits)]
        for i in range(1, width):
            products = self.mul_many([rb[i] for rb in r_bits], borrows)
            for k, (rb, cb, p) in enumerate(zip(r_bits, c_bits, products)):
                r, b = rb[i], borrows[k]
                xor = r + b - p * 2
                if cb[i] == 0:
                    bits[k].append(xor)
                    borrows[k] = r + b - p
                else:
                    bits[k].append(self.constant(1) - xor)
                    borrows[k] = p
        return bits
