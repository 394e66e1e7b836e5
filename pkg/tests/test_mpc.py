import random

import pytest

from Algebra.Curve import GroupId
from Algebra.Curve import generator
from Algebra.Field import P
from MPC.AuthShare import AuthShare
from MPC.AuthShare import add_shares
from MPC.AuthShare import linear_combination
from MPC.AuthShare import mul_public
from MPC.Dealer import PartyBundle
from MPC.Dealer import PreprocessingDemand
from MPC.Dealer import dealer_setup
from MPC.SpdzEngine import SpdzEngine
from Transport.InMemoryTransport import InMemoryNetwork
from Transport.Simulation import run_parties
from Utility.Exceptions import MacCheckFailed
from Utility.Exceptions import PreprocessingExhausted


def run_engines(bundles, body, timeout=20):
    def party(transport):
        engine = SpdzEngine(transport, bundles[transport.party_id], rng=random.Random(transport.party_id))
        return body(engine)
    return run_parties(len(bundles), party, timeout=timeout)


def test_dealer_shares_reconstruct(bundles_for):
    bundles = bundles_for(3, num_triples=4)
    alpha = sum(b.mac_key.alpha for b in bundles) % P
    for k in range(4):
        a = sum(b.triples[k].a.value for b in bundles) % P
        b_ = sum(b.triples[k].b.value for b in bundles) % P
        c = sum(b.triples[k].c.value for b in bundles) % P
        assert c == a * b_ % P
        assert sum(b.triples[k].c.mac for b in bundles) % P == alpha * c % P


def test_dealer_needs_two_parties():
    with pytest.raises(ValueError):
        dealer_setup(1)


def test_beaver_multiplications(bundles_for):
    rng = random.Random(99)
    xs = [rng.randrange(P) for _ in range(100)]
    ys = [rng.randrange(P) for _ in range(100)]
    bundles = bundles_for(2, num_triples=100, num_input_masks=200)

    def body(engine):
        counts = [100, 100]
        values = xs if engine.party_id == 0 else ys
        left, right = engine.input_many(counts, values)
        products = engine.mul_many(left, right)
        opened = engine.open_many(products, check=True)
        return opened, engine.multiplications

    for opened, multiplications in run_engines(bundles, body):
        assert opened == [x * y % P for x, y in zip(xs, ys)]
        assert multiplications == 100


def test_linear_operations_are_local(bundles_for):
    bundles = bundles_for(3, num_input_masks=2)

    def body(engine):
        counts = [2, 0, 0]
        x, y = engine.input_many(counts, [5, 11] if engine.party_id == 0 else [])[0]
        before = engine.transport.stats()
        z = engine.add_public(linear_combination([x, y], [3, 2]) - x * 4, 7)
        local_messages = (engine.transport.stats() - before).messages_sent
        return engine.open(z), local_messages

    for value, local_messages in run_engines(bundles, body):
        assert value == (3 * 5 + 2 * 11 - 4 * 5 + 7) % P
        assert local_messages == 0


@pytest.mark.parametrize("trial", range(100))
def test_tampered_opening_fails_mac_check(trial, bundles_for):
    bundles = bundles_for(2, seed=trial, num_input_masks=1)
    cheater = trial % 2

    def body(engine):
        x = engine.input(0, 42 if engine.party_id == 0 else None)
        if engine.party_id == cheater:
            x = AuthShare(x.party_id, (x.value + 1 + trial) % P, x.mac)
        return engine.open(x)

    with pytest.raises(MacCheckFailed):
        run_engines(bundles, body)


def test_input_owner_counts_must_match(bundles_for):
    bundles = bundles_for(2, num_input_masks=1)
    engine = SpdzEngine(InMemoryNetwork(2).transport(0), bundles[0])
    with pytest.raises(ValueError):
        engine.input_many([1, 0], [])


def test_exhausted_triples_raise(bundles_for):
    bundles = bundles_for(2, num_triples=1, num_input_masks=2)

    def body(engine):
        x, y = engine.input_many([2, 0], [3, 4] if engine.party_id == 0 else [])[0]
        engine.mul_many([x, y], [y, x])

    with pytest.raises(PreprocessingExhausted):
        run_engines(bundles, body)


def test_random_bits_decompose_shared_values(bundles_for):
    width, mask_bits = 6, 40
    values = [0, 1, 37, 63]
    bundles = bundles_for(2, num_triples=len(values) * (width - 1), num_input_masks=len(values),
                          num_random_bits=len(values) * (width + mask_bits))

    def body(engine):
        shares = engine.input_many([len(values), 0], values if engine.party_id == 0 else [])[0]
        bits = engine.bits_many(shares, width)
        opened = engine.open_many([b for row in bits for b in row], check=True)
        return [opened[i * width:(i + 1) * width] for i in range(len(values))]

    for rows in run_engines(bundles, body):
        assert rows == [[(v >> i) & 1 for i in range(width)] for v in values]


def test_group_shares_open_to_exponentiation(bundles_for):
    bundles = bundles_for(2, num_input_masks=1)
    g = generator(GroupId.G1)

    def body(engine):
        x = engine.input(1, 1234 if engine.party_id == 1 else None)
        return engine.open_group(engine.exp_to_group_share(g, x))

    assert run_engines(bundles, body) == [g ** 1234, g ** 1234]


def test_single_party_engine_is_plaintext():
    def party(transport):
        engine = SpdzEngine(transport, None, rng=random.Random(1))
        x, y = engine.input_many([2], [6, 7])[0]
        product = engine.mul(x, y)
        bits = engine.bits_many([product], 6)[0]
        return engine.open(product), [engine.open(b) for b in bits], engine.multiplications, transport.stats().messages_sent

    value, bits, multiplications, messages = run_parties(1, party)[0]
    assert value == 42
    assert bits == [0, 1, 0, 1, 0, 1]
    assert multiplications == 0
    assert messages == 0


def test_bundle_bytes_survive_a_file(tmp_path, bundles_for):
    bundle = bundles_for(2, num_triples=2, num_input_masks=1, num_randoms=3, num_random_bits=2)[1]
    path = tmp_path / "party1.bundle"
    bundle.save(str(path))
    loaded = PartyBundle.load(str(path))
    assert loaded == bundle


def test_preprocessing_demand_adds_up():
    total = PreprocessingDemand(triples=2, randoms=1) + PreprocessingDemand(triples=3, input_masks=4, random_bits=5)
    assert total == PreprocessingDemand(triples=5, input_masks=4, randoms=1, random_bits=5)


def test_named_share_operations(bundles_for):
    bundles = bundles_for(2, num_triples=1, num_input_masks=2)

    def body(engine):
        three = engine.share_input(0, 3 if engine.party_id == 0 else None)
        four = engine.share_input(1, 4 if engine.party_id == 1 else None)
        total = add_shares(three, four)
        scaled = mul_public(three, 5)
        product = engine.mul_shares(three, four)
        return engine.open_many([total, scaled, product, engine.add_public(three, 0)], check=True)

    assert run_engines(bundles, body) == [[7, 15, 12, 3]] * 2


def test_four_parties_reconstruct_and_multiply(bundles_for):
    rng = random.Random(4)
    xs = [rng.randrange(P) for _ in range(4)]
    ys = [rng.randrange(P) for _ in range(4)]
    bundles = bundles_for(4, num_triples=4, num_input_masks=2)

    def body(engine):
        # party i inputs x_i and y_i
        inputs = engine.input_many([2] * 4, [xs[engine.party_id], ys[engine.party_id]])
        left, right = [pair[0] for pair in inputs], [pair[1] for pair in inputs]
        local = [s.value for s in left]
        opened = engine.open_many(left + engine.mul_many(left, right) + [engine.sum(left)], check=True)
        return opened, local

    results = run_engines(bundles, body)
    for opened, _ in results:
        assert opened == xs + [x * y % P for x, y in zip(xs, ys)] + [sum(xs) % P]
    assert [sum(column) % P for column in zip(*(local for _, local in results))] == xs


@pytest.mark.parametrize("seed", range(5))
def test_random_bundles_survive_encoding(seed):
    rng = random.Random(seed)
    n_parties = rng.randint(2, 5)
    counts = dict(num_triples=rng.randint(0, 6), num_input_masks=rng.randint(0, 4), num_randoms=rng.randint(0, 3),
                  num_random_bits=rng.randint(0, 8))
    for bundle in dealer_setup(n_parties, rng=rng, **counts):
        data = bundle.to_bytes()
        assert PartyBundle.from_bytes(data) == bundle
        assert PartyBundle.from_bytes(data).to_bytes() == data
