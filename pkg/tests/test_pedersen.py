import random

import pytest

from Algebra.Field import P
from Commitments.Collaborative import OwnershipMap
from Commitments.Collaborative import cts_commit
from Commitments.Collaborative import parse_ownership
from Commitments.Collaborative import share_cts_witness
from Commitments.Collaborative import stc_commit
from Commitments.Pedersen import commit
from Commitments.Pedersen import product
from Commitments.Pedersen import setup
from Commitments.Pedersen import ver_commit
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties

U = [11, 22, 33, 44]


def test_commit_and_open():
    ck = setup(4, "test/ped")
    c = commit(ck, U, 99)
    assert ver_commit(ck, c, U, 99)
    assert not ver_commit(ck, c, U, 98)
    assert not ver_commit(ck, c, U[:3], 99)
    with pytest.raises(ValueError):
        commit(ck, U[:3], 99)


def test_commitments_are_homomorphic():
    ck = setup(2, "test/ped")
    assert product([commit(ck, [1, 2], 3), commit(ck, [4, 5], 6)]) == commit(ck, [5, 7], 9)


def test_keys_with_different_labels_differ():
    assert setup(1, "a").generators != setup(1, "b").generators


def test_parse_ownership():
    ownership = parse_ownership("0:0-1; 1:2,3")
    assert ownership.owned_by(0) == (0, 1)
    assert ownership.owned_by(1) == (2, 3)
    assert ownership.owner_of(3) == 1
    with pytest.raises(ValueError):
        parse_ownership("0:0-2;1:2")


def test_ownership_validation():
    with pytest.raises(ValueError):
        OwnershipMap({0: (0,), 3: (1,)}).validate(2, 2)
    with pytest.raises(ValueError):
        OwnershipMap({0: (0,)}).validate(2, 2, complete=True)
    assert OwnershipMap.contiguous(5, 2).slots == {0: (0, 1, 2), 1: (3, 4)}


def test_commit_then_share_matches_plain_commit(bundles_for):
    ck = setup(4, "test/ped")
    ownership = OwnershipMap.contiguous(4, 2)
    contributions = [random.Random(i).randrange(P) for i in range(2)]
    bundles = bundles_for(2, num_input_masks=3)

    def party(transport):
        me = transport.party_id
        slots = {j: U[j] for j in ownership.owned_by(me)}
        before = transport.stats()
        result = cts_commit(ck, ownership, slots, contributions[me], transport)
        messages = (transport.stats() - before).messages_sent
        engine = SpdzEngine(transport, bundles[me], rng=random.Random(me))
        u_shares, o_share = share_cts_witness(engine, ownership, 4, slots, contributions[me])
        return result, messages, engine.open_many(u_shares + [o_share], check=True)

    results = run_parties(2, party, timeout=20)
    expected = commit(ck, U, sum(contributions))
    for result, messages, opened in results:
        assert result.commitment == expected
        assert messages == 1
        assert opened == U + [sum(contributions) % P]


def test_share_then_commit_matches_plain_commit(bundles_for):
    ck = setup(4, "test/ped")
    opening = 4242
    bundles = bundles_for(3, num_input_masks=5)

    def party(transport):
        engine = SpdzEngine(transport, bundles[transport.party_id], rng=random.Random(transport.party_id))
        shares = engine.input_many([5, 0, 0], U + [opening] if transport.party_id == 0 else [])[0]
        before = transport.stats()
        c = stc_commit(ck, shares[:4], shares[4], engine)
        return c, (transport.stats() - before).messages_sent

    for c, messages in run_parties(3, party, timeout=20):
        assert c == commit(ck, U, opening)
        assert messages == 2


def test_cts_rejects_foreign_slots():
    ck = setup(2, "test/ped")
    ownership = OwnershipMap({0: (0,), 1: (1,)})

    def party(transport):
        cts_commit(ck, ownership, {0: 1, 1: 2}, 0, transport)

    with pytest.raises(ValueError):
        run_parties(2, party, timeout=5)


def test_fresh_openings_hide_the_same_message():
    ck = setup(4, "test/ped")
    rng = random.Random(12)
    commitments = [commit(ck, U, rng.randrange(P)) for _ in range(5)]
    assert len({c.to_bytes() for c in commitments}) == 5
