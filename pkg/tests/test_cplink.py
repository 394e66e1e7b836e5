import random

import pytest

from Algebra.Curve import GroupId
from Algebra.Curve import generator
from Algebra.Field import P
from Algebra.Generators import GeneratorSet
from Bulletproofs.Proof import link_key
from Commitments.Pedersen import commit
from Commitments.Pedersen import setup
from CPLink.CommitmentLink import cplink_keygen
from CPLink.CommitmentLink import cplink_keygen_many
from CPLink.CommitmentLink import cplink_prove
from CPLink.CommitmentLink import cplink_prove_collab
from CPLink.CommitmentLink import cplink_prove_many
from CPLink.CommitmentLink import cplink_verify
from CPLink.CommitmentLink import cplink_verify_many
from CPLink.CommitmentLink import link_matrix
from CPLink.SubspaceSnark import CpLinkProof
from CPLink.SubspaceSnark import SsKeys
from CPLink.SubspaceSnark import SubspaceMatrix
from CPLink.SubspaceSnark import ss_keygen
from CPLink.SubspaceSnark import ss_prove
from CPLink.SubspaceSnark import ss_verify
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties

U = [3, 5]


@pytest.fixture(scope="module")
def link_setup():
    ck, ck_ext = setup(2, "test/link/a"), setup(2, "test/link/b")
    keys = cplink_keygen(ck, ck_ext, random.Random(5))
    return ck, ck_ext, keys


def test_link_matrix_shape(link_setup):
    ck, ck_ext, _ = link_setup
    matrix = link_matrix([ck, ck_ext])
    assert (matrix.rows, matrix.cols) == (2, 4)
    assert matrix.entry(0, 1) is None
    assert matrix.apply([7, 8] + U) == [commit(ck, U, 7).point, commit(ck_ext, U, 8).point]


def test_honest_link_verifies(link_setup):
    ck, ck_ext, keys = link_setup
    proof = cplink_prove(keys.ek, 7, 8, U)
    assert cplink_verify(keys.vk, commit(ck, U, 7), commit(ck_ext, U, 8), proof)


def test_link_rejects_different_messages(link_setup):
    ck, ck_ext, keys = link_setup
    proof = cplink_prove(keys.ek, 7, 8, U)
    assert not cplink_verify(keys.vk, commit(ck, U, 7), commit(ck_ext, [3, 6], 8), proof)


def test_link_under_one_repeated_generator_binds_only_the_sum():
    gens = GeneratorSet.derive(2, prefix="test/link/sum")
    key, ck_ext = link_key(gens, 2), setup(2, "test/link/sum/ext")
    keys = cplink_keygen(key, ck_ext, random.Random(8))
    proof = cplink_prove(keys.ek, 7, 8, U)
    assert commit(key, U, 7) == commit(key, [8, 0], 7)
    assert cplink_verify(keys.vk, commit(key, [8, 0], 7), commit(ck_ext, U, 8), proof)
    assert not cplink_verify(keys.vk, commit(key, U, 7), commit(ck_ext, [8, 0], 8), proof)


def test_link_rejects_tampered_proof(link_setup):
    ck, ck_ext, keys = link_setup
    proof = cplink_prove(keys.ek, 7, 8, U)
    forged = CpLinkProof(proof.pi * generator(GroupId.G1))
    assert not cplink_verify(keys.vk, commit(ck, U, 7), commit(ck_ext, U, 8), forged)


def test_keys_survive_serialization(link_setup):
    _, _, keys = link_setup
    assert SsKeys.from_bytes(keys.to_bytes()) == keys


def test_collaborative_link_proof_matches_single(link_setup, bundles_for):
    _, _, keys = link_setup
    bundles = bundles_for(2, num_input_masks=4)

    def party(transport):
        engine = SpdzEngine(transport, bundles[transport.party_id], rng=random.Random(1))
        shares = engine.input_many([4, 0], [7, 8] + U if transport.party_id == 0 else [])[0]
        return cplink_prove_collab(keys.ek, shares[:2], shares[2:], engine)

    expected = cplink_prove(keys.ek, 7, 8, U)
    assert run_parties(2, party, timeout=20) == [expected, expected]


def test_subspace_argument_on_a_small_matrix():
    g1 = generator(GroupId.G1)
    matrix = SubspaceMatrix.from_rows([[g1, g1 ** 2], [None, g1 ** 5]])
    keys = ss_keygen(matrix, random.Random(9))
    x = matrix.apply([3, 4])
    assert x == [g1 ** 11, g1 ** 20]
    assert ss_verify(keys.vk, x, ss_prove(keys.ek, [3, 4]))
    assert not ss_verify(keys.vk, [g1 ** 11, g1 ** 21], ss_prove(keys.ek, [3, 4]))
    assert not ss_verify(keys.vk, x[:1], ss_prove(keys.ek, [3, 4]))


def test_prover_is_linear_in_the_witness(link_setup):
    _, _, keys = link_setup
    rng = random.Random(3)
    w1 = [rng.randrange(P) for _ in range(4)]
    w2 = [rng.randrange(P) for _ in range(4)]
    combined = [(3 * a + b) % P for a, b in zip(w1, w2)]
    assert ss_prove(keys.ek, combined).pi == ss_prove(keys.ek, w1).pi ** 3 * ss_prove(keys.ek, w2).pi


def test_three_keys_link_one_vector():
    ck_keys = [setup(2, "test/link/{}".format(label)) for label in ("a", "b", "c")]
    keys = cplink_keygen_many(ck_keys, random.Random(6))
    openings = [11, 12, 13]
    commitments = [commit(ck, U, o) for ck, o in zip(ck_keys, openings)]
    proof = cplink_prove_many(keys.ek, openings, U)
    assert cplink_verify_many(keys.vk, commitments, proof)
    swapped = commitments[:2] + [commit(ck_keys[2], [5, 3], 13)]
    assert not cplink_verify_many(keys.vk, swapped, proof)
    assert not cplink_verify_many(keys.vk, commitments[:2], proof)
    with pytest.raises(ValueError):
        cplink_prove_many(keys.ek, openings[:2], U)
