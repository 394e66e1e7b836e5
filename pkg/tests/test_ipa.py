import random

import pytest

from Algebra.Curve import GroupId
from Algebra.Curve import generator
from Algebra.Field import P
from Algebra.Field import inner_product
from Algebra.Field import inv
from Algebra.Hashing import hash_to_g1
from Algebra.MultiExp import msm
from Bulletproofs.Transcript import Transcript
from InnerProduct.Argument import IpaProof
from InnerProduct.Argument import challenge_products
from InnerProduct.Argument import ipa_prove
from InnerProduct.Argument import ipa_verify
from InnerProduct.Distributed import dipa_prove
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties


def commitment(gens, u, a, b, factors=None):
    g_vec, h_vec = gens.g_vec[:len(a)], gens.h_vec[:len(a)]
    factors = factors or [1] * len(a)
    return msm(list(g_vec) + list(h_vec) + [u], list(a) + [x * f % P for x, f in zip(b, factors)] + [inner_product(a, b)])


def prove_and_verify(gens, a, b, factors=None, tamper=None):
    n = len(a)
    g_vec, h_vec = list(gens.g_vec[:n]), list(gens.h_vec[:n])
    u = hash_to_g1("test/ipa/u")
    proof = ipa_prove(g_vec, h_vec, u, a, b, Transcript("test-ipa"), h_factors=factors)
    if tamper is not None:
        proof = tamper(proof)
    return ipa_verify(g_vec, h_vec, u, commitment(gens, u, a, b, factors), proof, Transcript("test-ipa"), h_factors=factors)


def random_vector(rng, n):
    return [rng.randrange(P) for _ in range(n)]


def test_two_element_vectors(gens16):
    assert prove_and_verify(gens16, [1, 2], [3, 4])


def test_single_element_needs_no_rounds(gens16):
    u = hash_to_g1("test/ipa/u")
    proof = ipa_prove([gens16.g_vec[0]], [gens16.h_vec[0]], u, [5], [6], Transcript("test-ipa"))
    assert proof.rounds == 0
    assert (proof.a, proof.b) == (5, 6)
    assert prove_and_verify(gens16, [5], [6])


def test_random_vectors_of_length_eight(gens16, rng):
    assert prove_and_verify(gens16, random_vector(rng, 8), random_vector(rng, 8))


def test_h_factors(gens16, rng):
    factors = random_vector(rng, 4)
    assert prove_and_verify(gens16, random_vector(rng, 4), random_vector(rng, 4), factors=factors)


def test_tampered_round_element_is_rejected(gens16, rng):
    def tamper(proof):
        return IpaProof((proof.L[0] * generator(GroupId.G1),) + proof.L[1:], proof.R, proof.a, proof.b)

    assert not prove_and_verify(gens16, random_vector(rng, 8), random_vector(rng, 8), tamper=tamper)


def test_tampered_final_scalar_is_rejected(gens16, rng):
    def tamper(proof):
        return IpaProof(proof.L, proof.R, (proof.a + 1) % P, proof.b)

    assert not prove_and_verify(gens16, random_vector(rng, 8), random_vector(rng, 8), tamper=tamper)


def test_wrong_round_count_is_rejected(gens16):
    def tamper(proof):
        return IpaProof(proof.L[:1], proof.R[:1], proof.a, proof.b)

    assert not prove_and_verify(gens16, [1, 2, 3, 4], [5, 6, 7, 8], tamper=tamper)


def test_challenge_products_for_four_elements():
    x1, x2 = 5, 7
    i1, i2 = inv(x1), inv(x2)
    assert challenge_products([x1, x2]) == [i1 * i2 % P, i1 * x2 % P, x1 * i2 % P, x1 * x2 % P]


def test_non_power_of_two_is_refused(gens16):
    with pytest.raises(ValueError):
        ipa_prove(list(gens16.g_vec[:3]), list(gens16.h_vec[:3]), gens16.g, [1, 2, 3], [4, 5, 6], Transcript())


def test_proof_bytes_round_trip(gens16, rng):
    u = hash_to_g1("test/ipa/u")
    proof = ipa_prove(list(gens16.g_vec[:4]), list(gens16.h_vec[:4]), u, random_vector(rng, 4), random_vector(rng, 4),
                      Transcript("test-ipa"))
    assert IpaProof.from_bytes(proof.to_bytes(), 2) == proof


@pytest.mark.parametrize("n_parties", [2, 3])
@pytest.mark.parametrize("n", [2, 4, 8, pytest.param(16, marks=pytest.mark.slow)])
def test_distributed_prover_matches_local(n, n_parties, gens16, bundles_for):
    rng = random.Random(n * n_parties)
    a, b, factors = random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)
    g_vec, h_vec = list(gens16.g_vec[:n]), list(gens16.h_vec[:n])
    u = hash_to_g1("test/ipa/u")
    local = ipa_prove(g_vec, h_vec, u, a, b, Transcript("test-ipa"), h_factors=factors)
    bundles = bundles_for(n_parties, num_triples=2 * (n - 1), num_input_masks=n)
    # a comes from the first party, b from the last
    counts = [n] + [0] * (n_parties - 2) + [n]

    def party(transport):
        me = transport.party_id
        engine = SpdzEngine(transport, bundles[me], rng=random.Random(me))
        values = a if me == 0 else b if me == n_parties - 1 else []
        shares = engine.input_many(counts, values)
        return dipa_prove(g_vec, h_vec, u, shares[0], shares[-1], engine, Transcript("test-ipa"), h_factors=factors)

    for proof in run_parties(n_parties, party, timeout=120):
        assert proof.to_bytes() == local.to_bytes()
