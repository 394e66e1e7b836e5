"""
AND-composition of collaborative proofs on one shared commitment.

The shared value u_0 and the opening o_s of c^s = g_0^{o_s} g_1^{u_0} live
with several holders as additive pieces; no holder knows u_0 itself. Each
holder publishes the commitment to its own piece and c^s is their product.
Every prover group gets a fresh sharing of the pieces, inputs it into its own
SPDZ engine, re-derives c^s with share-then-commit and proves its relation
with a collaborative Bulletproof linked to c^s. Groups have their own network
and their own dealer, so they can be disjoint, overlapping, or run in parallel.
The conjunction holds when every sub-proof verifies against the same c^s.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field

import structlog

from Algebra.Curve import GroupId
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import random_scalar
from Algebra.Generators import GeneratorSet
from Bulletproofs.CollaborativeProver import IpaMode
from Bulletproofs.CollaborativeProver import bp_prove_collab
from Bulletproofs.CollaborativeProver import collaborative_demand
from Bulletproofs.Proof import BulletproofProof
from Bulletproofs.Proof import link_key
from Bulletproofs.Prover import ExternalLink
from Bulletproofs.Verifier import bp_verify
from Commitments.Collaborative import stc_commit
from Commitments.Pedersen import Commitment
from Commitments.Pedersen import commit
from Commitments.Pedersen import product
from Commitments.Pedersen import setup
from CPLink.CommitmentLink import cplink_keygen
from CPLink.SubspaceSnark import CpLinkProof
from Composition.Relations import relation_circuit
from MPC.Dealer import PreprocessingDemand
from MPC.Dealer import dealer_setup_for
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.Exceptions import CollaborativeProverError
from Utility.Exceptions import DecodingError
from Utility.Exceptions import ProofMismatch

log = structlog.get_logger(__name__)

COMPOSED_MAGIC = b"CPCS"
COMPOSED_VERSION = 1


@dataclass(frozen=True)
class CompositionKeys:
    gens: GeneratorSet
    shared_key: object
    link: object

    @classmethod
    def setup(cls, rng, max_gates=8, label="compose"):
        """
        Generators for the largest sub-circuit, the one-slot key of c^s and the
        CP-link keys between a single V and c^s.
        """
        shared_key = setup(1, "{}/shared".format(label))
        gens = GeneratorSet.derive(max_gates, prefix="{}/bp".format(label))
        return cls(gens, shared_key, cplink_keygen(link_key(gens, 1), shared_key, rng))


@dataclass(frozen=True)
class ProverGroupPlan:
    relation: str
    parties: tuple
    ipa_mode: IpaMode = IpaMode.LOCAL


@dataclass
class SubStatement:
    relation: str
    digest: bytes
    commitment: Commitment
    V: list = field(default_factory=list)
    proof: BulletproofProof = None
    link_proof: CpLinkProof = None


@dataclass
class ComposedStatement:
    shared_commitment: Commitment
    sub_statements: list = field(default_factory=list)

    def to_bytes(self):
        writer = ByteWriter().raw(COMPOSED_MAGIC).u16(COMPOSED_VERSION).element(self.shared_commitment.point)
        writer.u32(len(self.sub_statements))
        for sub in self.sub_statements:
            writer.text(sub.relation).raw(sub.digest).element(sub.commitment.point)
            writer.elements([c.point for c in sub.V])
            writer.blob(sub.proof.to_bytes() if sub.proof is not None else b"")
            writer.blob(sub.link_proof.to_bytes() if sub.link_proof is not None else b"")
        return writer.getvalue()

    @classmethod
    def from_bytes(cls, data):
        reader = ByteReader(data)
        if reader.raw(len(COMPOSED_MAGIC)) != COMPOSED_MAGIC or reader.u16() != COMPOSED_VERSION:
            raise DecodingError("not a composed statement bundle")
        statement = cls(Commitment(reader.element(GroupId.G1)))
        for _ in range(reader.u32()):
            relation, digest, commitment = reader.text(), reader.raw(32), Commitment(reader.element(GroupId.G1))
            V = [Commitment(point) for point in reader.elements(GroupId.G1)]
            proof_blob, link_blob = reader.blob(), reader.blob()
            statement.sub_statements.append(SubStatement(
                relation, digest, commitment, V,
                BulletproofProof.from_bytes(proof_blob) if proof_blob else None,
                CpLinkProof.from_bytes(link_blob) if link_blob else None))
        reader.expect_end()
        return statement


@dataclass
class ComposeResult:
    statement: ComposedStatement
    failures: dict = field(default_factory=dict)

    @property
    def complete(self):
        return not self.failures


@dataclass(frozen=True)
class WitnessPiece:
    """
    One holder's additive piece of u_0 and of the opening of c^s.
    """
    u: int
    o: int


def split_witness(u_0, opening, n_holders, rng):
    """
    Additive pieces of (u_0, opening) for n holders.
    """
    if n_holders < 1:
        raise ValueError("need at least one holder, got {}".format(n_holders))
    us = [random_scalar(rng) for _ in range(n_holders - 1)]
    os_ = [random_scalar(rng) for _ in range(n_holders - 1)]
    return ([WitnessPiece(u, o) for u, o in zip(us, os_)] +
            [WitnessPiece((u_0 - sum(us)) % P, (opening - sum(os_)) % P)])


def reshare(pieces, n_members, rng):
    """
    A fresh sharing of the same (u_0, o_s) for a group of n members. Every
    holder splits its own piece n ways and hands one part to each member, who
    adds up what it receives.
    """
    parts = [split_witness(piece.u, piece.o, n_members, rng) for piece in pieces]
    return [WitnessPiece(sum(p[j].u for p in parts) % P, sum(p[j].o for p in parts) % P) for j in range(n_members)]


def holders_commitment(shared_key, pieces):
    return product(commit(shared_key, [piece.u], piece.o) for piece in pieces)


def prove_relation(relation, keys, u0_share, opening_share, engine, rng, ipa_mode=IpaMode.LOCAL):
    """
    One group member's part of a sub-proof, given shares of u_0 and of the
    opening of c^s.
    """
    circuit = relation_circuit(relation)
    return bp_prove_collab(circuit, keys.gens, engine, rng, v_shares=[u0_share],
                           external=ExternalLink(keys.link.ek, opening_share), ipa_mode=ipa_mode)


def group_demand(relation, ipa_mode=IpaMode.LOCAL):
    return collaborative_demand(relation_circuit(relation), ipa_mode) + PreprocessingDemand(input_masks=2)


def input_witness(engine, piece):
    """
    Every member inputs its own piece; the sums are shares of u_0 and o_s.
    """
    owned = engine.input_many([2] * engine.n_parties, [piece.u, piece.o])
    return engine.sum([pair[0] for pair in owned]), engine.sum([pair[1] for pair in owned])


def _run_group(group, keys, pieces, shared_commitment, seed, timeout):
    rng = random.Random(seed)
    n_parties = len(group.parties)
    member_pieces = reshare(pieces, n_parties, rng)
    bundles = dealer_setup_for(n_parties, group_demand(group.relation, group.ipa_mode), rng) if n_parties > 1 else None
    party_seeds = [rng.getrandbits(64) for _ in range(n_parties)]

    def party(transport):
        me = transport.party_id
        party_rng = random.Random(party_seeds[me])
        engine = SpdzEngine(transport, bundles[me] if bundles else None, rng=party_rng)
        u0_share, opening_share = input_witness(engine, member_pieces[me])
        if stc_commit(keys.shared_key, [u0_share], opening_share, engine) != shared_commitment:
            raise ProofMismatch("group {} holds a witness that does not open c^s".format(group.relation))
        return prove_relation(group.relation, keys, u0_share, opening_share, engine, party_rng, group.ipa_mode)

    outputs = run_parties(n_parties, party, timeout=timeout)
    log.info("group_done", relation=group.relation, parties=list(group.parties))
    return outputs[0]


def compose_prove(plan, keys, pieces, rng, shared_commitment=None, timeout=DEFAULT_TIMEOUT, parallel=True):
    """
    Args:
        plan: list of ProverGroupPlan, one per sub-statement
        keys (CompositionKeys): public parameters
        pieces: the holders' WitnessPiece list, summing to (u_0, o_s)
        rng: seeds the resharing, the dealers and the parties of every group
        shared_commitment (Commitment, optional): c^s as published earlier;
            by default the product of the holders' piece commitments
        parallel (bool): run the groups concurrently

    Returns:
        ComposeResult. A group that aborts or refuses leaves its sub-statement
        without a proof and is listed in failures; the other groups are unaffected.
    """
    pieces = list(pieces)
    if not pieces:
        raise ValueError("the shared witness needs at least one holder")
    if shared_commitment is None:
        shared_commitment = holders_commitment(keys.shared_key, pieces)
    seeds = [rng.getrandbits(64) for _ in plan]
    statement = ComposedStatement(shared_commitment)
    failures = {}

    def run(index):
        try:
            return _run_group(plan[index], keys, pieces, shared_commitment, seeds[index], timeout)
        except CollaborativeProverError as error:
            return error

    if parallel and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=len(plan)) as pool:
            outcomes = list(pool.map(run, range(len(plan))))
    else:
        outcomes = [run(index) for index in range(len(plan))]
    for index, (group, outcome) in enumerate(zip(plan, outcomes)):
        sub = SubStatement(group.relation, relation_circuit(group.relation).digest, shared_commitment)
        if isinstance(outcome, Exception):
            log.warning("group_failed", relation=group.relation, error=str(outcome))
            failures[index] = outcome
        else:
            sub.V, sub.proof, sub.link_proof = outcome.V, outcome.proof, outcome.link_proof
        statement.sub_statements.append(sub)
    return ComposeResult(statement, failures)


def verify_composed(statement, keys):
    """
    True iff every sub-proof verifies and every sub-statement references the
    shared commitment byte for byte. An empty conjunction is true.
    """
    shared = statement.shared_commitment.to_bytes()
    for sub in statement.sub_statements:
        if sub.proof is None or sub.link_proof is None:
            return False
        if sub.commitment.to_bytes() != shared:
            return False
        try:
            cs = relation_circuit(sub.relation).cs
        except ValueError:
            return False
        if sub.digest != cs.digest:
            return False
        if not bp_verify(cs, keys.gens, sub.V, sub.proof, c_hat=sub.commitment, link_vk=keys.link.vk, link_proof=sub.link_proof):
            return False
    return True
