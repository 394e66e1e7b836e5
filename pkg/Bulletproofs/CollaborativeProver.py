"""
Collaborative Bulletproof prover.

N parties hold additive shares of the witness and jointly produce one proof
that the ordinary verifier accepts. Phases:

    commit     V_j by Commit-then-Share or Share-then-Commit
    assign     replay the wiring script under MPC, check satisfiability
    prove      A_I, A_O, S, then the t_j through Beaver inner products, then
               l(x), r(x), tau_x, mu and the inner-product argument
    link       CP-link proof from the shares of gamma' = sum gamma_j and the
               external opening

In local IPA mode l and r are opened and every party runs the IPA itself; the
parties then compare a hash of transcript state and IPA bytes before the
proof is released. In distributed mode l and r stay shared.
"""

import hashlib
from dataclasses import dataclass
from enum import Enum

import structlog

from Algebra.Field import P
from Algebra.Field import powers
from Bulletproofs.Polynomials import CircuitWeights
from Bulletproofs.Proof import BulletproofProof
from Bulletproofs.Proof import ProofHeader
from Bulletproofs.Proof import ProverOutput
from Bulletproofs.Proof import T_INDICES
from Bulletproofs.Proof import input_key
from Bulletproofs.Proof import statement_transcript
from Bulletproofs.Prover import check_generators
from Circuit.Assignment import assign_collab
from Circuit.Builder import DecomposeStep
from Commitments.Collaborative import OwnershipMap
from Commitments.Collaborative import cts_commit_many
from Commitments.Collaborative import stc_commit_many
from CPLink.CommitmentLink import cplink_prove_collab
from InnerProduct.Argument import ipa_prove
from InnerProduct.Distributed import dipa_prove
from MPC.AuthShare import linear_combination
from MPC.Dealer import PreprocessingDemand
from Utility.Exceptions import ProofMismatch
from Utility.Exceptions import UnsatisfiedAssignment
from Utility.utils import PhaseTimer

log = structlog.get_logger(__name__)


class CommitMode(Enum):
    CTS = "cts"
    STC = "stc"


class IpaMode(Enum):
    LOCAL = "local"
    DISTRIBUTED = "distributed"


@dataclass
class CommittedInputs:
    V: list
    v_shares: list
    gamma_shares: list


def commit_then_share(gens, ownership, my_values, engine, rng):
    """
    CtS for the m single-slot input commitments. The owner of slot j
    contributes g^{v_j}, every party contributes h^{gamma_j,i}; afterwards v
    and gamma = sum_i gamma_j,i are turned into shares in one input round.

    Args:
        ownership (OwnershipMap): slot j -> owning party, over m slots
        my_values (dict): j -> v_j for the slots this party owns
    """
    m = sum(len(ownership.owned_by(party)) for party in range(engine.n_parties))
    ownership.validate(m, engine.n_parties, complete=True)
    contributions = [rng.randrange(P) for _ in range(m)]
    ownerships = [OwnershipMap.single(ownership.owner_of(j)) for j in range(m)]
    slots = [{0: my_values[j]} if j in my_values else {} for j in range(m)]
    results = cts_commit_many(input_key(gens), ownerships, slots, contributions, engine.transport)
    mine = ownership.owned_by(engine.party_id)
    counts = [len(ownership.owned_by(party)) + m for party in range(engine.n_parties)]
    shares = engine.input_many(counts, [my_values[j] for j in mine] + contributions)
    v_shares = [None] * m
    for party in range(engine.n_parties):
        for j, share in zip(ownership.owned_by(party), shares[party]):
            v_shares[j] = share
    gamma_shares = [engine.sum([shares[party][len(ownership.owned_by(party)) + j] for party in range(engine.n_parties)])
                    for j in range(m)]
    return CommittedInputs([r.commitment for r in results], v_shares, gamma_shares)


def share_then_commit(gens, v_shares, engine):
    """
    StC: gamma_j comes from the dealer's random values, every party commits to
    its shares and the commitment shares are opened.
    """
    gamma_shares = engine.randoms(len(v_shares))
    V = stc_commit_many(input_key(gens), [[v] for v in v_shares], gamma_shares, engine) if v_shares else []
    return CommittedInputs(V, list(v_shares), gamma_shares)


def collaborative_demand(circuit, ipa_mode=IpaMode.LOCAL, commit_mode=CommitMode.STC, mask_bits=40):
    """
    Correlated randomness one collaborative proof of this circuit consumes.
    """
    cs, script = circuit.cs, circuit.script
    ipa_mode, commit_mode = IpaMode(ipa_mode), CommitMode(commit_mode)
    decompositions = [step for step in script.steps if isinstance(step, DecomposeStep)]
    triples = script.n_gates + sum(step.width - 1 for step in decompositions) + 5 * cs.n
    if ipa_mode == IpaMode.DISTRIBUTED:
        triples += cs.n + 2 * (cs.n - 1)
    randoms = 3 + 2 * cs.n + len(T_INDICES)
    masks = 0
    if commit_mode == CommitMode.STC:
        randoms += cs.m
    else:
        masks = 2 * cs.m
    return PreprocessingDemand(triples=triples, input_masks=masks, randoms=randoms,
                               random_bits=sum(step.width + mask_bits for step in decompositions))


def check_satisfiable(cs, shared, engine, transcript):
    """
    Open a random combination of the linear-constraint residuals. Honest
    witnesses open to zero; anything else makes every party refuse.
    """
    if cs.q == 0:
        return
    zeta = transcript.challenge("bp/satisfiability")
    w_l, w_r, w_o, w_v, w_c = cs.weighted(powers(zeta, cs.q + 1)[1:])
    combined = linear_combination(shared.a_l + shared.a_r + shared.a_o + shared.v,
                                  w_l + w_r + w_o + [-w % P for w in w_v])
    if engine.open(engine.add_public(combined, -w_c)) != 0:
        engine.log.warning("unsatisfied_assignment")
        raise UnsatisfiedAssignment("shared assignment does not satisfy the constraint system, refusing to prove")


def _cross_check(engine, transcript, ipa):
    if engine.plaintext:
        return
    fingerprint = hashlib.sha256(transcript.state() + ipa.to_bytes()).digest()
    received = engine.transport.exchange(fingerprint, "ipa-check")
    for party, other in enumerate(received):
        if other != fingerprint:
            engine.log.warning("ipa_mismatch", peer=party)
            raise ProofMismatch("party {} derived a different inner-product argument".format(party))


def prove_committed(circuit, committed, gens, engine, external=None, ipa_mode=IpaMode.LOCAL, timer=None):
    """
    Args:
        circuit (Circuit): relation with wiring script
        committed (CommittedInputs): V and the shares of v and gamma
        gens (GeneratorSet): public generators
        engine (SpdzEngine): this party's MPC engine
        external (ExternalLink, optional): link key and the share of the external opening
        ipa_mode (IpaMode): open l, r and prove locally, or run the distributed IPA
        timer (PhaseTimer, optional): collects per-phase wall time

    Returns:
        ProverOutput, identical at every party
    """
    timer = timer or PhaseTimer()
    cs = circuit.cs
    gens = check_generators(cs, gens)
    n = cs.n
    transcript = statement_transcript(cs, committed.V)
    plog = engine.log.bind(n=n, m=cs.m, ipa=ipa_mode.value)

    with timer.phase("assign"):
        shared = assign_collab(circuit, committed.v_shares, engine, committed.gamma_shares)
        check_satisfiable(cs, shared, engine, statement_transcript(cs, committed.V, domain="satisfiability"))
        engine.check()
    plog.info("phase_done", phase="assign")

    with timer.phase("prove"):
        alpha, beta, rho = engine.randoms(3)
        s_l = engine.randoms(n)
        s_r = engine.randoms(n)
        g_vec, h_vec = list(gens.g_vec), list(gens.h_vec)
        A_I, A_O, S = engine.open_group_many([
            engine.msm_share([gens.h] + g_vec + h_vec, [alpha] + shared.a_l + shared.a_r),
            engine.msm_share([gens.h] + g_vec, [beta] + shared.a_o),
            engine.msm_share([gens.h] + g_vec + h_vec, [rho] + s_l + s_r)])
        for label, element in (("bp/A_I", A_I), ("bp/A_O", A_O), ("bp/S", S)):
            transcript.absorb_element(label, element)
        y = transcript.challenge("bp/y")
        z = transcript.challenge("bp/z")

        weights = CircuitWeights.compute(cs, y, z)
        r0 = weights.public_r0
        l1 = [engine.add_public(a, w) for a, w in zip(shared.a_l, weights.scaled_w_r)]
        l2 = shared.a_o
        l3 = s_l
        r1 = [engine.add_public(a * yi, w) for a, yi, w in zip(shared.a_r, weights.y_n, weights.w_l)]
        r3 = [s * yi for s, yi in zip(s_r, weights.y_n)]
        l2r1, l1r3, l3r1, l2r3, l3r3 = engine.inner_products([(l2, r1), (l1, r3), (l3, r1), (l2, r3), (l3, r3)])
        t = {1: linear_combination(l1, r0),
             3: l2r1 + linear_combination(l3, r0),
             4: l1r3 + l3r1,
             5: l2r3,
             6: l3r3}
        tau = dict(zip(T_INDICES, engine.randoms(len(T_INDICES))))
        T = tuple(engine.open_group_many([engine.msm_share([gens.g, gens.h], [t[j], tau[j]]) for j in T_INDICES]))
        for j, element in zip(T_INDICES, T):
            transcript.absorb_element("bp/T{}".format(j), element)
        x = transcript.challenge("bp/x")

        x2, x3 = x * x % P, pow(x, 3, P)
        l_shares = [a * x + b * x2 + c * x3 for a, b, c in zip(l1, l2, l3)]
        r_shares = [engine.add_public(b * x + c * x3, a) for a, b, c in zip(r0, r1, r3)]
        tau_x = linear_combination([tau[j] for j in T_INDICES], [pow(x, j, P) for j in T_INDICES])
        if cs.m:
            tau_x = tau_x + linear_combination(shared.gamma, weights.w_v) * x2
        mu = linear_combination([alpha, beta, rho], [x, x2, x3])
        if ipa_mode == IpaMode.LOCAL:
            opened = engine.open_many(l_shares + r_shares + [tau_x, mu])
            l_vec, r_vec, (tau_x_value, mu_value) = opened[:n], opened[n:2 * n], opened[2 * n:]
            t_hat = sum(a * b for a, b in zip(l_vec, r_vec)) % P
        else:
            t_hat_share = engine.inner_products([(l_shares, r_shares)])[0]
            tau_x_value, mu_value, t_hat = engine.open_many([tau_x, mu, t_hat_share])
        transcript.absorb_scalar("bp/tau_x", tau_x_value)
        transcript.absorb_scalar("bp/mu", mu_value)
        transcript.absorb_scalar("bp/t_hat", t_hat)
        x_u = transcript.challenge("bp/x_u")
        u_factor = gens.g ** x_u
        if ipa_mode == IpaMode.LOCAL:
            ipa = ipa_prove(g_vec, h_vec, u_factor, l_vec, r_vec, transcript, h_factors=weights.y_inv_n)
            engine.check()
            _cross_check(engine, transcript, ipa)
        else:
            ipa = dipa_prove(g_vec, h_vec, u_factor, l_shares, r_shares, engine, transcript, h_factors=weights.y_inv_n)
            engine.check()
    plog.info("phase_done", phase="prove")

    link_proof = None
    if external is not None:
        with timer.phase("link"):
            gamma_prime = engine.sum(list(shared.gamma))
            link_proof = cplink_prove_collab(external.ek, [gamma_prime, external.opening], shared.v, engine)
            engine.check()
        plog.info("phase_done", phase="link")

    proof = BulletproofProof(ProofHeader.for_system(cs), A_I, A_O, S, T, tau_x_value, mu_value, t_hat, ipa)
    return ProverOutput(proof, list(committed.V), link_proof, tuple(transcript.trace))


def bp_prove_collab(circuit, gens, engine, rng, commit_mode=CommitMode.STC, v_shares=None, ownership=None,
                    my_values=None, external=None, ipa_mode=IpaMode.LOCAL, timer=None):
    """
    Commit to the inputs in the chosen mode, then prove.

    StC takes v_shares. CtS takes the slot ownership and this party's values.
    """
    timer = timer or PhaseTimer()
    with timer.phase("commit"):
        if CommitMode(commit_mode) == CommitMode.CTS:
            committed = commit_then_share(gens, ownership, my_values or {}, engine, rng)
        else:
            committed = share_then_commit(gens, list(v_shares or []), engine)
    engine.log.info("phase_done", phase="commit", mode=CommitMode(commit_mode).value)
    return prove_committed(circuit, committed, gens, engine, external=external, ipa_mode=IpaMode(ipa_mode), timer=timer)
