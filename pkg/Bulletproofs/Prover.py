"""
Single-prover Bulletproof for arithmetic circuits with committed inputs.
"""

from dataclasses import dataclass

import structlog

from Algebra.Field import P
from Algebra.Field import inner_product
from Algebra.Field import random_scalar
from Algebra.MultiExp import msm
from Bulletproofs.Polynomials import CircuitWeights
from Bulletproofs.Polynomials import build_lr
from Bulletproofs.Proof import BulletproofProof
from Bulletproofs.Proof import ProofHeader
from Bulletproofs.Proof import ProverOutput
from Bulletproofs.Proof import T_INDICES
from Bulletproofs.Proof import statement_transcript
from Circuit.ConstraintSystem import is_satisfied
from Commitments.Pedersen import Commitment
from CPLink.CommitmentLink import cplink_prove
from InnerProduct.Argument import ipa_prove
from Utility.Exceptions import UnsatisfiedAssignment

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ExternalLink:
    """
    What the prover needs to link prod_j V_j to an external commitment:
    the CP-link evaluation key and the external opening (an int, or an
    AuthShare in the collaborative prover).
    """
    ek: tuple
    opening: object


def check_generators(cs, gens):
    if gens.n < cs.n:
        raise ValueError("circuit has {} gates but only {} generators".format(cs.n, gens.n))
    return gens.truncated(cs.n)


def bp_prove_single(circuit, asg, gens, rng, external=None):
    """
    Args:
        circuit (Circuit or ConstraintSystem): the relation
        asg (Assignment): satisfying witness with blinders gamma for v
        gens (GeneratorSet): at least n vector generators
        rng: blinder source
        external (ExternalLink, optional): link prod V_j to an external commitment

    Returns:
        ProverOutput(proof, V, link_proof)

    Raises:
        UnsatisfiedAssignment: the witness does not satisfy the circuit
    """
    cs = getattr(circuit, "cs", circuit)
    if not is_satisfied(cs, asg):
        raise UnsatisfiedAssignment("assignment does not satisfy the constraint system, refusing to prove")
    gens = check_generators(cs, gens)
    n = cs.n
    V = [Commitment(msm([gens.g, gens.h], [v, gamma])) for v, gamma in zip(asg.v, asg.gamma)]
    transcript = statement_transcript(cs, V)

    alpha, beta, rho = (random_scalar(rng) for _ in range(3))
    s_l = [random_scalar(rng) for _ in range(n)]
    s_r = [random_scalar(rng) for _ in range(n)]
    g_vec, h_vec = list(gens.g_vec), list(gens.h_vec)
    A_I = msm([gens.h] + g_vec + h_vec, [alpha] + list(asg.a_l) + list(asg.a_r))
    A_O = msm([gens.h] + g_vec, [beta] + list(asg.a_o))
    S = msm([gens.h] + g_vec + h_vec, [rho] + s_l + s_r)
    for label, element in (("bp/A_I", A_I), ("bp/A_O", A_O), ("bp/S", S)):
        transcript.absorb_element(label, element)
    y = transcript.challenge("bp/y")
    z = transcript.challenge("bp/z")

    weights = CircuitWeights.compute(cs, y, z)
    l_poly, r_poly = build_lr(weights, asg.a_l, asg.a_r, asg.a_o, s_l, s_r)
    t = l_poly.inner(r_poly)
    if t[0] != 0 or t[2] != weights.t2_target(asg.v):
        raise UnsatisfiedAssignment("t(X) does not have the shape of a satisfying witness")
    tau = {j: random_scalar(rng) for j in T_INDICES}
    T = tuple(msm([gens.g, gens.h], [t[j], tau[j]]) for j in T_INDICES)
    for j, element in zip(T_INDICES, T):
        transcript.absorb_element("bp/T{}".format(j), element)
    x = transcript.challenge("bp/x")

    l_vec = l_poly.evaluate(x)
    r_vec = r_poly.evaluate(x)
    t_hat = inner_product(l_vec, r_vec)
    tau_x = (sum(tau[j] * pow(x, j, P) for j in T_INDICES) + x * x * inner_product(weights.w_v, asg.gamma)) % P
    mu = (alpha * x + beta * x * x + rho * pow(x, 3, P)) % P
    transcript.absorb_scalar("bp/tau_x", tau_x)
    transcript.absorb_scalar("bp/mu", mu)
    transcript.absorb_scalar("bp/t_hat", t_hat)
    x_u = transcript.challenge("bp/x_u")

    ipa = ipa_prove(g_vec, h_vec, gens.g ** x_u, l_vec, r_vec, transcript, h_factors=weights.y_inv_n)
    proof = BulletproofProof(ProofHeader.for_system(cs), A_I, A_O, S, T, tau_x, mu, t_hat, ipa)
    link_proof = None
    if external is not None:
        link_proof = cplink_prove(external.ek, sum(asg.gamma) % P, external.opening, asg.v)
    log.debug("bp_prove_single", n=n, m=cs.m, q=cs.q)
    return ProverOutput(proof, V, link_proof, tuple(transcript.trace))
