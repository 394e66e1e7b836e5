"""
Commit-and-prove Bulletproof verifier. The same code accepts proofs from the
single prover and from any number of collaborative provers.
"""

from dataclasses import dataclass

import structlog

from Algebra.Field import P
from Algebra.MultiExp import msm
from Bulletproofs.Polynomials import CircuitWeights
from Bulletproofs.Proof import T_INDICES
from Bulletproofs.Proof import statement_transcript
from Commitments.Pedersen import product
from CPLink.CommitmentLink import cplink_verify
from InnerProduct.Argument import ipa_verify

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


ACCEPTED = VerificationResult(True)


def _reject(reason, **context):
    log.info("bp_verify_rejected", reason=reason, **context)
    return VerificationResult(False, reason)


def bp_verify(cs, gens, V, proof, c_hat=None, link_vk=None, link_proof=None, check_polynomial=True):
    """
    Args:
        cs (ConstraintSystem): public relation
        gens (GeneratorSet): at least n vector generators
        V: input commitments V_1..V_m
        proof (BulletproofProof): the proof
        c_hat (Commitment, optional): external commitment linked to prod V_j
        link_vk, link_proof: CP-link verifying key and proof, required with c_hat
        check_polynomial (bool): run the g^t_hat h^tau_x check

    Returns:
        VerificationResult, falsy with reason "statement", "polynomial", "ipa" or "link"
    """
    if not proof.header.matches(cs) or len(V) != cs.m or gens.n < cs.n:
        return _reject("statement", n=cs.n, m=cs.m)
    if c_hat is not None and (link_vk is None or link_proof is None or cs.m == 0):
        return _reject("statement", detail="external commitment without link")
    n = cs.n
    gens = gens.truncated(n)
    transcript = statement_transcript(cs, V)
    transcript.absorb_element("bp/A_I", proof.A_I)
    transcript.absorb_element("bp/A_O", proof.A_O)
    transcript.absorb_element("bp/S", proof.S)
    y = transcript.challenge("bp/y")
    z = transcript.challenge("bp/z")
    for j, element in zip(T_INDICES, proof.T):
        transcript.absorb_element("bp/T{}".format(j), element)
    x = transcript.challenge("bp/x")
    transcript.absorb_scalar("bp/tau_x", proof.tau_x)
    transcript.absorb_scalar("bp/mu", proof.mu)
    transcript.absorb_scalar("bp/t_hat", proof.t_hat)
    x_u = transcript.challenge("bp/x_u")
    weights = CircuitWeights.compute(cs, y, z)
    x2 = x * x % P

    if check_polynomial:
        # g^{t_hat - x^2 (delta + <z, c>)} h^{tau_x} V^{-x^2 w_V} prod T_j^{-x^j} == 1
        bases = [gens.g, gens.h] + [c.point for c in V] + list(proof.T)
        exponents = ([(proof.t_hat - x2 * (weights.delta + weights.w_c)) % P, proof.tau_x] +
                     [-x2 * w % P for w in weights.w_v] +
                     [-pow(x, j, P) % P for j in T_INDICES])
        if not msm(bases, exponents).is_identity():
            return _reject("polynomial")

    # P' = A_I^x A_O^{x^2} S^{x^3} h_vec^{-1 + y^-i (x w_L + w_O)} g_vec^{x y^-i w_R} h^{-mu} g^{x_u t_hat}
    x3 = x2 * x % P
    h_exponents = [(-1 + yi * (x * wl + wo)) % P for yi, wl, wo in zip(weights.y_inv_n, weights.w_l, weights.w_o)]
    g_exponents = [x * w % P for w in weights.scaled_w_r]
    commitment = msm([proof.A_I, proof.A_O, proof.S, gens.h, gens.g] + list(gens.g_vec) + list(gens.h_vec),
                     [x, x2, x3, -proof.mu % P, x_u * proof.t_hat % P] + g_exponents + h_exponents)
    if not ipa_verify(list(gens.g_vec), list(gens.h_vec), gens.g ** x_u, commitment, proof.ipa, transcript,
                      h_factors=weights.y_inv_n):
        return _reject("ipa")

    if c_hat is not None and not cplink_verify(link_vk, product(V), c_hat, link_proof):
        return _reject("link")
    log.debug("bp_verify_accepted", n=n, m=cs.m)
    return ACCEPTED
