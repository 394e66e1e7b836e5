"""
Distributed inner-product prover: the vectors a and b stay secret-shared.

Each round the cross terms c_L, c_R come from Beaver inner products, every
party forms its share of L and R with one multi-exponentiation and the group
shares are opened. Folding is linear, so it runs locally on the shares.
Only the final a', b' are opened. The output equals ipa_prove on the
reconstructed vectors byte for byte.

Costs 2(n - 1) triples and log2(n) + 1 opening rounds.
"""

import structlog

from Algebra.Field import P
from Algebra.Field import inv
from InnerProduct.Argument import IpaProof
from InnerProduct.Argument import check_length
from InnerProduct.Argument import fold_generators
from InnerProduct.Argument import start_transcript
from Utility.utils import split_halves

log = structlog.get_logger(__name__)


def _fold_shares(lo, hi, e_lo, e_hi):
    return [x * e_lo + y * e_hi for x, y in zip(lo, hi)]


def dipa_prove(g_vec, h_vec, u, a_shares, b_shares, engine, transcript, h_factors=None):
    """
    Args:
        g_vec, h_vec: public generator vectors of length n
        u: generator binding the inner product
        a_shares, b_shares: AuthShare vectors of length n
        engine (SpdzEngine): this party's MPC engine
        transcript (Transcript): this party's copy of the shared transcript
        h_factors: optional public scalars f with h_i^{f_i} the effective generators

    Returns:
        IpaProof, identical at every party
    """
    n = len(a_shares)
    check_length(n)
    if not len(b_shares) == len(g_vec) == len(h_vec) == n:
        raise ValueError("inner-product argument vectors disagree in length")
    g, h, a, b = list(g_vec), list(h_vec), list(a_shares), list(b_shares)
    factors = list(h_factors) if h_factors is not None else None
    start_transcript(transcript)
    ls, rs = [], []
    while n > 1:
        half = n // 2
        (a_lo, a_hi), (b_lo, b_hi) = split_halves(a), split_halves(b)
        (g_lo, g_hi), (h_lo, h_hi) = split_halves(g), split_halves(h)
        c_l, c_r = engine.inner_products([(a_lo, b_hi), (a_hi, b_lo)])
        f_lo, f_hi = split_halves(factors) if factors else ([1] * half, [1] * half)
        left_share = engine.msm_share(g_hi + h_lo + [u], a_lo + [s * f for s, f in zip(b_hi, f_lo)] + [c_l])
        right_share = engine.msm_share(g_lo + h_hi + [u], a_hi + [s * f for s, f in zip(b_lo, f_hi)] + [c_r])
        left, right = engine.open_group_many([left_share, right_share])
        transcript.absorb_element("ipa/L", left)
        transcript.absorb_element("ipa/R", right)
        x = transcript.challenge("ipa/x")
        x_inv = inv(x)
        ls.append(left)
        rs.append(right)
        a = _fold_shares(a_lo, a_hi, x, x_inv)
        b = _fold_shares(b_lo, b_hi, x_inv, x)
        g = fold_generators(g_lo, g_hi, x_inv, x)
        h = fold_generators(h_lo, h_hi, x, x_inv, factors)
        factors = None
        n = half
    a_final, b_final = engine.open_many([a[0], b[0]], check=True)
    log.debug("dipa_done", party=engine.party_id, rounds=len(ls))
    return IpaProof(tuple(ls), tuple(rs), a_final % P, b_final % P)
