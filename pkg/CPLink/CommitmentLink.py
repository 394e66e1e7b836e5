"""
Linking commitments under different Pedersen keys to the same message vector.

For keys ck_1..ck_l of equal message length n the matrix has one row per key:
row i holds ck_i's opening generator in column i and its message generators
in the l shared message columns. The witness is (o_1, ..., o_l, u_1, ..., u_n).
With two keys this is [g_0, 0, g_1..g_n; 0, g'_0, g'_1..g'_n].
"""

from CPLink.SubspaceSnark import CpLinkProof
from CPLink.SubspaceSnark import SubspaceMatrix
from CPLink.SubspaceSnark import ss_keygen
from CPLink.SubspaceSnark import ss_prove
from CPLink.SubspaceSnark import ss_verify


def link_matrix(keys):
    keys = list(keys)
    if not keys:
        raise ValueError("linking needs at least one commitment key")
    n = keys[0].n
    if any(ck.n != n for ck in keys):
        raise ValueError("linked keys must commit to the same number of values")
    l = len(keys)
    entries = {}
    for i, ck in enumerate(keys):
        entries[(i, i)] = ck.g0
        for j, g in enumerate(ck.message_generators):
            entries[(i, l + j)] = g
    return SubspaceMatrix(l, l + n, entries)


def cplink_keygen_many(keys, rng):
    return ss_keygen(link_matrix(keys), rng)


def cplink_keygen(ck, ck_ext, rng):
    """
    Args:
        ck (CommitmentKey): proof-system side key
        ck_ext (CommitmentKey): external key, same message length
        rng: source for the discarded trapdoor

    Returns:
        SsKeys over the 2 x (n + 2) link matrix
    """
    return cplink_keygen_many([ck, ck_ext], rng)


def _witness(ek, openings, u):
    if len(openings) + len(u) != len(ek):
        raise ValueError("link key expects {} witness entries, got {} openings and {} values".format(len(ek), len(openings), len(u)))
    return list(openings) + list(u)


def cplink_prove_many(ek, openings, u):
    return ss_prove(ek, _witness(ek, openings, u))


def cplink_prove(ek, o, o_ext, u):
    return cplink_prove_many(ek, [o, o_ext], u)


def cplink_verify_many(vk, commitments, proof):
    return ss_verify(vk, [c.point for c in commitments], proof)


def cplink_verify(vk, c, c_ext, proof):
    return cplink_verify_many(vk, [c, c_ext], proof)


def cplink_prove_collab(ek, opening_shares, u_shares, engine):
    """
    Every party runs the prover on its own shares, then the group shares are
    opened. Works because the prover is linear in the witness.

    Args:
        ek: evaluation key
        opening_shares: AuthShares of the l openings
        u_shares: AuthShares of the message vector
        engine (SpdzEngine): this party's MPC engine

    Returns:
        CpLinkProof, identical at every party
    """
    witness = _witness(ek, opening_shares, u_shares)
    local = engine.msm_share(ek, witness)
    return CpLinkProof(engine.open_group(local))
