"""
Inner-product argument for P = g^a h^b u^<a,b>, with n a power of two.

Each round splits the vectors in halves, sends

    L = g_hi^{a_lo} h_lo^{b_hi} u^{<a_lo, b_hi>}
    R = g_lo^{a_hi} h_hi^{b_lo} u^{<a_hi, b_lo>}

and folds with the challenge x:

    a' = a_lo x + a_hi x^-1        g' = g_lo^{x^-1} o g_hi^{x}
    b' = b_lo x^-1 + b_hi x        h' = h_lo^{x} o h_hi^{x^-1}

The verifier collapses all rounds into one multi-exponentiation.
The argument is not zero-knowledge and does not need to be.

An optional vector of h factors lets callers use h_i^{f_i} as generators
without materialising them.
"""

from dataclasses import dataclass

from Algebra.Curve import GroupId
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import inner_product
from Algebra.Field import inv
from Algebra.MultiExp import msm
from Utility.utils import is_power_of_two
from Utility.utils import log2_exact


@dataclass(frozen=True)
class IpaProof:
    L: tuple
    R: tuple
    a: int
    b: int

    @property
    def rounds(self):
        return len(self.L)

    def write(self, writer):
        for left, right in zip(self.L, self.R):
            writer.element(left).element(right)
        return writer.scalar(self.a).scalar(self.b)

    @classmethod
    def read(cls, reader, rounds):
        pairs = [(reader.element(GroupId.G1), reader.element(GroupId.G1)) for _ in range(rounds)]
        return cls(tuple(l for l, _ in pairs), tuple(r for _, r in pairs), reader.scalar(), reader.scalar())

    def to_bytes(self):
        return self.write(ByteWriter()).getvalue()

    @classmethod
    def from_bytes(cls, data, rounds):
        reader = ByteReader(data)
        proof = cls.read(reader, rounds)
        reader.expect_end()
        return proof


def start_transcript(transcript):
    transcript.absorb_scalar("ipa/x0", 0)


def round_exponents(lo, hi, factors_lo, factors_hi):
    if factors_lo is None:
        return lo, hi
    return [x * f % P for x, f in zip(lo, factors_lo)], [x * f % P for x, f in zip(hi, factors_hi)]


def fold_generators(lo, hi, e_lo, e_hi, factors=None):
    """
    lo_i^{e_lo f_lo_i} * hi_i^{e_hi f_hi_i} for every i.
    """
    half = len(lo)
    f_lo = factors[:half] if factors is not None else [1] * half
    f_hi = factors[half:] if factors is not None else [1] * half
    return [gl ** (e_lo * fl) * gh ** (e_hi * fh) for gl, gh, fl, fh in zip(lo, hi, f_lo, f_hi)]


def check_length(n):
    if not is_power_of_two(n):
        raise ValueError("inner-product argument needs a power-of-two length, got {}".format(n))


def ipa_prove(g_vec, h_vec, u, a, b, transcript, h_factors=None):
    """
    Args:
        g_vec, h_vec: generator vectors of length n
        u: generator binding the inner product
        a, b: witness vectors of length n
        transcript (Transcript): shared Fiat-Shamir state
        h_factors: optional scalars f with h_i^{f_i} the effective generators

    Returns:
        IpaProof with log2(n) (L, R) pairs
    """
    n = len(a)
    check_length(n)
    if not len(b) == len(g_vec) == len(h_vec) == n:
        raise ValueError("inner-product argument vectors disagree in length")
    g, h, a, b = list(g_vec), list(h_vec), list(a), list(b)
    factors = list(h_factors) if h_factors is not None else None
    start_transcript(transcript)
    ls, rs = [], []
    while n > 1:
        half = n // 2
        a_lo, a_hi, b_lo, b_hi = a[:half], a[half:], b[:half], b[half:]
        g_lo, g_hi, h_lo, h_hi = g[:half], g[half:], h[:half], h[half:]
        c_l = inner_product(a_lo, b_hi)
        c_r = inner_product(a_hi, b_lo)
        b_hi_f, b_lo_f = round_exponents(b_hi, b_lo, factors[:half] if factors else None, factors[half:] if factors else None)
        left = msm(g_hi + h_lo + [u], a_lo + b_hi_f + [c_l])
        right = msm(g_lo + h_hi + [u], a_hi + b_lo_f + [c_r])
        transcript.absorb_element("ipa/L", left)
        transcript.absorb_element("ipa/R", right)
        x = transcript.challenge("ipa/x")
        x_inv = inv(x)
        ls.append(left)
        rs.append(right)
        a = [(lo * x + hi * x_inv) % P for lo, hi in zip(a_lo, a_hi)]
        b = [(lo * x_inv + hi * x) % P for lo, hi in zip(b_lo, b_hi)]
        g = fold_generators(g_lo, g_hi, x_inv, x)
        h = fold_generators(h_lo, h_hi, x, x_inv, factors)
        factors = None
        n = half
    return IpaProof(tuple(ls), tuple(rs), a[0], b[0])


def challenge_products(challenges):
    """
    s_i = prod_j x_j^{+1 or -1}, +1 exactly when bit j of i (counted from the
    most significant of the log2(n) bits) is set.
    """
    k = len(challenges)
    inverses = [inv(x) for x in challenges]
    s = [0] * (1 << k)
    acc = 1
    for x_inv in inverses:
        acc = acc * x_inv % P
    s[0] = acc
    squares = [x * x % P for x in challenges]
    for i in range(1, 1 << k):
        top = i.bit_length() - 1
        s[i] = s[i - (1 << top)] * squares[k - 1 - top] % P
    return s


def replay_challenges(transcript, proof):
    start_transcript(transcript)
    challenges = []
    for left, right in zip(proof.L, proof.R):
        transcript.absorb_element("ipa/L", left)
        transcript.absorb_element("ipa/R", right)
        challenges.append(transcript.challenge("ipa/x"))
    return challenges


def ipa_verify(g_vec, h_vec, u, P_commitment, proof, transcript, h_factors=None):
    """
    Check g^{a s} h^{b s^-1} u^{ab} == P * prod L_j^{x_j^2} R_j^{x_j^-2} as a single
    multi-exponentiation of size 2n + 2k + 2.
    """
    n = len(g_vec)
    if not is_power_of_two(n) or len(h_vec) != n:
        return False
    k = log2_exact(n)
    if proof.rounds != k or len(proof.R) != k:
        return False
    challenges = replay_challenges(transcript, proof)
    s = challenge_products(challenges)
    s_inv = list(reversed(s))
    factors = h_factors if h_factors is not None else [1] * n
    bases = list(g_vec) + list(h_vec) + [u] + list(proof.L) + list(proof.R) + [P_commitment]
    exponents = ([proof.a * si % P for si in s] +
                 [proof.b * si * f % P for si, f in zip(s_inv, factors)] +
                 [proof.a * proof.b % P] +
                 [-x * x % P for x in challenges] +
                 [-inv(x * x) % P for x in challenges] +
                 [P - 1])
    return msm(bases, exponents).is_identity()
