"""
Bulletproof wire format.

    header   magic "CPBP" | u16 version | u8 curve id | u8 hash id |
             u32 n | u32 m | u32 Q | 32-byte circuit digest
    body     A_I A_O S T_1 T_3 T_4 T_5 T_6 | tau_x mu t_hat |
             (L_j R_j) for every IPA round | a' b'

That is 8 + 2 log2(n) G1 elements and 5 scalars after the header.
"""

from dataclasses import dataclass
from dataclasses import field

from Algebra.Curve import CURVE_ID
from Algebra.Curve import ENCODED_SIZE
from Algebra.Curve import GroupId
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import SCALAR_BYTES
from Algebra.Hashing import HASH_ID
from Bulletproofs.Transcript import Transcript
from Commitments.Pedersen import CommitmentKey
from InnerProduct.Argument import IpaProof
from Utility.Exceptions import DecodingError
from Utility.utils import log2_exact

PROOF_MAGIC = b"CPBP"
PROOF_VERSION = 1
DIGEST_BYTES = 32
HEADER_BYTES = len(PROOF_MAGIC) + 2 + 1 + 1 + 3 * 4 + DIGEST_BYTES
T_INDICES = (1, 3, 4, 5, 6)


@dataclass(frozen=True)
class ProofHeader:
    n: int
    m: int
    q: int
    digest: bytes
    version: int = PROOF_VERSION
    curve_id: int = CURVE_ID
    hash_id: int = HASH_ID

    @classmethod
    def for_system(cls, cs):
        return cls(cs.n, cs.m, cs.q, cs.digest)

    def matches(self, cs):
        return (self.n, self.m, self.q, self.digest) == (cs.n, cs.m, cs.q, cs.digest)


@dataclass(frozen=True)
class BulletproofProof:
    header: ProofHeader
    A_I: object
    A_O: object
    S: object
    T: tuple
    tau_x: int
    mu: int
    t_hat: int
    ipa: IpaProof

    @property
    def group_elements(self):
        return [self.A_I, self.A_O, self.S] + list(self.T) + list(self.ipa.L) + list(self.ipa.R)

    def to_bytes(self):
        h = self.header
        writer = (ByteWriter().raw(PROOF_MAGIC).u16(h.version).u8(h.curve_id).u8(h.hash_id)
                  .u32(h.n).u32(h.m).u32(h.q).raw(h.digest))
        for element in (self.A_I, self.A_O, self.S) + tuple(self.T):
            writer.element(element)
        writer.scalar(self.tau_x).scalar(self.mu).scalar(self.t_hat)
        return self.ipa.write(writer).getvalue()

    @classmethod
    def from_bytes(cls, data):
        reader = ByteReader(data)
        if reader.raw(len(PROOF_MAGIC)) != PROOF_MAGIC:
            raise DecodingError("not a Bulletproof: bad magic")
        version, curve_id, hash_id = reader.u16(), reader.u8(), reader.u8()
        if version != PROOF_VERSION:
            raise DecodingError("unsupported proof version {}".format(version))
        if curve_id != CURVE_ID or hash_id != HASH_ID:
            raise DecodingError("proof uses curve {} and hash {}, expected {} and {}".format(curve_id, hash_id, CURVE_ID, HASH_ID))
        n, m, q = reader.u32(), reader.u32(), reader.u32()
        try:
            rounds = log2_exact(n)
        except ValueError as error:
            raise DecodingError(str(error)) from error
        header = ProofHeader(n, m, q, reader.raw(DIGEST_BYTES), version, curve_id, hash_id)
        elements = [reader.element(GroupId.G1) for _ in range(3 + len(T_INDICES))]
        tau_x, mu, t_hat = reader.scalar(), reader.scalar(), reader.scalar()
        ipa = IpaProof.read(reader, rounds)
        reader.expect_end()
        return cls(header, elements[0], elements[1], elements[2], tuple(elements[3:]), tau_x, mu, t_hat, ipa)


@dataclass(frozen=True)
class ProverOutput:
    proof: BulletproofProof
    V: list
    link_proof: object = None
    trace: tuple = field(default=(), compare=False)


def proof_size(n):
    """
    Serialized length in bytes for a circuit with n (a power of two) gates.
    """
    return HEADER_BYTES + (8 + 2 * log2_exact(n)) * ENCODED_SIZE[GroupId.G1] + 5 * SCALAR_BYTES


def link_key(gens, m):
    """
    Key under which prod_j V_j commits to v: opening generator h, message
    generator g in every slot. A link under this key binds only sum_j v_j to
    the external commitment; each v_j on its own is bound by the circuit
    through V_j, not by the link.
    """
    return CommitmentKey.from_generators(gens.h, [gens.g] * m)


def input_key(gens):
    """
    Key for a single V_j = g^{v_j} h^{gamma_j}.
    """
    return link_key(gens, 1)


def statement_transcript(cs, V, domain="collaborative-bulletproof"):
    """
    Transcript bound to the circuit digest, its shape and the input commitments.
    """
    transcript = Transcript(domain)
    transcript.absorb("bp/digest", cs.digest)
    transcript.absorb_u32("bp/n", cs.n)
    transcript.absorb_u32("bp/m", cs.m)
    transcript.absorb_u32("bp/q", cs.q)
    transcript.absorb_elements("bp/V", [c.point for c in V])
    return transcript
