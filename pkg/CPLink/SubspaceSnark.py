"""
Succinct argument that a vector x in G1^l lies in the span of the columns of a
public matrix M in G1^{l x t}: x = M * w for a witness w in Z_p^t, with
x_i = prod_j M_ij^{w_j}.

keygen samples k in Z_p^l and a in Z_p, publishes P_j = prod_i M_ij^{k_i},
C'_i = g2^{a k_i} and a' = g2^a, then forgets k and a. Whoever ran keygen
could forge proofs, so keygen belongs to the verifier side.
"""

from dataclasses import dataclass

from Algebra.Curve import GroupId
from Algebra.Curve import generator
from Algebra.Curve import identity
from Algebra.Curve import pairing_product_check
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import random_nonzero_scalar
from Algebra.MultiExp import msm
from Utility.Exceptions import DecodingError

KEYS_MAGIC = b"CPSS"
KEYS_VERSION = 1


@dataclass(frozen=True)
class SubspaceMatrix:
    """
    Sparse l x t matrix over G1. entries maps (row, col) to a group element,
    missing entries are the identity.
    """
    rows: int
    cols: int
    entries: dict

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("subspace matrix needs at least one row and one column")
        for (i, j) in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError("entry ({}, {}) outside a {}x{} matrix".format(i, j, self.rows, self.cols))

    @classmethod
    def from_rows(cls, rows):
        """
        rows: lists of equal length holding GroupElement or None for the identity.
        """
        entries = {(i, j): element for i, row in enumerate(rows) for j, element in enumerate(row) if element is not None}
        return cls(len(rows), len(rows[0]), entries)

    def entry(self, i, j):
        return self.entries.get((i, j))

    def apply(self, w):
        if len(w) != self.cols:
            raise ValueError("matrix has {} columns, witness has {} entries".format(self.cols, len(w)))
        out = []
        for i in range(self.rows):
            columns = [j for j in range(self.cols) if (i, j) in self.entries]
            out.append(msm([self.entries[(i, j)] for j in columns], [w[j] for j in columns])
                       if columns else identity(GroupId.G1))
        return out


@dataclass(frozen=True)
class SsVerifyingKey:
    c_prime: tuple
    a_prime: object


@dataclass(frozen=True)
class SsKeys:
    ek: tuple
    vk: SsVerifyingKey

    @property
    def rows(self):
        return len(self.vk.c_prime)

    @property
    def cols(self):
        return len(self.ek)

    def to_bytes(self):
        writer = ByteWriter().raw(KEYS_MAGIC).u16(KEYS_VERSION).u32(self.rows).u32(self.cols)
        for element in self.ek:
            writer.element(element)
        for element in self.vk.c_prime:
            writer.element(element)
        return writer.element(self.vk.a_prime).getvalue()

    @classmethod
    def from_bytes(cls, data):
        reader = ByteReader(data)
        if reader.raw(4) != KEYS_MAGIC or reader.u16() != KEYS_VERSION:
            raise DecodingError("not a subspace key of a supported version")
        rows, cols = reader.u32(), reader.u32()
        ek = tuple(reader.element(GroupId.G1) for _ in range(cols))
        c_prime = tuple(reader.element(GroupId.G2) for _ in range(rows))
        a_prime = reader.element(GroupId.G2)
        reader.expect_end()
        return cls(ek, SsVerifyingKey(c_prime, a_prime))


@dataclass(frozen=True)
class CpLinkProof:
    pi: object

    def to_bytes(self):
        return self.pi.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        reader = ByteReader(data)
        proof = cls(reader.element(GroupId.G1))
        reader.expect_end()
        return proof


def ss_keygen(matrix, rng):
    k = [random_nonzero_scalar(rng) for _ in range(matrix.rows)]
    a = random_nonzero_scalar(rng)
    ek = []
    for j in range(matrix.cols):
        rows = [i for i in range(matrix.rows) if (i, j) in matrix.entries]
        ek.append(msm([matrix.entries[(i, j)] for i in rows], [k[i] for i in rows]) if rows else identity(GroupId.G1))
    g2 = generator(GroupId.G2)
    c_prime = tuple(g2 ** (a * k_i) for k_i in k)
    a_prime = g2 ** a
    del k, a
    return SsKeys(tuple(ek), SsVerifyingKey(c_prime, a_prime))


def ss_prove(ek, w):
    if len(w) != len(ek):
        raise ValueError("evaluation key has {} entries, witness has {}".format(len(ek), len(w)))
    return CpLinkProof(msm(list(ek), list(w)))


def ss_verify(vk, x, proof):
    if len(x) != len(vk.c_prime):
        return False
    return pairing_product_check(list(zip(x, vk.c_prime)), (proof.pi, vk.a_prime))
