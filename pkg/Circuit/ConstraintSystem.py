"""
Bulletproof constraint system:

    a_L o a_R = a_O                                (n multiplication gates)
    W_L a_L + W_R a_R + W_O a_O = W_V v + c        (Q linear constraints)

The matrices are stored as sparse (row, column, value) triplets.
"""

import hashlib
from dataclasses import dataclass
from functools import cached_property

from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import hadamard


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    q: int
    m: int
    w_l: tuple
    w_r: tuple
    w_o: tuple
    w_v: tuple
    c: tuple
    n_used: int = 0

    def __post_init__(self):
        if len(self.c) != self.q:
            raise ValueError("constant vector has {} entries for {} constraints".format(len(self.c), self.q))
        for name, matrix, width in (("W_L", self.w_l, self.n), ("W_R", self.w_r, self.n),
                                    ("W_O", self.w_o, self.n), ("W_V", self.w_v, self.m)):
            for row, col, _ in matrix:
                if not (0 <= row < self.q and 0 <= col < width):
                    raise ValueError("{} entry ({}, {}) outside {}x{}".format(name, row, col, self.q, width))

    def to_bytes(self):
        writer = ByteWriter().u32(self.n).u32(self.q).u32(self.m)
        for matrix in (self.w_l, self.w_r, self.w_o, self.w_v):
            writer.u32(len(matrix))
            for row, col, value in sorted(matrix):
                writer.u32(row).u32(col).scalar(value)
        return writer.scalars(list(self.c)).getvalue()

    @cached_property
    def digest(self):
        return hashlib.sha256(b"constraint-system" + self.to_bytes()).digest()

    def weighted(self, row_weights):
        """
        row_weights^T times each matrix: the n-vectors for W_L, W_R, W_O, the
        m-vector for W_V and the scalar <row_weights, c>.
        """
        def fold(matrix, width):
            out = [0] * width
            for row, col, value in matrix:
                out[col] = (out[col] + row_weights[row] * value) % P
            return out

        return (fold(self.w_l, self.n), fold(self.w_r, self.n), fold(self.w_o, self.n), fold(self.w_v, self.m),
                sum(w * c for w, c in zip(row_weights, self.c)) % P)

    def residuals(self, a_l, a_r, a_o, v):
        """
        Left side minus right side of every linear constraint.
        """
        out = [-c % P for c in self.c]
        for matrix, vector, sign in ((self.w_l, a_l, 1), (self.w_r, a_r, 1), (self.w_o, a_o, 1), (self.w_v, v, -1)):
            for row, col, value in matrix:
                out[row] = (out[row] + sign * value * vector[col]) % P
        return out


def is_satisfied(cs, asg):
    if not (len(asg.a_l) == len(asg.a_r) == len(asg.a_o) == cs.n) or len(asg.v) != cs.m:
        return False
    if hadamard(asg.a_l, asg.a_r) != [x % P for x in asg.a_o]:
        return False
    return all(r == 0 for r in cs.residuals(asg.a_l, asg.a_r, asg.a_o, asg.v))
