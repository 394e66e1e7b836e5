"""
Vector polynomials of the arithmetic-circuit Bulletproof.

With y^n = (1, y, ..., y^{n-1}) and the constraint rows weighted by
z, z^2, ..., z^Q:

    l(X) = (a_L + y^-n o w_R) X + a_O X^2 + s_L X^3
    r(X) = (w_O - y^n) + (y^n o a_R + w_L) X + y^n o s_R X^3

t(X) = <l(X), r(X)> has no constant term and its X^2 coefficient is the
public value <w_V, v> + delta(y, z) + <z, c> for every satisfying witness.
"""

from dataclasses import dataclass

from Algebra.Field import P
from Algebra.Field import hadamard
from Algebra.Field import inner_product
from Algebra.Field import inv
from Algebra.Field import powers
from Algebra.Field import vector_add
from Algebra.Field import vector_scale
from Algebra.Field import vector_sub


@dataclass(frozen=True)
class CircuitWeights:
    y: int
    z: int
    y_n: list
    y_inv_n: list
    w_l: list
    w_r: list
    w_o: list
    w_v: list
    w_c: int

    @classmethod
    def compute(cls, cs, y, z):
        w_l, w_r, w_o, w_v, w_c = cs.weighted(powers(z, cs.q + 1)[1:])
        return cls(y, z, powers(y, cs.n), powers(inv(y), cs.n), w_l, w_r, w_o, w_v, w_c)

    @property
    def scaled_w_r(self):
        return hadamard(self.y_inv_n, self.w_r)

    @property
    def delta(self):
        return inner_product(self.scaled_w_r, self.w_l)

    @property
    def public_r0(self):
        return vector_sub(self.w_o, self.y_n)

    def t2_target(self, v):
        return (inner_product(self.w_v, v) + self.delta + self.w_c) % P


class VectorPoly:
    """
    sum_i coefficients[i] X^i over Z_p^n. Missing degrees are zero vectors.
    """

    def __init__(self, coefficients):
        self.coefficients = dict(coefficients)

    def evaluate(self, x):
        n = len(next(iter(self.coefficients.values())))
        out = [0] * n
        for degree, vector in self.coefficients.items():
            out = vector_add(out, vector_scale(vector, pow(x, degree, P)))
        return out

    def inner(self, other):
        """
        Scalar coefficients t_0..t_d of <self(X), other(X)>.
        """
        degree = max(self.coefficients) + max(other.coefficients)
        t = [0] * (degree + 1)
        for i, left in self.coefficients.items():
            for j, right in other.coefficients.items():
                t[i + j] = (t[i + j] + inner_product(left, right)) % P
        return t


def build_lr(weights, a_l, a_r, a_o, s_l, s_r):
    l_poly = VectorPoly({1: vector_add(a_l, weights.scaled_w_r), 2: list(a_o), 3: list(s_l)})
    r_poly = VectorPoly({0: weights.public_r0,
                         1: vector_add(hadamard(weights.y_n, a_r), weights.w_l),
                         3: hadamard(weights.y_n, s_r)})
    return l_poly, r_poly


def evaluate_t(t, x):
    return sum(coefficient * pow(x, degree, P) for degree, coefficient in enumerate(t)) % P
