"""
Bilinear group wrapper over BLS12-381.

GroupElement is written multiplicatively like the protocols that use it:
`a * b` is the group operation, `a ** k` is exponentiation by a scalar.
"""

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

from py_ecc import optimized_bls12_381 as bls
from py_ecc.bls.g2_primitives import G1_to_pubkey
from py_ecc.bls.g2_primitives import G2_to_signature
from py_ecc.bls.g2_primitives import pubkey_to_G1
from py_ecc.bls.g2_primitives import signature_to_G2
from py_ecc.fields import optimized_bls12_381_FQ12 as FQ12
from py_ecc.optimized_bls12_381 import optimized_pairing

from Algebra.Field import P
from Utility.Exceptions import DecodingError

CURVE_ID = 1
CURVE_NAME = "BLS12-381"
FIELD_MODULUS = bls.field_modulus
_COEFFICIENT_BYTES = 48


class GroupId(IntEnum):
    G1 = 1
    G2 = 2
    GT = 3


ENCODED_SIZE = {GroupId.G1: 48, GroupId.G2: 96, GroupId.GT: 12 * _COEFFICIENT_BYTES}


def _gt_coefficients(value):
    return [(c.n if hasattr(c, "n") else int(c)) % FIELD_MODULUS for c in value.coeffs]


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: GroupId
    point: object

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise ValueError("cannot combine {} with {}".format(self.group.name, other.group.name))
        if self.group == GroupId.GT:
            return GroupElement(self.group, self.point * other.point)
        return GroupElement(self.group, bls.add(self.point, other.point))

    def __pow__(self, exponent):
        exponent %= P
        if self.group == GroupId.GT:
            return GroupElement(self.group, self.point ** exponent)
        return GroupElement(self.group, bls.multiply(self.point, exponent))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        if self.group == GroupId.GT:
            return GroupElement(self.group, self.point.inv())
        return GroupElement(self.group, bls.neg(self.point))

    def is_identity(self):
        if self.group == GroupId.GT:
            return _gt_coefficients(self.point) == _gt_coefficients(FQ12.one())
        return bls.is_inf(self.point)

    def __eq__(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            return False
        if self.group == GroupId.GT:
            return _gt_coefficients(self.point) == _gt_coefficients(other.point)
        return bls.eq(self.point, other.point)

    def __hash__(self):
        return hash((self.group, self.to_bytes()))

    def __repr__(self):
        return "GroupElement({}, {}…)".format(self.group.name, self.to_bytes()[:6].hex())

    def to_bytes(self):
        if self.group == GroupId.G1:
            return bytes(G1_to_pubkey(self.point))
        if self.group == GroupId.G2:
            return bytes(G2_to_signature(self.point))
        return b"".join(c.to_bytes(_COEFFICIENT_BYTES, "big") for c in _gt_coefficients(self.point))

    @classmethod
    def from_bytes(cls, group, data):
        group = GroupId(group)
        if len(data) != ENCODED_SIZE[group]:
            raise DecodingError("{} encoding must be {} bytes, got {}".format(group.name, ENCODED_SIZE[group], len(data)))
        if group == GroupId.GT:
            coefficients = [int.from_bytes(data[i:i + _COEFFICIENT_BYTES], "big")
                            for i in range(0, len(data), _COEFFICIENT_BYTES)]
            if any(c >= FIELD_MODULUS for c in coefficients):
                raise DecodingError("GT coefficient is not reduced")
            element = cls(group, FQ12(coefficients))
        else:
            try:
                point = pubkey_to_G1(data) if group == GroupId.G1 else signature_to_G2(data)
            except (ValueError, AssertionError) as error:
                raise DecodingError("invalid {} encoding: {}".format(group.name, error)) from error
            element = cls(group, point)
        if not element.in_subgroup():
            raise DecodingError("{} element outside the prime-order subgroup".format(group.name))
        return element

    def in_subgroup(self):
        return GroupElement(self.group, _raw_power(self.group, self.point, P)).is_identity()


def _raw_power(group, point, exponent):
    # no reduction: multiplying by p itself is the subgroup test
    if group == GroupId.GT:
        return point ** exponent
    return bls.multiply(point, exponent)


@lru_cache(maxsize=None)
def generator(group):
    group = GroupId(group)
    if group == GroupId.G1:
        return GroupElement(group, bls.G1)
    if group == GroupId.G2:
        return GroupElement(group, bls.G2)
    return pairing(generator(GroupId.G1), generator(GroupId.G2))


def identity(group):
    group = GroupId(group)
    if group == GroupId.G1:
        return GroupElement(group, bls.Z1)
    if group == GroupId.G2:
        return GroupElement(group, bls.Z2)
    return GroupElement(group, FQ12.one())


def pairing(p, q):
    """
    e(p, q) for p in G1 and q in G2.
    """
    if p.group != GroupId.G1 or q.group != GroupId.G2:
        raise ValueError("pairing takes a G1 element and a G2 element")
    return GroupElement(GroupId.GT, optimized_pairing.pairing(q.point, p.point))


def pairing_product_check(lhs_pairs, rhs_pair):
    """
    Decide whether prod_i e(lhs_i) equals e(rhs), using one final exponentiation.

    Args:
        lhs_pairs: list of (G1 element, G2 element)
        rhs_pair: (G1 element, G2 element)

    Returns:
        bool
    """
    accumulator = FQ12.one()
    for p, q in list(lhs_pairs) + [(rhs_pair[0].inverse(), rhs_pair[1])]:
        if p.group != GroupId.G1 or q.group != GroupId.G2:
            raise ValueError("pairing_product_check takes (G1, G2) pairs")
        if p.is_identity() or q.is_identity():
            continue
        accumulator = accumulator * optimized_pairing.pairing(q.point, p.point, final_exponentiate=False)
    result = optimized_pairing.final_exponentiate(accumulator)
    return _gt_coefficients(result) == _gt_coefficients(FQ12.one())
