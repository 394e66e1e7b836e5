"""
Hashing into Z_p and into G1.

Everything goes through SHA-256. Outputs are reduced from 512-bit digests so
the bias modulo p is negligible.
"""

import hashlib
from functools import lru_cache

from py_ecc import optimized_bls12_381 as bls
from py_ecc.fields import optimized_bls12_381_FQ as FQ

from Algebra.Curve import FIELD_MODULUS
from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Field import P

HASH_ID = 1
HASH_NAME = "sha256"

# effective cofactor of G1
G1_COFACTOR = 0x396c8c005555e1568c00aaab0000aaab


def wide_digest(data):
    return hashlib.sha256(data + b"\x00").digest() + hashlib.sha256(data + b"\x01").digest()


def hash_to_scalar(data):
    """
    Deterministic nonzero scalar from a nonempty byte string.

    A zero reduction is retried with an appended counter.
    """
    if not data:
        raise ValueError("hash_to_scalar needs a nonempty input")
    counter = 0
    candidate = data
    while True:
        value = int.from_bytes(wide_digest(candidate), "big") % P
        if value != 0:
            return value
        counter += 1
        candidate = data + counter.to_bytes(4, "big")


def _sqrt(a):
    # field modulus is 3 mod 4
    root = pow(a, (FIELD_MODULUS + 1) // 4, FIELD_MODULUS)
    if root * root % FIELD_MODULUS != a % FIELD_MODULUS:
        return None
    return root


@lru_cache(maxsize=None)
def hash_to_g1(tag):
    """
    Try-and-increment map from an ASCII domain tag to a nonidentity G1 element.

    Nobody learns a discrete logarithm between two outputs, which is what the
    Pedersen and Bulletproof generators need.
    """
    counter = 0
    while True:
        digest = wide_digest("{}#{}".format(tag, counter).encode("ascii"))
        x = int.from_bytes(digest, "big") % FIELD_MODULUS
        y = _sqrt((x * x * x + 4) % FIELD_MODULUS)
        if y is not None:
            if (y & 1) != (digest[0] & 1):
                y = FIELD_MODULUS - y
            point = (FQ(x), FQ(y), FQ.one())
            if bls.is_on_curve(point, bls.b):
                cleared = bls.multiply(point, G1_COFACTOR)
                if not bls.is_inf(cleared):
                    return GroupElement(GroupId.G1, cleared)
        counter += 1
