"""
Scalar arithmetic modulo the prime order p of the BLS12-381 groups.

Scalars are plain Python ints kept reduced into [0, p). Vectors are lists.
"""

from py_ecc.optimized_bls12_381 import curve_order

from Utility.Exceptions import DecodingError

P = curve_order
SCALAR_BYTES = 32


def neg(x):
    return -x % P


def inv(x):
    x %= P
    if x == 0:
        raise ZeroDivisionError("zero has no inverse modulo p")
    return pow(x, P - 2, P)


def random_scalar(rng):
    return rng.randrange(P)


def random_nonzero_scalar(rng):
    return rng.randrange(1, P)


def powers(x, n):
    """
    [1, x, x^2, ..., x^(n-1)]
    """
    out = []
    acc = 1
    for _ in range(n):
        out.append(acc)
        acc = acc * x % P
    return out


def inner_product(a, b):
    if len(a) != len(b):
        raise ValueError("inner product of vectors with lengths {} and {}".format(len(a), len(b)))
    return sum(x * y for x, y in zip(a, b)) % P


def hadamard(a, b):
    if len(a) != len(b):
        raise ValueError("hadamard product of vectors with lengths {} and {}".format(len(a), len(b)))
    return [x * y % P for x, y in zip(a, b)]


def vector_add(a, b):
    if len(a) != len(b):
        raise ValueError("sum of vectors with lengths {} and {}".format(len(a), len(b)))
    return [(x + y) % P for x, y in zip(a, b)]


def vector_sub(a, b):
    return vector_add(a, [neg(y) for y in b])


def vector_scale(a, k):
    return [x * k % P for x in a]


def scalar_to_bytes(x):
    return (x % P).to_bytes(SCALAR_BYTES, "little")


def scalar_from_bytes(data):
    if len(data) != SCALAR_BYTES:
        raise DecodingError("scalar encoding must be {} bytes, got {}".format(SCALAR_BYTES, len(data)))
    value = int.from_bytes(data, "little")
    if value >= P:
        raise DecodingError("scalar encoding is not reduced modulo p")
    return value
