"""
Multi-scalar exponentiation prod_i bases_i ^ exps_i.

G1 and G2 use a bucket (Pippenger) method once there are enough terms, GT
falls back to the plain product of powers.
"""

from py_ecc import optimized_bls12_381 as bls

from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Curve import identity
from Algebra.Field import P

_NAIVE_THRESHOLD = 4
_SCALAR_BITS = P.bit_length()


def _window_bits(n):
    if n < 32:
        return 3
    if n < 256:
        return 5
    if n < 2048:
        return 7
    return 9


def _add(a, b):
    if a is None:
        return b
    return bls.add(a, b)


def _pippenger(points, scalars):
    c = _window_bits(len(points))
    mask = (1 << c) - 1
    windows = (_SCALAR_BITS + c - 1) // c
    result = None
    for window in reversed(range(windows)):
        if result is not None:
            for _ in range(c):
                result = bls.double(result)
        buckets = [None] * mask
        shift = window * c
        for point, scalar in zip(points, scalars):
            index = (scalar >> shift) & mask
            if index:
                buckets[index - 1] = _add(buckets[index - 1], point)
        running = None
        window_sum = None
        for bucket in reversed(buckets):
            if bucket is not None:
                running = _add(running, bucket)
            if running is not None:
                window_sum = _add(window_sum, running)
        if window_sum is not None:
            result = _add(result, window_sum)
    return result


def msm(bases, exps):
    """
    Args:
        bases: list of GroupElement, all in the same group
        exps: list of scalars, same length

    Returns:
        GroupElement. An empty input carries no group, it yields the G1 identity.
    """
    if len(bases) != len(exps):
        raise ValueError("msm got {} bases and {} exponents".format(len(bases), len(exps)))
    if not bases:
        return identity(GroupId.G1)
    group = bases[0].group
    if any(base.group != group for base in bases):
        raise ValueError("msm bases must all live in one group")
    pairs = [(base, e % P) for base, e in zip(bases, exps) if e % P != 0]
    if not pairs:
        return identity(group)
    if group == GroupId.GT or len(pairs) < _NAIVE_THRESHOLD:
        result = pairs[0][0] ** pairs[0][1]
        for base, e in pairs[1:]:
            result = result * base ** e
        return result
    point = _pippenger([base.point for base, _ in pairs], [e for _, e in pairs])
    return GroupElement(group, point) if point is not None else identity(group)
