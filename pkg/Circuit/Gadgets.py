"""
Reusable constraint gadgets.

Range check of width w: one gate per bit with a_L = b, a_R = b - 1, the
constraints a_O = 0 and a_R - a_L + 1 = 0 per bit, and one recomposition row
sum 2^i a_L_i = value. That is w gates and 2w + 1 linear constraints.
"""

from Circuit.Builder import LinearCombination
from Utility.utils import ceil_log2

WORD_BITS = 64


def range_check(builder, value, width):
    """
    Constrain value to [0, 2^width).

    Returns:
        the a_L variables of the bit gates, least significant first
    """
    value = LinearCombination.of(value)
    bits = builder.decompose(value, width)
    recomposition = LinearCombination()
    a_ls = []
    for i, bit in enumerate(bits):
        a_l, a_r, a_o = builder.add_mul_gate(bit, bit - 1)
        builder.add_linear_constraint(a_o)
        builder.add_linear_constraint(a_r - a_l + 1)
        recomposition = recomposition + a_l * (1 << i)
        a_ls.append(a_l)
    builder.add_linear_constraint(recomposition - value)
    return a_ls


def range_check_64(builder, value):
    return range_check(builder, value, WORD_BITS)


def sum_width(k, word_bits=WORD_BITS):
    return word_bits + ceil_log2(k)


def sum_threshold(builder, values, threshold, width=None):
    """
    Constrain sum(values) - threshold to [0, 2^width). The default width,
    64 + ceil(log2 k), covers the difference of k 64-bit words.
    """
    if not values:
        raise ValueError("sum_threshold needs at least one value")
    width = sum_width(len(values)) if width is None else width
    total = LinearCombination()
    for value in values:
        total = total + value
    return range_check(builder, total - threshold, width)


def assert_odd(builder, value, width):
    """
    value in [0, 2^width) with its lowest bit set.
    """
    bits = range_check(builder, value, width)
    builder.add_linear_constraint(bits[0] - 1)
    return bits


def embed_signed(x, word_bits=WORD_BITS):
    """
    Map a signed word to [0, 2^word_bits) by adding 2^(word_bits - 1).
    """
    offset = 1 << (word_bits - 1)
    if not -offset <= x < offset:
        raise ValueError("{} does not fit a signed {}-bit word".format(x, word_bits))
    return x + offset


def embed_threshold(threshold, k, word_bits=WORD_BITS):
    """
    Threshold on a sum of k signed words, moved into the embedded domain.
    """
    return threshold + k * (1 << (word_bits - 1))
