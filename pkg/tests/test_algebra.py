import random

import pytest

from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Curve import generator
from Algebra.Curve import identity
from Algebra.Curve import pairing
from Algebra.Curve import pairing_product_check
from Algebra.Encoding import ByteReader
from Algebra.Encoding import ByteWriter
from Algebra.Field import P
from Algebra.Field import inner_product
from Algebra.Field import inv
from Algebra.Field import powers
from Algebra.Field import scalar_from_bytes
from Algebra.Field import scalar_to_bytes
from Algebra.Generators import GeneratorSet
from Algebra.Hashing import hash_to_g1
from Algebra.Hashing import hash_to_scalar
from Algebra.MultiExp import msm
from Utility.Exceptions import DecodingError


def test_field_inverse_and_powers():
    assert inv(7) * 7 % P == 1
    assert powers(3, 4) == [1, 3, 9, 27]
    assert inner_product([1, 2], [3, 4]) == 11
    with pytest.raises(ZeroDivisionError):
        inv(P)


def test_scalar_encoding_rejects_unreduced_values():
    assert scalar_from_bytes(scalar_to_bytes(P - 1)) == P - 1
    with pytest.raises(DecodingError):
        scalar_from_bytes(P.to_bytes(32, "little"))
    with pytest.raises(DecodingError):
        scalar_from_bytes(b"\x01" * 31)


def test_group_law_and_exponent_reduction():
    g = generator(GroupId.G1)
    assert g ** 5 * g ** 7 == g ** 12
    assert g ** (P + 3) == g ** 3
    assert (g ** 9 / g ** 9).is_identity()
    assert (g * identity(GroupId.G1)) == g
    with pytest.raises(ValueError):
        g * generator(GroupId.G2)


def test_g1_and_g2_encodings_are_canonical():
    for group, size in ((GroupId.G1, 48), (GroupId.G2, 96)):
        element = generator(group) ** 1234567
        data = element.to_bytes()
        assert len(data) == size
        assert GroupElement.from_bytes(group, data) == element
    with pytest.raises(DecodingError):
        GroupElement.from_bytes(GroupId.G1, b"\x00" * 47)


def test_hash_to_g1_gives_distinct_subgroup_points():
    a = hash_to_g1("test/a")
    b = hash_to_g1("test/b")
    assert a != b
    assert not a.is_identity()
    assert a.in_subgroup()
    assert hash_to_g1("test/a") == a


def test_hash_to_scalar_is_deterministic_and_nonzero():
    assert hash_to_scalar(b"x") == hash_to_scalar(b"x")
    assert hash_to_scalar(b"x") != hash_to_scalar(b"y")
    assert 0 < hash_to_scalar(b"z") < P
    with pytest.raises(ValueError):
        hash_to_scalar(b"")


@pytest.fixture(scope="module")
def msm_bases():
    return [hash_to_g1("test/msm/{}".format(i)) for i in range(64)]


@pytest.mark.parametrize("count", range(65))
def test_msm_matches_naive_product(count, msm_bases):
    rng = random.Random(count)
    bases = msm_bases[:count]
    exps = [rng.randrange(P) for _ in range(count)]
    if count > 1:
        exps[0], exps[-1] = 0, P - 1
    expected = identity(GroupId.G1)
    for base, e in zip(bases, exps):
        expected = expected * base ** e
    assert msm(bases, exps) == expected


def test_msm_rejects_mismatched_inputs():
    g1 = generator(GroupId.G1)
    with pytest.raises(ValueError):
        msm([g1], [1, 2])
    with pytest.raises(ValueError):
        msm([g1, generator(GroupId.G2)], [1, 2])
    assert msm([], []).is_identity()


def test_pairing_is_bilinear():
    g1, g2 = generator(GroupId.G1), generator(GroupId.G2)
    assert pairing(g1 ** 6, g2) == pairing(g1 ** 2, g2 ** 3)
    assert pairing_product_check([(g1 ** 2, g2 ** 3), (g1, g2 ** 4)], (g1 ** 10, g2))
    assert not pairing_product_check([(g1 ** 2, g2 ** 3)], (g1 ** 5, g2))


def test_generator_set_truncation():
    gens = GeneratorSet.derive(4, prefix="test/gens")
    assert gens.n == 4
    assert len(set(gens.g_vec + gens.h_vec + (gens.g, gens.h))) == 10
    assert gens.truncated(2).g_vec == gens.g_vec[:2]
    with pytest.raises(ValueError):
        gens.truncated(8)


def test_byte_reader_reports_truncation_and_trailing_data():
    data = ByteWriter().u32(7).scalars([1, 2]).text("relation").getvalue()
    reader = ByteReader(data)
    assert reader.u32() == 7
    assert reader.scalars() == [1, 2]
    assert reader.text() == "relation"
    reader.expect_end()
    with pytest.raises(DecodingError):
        ByteReader(data[:-1]).raw(len(data))
    trailing = ByteReader(data + b"\x00")
    trailing.raw(len(data))
    with pytest.raises(DecodingError):
        trailing.expect_end()
