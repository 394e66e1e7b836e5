"""
Named sub-relations over one committed value u_0, for composing proofs on a
shared commitment. Each entry knows how to build its circuit and how to
decide the relation in the clear.
"""

from dataclasses import dataclass
from functools import lru_cache

from Circuit.Builder import CircuitBuilder
from Circuit.Gadgets import assert_odd
from Circuit.Gadgets import range_check


@dataclass(frozen=True)
class Relation:
    name: str
    build: object
    holds: object


RELATIONS = {}


def register_relation(name, build, holds):
    """
    Args:
        name (str): registry key
        build (callable): build(builder, u_0) adds the constraints
        holds (callable): holds(u_0) -> bool, the plaintext oracle
    """
    if name in RELATIONS:
        raise ValueError("relation {} is already registered".format(name))
    RELATIONS[name] = Relation(name, build, holds)
    return RELATIONS[name]


def get_relation(name):
    try:
        return RELATIONS[name]
    except KeyError:
        raise ValueError("unknown relation {}, known: {}".format(name, ", ".join(sorted(RELATIONS)))) from None


@lru_cache(maxsize=None)
def relation_circuit(name):
    relation = get_relation(name)
    builder = CircuitBuilder()
    u_0, = builder.alloc_committed(1)
    relation.build(builder, u_0)
    return builder.finalize()


register_relation("lt16", lambda builder, u_0: range_check(builder, u_0, 4), lambda u_0: 0 <= u_0 < 16)
register_relation("odd", lambda builder, u_0: assert_odd(builder, u_0, 5), lambda u_0: 0 <= u_0 < 32 and u_0 % 2 == 1)
