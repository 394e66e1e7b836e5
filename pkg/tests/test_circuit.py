import random

import pytest

from Algebra.Field import P
from Circuit.Assignment import assign_collab
from Circuit.Assignment import assign_plain
from Circuit.Builder import CircuitBuilder
from Circuit.ConstraintSystem import is_satisfied
from Circuit.Gadgets import embed_signed
from Circuit.Gadgets import embed_threshold
from Circuit.Gadgets import range_check
from Circuit.Gadgets import range_check_64
from Circuit.Gadgets import sum_threshold
from Circuit.Gadgets import sum_width
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties


def product_circuit():
    builder = CircuitBuilder()
    x, y = builder.alloc_committed(2)
    a_l, a_r, a_o = builder.add_mul_gate(x, y)
    builder.add_linear_constraint(a_l - x)
    builder.add_linear_constraint(a_r - y)
    builder.add_linear_constraint(a_o - 12)
    return builder.finalize()


def test_builder_emits_the_matrices():
    circuit = product_circuit()
    cs = circuit.cs
    assert (cs.n, cs.m, cs.q, cs.n_used) == (1, 2, 3, 1)
    assert cs.w_l == ((0, 0, 1),)
    assert cs.w_v == ((0, 0, 1), (1, 1, 1))
    assert cs.c == (0, 0, 12)


def test_plain_assignment_satisfies():
    circuit = product_circuit()
    assert is_satisfied(circuit.cs, assign_plain(circuit, [3, 4]))
    assert not is_satisfied(circuit.cs, assign_plain(circuit, [3, 5]))


def test_gate_count_pads_to_power_of_two():
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    for _ in range(5):
        builder.add_mul_gate(x, x)
    assert builder.finalize().n == 8


def test_bits_stay_out_of_constraints():
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    bits = builder.decompose(x, 2)
    with pytest.raises(ValueError):
        builder.add_linear_constraint(bits[0] - 1)


@pytest.mark.parametrize("width", [1, 4, 8])
def test_range_check_size(width):
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    range_check(builder, x, width)
    circuit = builder.finalize()
    assert circuit.cs.n_used == width
    assert circuit.cs.q == 2 * width + 1


@pytest.mark.parametrize("value,ok", [(0, True), (15, True), (16, False), (P - 1, False)])
def test_range_check_accepts_exactly_the_range(value, ok):
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    range_check(builder, x, 4)
    circuit = builder.finalize()
    assert is_satisfied(circuit.cs, assign_plain(circuit, [value])) is ok


def test_sum_threshold():
    builder = CircuitBuilder()
    values = builder.alloc_committed(3)
    sum_threshold(builder, values, 10, width=6)
    circuit = builder.finalize()
    assert is_satisfied(circuit.cs, assign_plain(circuit, [3, 4, 5]))
    assert is_satisfied(circuit.cs, assign_plain(circuit, [3, 4, 3]))
    assert not is_satisfied(circuit.cs, assign_plain(circuit, [3, 4, 2]))


def test_sum_width_and_embeddings():
    assert sum_width(1) == 64
    assert sum_width(5) == 67
    assert embed_signed(-1, 8) == 127
    assert embed_signed(-128, 8) == 0
    with pytest.raises(ValueError):
        embed_signed(128, 8)
    assert embed_threshold(0, 3, 8) == 384


def test_digest_depends_on_the_constants():
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    builder.add_linear_constraint(x - 1)
    other = CircuitBuilder()
    y, = other.alloc_committed(1)
    other.add_linear_constraint(y - 2)
    assert builder.finalize().digest != other.finalize().digest


def test_collaborative_assignment_matches_plain(bundles_for):
    builder = CircuitBuilder()
    x, y = builder.alloc_committed(2)
    _, _, a_o = builder.add_mul_gate(x + 1, y)
    builder.add_mul_gate(a_o, x)
    range_check(builder, y, 3)
    circuit = builder.finalize()
    plain = assign_plain(circuit, [4, 5])
    bundles = bundles_for(2, num_triples=2 + 3 + 2, num_input_masks=2, num_random_bits=3 + 40)

    def party(transport):
        engine = SpdzEngine(transport, bundles[transport.party_id], rng=random.Random(3))
        v = engine.input_many([2, 0], [4, 5] if transport.party_id == 0 else [])[0]
        shared = assign_collab(circuit, v, engine)
        return [engine.open_many(vector, check=True) for vector in (shared.a_l, shared.a_r, shared.a_o)]

    for a_l, a_r, a_o in run_parties(2, party, timeout=20):
        assert (a_l, a_r, a_o) == (plain.a_l, plain.a_r, plain.a_o)


def test_range_check_64():
    builder = CircuitBuilder()
    x, = builder.alloc_committed(1)
    range_check_64(builder, x)
    circuit = builder.finalize()
    assert (circuit.cs.n, circuit.cs.q) == (64, 129)
    assert is_satisfied(circuit.cs, assign_plain(circuit, [(1 << 64) - 1]))
    assert not is_satisfied(circuit.cs, assign_plain(circuit, [1 << 64]))
