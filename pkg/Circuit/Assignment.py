"""
Witness generation by replaying a wiring script.

One evaluator serves both the plaintext prover and the collaborative one;
the backend decides whether values are ints or authenticated shares. All gates
and decompositions of a dependency level are evaluated in one batch, which
under MPC means one multiplication round (plus the decomposition rounds).
"""

from dataclasses import dataclass

from Algebra.Field import P
from Circuit.Builder import VariableKind
from Circuit.Builder import DecomposeStep
from MPC.AuthShare import linear_combination


@dataclass
class Assignment:
    a_l: list
    a_r: list
    a_o: list
    v: list
    gamma: list


@dataclass
class SharedAssignment:
    a_l: list
    a_r: list
    a_o: list
    v: list
    gamma: list


class PlainBackend:

    def zero(self):
        return 0

    def combine(self, values, coefficients, constant):
        return (sum(x * k for x, k in zip(values, coefficients)) + constant) % P

    def mul_many(self, lefts, rights):
        return [x * y % P for x, y in zip(lefts, rights)]

    def bits_many(self, values, width):
        return [[(value >> i) & 1 for i in range(width)] for value in values]


class MpcBackend:

    def __init__(self, engine):
        self.engine = engine

    def zero(self):
        return self.engine.zero()

    def combine(self, values, coefficients, constant):
        if not values:
            return self.engine.constant(constant)
        return self.engine.add_public(linear_combination(values, coefficients), constant)

    def mul_many(self, lefts, rights):
        return self.engine.mul_many(lefts, rights)

    def bits_many(self, values, width):
        return self.engine.bits_many(values, width)


def evaluate_script(circuit, v, backend):
    """
    Returns:
        (a_L, a_R, a_O) padded to the circuit's n with zeros
    """
    script = circuit.script
    if len(v) != script.m:
        raise ValueError("circuit has {} committed inputs, got {}".format(script.m, len(v)))
    wires = {VariableKind.COMMITTED: list(v),
             VariableKind.LEFT: [None] * script.n_gates,
             VariableKind.RIGHT: [None] * script.n_gates,
             VariableKind.OUTPUT: [None] * script.n_gates,
             VariableKind.BIT: [None] * script.n_bits}

    def evaluate(lc):
        values, coefficients = [], []
        for variable in lc.variables():
            values.append(wires[variable.kind][variable.index])
            coefficients.append(lc.terms[variable])
        return backend.combine(values, coefficients, lc.constant)

    for level in script.levels():
        gates = [step for step in level if not isinstance(step, DecomposeStep)]
        if gates:
            lefts = [evaluate(gate.left) for gate in gates]
            rights = [evaluate(gate.right) for gate in gates]
            outputs = backend.mul_many(lefts, rights)
            for gate, left, right, output in zip(gates, lefts, rights, outputs):
                wires[VariableKind.LEFT][gate.index] = left
                wires[VariableKind.RIGHT][gate.index] = right
                wires[VariableKind.OUTPUT][gate.index] = output
        by_width = {}
        for step in level:
            if isinstance(step, DecomposeStep):
                by_width.setdefault(step.width, []).append(step)
        for width, steps in sorted(by_width.items()):
            decomposed = backend.bits_many([evaluate(step.source) for step in steps], width)
            for step, bits in zip(steps, decomposed):
                wires[VariableKind.BIT][step.first_bit:step.first_bit + width] = bits
    padding = [backend.zero() for _ in range(circuit.n - script.n_gates)]
    return (wires[VariableKind.LEFT] + padding, wires[VariableKind.RIGHT] + list(padding),
            wires[VariableKind.OUTPUT] + list(padding))


def assign_plain(circuit, v, gamma=None):
    a_l, a_r, a_o = evaluate_script(circuit, [x % P for x in v], PlainBackend())
    return Assignment(a_l, a_r, a_o, [x % P for x in v], list(gamma) if gamma is not None else [0] * len(v))


def assign_collab(circuit, v_shares, engine, gamma_shares=None):
    """
    Shared witness from shared committed inputs. One Beaver triple per used
    gate, plus width - 1 per decomposition.
    """
    a_l, a_r, a_o = evaluate_script(circuit, list(v_shares), MpcBackend(engine))
    gamma = list(gamma_shares) if gamma_shares is not None else [engine.zero() for _ in v_shares]
    return SharedAssignment(a_l, a_r, a_o, list(v_shares), gamma)
