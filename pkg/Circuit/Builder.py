"""
Circuit builder.

A build script allocates committed inputs, adds multiplication gates whose
inputs are linear combinations of earlier values, asks for bit decompositions
(witness hints only, never visible to constraints) and adds linear
constraints lc == 0. finalize() yields the public ConstraintSystem together
with the wiring script needed to compute a witness from the committed inputs.
"""

from dataclasses import dataclass
from enum import Enum

from Algebra.Field import P
from Circuit.ConstraintSystem import ConstraintSystem
from Utility.utils import next_power_of_two


class VariableKind(Enum):
    LEFT = "L"
    RIGHT = "R"
    OUTPUT = "O"
    COMMITTED = "V"
    BIT = "B"
    ONE = "1"


@dataclass(frozen=True)
class Variable:
    kind: VariableKind
    index: int = 0

    def lc(self):
        return LinearCombination({self: 1})

    def __add__(self, other):
        return self.lc() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self.lc() - other

    def __rsub__(self, other):
        return LinearCombination.of(other) - self.lc()

    def __neg__(self):
        return -self.lc()

    def __mul__(self, k):
        return self.lc() * k

    __rmul__ = __mul__


ONE = Variable(VariableKind.ONE)


class LinearCombination:

    def __init__(self, terms=None):
        self.terms = {}
        for variable, coefficient in (terms or {}).items():
            coefficient %= P
            if coefficient:
                self.terms[variable] = coefficient

    @classmethod
    def of(cls, value):
        if isinstance(value, LinearCombination):
            return value
        if isinstance(value, Variable):
            return value.lc()
        if isinstance(value, int):
            return cls({ONE: value})
        raise TypeError("cannot turn {!r} into a linear combination".format(value))

    def __add__(self, other):
        other = LinearCombination.of(other)
        terms = dict(self.terms)
        for variable, coefficient in other.terms.items():
            terms[variable] = terms.get(variable, 0) + coefficient
        return LinearCombination(terms)

    __radd__ = __add__

    def __neg__(self):
        return LinearCombination({variable: -k for variable, k in self.terms.items()})

    def __sub__(self, other):
        return self + (-LinearCombination.of(other))

    def __rsub__(self, other):
        return LinearCombination.of(other) - self

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return LinearCombination({variable: c * k for variable, c in self.terms.items()})

    __rmul__ = __mul__

    @property
    def constant(self):
        return self.terms.get(ONE, 0)

    def variables(self):
        return [variable for variable in self.terms if variable.kind != VariableKind.ONE]

    def __repr__(self):
        return " + ".join("{}*{}{}".format(k, v.kind.value, v.index) for v, k in self.terms.items()) or "0"


@dataclass(frozen=True)
class GateStep:
    index: int
    left: LinearCombination
    right: LinearCombination
    level: int


@dataclass(frozen=True)
class DecomposeStep:
    source: LinearCombination
    width: int
    first_bit: int
    level: int


@dataclass(frozen=True)
class WiringScript:
    m: int
    n_gates: int
    n_bits: int
    steps: tuple

    def levels(self):
        """
        Steps grouped by dependency level. Everything inside one level can run in one batch.
        """
        grouped = {}
        for step in self.steps:
            grouped.setdefault(step.level, []).append(step)
        return [grouped[level] for level in sorted(grouped)]


@dataclass(frozen=True)
class Circuit:
    cs: ConstraintSystem
    script: WiringScript

    @property
    def digest(self):
        return self.cs.digest

    @property
    def n(self):
        return self.cs.n

    @property
    def m(self):
        return self.cs.m


class CircuitBuilder:

    def __init__(self):
        self.m = 0
        self.gates = []
        self.decompositions = []
        self.constraints = []
        self.n_bits = 0
        self._bit_levels = []

    def alloc_committed(self, count=1):
        first = self.m
        self.m += count
        return [Variable(VariableKind.COMMITTED, first + i) for i in range(count)]

    def _level_of(self, variable):
        if variable.kind in (VariableKind.ONE, VariableKind.COMMITTED):
            return 0
        if variable.kind == VariableKind.BIT:
            return self._bit_levels[variable.index]
        return self.gates[variable.index].level

    def _check(self, lc, allow_bits):
        for variable in lc.variables():
            if variable.kind == VariableKind.BIT and not allow_bits:
                raise ValueError("bit hints cannot appear in constraints, route them through a gate")
            bound = {VariableKind.LEFT: len(self.gates), VariableKind.RIGHT: len(self.gates),
                     VariableKind.OUTPUT: len(self.gates), VariableKind.COMMITTED: self.m,
                     VariableKind.BIT: self.n_bits}[variable.kind]
            if not 0 <= variable.index < bound:
                raise ValueError("{}{} refers to a wire that does not exist yet".format(variable.kind.value, variable.index))

    def _level(self, *lcs):
        return 1 + max([self._level_of(v) for lc in lcs for v in lc.variables()], default=0)

    def add_mul_gate(self, left=None, right=None):
        """
        New gate with a_L = left and a_R = right evaluated during witness generation.

        Returns:
            (a_L, a_R, a_O) variables of the gate
        """
        left = LinearCombination.of(0 if left is None else left)
        right = LinearCombination.of(0 if right is None else right)
        self._check(left, allow_bits=True)
        self._check(right, allow_bits=True)
        index = len(self.gates)
        self.gates.append(GateStep(index, left, right, self._level(left, right)))
        return (Variable(VariableKind.LEFT, index), Variable(VariableKind.RIGHT, index), Variable(VariableKind.OUTPUT, index))

    def decompose(self, lc, width):
        """
        Bit hints b_0..b_{width-1} with sum 2^i b_i = lc whenever lc < 2^width.
        """
        lc = LinearCombination.of(lc)
        if width < 1:
            raise ValueError("decomposition width must be positive")
        self._check(lc, allow_bits=True)
        level = self._level(lc)
        first = self.n_bits
        self.decompositions.append(DecomposeStep(lc, width, first, level))
        self.n_bits += width
        self._bit_levels.extend([level] * width)
        return [Variable(VariableKind.BIT, first + i) for i in range(width)]

    def add_linear_constraint(self, lc):
        """
        Require lc == 0.
        """
        lc = LinearCombination.of(lc)
        self._check(lc, allow_bits=False)
        self.constraints.append(lc)

    def finalize(self):
        n = next_power_of_two(len(self.gates))
        w_l, w_r, w_o, w_v = [], [], [], []
        c = []
        targets = {VariableKind.LEFT: w_l, VariableKind.RIGHT: w_r, VariableKind.OUTPUT: w_o}
        for row, lc in enumerate(self.constraints):
            for variable, coefficient in lc.terms.items():
                if variable.kind in targets:
                    targets[variable.kind].append((row, variable.index, coefficient))
                elif variable.kind == VariableKind.COMMITTED:
                    w_v.append((row, variable.index, -coefficient % P))
            c.append(-lc.constant % P)
        cs = ConstraintSystem(n=n, q=len(self.constraints), m=self.m, w_l=tuple(w_l), w_r=tuple(w_r), w_o=tuple(w_o),
                              w_v=tuple(w_v), c=tuple(c), n_used=len(self.gates))
        steps = sorted(self.gates + self.decompositions,
                       key=lambda step: (step.level, isinstance(step, DecomposeStep), getattr(step, "index", getattr(step, "first_bit", 0))))
        return Circuit(cs, WiringScript(self.m, len(self.gates), self.n_bits, tuple(steps)))
