"""
Private audit across banks.

Every bank holds k/N signed transactions and publishes a Pedersen vector
commitment c_b to them (embedded as x + 2^(w-1)) under its slice of a common
key. The auditor wants to know that every transaction is a well-formed
w-bit word and that the net sum over all banks reaches a threshold T.

composed     each bank proves its own range checks alone (N = 1, no MPC) and
             links them to c_b, then all banks jointly prove only the sum
             threshold, linked to prod_b c_b
monolithic   all banks jointly prove everything in one circuit, linked to
             prod_b c_b

The link ties prod_j V_j to the external commitment through sum_j v_j only,
so a bank's range proof constrains the values behind its own V_j and their
sum, not each transaction slot of c_b separately.
"""

import random
import time
from dataclasses import dataclass
from dataclasses import field

import structlog

from Algebra.Field import P
from Algebra.Generators import GeneratorSet
from Bulletproofs.CollaborativeProver import CommitMode
from Bulletproofs.CollaborativeProver import IpaMode
from Bulletproofs.CollaborativeProver import bp_prove_collab
from Bulletproofs.CollaborativeProver import collaborative_demand
from Bulletproofs.Proof import link_key
from Bulletproofs.Prover import ExternalLink
from Bulletproofs.Verifier import bp_verify
from Circuit.Builder import CircuitBuilder
from Circuit.Gadgets import embed_signed
from Circuit.Gadgets import embed_threshold
from Circuit.Gadgets import range_check
from Circuit.Gadgets import sum_threshold
from Circuit.Gadgets import sum_width
from Commitments.Collaborative import OwnershipMap
from Commitments.Pedersen import commit
from Commitments.Pedersen import product
from Commitments.Pedersen import setup
from CPLink.CommitmentLink import cplink_keygen
from MPC.Dealer import PreprocessingDemand
from MPC.Dealer import dealer_setup_for
from MPC.SpdzEngine import SpdzEngine
from ProverInterfaces.Bench import BenchRecord
from Transport.Simulation import run_parties
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.utils import PhaseTimer

log = structlog.get_logger(__name__)

MODES = ("composed", "monolithic")


@dataclass(frozen=True)
class AuditScenario:
    transactions: tuple
    threshold: int
    value_bits: int = 64

    @property
    def banks(self):
        return len(self.transactions)

    @property
    def k(self):
        return sum(len(bank) for bank in self.transactions)

    @property
    def total(self):
        return sum(sum(bank) for bank in self.transactions)

    @property
    def satisfiable(self):
        return self.total >= self.threshold

    def validate(self):
        if self.banks < 1 or any(len(bank) < 1 for bank in self.transactions):
            raise ValueError("every bank needs at least one transaction")
        bound = self.k * (1 << (self.value_bits - 1))
        if not -bound <= self.threshold <= bound:
            raise ValueError("threshold {} outside the representable range +-{}".format(self.threshold, bound))
        for bank in self.transactions:
            for x in bank:
                embed_signed(x, self.value_bits)

    def embedded(self, bank):
        return [embed_signed(x, self.value_bits) for x in self.transactions[bank]]

    @property
    def embedded_threshold(self):
        return embed_threshold(self.threshold, self.k, self.value_bits)

    @classmethod
    def generate(cls, banks, tx, rng, threshold=None, margin=1, value_bits=64, magnitude=1000):
        """
        Random scenario with tx transactions split evenly over banks. Without
        an explicit threshold, T = sum - margin.
        """
        if banks < 1 or tx < banks or tx % banks:
            raise ValueError("{} transactions cannot be split evenly over {} banks".format(tx, banks))
        transactions = tuple(tuple(rng.randint(-magnitude, magnitude) for _ in range(tx // banks)) for _ in range(banks))
        total = sum(sum(bank) for bank in transactions)
        return cls(transactions, total - margin if threshold is None else threshold, value_bits)


@dataclass
class AuditReport:
    mode: str
    accepted: bool
    records: list = field(default_factory=list)
    multiplications: int = 0
    messages: int = 0
    sum_gates: int = 0


@dataclass(frozen=True)
class AuditKeys:
    ck: object
    slots: tuple

    def bank_key(self, bank):
        return self.ck.sub_key(self.slots[bank])


def range_circuit(m, value_bits):
    builder = CircuitBuilder()
    for value in builder.alloc_committed(m):
        range_check(builder, value, value_bits)
    return builder.finalize()


def sum_circuit(k, threshold, value_bits, with_ranges=False):
    builder = CircuitBuilder()
    values = builder.alloc_committed(k)
    if with_ranges:
        for value in values:
            range_check(builder, value, value_bits)
    sum_threshold(builder, values, threshold, sum_width(k, value_bits))
    return builder.finalize()


def _records(scheme, n_constraints, n_parties, timers, proof_bytes, verify_ok, verify_ms):
    records = []
    for phase in ("commit", "assign", "prove", "link"):
        counts = [t.count(phase) for t in timers if t.count(phase) is not None]
        records.append(BenchRecord(scheme, n_constraints, n_parties, CommitMode.CTS.value, IpaMode.LOCAL.value, phase,
                                   round(max(t.milliseconds(phase) for t in timers), 3),
                                   sum(c.messages_sent for c in counts), sum(c.bytes_sent for c in counts),
                                   proof_bytes, verify_ok))
    records.append(BenchRecord(scheme, n_constraints, n_parties, CommitMode.CTS.value, IpaMode.LOCAL.value, "verify",
                               round(verify_ms, 3), 0, 0, proof_bytes, verify_ok))
    return records


def _prove_jointly(circuit, gens, link, values, openings, seed, timeout, mask_bits):
    """
    The banks as one prover group: bank b owns the slots of its values and
    inputs its opening; the external opening is the sum of all bank openings.

    Returns:
        (ProverOutput, timers, multiplications, messages)
    """
    rng = random.Random(seed)
    n_parties = len(values)
    slots, start = {}, 0
    for bank, bank_values in enumerate(values):
        slots[bank] = tuple(range(start, start + len(bank_values)))
        start += len(bank_values)
    ownership = OwnershipMap(slots)
    demand = collaborative_demand(circuit, IpaMode.LOCAL, CommitMode.CTS, mask_bits) + PreprocessingDemand(input_masks=1)
    bundles = dealer_setup_for(n_parties, demand, rng) if n_parties > 1 else None
    party_seeds = [rng.getrandbits(64) for _ in range(n_parties)]

    def party(transport):
        bank = transport.party_id
        party_rng = random.Random(party_seeds[bank])
        engine = SpdzEngine(transport, bundles[bank] if bundles else None, rng=party_rng, mask_bits=mask_bits)
        timer = PhaseTimer(counter=transport.stats)
        with timer.phase("commit"):
            inputs = engine.input_many([1] * n_parties, [openings[bank]])
            opening_share = engine.sum([shares[0] for shares in inputs])
        my_values = dict(zip(ownership.owned_by(bank), values[bank]))
        output = bp_prove_collab(circuit, gens, engine, party_rng, commit_mode=CommitMode.CTS, ownership=ownership,
                                 my_values=my_values, external=ExternalLink(link.ek, opening_share), timer=timer)
        return output, timer, engine.multiplications, transport.stats().messages_sent

    results = run_parties(n_parties, party, timeout=timeout)
    return results[0][0], [r[1] for r in results], results[0][2], sum(r[3] for r in results)


def _verify(circuit, gens, output, c_hat, link):
    start = time.perf_counter()
    result = bp_verify(circuit.cs, gens, output.V, output.proof, c_hat=c_hat, link_vk=link.vk, link_proof=output.link_proof)
    return result, (time.perf_counter() - start) * 1000.0


def _bank_commitments(scenario, keys, rng):
    openings = [rng.randrange(P) for _ in range(scenario.banks)]
    commitments = [commit(keys.bank_key(b), scenario.embedded(b), openings[b]) for b in range(scenario.banks)]
    return openings, commitments


def audit_keys(scenario):
    slots, start = [], 0
    for bank in scenario.transactions:
        slots.append(tuple(range(start, start + len(bank))))
        start += len(bank)
    return AuditKeys(setup(scenario.k, "audit/tx"), tuple(slots))


def run_composed(scenario, seed=0, timeout=DEFAULT_TIMEOUT, mask_bits=40):
    """
    Local range proofs per bank, then one collaborative sum-threshold proof.
    """
    rng = random.Random(seed)
    keys = audit_keys(scenario)
    openings, commitments = _bank_commitments(scenario, keys, rng)
    report = AuditReport("composed", True)
    # the banks' local range proofs are reported as one total
    local_timer, local_gates, local_bytes, local_verify_ms = PhaseTimer(), 0, 0, 0.0
    for bank in range(scenario.banks):
        values = scenario.embedded(bank)
        circuit = range_circuit(len(values), scenario.value_bits)
        gens = GeneratorSet.derive(circuit.n, prefix="audit/bp")
        link = cplink_keygen(link_key(gens, len(values)), keys.bank_key(bank), rng)
        output, timers, _, _ = _prove_jointly(circuit, gens, link, [values], [openings[bank]], rng.getrandbits(64),
                                              timeout, mask_bits)
        result, verify_ms = _verify(circuit, gens, output, commitments[bank], link)
        report.accepted &= result.ok
        local_timer.merge(timers[0])
        local_gates += circuit.cs.n_used
        local_bytes += len(output.proof.to_bytes())
        local_verify_ms += verify_ms
        log.info("bank_proof_done", bank=bank, gates=circuit.cs.n_used, verify_ok=result.ok)
    report.records.extend(_records("audit-composed-local", local_gates, 1, [local_timer], local_bytes, report.accepted,
                                   local_verify_ms))

    circuit = sum_circuit(scenario.k, scenario.embedded_threshold, scenario.value_bits)
    gens = GeneratorSet.derive(circuit.n, prefix="audit/bp")
    link = cplink_keygen(link_key(gens, scenario.k), keys.ck, rng)
    output, timers, multiplications, messages = _prove_jointly(
        circuit, gens, link, [scenario.embedded(b) for b in range(scenario.banks)], openings, rng.getrandbits(64),
        timeout, mask_bits)
    result, verify_ms = _verify(circuit, gens, output, product(commitments), link)
    report.accepted &= result.ok
    report.records.extend(_records("audit-composed-sum", circuit.cs.n_used, scenario.banks, timers,
                                   len(output.proof.to_bytes()), result.ok, verify_ms))
    report.multiplications, report.messages, report.sum_gates = multiplications, messages, circuit.cs.n_used
    return report


def run_monolithic(scenario, seed=0, timeout=DEFAULT_TIMEOUT, mask_bits=40):
    """
    One collaborative proof of every range check and the sum threshold.
    """
    rng = random.Random(seed)
    keys = audit_keys(scenario)
    openings, commitments = _bank_commitments(scenario, keys, rng)
    circuit = sum_circuit(scenario.k, scenario.embedded_threshold, scenario.value_bits, with_ranges=True)
    gens = GeneratorSet.derive(circuit.n, prefix="audit/bp")
    link = cplink_keygen(link_key(gens, scenario.k), keys.ck, rng)
    output, timers, multiplications, messages = _prove_jointly(
        circuit, gens, link, [scenario.embedded(b) for b in range(scenario.banks)], openings, rng.getrandbits(64),
        timeout, mask_bits)
    result, verify_ms = _verify(circuit, gens, output, product(commitments), link)
    report = AuditReport("monolithic", result.ok, multiplications=multiplications, messages=messages,
                         sum_gates=circuit.cs.n_used)
    report.records.extend(_records("audit-monolithic", circuit.cs.n_used, scenario.banks, timers,
                                   len(output.proof.to_bytes()), result.ok, verify_ms))
    return report


def run_audit(scenario, mode="composed", seed=0, timeout=DEFAULT_TIMEOUT, mask_bits=40):
    """
    Raises:
        UnsatisfiedAssignment: the transactions do not reach the threshold
    """
    if mode not in MODES:
        raise ValueError("audit mode must be one of {}".format(", ".join(MODES)))
    scenario.validate()
    log.info("audit_start", mode=mode, banks=scenario.banks, k=scenario.k, threshold=scenario.threshold)
    runner = run_composed if mode == "composed" else run_monolithic
    return runner(scenario, seed=seed, timeout=timeout, mask_bits=mask_bits)
