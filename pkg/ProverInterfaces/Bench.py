"""
Benchmark harness: one collaborative proof per configuration over
(constraints x parties x commit mode x IPA mode), reported per phase.

A record's ms is the slowest party's wall time for the phase, messages and
bytes are summed over all parties. The verify phase is run once, by the
harness, on the proof of party 0.
"""

import csv
import random
import time
from dataclasses import astuple
from dataclasses import dataclass
from dataclasses import fields

import numpy
import structlog
from tqdm import tqdm

from Algebra.Generators import GeneratorSet
from Bulletproofs.CollaborativeProver import CommitMode
from Bulletproofs.CollaborativeProver import IpaMode
from Bulletproofs.CollaborativeProver import bp_prove_collab
from Bulletproofs.CollaborativeProver import collaborative_demand
from Bulletproofs.Proof import link_key
from Bulletproofs.Prover import ExternalLink
from Bulletproofs.Verifier import bp_verify
from Circuit.Builder import CircuitBuilder
from Commitments.Collaborative import OwnershipMap
from Commitments.Pedersen import commit
from Commitments.Pedersen import setup
from CPLink.CommitmentLink import cplink_keygen
from MPC.Dealer import PreprocessingDemand
from MPC.Dealer import dealer_setup_for
from MPC.SpdzEngine import SpdzEngine
from Transport.Simulation import run_parties
from Transport.Simulation import run_tcp_parties
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.utils import PhaseTimer

log = structlog.get_logger(__name__)

SCHEME = "col-cp-bp"
PHASES = ("commit", "assign", "prove", "link", "verify")


@dataclass
class BenchRecord:
    scheme: str
    n_constraints: int
    n_parties: int
    commit_mode: str
    ipa_mode: str
    phase: str
    ms: float
    messages: int
    bytes: int
    proof_bytes: int
    verify_ok: bool


CSV_HEADER = [f.name for f in fields(BenchRecord)]


@dataclass(frozen=True)
class BenchConfiguration:
    n_constraints: int
    n_parties: int
    commit_mode: CommitMode = CommitMode.CTS
    ipa_mode: IpaMode = IpaMode.LOCAL
    transport: str = "mem"
    m: int = 1


@dataclass
class BenchRun:
    records: list
    proof_bytes: bytes
    multiplications: int
    messages: int


@dataclass
class BenchSetup:
    circuit: object
    gens: GeneratorSet
    ck_ext: object
    link: object
    v: list
    opening: int
    party_seeds: list
    demand: PreprocessingDemand


def synthetic_circuit(n_gates, m=1):
    """
    n_gates independent gates a_L = v_{i mod m} + i, a_R = v_{i+1 mod m} + 1,
    pinned by two linear constraints each. Every v satisfies it.
    """
    if n_gates < 1 or m < 1:
        raise ValueError("synthetic circuit needs at least one gate and one input")
    builder = CircuitBuilder()
    v = builder.alloc_committed(m)
    for i in range(n_gates):
        left = v[i % m] + i
        right = v[(i + 1) % m] + 1
        a_l, a_r, _ = builder.add_mul_gate(left, right)
        builder.add_linear_constraint(a_l - left)
        builder.add_linear_constraint(a_r - right)
    return builder.finalize()


def bench_setup(config, seed, mask_bits=40):
    """
    Everything every party derives from the public seed, in a fixed order:
    circuit, witness of party 0, link keys and the per-party seeds. The dealer
    draws from the same stream afterwards (see bench_bundles).
    """
    rng = random.Random(seed)
    circuit = synthetic_circuit(config.n_constraints, config.m)
    gens = GeneratorSet.derive(circuit.n)
    ck_ext = setup(config.m, "bench/ext")
    v = [rng.getrandbits(64) for _ in range(config.m)]
    opening = rng.getrandbits(255)
    link = cplink_keygen(link_key(gens, config.m), ck_ext, rng)
    party_seeds = [rng.getrandbits(64) for _ in range(config.n_parties)]
    demand = (collaborative_demand(circuit, config.ipa_mode, config.commit_mode, mask_bits) +
              PreprocessingDemand(input_masks=config.m + 1))
    return BenchSetup(circuit, gens, ck_ext, link, v, opening, party_seeds, demand), rng


def bench_bundles(config, seed, mask_bits=40):
    prepared, rng = bench_setup(config, seed, mask_bits)
    if config.n_parties == 1:
        return prepared, None
    return prepared, dealer_setup_for(config.n_parties, prepared.demand, rng)


def bench_party(config, prepared, bundle, transport, mask_bits=40):
    """
    One party's run of a bench configuration.

    Returns:
        (ProverOutput, PhaseTimer, engine multiplications)
    """
    rng = random.Random(prepared.party_seeds[transport.party_id])
    engine = SpdzEngine(transport, bundle, rng=rng, mask_bits=mask_bits)
    timer = PhaseTimer(counter=transport.stats)
    m, leader = config.m, transport.party_id == 0
    commit_mode = CommitMode(config.commit_mode)
    with timer.phase("commit"):
        if commit_mode == CommitMode.STC:
            shares = engine.input_many([m + 1] + [0] * (config.n_parties - 1),
                                       prepared.v + [prepared.opening] if leader else [])[0]
            v_shares, opening_share = shares[:m], shares[m]
        else:
            v_shares = None
            opening_share = engine.input_many([1] + [0] * (config.n_parties - 1), [prepared.opening] if leader else [])[0][0]
    ownership = OwnershipMap.contiguous(m, config.n_parties)
    my_values = {j: prepared.v[j] for j in ownership.owned_by(transport.party_id)}
    output = bp_prove_collab(prepared.circuit, prepared.gens, engine, rng, commit_mode=commit_mode, v_shares=v_shares,
                             ownership=ownership, my_values=my_values,
                             external=ExternalLink(prepared.link.ek, opening_share),
                             ipa_mode=config.ipa_mode, timer=timer)
    return output, timer, engine.multiplications


def verify_bench_output(prepared, output):
    c_hat = commit(prepared.ck_ext, prepared.v, prepared.opening)
    return bp_verify(prepared.circuit.cs, prepared.gens, output.V, output.proof, c_hat=c_hat,
                     link_vk=prepared.link.vk, link_proof=output.link_proof)


def run_configuration(config, seed=0, timeout=DEFAULT_TIMEOUT, mask_bits=40):
    """
    Run one configuration end to end and verify the result.

    Returns:
        BenchRun with one BenchRecord per phase
    """
    prepared, bundles = bench_bundles(config, seed, mask_bits)

    def party(transport):
        return bench_party(config, prepared, bundles[transport.party_id] if bundles else None, transport, mask_bits)

    runner = run_tcp_parties if config.transport == "tcp" else run_parties
    results = runner(config.n_parties, party, timeout=timeout)
    output = results[0][0]
    start = time.perf_counter()
    verify_ok = bool(verify_bench_output(prepared, output))
    verify_ms = (time.perf_counter() - start) * 1000.0
    proof_bytes = output.proof.to_bytes()
    records = []
    for phase in PHASES:
        if phase == "verify":
            ms, messages, sent = verify_ms, 0, 0
        else:
            timers = [timer for _, timer, _ in results]
            ms = float(numpy.max([timer.milliseconds(phase) for timer in timers]))
            counts = [timer.count(phase) for timer in timers if timer.count(phase) is not None]
            messages = int(numpy.sum([c.messages_sent for c in counts])) if counts else 0
            sent = int(numpy.sum([c.bytes_sent for c in counts])) if counts else 0
        records.append(BenchRecord(SCHEME, config.n_constraints, config.n_parties, CommitMode(config.commit_mode).value,
                                   IpaMode(config.ipa_mode).value, phase, round(ms, 3), messages, sent,
                                   len(proof_bytes), verify_ok))
    log.info("bench_configuration_done", n=config.n_constraints, parties=config.n_parties,
             commit=CommitMode(config.commit_mode).value, ipa=IpaMode(config.ipa_mode).value, verify_ok=verify_ok)
    return BenchRun(records, proof_bytes, results[0][2], sum(r.messages for r in records))


def sweep(configs, seed=0, timeout=DEFAULT_TIMEOUT, progress=True):
    records = []
    for config in tqdm(list(configs), desc="bench", disable=not progress):
        records.extend(run_configuration(config, seed=seed, timeout=timeout).records)
    return records


def write_csv(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        row = list(astuple(record))
        row[-1] = "true" if record.verify_ok else "false"
        writer.writerow(row)


def phase_summary(records):
    """
    Mean and median milliseconds per phase over a set of records.
    """
    summary = {}
    for phase in PHASES:
        values = numpy.array([r.ms for r in records if r.phase == phase], dtype=float)
        if values.size:
            summary[phase] = {"mean": float(numpy.mean(values)), "median": float(numpy.median(values))}
    return summary
