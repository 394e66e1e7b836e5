"""
One party per OS process over TCP.

The dealer writes one bundle file per party for a bench configuration; each
party process loads its bundle, connects to the others through the topology
file and runs the bench script. Everything public is derived from the shared
seed, so the proof is byte-identical to the in-process run with that seed.
"""

import os

import structlog

from MPC.Dealer import PartyBundle
from ProverInterfaces.Bench import bench_bundles
from ProverInterfaces.Bench import bench_party
from ProverInterfaces.Bench import bench_setup
from ProverInterfaces.Bench import verify_bench_output
from Transport.TcpTransport import TcpTransport
from Transport.Topology import load_topology
from Utility.Exceptions import UsageError

log = structlog.get_logger(__name__)

ROLES = ("bench",)


def bundle_path(directory, party_id):
    return os.path.join(directory, "party{}.bundle".format(party_id))


def write_bundles(config, seed, directory, mask_bits=40):
    """
    Returns:
        list of written bundle paths, index = party id
    """
    if config.n_parties < 2:
        raise UsageError("the dealer serves at least two parties")
    _, bundles = bench_bundles(config, seed, mask_bits)
    os.makedirs(directory, exist_ok=True)
    paths = []
    for bundle in bundles:
        path = bundle_path(directory, bundle.party_id)
        bundle.save(path)
        paths.append(path)
    log.info("bundles_written", parties=config.n_parties, directory=directory)
    return paths


def run_party(party_id, topology_path, bundle_file, config, seed, timeout, role="bench", mask_bits=40):
    """
    Run one party of the role script over TCP.

    Returns:
        (ProverOutput, VerificationResult or None). Party 0 re-verifies the proof.
    """
    if role not in ROLES:
        raise UsageError("unknown role {}, known: {}".format(role, ", ".join(ROLES)))
    addresses = load_topology(topology_path)
    if not 0 <= party_id < len(addresses):
        raise UsageError("party id {} outside the {} parties of {}".format(party_id, len(addresses), topology_path))
    if len(addresses) != config.n_parties:
        raise UsageError("topology lists {} parties, configuration expects {}".format(len(addresses), config.n_parties))
    prepared, _ = bench_setup(config, seed, mask_bits)
    bundle = PartyBundle.load(bundle_file) if config.n_parties > 1 else None
    transport = TcpTransport(party_id, addresses, timeout=timeout)
    try:
        output, timer, _ = bench_party(config, prepared, bundle, transport, mask_bits)
    finally:
        transport.close()
    log.info("party_done", party=party_id, **{phase: round(ms, 1) for phase, ms in timer.timings.items()})
    result = verify_bench_output(prepared, output) if party_id == 0 else None
    return output, result
