"""
Run all parties of a protocol as threads of one process.
"""

import socket
import threading
from concurrent.futures import ThreadPoolExecutor

from Transport.Channel import PartyAddress
from Transport.InMemoryTransport import InMemoryNetwork
from Transport.TcpTransport import TcpTransport
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.Exceptions import ProtocolAbort


class _FirstFailure:

    def __init__(self, on_failure):
        self._lock = threading.Lock()
        self.error = None
        self._on_failure = on_failure

    def record(self, error):
        with self._lock:
            # a root cause beats the aborts it triggers in the other parties
            if self.error is None or (type(self.error) is ProtocolAbort and type(error) is not ProtocolAbort):
                self.error = error
        self._on_failure(str(error))


def _run_threads(n_parties, make_transport, party_fn, on_failure):
    failure = _FirstFailure(on_failure)

    def run_one(party_id):
        transport = None
        try:
            transport = make_transport(party_id)
            return party_fn(transport)
        except BaseException as error:
            failure.record(error)
            raise
        finally:
            if transport is not None:
                transport.close()

    with ThreadPoolExecutor(max_workers=n_parties) as pool:
        futures = [pool.submit(run_one, party_id) for party_id in range(n_parties)]
        results = []
        for future in futures:
            try:
                results.append(future.result())
            except BaseException:
                results.append(None)
    if failure.error is not None:
        raise failure.error
    return results


def run_parties(n_parties, party_fn, timeout=DEFAULT_TIMEOUT, network=None):
    """
    Run party_fn(transport) for every party on an in-memory network.

    Args:
        n_parties (int): number of parties N
        party_fn (callable): protocol body, called once per party with its transport
        timeout (float): receive timeout
        network (InMemoryNetwork, optional): reuse an existing network

    Returns:
        list of the N return values ordered by party id

    Raises:
        the first exception raised by any party, after aborting the others
    """
    network = network or InMemoryNetwork(n_parties, timeout=timeout)
    return _run_threads(n_parties, network.transport, party_fn, network.abort)


def free_local_addresses(n_parties, host="127.0.0.1"):
    addresses = {}
    sockets = []
    for party_id in range(n_parties):
        reserved = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        reserved.bind((host, 0))
        sockets.append(reserved)
        addresses[party_id] = PartyAddress(party_id, host, reserved.getsockname()[1])
    for reserved in sockets:
        reserved.close()
    return addresses


def run_tcp_parties(n_parties, party_fn, timeout=DEFAULT_TIMEOUT, addresses=None):
    """
    Same contract as run_parties, but every party talks over localhost TCP.
    """
    addresses = addresses or free_local_addresses(n_parties)
    return _run_threads(n_parties,
                        lambda party_id: TcpTransport(party_id, addresses, timeout=timeout),
                        party_fn,
                        lambda reason: None)
