import queue
import threading
import time

from Transport.Channel import Transport
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.Exceptions import ProtocolAbort
from Utility.Exceptions import TransportTimeout

_POLL_SECONDS = 0.05


class InMemoryNetwork:
    """
    N parties in one process, one FIFO queue per ordered pair of parties.

    abort() wakes every blocked receiver with ProtocolAbort, so one failing
    party brings the whole simulated run down instead of leaving the others
    waiting for their timeouts.
    """

    def __init__(self, n_parties, timeout=DEFAULT_TIMEOUT):
        if n_parties < 1:
            raise ValueError("a network needs at least one party")
        self.n_parties = n_parties
        self.timeout = timeout
        self._queues = {(src, dst): queue.Queue() for src in range(n_parties) for dst in range(n_parties) if src != dst}
        self._aborted = threading.Event()
        self.abort_reason = None

    def transport(self, party_id):
        return InMemoryTransport(self, party_id)

    def transports(self):
        return [self.transport(party_id) for party_id in range(self.n_parties)]

    def abort(self, reason="aborted"):
        if not self._aborted.is_set():
            self.abort_reason = reason
            self._aborted.set()

    @property
    def aborted(self):
        return self._aborted.is_set()

    def put(self, src, dst, frame):
        if self.aborted:
            raise ProtocolAbort("network aborted: {}".format(self.abort_reason))
        self._queues[(src, dst)].put(frame)

    def get(self, src, dst, timeout):
        deadline = time.monotonic() + timeout
        channel = self._queues[(src, dst)]
        while True:
            if self.aborted:
                raise ProtocolAbort("network aborted: {}".format(self.abort_reason))
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TransportTimeout("party {} waited {}s for party {}".format(dst, timeout, src))
            try:
                return channel.get(timeout=min(_POLL_SECONDS, remaining))
            except queue.Empty:
                continue


class InMemoryTransport(Transport):

    def __init__(self, network, party_id):
        super().__init__(party_id, network.n_parties, timeout=network.timeout)
        self.network = network

    def _send_frame(self, to, label, payload):
        self.network.put(self.party_id, to, (label, payload))

    def _recv_frame(self, sender, timeout):
        return self.network.get(sender, self.party_id, timeout)
