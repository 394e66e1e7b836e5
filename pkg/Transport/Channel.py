"""
Transport contract shared by the in-process and the TCP backends.

A protocol asks the transport for the next RoundLabel of a tag, then sends,
receives or broadcasts under it. Every party derives the same label sequence
because every party runs the same program, so a label that does not match on
arrival means the parties took different paths.
"""

from abc import ABC
from abc import abstractmethod
from collections import defaultdict
from dataclasses import dataclass

import structlog

from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.Exceptions import ProtocolDesync

log = structlog.get_logger(__name__)


@dataclass(frozen=True, order=True)
class RoundLabel:
    protocol_tag: str
    round_index: int


@dataclass(frozen=True)
class PartyAddress:
    party_id: int
    host: str
    port: int

    @property
    def endpoint(self):
        return "{}:{}".format(self.host, self.port)


@dataclass
class TrafficStats:
    messages_sent: int = 0
    bytes_sent: int = 0
    broadcasts: int = 0

    def snapshot(self):
        return TrafficStats(self.messages_sent, self.bytes_sent, self.broadcasts)

    def __sub__(self, other):
        return TrafficStats(self.messages_sent - other.messages_sent,
                            self.bytes_sent - other.bytes_sent,
                            self.broadcasts - other.broadcasts)

    def __add__(self, other):
        return TrafficStats(self.messages_sent + other.messages_sent,
                            self.bytes_sent + other.bytes_sent,
                            self.broadcasts + other.broadcasts)


class Transport(ABC):
    """
    One party's handle on the network. Confined to that party's protocol thread.
    """

    def __init__(self, party_id, n_parties, timeout=DEFAULT_TIMEOUT):
        if not 0 <= party_id < n_parties:
            raise ValueError("party id {} outside [0, {})".format(party_id, n_parties))
        self.party_id = party_id
        self.n_parties = n_parties
        self.timeout = timeout
        self._stats = TrafficStats()
        self._next_round = defaultdict(int)
        self._last_received = {}
        self.log = log.bind(party=party_id)

    @property
    def peers(self):
        return [peer for peer in range(self.n_parties) if peer != self.party_id]

    def label(self, tag):
        index = self._next_round[tag]
        self._next_round[tag] = index + 1
        return RoundLabel(tag, index)

    def stats(self):
        return self._stats.snapshot()

    def send(self, to, payload, label):
        if to == self.party_id or not 0 <= to < self.n_parties:
            raise ValueError("party {} cannot send to {}".format(self.party_id, to))
        payload = bytes(payload)
        self._send_frame(to, label, payload)
        self._stats.messages_sent += 1
        self._stats.bytes_sent += len(payload)

    def recv(self, sender, label):
        if sender == self.party_id or not 0 <= sender < self.n_parties:
            raise ValueError("party {} cannot receive from {}".format(self.party_id, sender))
        received_label, payload = self._recv_frame(sender, self.timeout)
        if received_label != label:
            self.log.warning("round_label_mismatch", peer=sender, expected=label, received=received_label)
            raise ProtocolDesync("party {} expected {} from {} but got {}".format(self.party_id, label, sender, received_label))
        key = (sender, label.protocol_tag)
        # a label may carry several messages, but rounds never go backwards
        if key in self._last_received and self._last_received[key] > label.round_index:
            raise ProtocolDesync("round {} of {} from party {} arrived out of order".format(label.round_index, label.protocol_tag, sender))
        self._last_received[key] = label.round_index
        return payload

    def broadcast(self, payload, label):
        """
        Send payload to every peer, then collect one payload from each peer.

        Returns:
            list of bytes ordered by sender id, own payload excluded
        """
        for peer in self.peers:
            self.send(peer, payload, label)
        self._stats.broadcasts += 1
        received = [self.recv(peer, label) for peer in self.peers]
        self.log.debug("broadcast_done", tag=label.protocol_tag, round=label.round_index, size=len(payload))
        return received

    def exchange(self, payload, tag):
        """
        broadcast under the next label of tag, returning all N payloads in party order.
        """
        received = self.broadcast(payload, self.label(tag))
        received.insert(self.party_id, bytes(payload))
        return received

    def close(self):
        pass

    @abstractmethod
    def _send_frame(self, to, label, payload):
        pass

    @abstractmethod
    def _recv_frame(self, sender, timeout):
        pass
