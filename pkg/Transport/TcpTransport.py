"""
TCP backend: one socket per pair of parties.

The lower party id listens and the higher one connects, announcing its id in
the first four bytes. Each frame on the wire is

    4-byte big-endian length of the rest
    2-byte tag length, tag (ASCII)
    4-byte round index
    payload

Channels are unauthenticated plain TCP. A deployment needs TLS or an
equivalent authenticated channel between every pair of provers.
"""

import queue
import socket
import struct
import threading
import time

from Transport.Channel import RoundLabel
from Transport.Channel import Transport
from Utility.Configuration import DEFAULT_TIMEOUT
from Utility.Exceptions import ProtocolAbort
from Utility.Exceptions import TransportTimeout

_CLOSED = object()
_RETRY_SECONDS = 0.1


def encode_frame(label, payload):
    tag = label.protocol_tag.encode("ascii")
    body = struct.pack(">H", len(tag)) + tag + struct.pack(">I", label.round_index) + payload
    return struct.pack(">I", len(body)) + body


def decode_frame_body(body):
    (tag_length,) = struct.unpack(">H", body[:2])
    tag = body[2:2 + tag_length].decode("ascii")
    (round_index,) = struct.unpack(">I", body[2 + tag_length:6 + tag_length])
    return RoundLabel(tag, round_index), body[6 + tag_length:]


def _recv_exact(sock, count):
    chunks = []
    while count:
        chunk = sock.recv(count)
        if not chunk:
            raise ConnectionError("peer closed the connection")
        chunks.append(chunk)
        count -= len(chunk)
    return b"".join(chunks)


class TcpTransport(Transport):

    def __init__(self, party_id, addresses, timeout=DEFAULT_TIMEOUT):
        """
        Args:
            party_id (int): own id
            addresses (dict): party id -> PartyAddress for all N parties
            timeout (float): seconds for connection setup and for each receive
        """
        super().__init__(party_id, len(addresses), timeout=timeout)
        self.addresses = addresses
        self._inbox = {peer: queue.Queue() for peer in self.peers}
        self._sockets = {}
        self._send_locks = {peer: threading.Lock() for peer in self.peers}
        self._readers = []
        self._connect()

    def _connect(self):
        me = self.addresses[self.party_id]
        higher = [peer for peer in self.peers if peer > self.party_id]
        lower = [peer for peer in self.peers if peer < self.party_id]
        accept_errors = []
        listener = None
        if higher:
            listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
            listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
            listener.bind((me.host, me.port))
            listener.listen(len(higher))
            listener.settimeout(self.timeout)

            def accept_all():
                try:
                    for _ in higher:
                        connection, _ = listener.accept()
                        connection.settimeout(None)
                        (peer,) = struct.unpack(">I", _recv_exact(connection, 4))
                        self._sockets[peer] = connection
                except (OSError, ConnectionError) as error:
                    accept_errors.append(error)

            acceptor = threading.Thread(target=accept_all, daemon=True)
            acceptor.start()
        deadline = time.monotonic() + self.timeout
        for peer in lower:
            address = self.addresses[peer]
            while True:
                try:
                    connection = socket.create_connection((address.host, address.port), timeout=self.timeout)
                    break
                except OSError:
                    if time.monotonic() > deadline:
                        self.close()
                        raise TransportTimeout("party {} could not reach party {} at {}".format(self.party_id, peer, address.endpoint))
                    time.sleep(_RETRY_SECONDS)
            connection.settimeout(None)
            connection.sendall(struct.pack(">I", self.party_id))
            self._sockets[peer] = connection
        if listener is not None:
            acceptor.join(self.timeout)
            listener.close()
            if accept_errors or len(self._sockets) != len(self.peers):
                self.close()
                raise TransportTimeout("party {} did not hear from every higher party".format(self.party_id))
        for peer, connection in self._sockets.items():
            reader = threading.Thread(target=self._read_loop, args=(peer, connection), daemon=True)
            reader.start()
            self._readers.append(reader)
        self.log.info("tcp_connected", peers=len(self._sockets))

    def _read_loop(self, peer, connection):
        try:
            while True:
                (length,) = struct.unpack(">I", _recv_exact(connection, 4))
                self._inbox[peer].put(decode_frame_body(_recv_exact(connection, length)))
        except (OSError, ConnectionError, struct.error):
            self._inbox[peer].put(_CLOSED)

    def _send_frame(self, to, label, payload):
        try:
            with self._send_locks[to]:
                self._sockets[to].sendall(encode_frame(label, payload))
        except (OSError, KeyError) as error:
            raise ProtocolAbort("sending to party {} failed: {}".format(to, error)) from error

    def _recv_frame(self, sender, timeout):
        try:
            frame = self._inbox[sender].get(timeout=timeout)
        except queue.Empty:
            raise TransportTimeout("party {} waited {}s for party {}".format(self.party_id, timeout, sender))
        if frame is _CLOSED:
            raise ProtocolAbort("party {} closed its connection".format(sender))
        return frame

    def close(self):
        for connection in self._sockets.values():
            try:
                connection.shutdown(socket.SHUT_RDWR)
            except OSError:
                pass
            connection.close()
