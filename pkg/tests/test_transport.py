import pytest

from Transport.Channel import RoundLabel
from Transport.InMemoryTransport import InMemoryNetwork
from Transport.Simulation import run_parties
from Transport.Simulation import run_tcp_parties
from Transport.TcpTransport import decode_frame_body
from Transport.TcpTransport import encode_frame
from Transport.Topology import format_topology
from Transport.Topology import parse_topology
from Utility.Exceptions import ProtocolAbort
from Utility.Exceptions import ProtocolDesync
from Utility.Exceptions import TransportTimeout


def test_labels_count_up_per_tag():
    transport = InMemoryNetwork(2).transport(0)
    assert transport.label("open") == RoundLabel("open", 0)
    assert transport.label("open") == RoundLabel("open", 1)
    assert transport.label("input") == RoundLabel("input", 0)


def test_exchange_returns_payloads_in_party_order():
    def party(transport):
        return transport.exchange(bytes([transport.party_id]), "hello")

    results = run_parties(3, party, timeout=5)
    assert all(result == [b"\x00", b"\x01", b"\x02"] for result in results)


def test_traffic_stats_count_sent_messages():
    def party(transport):
        before = transport.stats()
        transport.exchange(b"abcd", "stats")
        return transport.stats() - before

    for delta in run_parties(3, party, timeout=5):
        assert delta.messages_sent == 2
        assert delta.bytes_sent == 8
        assert delta.broadcasts == 1


def test_diverging_parties_raise_desync():
    def party(transport):
        transport.exchange(b"x", "left" if transport.party_id == 0 else "right")

    with pytest.raises(ProtocolDesync):
        run_parties(2, party, timeout=5)


def test_silent_peer_times_out():
    def party(transport):
        if transport.party_id == 1:
            transport.recv(0, transport.label("never"))

    with pytest.raises(TransportTimeout):
        run_parties(2, party, timeout=0.3)


def test_failure_aborts_the_other_parties():
    def party(transport):
        if transport.party_id == 0:
            raise ProtocolAbort("party 0 gives up")
        transport.exchange(b"x", "wait")

    with pytest.raises(ProtocolAbort, match="gives up"):
        run_parties(3, party, timeout=10)


def test_frame_codec():
    label = RoundLabel("mac-open", 3)
    frame = encode_frame(label, b"payload")
    assert decode_frame_body(frame[4:]) == (label, b"payload")


def test_topology_round_trip():
    text = "# provers\n0 127.0.0.1:9000\n1 localhost:9001  # second\n"
    addresses = parse_topology(text)
    assert addresses[1].endpoint == "localhost:9001"
    assert parse_topology(format_topology(addresses)) == addresses


@pytest.mark.parametrize("text", ["0 127.0.0.1:9000\n2 127.0.0.1:9002\n",
                                  "0 127.0.0.1:9000\n0 127.0.0.1:9001\n",
                                  "0 127.0.0.1\n",
                                  ""])
def test_topology_rejects_bad_files(text):
    with pytest.raises(ValueError):
        parse_topology(text)


def test_tcp_parties_exchange():
    def party(transport):
        first = transport.exchange(bytes([transport.party_id]) * 3, "tcp")
        second = transport.exchange(b"done", "tcp")
        return first, second

    results = run_tcp_parties(3, party, timeout=10)
    for first, second in results:
        assert first == [b"\x00" * 3, b"\x01" * 3, b"\x02" * 3]
        assert second == [b"done"] * 3
