"""
Line-oriented topology files:

    # comment
    0 127.0.0.1:9000
    1 127.0.0.1:9001
"""

from Transport.Channel import PartyAddress


def parse_topology(text):
    addresses = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            party, endpoint = line.split()
            host, port = endpoint.rsplit(":", 1)
            address = PartyAddress(int(party), host, int(port))
        except ValueError as error:
            raise ValueError("topology line {} is malformed: {!r}".format(line_number, line)) from error
        if address.party_id in addresses:
            raise ValueError("party {} appears twice in the topology".format(address.party_id))
        addresses[address.party_id] = address
    if sorted(addresses) != list(range(len(addresses))) or not addresses:
        raise ValueError("topology party ids must be exactly 0..N-1, got {}".format(sorted(addresses)))
    return addresses


def load_topology(path):
    with open(path, "r", encoding="utf8") as f:
        return parse_topology(f.read())


def format_topology(addresses):
    return "".join("{} {}\n".format(party, addresses[party].endpoint) for party in sorted(addresses))
