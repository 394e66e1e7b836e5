"""
Fiat-Shamir transcript: a running SHA-256 chain over labeled, length-prefixed
absorptions. Every challenge is absorbed back so later challenges depend on it.
"""

import hashlib
import struct

from Algebra.Field import scalar_to_bytes
from Algebra.Hashing import hash_to_scalar


class Transcript:

    def __init__(self, domain="collaborative-bulletproof"):
        self._state = hashlib.sha256(b"transcript:" + domain.encode("ascii")).digest()
        self.trace = []

    def absorb(self, label, data):
        label = label.encode("ascii")
        self._state = hashlib.sha256(self._state + struct.pack(">H", len(label)) + label +
                                     struct.pack(">I", len(data)) + bytes(data)).digest()

    def absorb_u32(self, label, value):
        self.absorb(label, struct.pack(">I", value))

    def absorb_scalar(self, label, value):
        self.absorb(label, scalar_to_bytes(value))

    def absorb_element(self, label, element):
        self.absorb(label, element.to_bytes())

    def absorb_elements(self, label, elements):
        self.absorb_u32(label + "/count", len(elements))
        for element in elements:
            self.absorb_element(label, element)

    def challenge(self, label):
        value = hash_to_scalar(self._state + b"challenge:" + label.encode("ascii"))
        self.absorb_scalar(label, value)
        self.trace.append((label, value))
        return value

    def state(self):
        return self._state
