"""
Length-prefixed binary layout for composite artefacts (proofs, keys, bundles).

Integers are big-endian, scalars are 32-byte little-endian, group elements
use their canonical compressed encoding.
"""

import struct

from Algebra.Curve import ENCODED_SIZE
from Algebra.Curve import GroupElement
from Algebra.Curve import GroupId
from Algebra.Field import SCALAR_BYTES
from Algebra.Field import scalar_from_bytes
from Algebra.Field import scalar_to_bytes
from Utility.Exceptions import DecodingError


class ByteWriter:

    def __init__(self):
        self._parts = []

    def raw(self, data):
        self._parts.append(bytes(data))
        return self

    def u8(self, value):
        return self.raw(struct.pack(">B", value))

    def u16(self, value):
        return self.raw(struct.pack(">H", value))

    def u32(self, value):
        return self.raw(struct.pack(">I", value))

    def scalar(self, value):
        return self.raw(scalar_to_bytes(value))

    def scalars(self, values):
        self.u32(len(values))
        for value in values:
            self.scalar(value)
        return self

    def element(self, element):
        return self.raw(element.to_bytes())

    def elements(self, elements):
        self.u32(len(elements))
        for element in elements:
            self.element(element)
        return self

    def blob(self, data):
        self.u32(len(data))
        return self.raw(data)

    def text(self, value):
        return self.blob(value.encode("utf-8"))

    def getvalue(self):
        return b"".join(self._parts)


class ByteReader:

    def __init__(self, data):
        self._data = bytes(data)
        self._offset = 0

    def raw(self, count):
        if self._offset + count > len(self._data):
            raise DecodingError("unexpected end of data at offset {}".format(self._offset))
        chunk = self._data[self._offset:self._offset + count]
        self._offset += count
        return chunk

    def u8(self):
        return struct.unpack(">B", self.raw(1))[0]

    def u16(self):
        return struct.unpack(">H", self.raw(2))[0]

    def u32(self):
        return struct.unpack(">I", self.raw(4))[0]

    def scalar(self):
        return scalar_from_bytes(self.raw(SCALAR_BYTES))

    def scalars(self):
        return [self.scalar() for _ in range(self.u32())]

    def element(self, group=GroupId.G1):
        return GroupElement.from_bytes(group, self.raw(ENCODED_SIZE[GroupId(group)]))

    def elements(self, group=GroupId.G1):
        return [self.element(group) for _ in range(self.u32())]

    def blob(self):
        return self.raw(self.u32())

    def text(self):
        try:
            return self.blob().decode("utf-8")
        except UnicodeDecodeError as error:
            raise DecodingError("text field is not utf-8") from error

    def remaining(self):
        return len(self._data) - self._offset

    def expect_end(self):
        if self.remaining():
            raise DecodingError("{} trailing bytes".format(self.remaining()))
