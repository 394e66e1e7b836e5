from dataclasses import dataclass

from Algebra.Hashing import hash_to_g1


@dataclass(frozen=True)
class GeneratorSet:
    """
    Bulletproof generators: g, h for scalar commitments and the vectors
    g_vec, h_vec of length n. Every element comes from its own domain tag.
    """
    g: object
    h: object
    g_vec: tuple
    h_vec: tuple

    @property
    def n(self):
        return len(self.g_vec)

    @classmethod
    def derive(cls, n, prefix="bp"):
        if n < 1:
            raise ValueError("generator vectors need length at least 1")
        return cls(g=hash_to_g1("{}/g".format(prefix)),
                   h=hash_to_g1("{}/h".format(prefix)),
                   g_vec=tuple(hash_to_g1("{}/g/{}".format(prefix, i)) for i in range(n)),
                   h_vec=tuple(hash_to_g1("{}/h/{}".format(prefix, i)) for i in range(n)))

    def truncated(self, n):
        if n > self.n:
            raise ValueError("generator set of length {} cannot serve n = {}".format(self.n, n))
        return GeneratorSet(self.g, self.h, self.g_vec[:n], self.h_vec[:n])
