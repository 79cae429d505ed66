"""Splittable deterministic random streams.

Every random choice in the package flows from one integer seed.  A stream is
identified by the seed plus a path of names; children are derived by hashing,
so the values drawn by one stage never depend on how many values another
stage consumed.  Output is a pure function of (seed, path), independent of
the Python version.
"""

import hashlib


class SeedStream:
    __slots__ = ("seed", "path", "_counter", "_buf")

    def __init__(self, seed=0, path=()):
        self.seed = int(seed)
        self.path = tuple(str(p) for p in path)
        self._counter = 0
        self._buf = b""

    def child(self, *names):
        return SeedStream(self.seed, self.path + tuple(str(n) for n in names))

    def _refill(self):
        h = hashlib.sha256()
        h.update(b"shortmodels/v1\0")
        h.update(str(self.seed).encode())
        for p in self.path:
            h.update(b"\0" + p.encode())
        h.update(b"\0#" + str(self._counter).encode())
        self._counter += 1
        self._buf += h.digest()

    def _bits(self, k):
        nbytes = (k + 7) // 8
        while len(self._buf) < nbytes:
            self._refill()
        chunk, self._buf = self._buf[:nbytes], self._buf[nbytes:]
        return int.from_bytes(chunk, "little") & ((1 << k) - 1)

    def randbelow(self, n):
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow needs n > 0")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        while True:
            v = self._bits(k)
            if v < n:
                return v

    def randint(self, lo, hi):
        """Uniform integer in the closed range [lo, hi]."""
        return lo + self.randbelow(hi - lo + 1)

    def __repr__(self):
        return f"SeedStream({self.seed}, {'/'.join(self.path) or '.'})"
