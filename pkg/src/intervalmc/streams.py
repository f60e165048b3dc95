"""Seeded, splittable random streams built on numpy's Philox generator."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class RandomStream:
    """A reproducible variate stream identified by ``(seed, stream_id)``.

    The same pair always yields the same sequence.  Distinct ids (and the
    children handed out by :meth:`substream`) map to distinct
    ``SeedSequence`` spawn keys and are independent for practical purposes.
    A stream is single-owner: share it between threads only through
    substreams.
    """

    def __init__(self, seed: int, stream_id: int = 0, _path: tuple[int, ...] = ()):
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        self._path = tuple(_path)
        self._gen: np.random.Generator | None = None

    def __repr__(self):
        path = "".join(f"/{k}" for k in self._path)
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id}{path})"

    def generator(self) -> np.random.Generator:
        if self._gen is None:
            ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self._path))
            self._gen = np.random.Generator(np.random.Philox(ss))
        return self._gen

    def substream(self, k: int) -> "RandomStream":
        return RandomStream(self.seed, self.stream_id, (*self._path, int(k)))
