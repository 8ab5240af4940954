"""Counter-based streams of open-interval uniforms.

A stream is a Philox-4x64 counter generator keyed by ``(seed, stream_id)``:
the 128-bit key is ``stream_id << 64 | seed``. Raw 64-bit outputs are
consumed strictly in order, so draw ``i`` of a sampler that needs ``m``
uniforms per draw always reads outputs ``i*m .. i*m + m - 1``; asking for
more draws never changes earlier ones.

Each 64-bit output keeps its top 52 bits ``k`` and maps to
``(k + 0.5) * 2**-52``. The result is exactly representable and lies in
``[2**-53, 1 - 2**-53]``, so neither 0 nor 1 can occur.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 20240917
_SCALE = 2.0**-52
_U64 = 1 << 64


def to_open_unit(raw: np.ndarray) -> np.ndarray:
    return ((raw >> np.uint64(12)).astype(np.float64) + 0.5) * _SCALE


class UniformStream:
    def __init__(self, seed: int = DEFAULT_SEED, stream_id: int = 0):
        if not 0 <= seed < _U64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        if not 0 <= stream_id < _U64:
            raise ValueError(f"stream_id must be an unsigned 64-bit integer, got {stream_id}")
        self.seed = seed
        self.stream_id = stream_id
        self._bitgen = np.random.Philox(key=(stream_id << 64) | seed)
        self.consumed = 0

    def uniforms(self, count: int) -> np.ndarray:
        raw = self._bitgen.random_raw(count)
        self.consumed += count
        return to_open_unit(np.asarray(raw, dtype=np.uint64))

    def block(self, n: int, m: int) -> np.ndarray:
        """Next ``n`` rows of ``m`` uniforms each, C-contiguous."""
        return self.uniforms(n * m).reshape(n, m)
