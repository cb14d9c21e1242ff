"""Session-keyed pseudo-noise source.

One +-1 matrix is drawn per message bit, in bit order, from a SplitMix64
stream seeded by FNV-1a-64 over the key bytes plus a subband domain byte
(0x01 for HL, 0x02 for HH).  Both primitives are defined purely by integer
constants, so any implementation that follows them reproduces the exact
same matrices -- the property the blind extractor relies on.  None of this
is a cryptographic claim.
"""

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF

FNV_OFFSET_BASIS = 14695981039346656037
FNV_PRIME = 1099511628211

# SplitMix64 constants (Steele/Lea/Flood mixer).
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB

HL = "HL"
HH = "HH"
_DOMAIN_BYTE = {HL: b"\x01", HH: b"\x02"}


def fnv1a64(data: bytes) -> int:
    """FNV-1a over the full byte string, reduced modulo 2^64."""
    h = FNV_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def derive_seed(key: bytes, domain: str) -> int:
    """Seed for one subband's stream: FNV-1a-64 of key bytes + domain byte."""
    if not key:
        raise ValueError("session key must be at least one byte")
    if domain not in _DOMAIN_BYTE:
        raise ValueError(f"unknown subband domain: {domain!r}")
    return fnv1a64(bytes(key) + _DOMAIN_BYTE[domain])


class PnStream:
    """Sequential SplitMix64 stream dispensing one +-1 matrix per call.

    Matrices must be drawn in message-bit order; two streams built from the
    same (key, domain) yield bitwise-identical sequences.
    """

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_matrix(self, width: int, height: int) -> np.ndarray:
        """Draw width*height outputs row-major; +1 where the MSB is set."""
        if width <= 0 or height <= 0:
            raise ValueError(f"matrix dimensions must be positive, got {width}x{height}")
        n = width * height
        steps = np.arange(1, n + 1, dtype=np.uint64)
        z = np.uint64(self._state) + steps * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_MULT_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_MULT_2)
        z = z ^ (z >> np.uint64(31))
        self._state = (self._state + n * GOLDEN_GAMMA) & MASK64
        signs = np.where(z >> np.uint64(63), 1.0, -1.0)
        return signs.reshape(height, width)


def pn_stream(key: bytes, domain: str) -> PnStream:
    """The stream a given key drives for one subband."""
    return PnStream(derive_seed(key, domain))
