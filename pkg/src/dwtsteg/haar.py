"""One-level 2-D orthonormal Haar transform.

The 1-D step maps a pair (a, b) to ((a+b)/sqrt2, (a-b)/sqrt2); applying it
along rows and then columns turns each 2x2 pixel block [[a, b], [c, d]] into

    LL = (a+b+c+d)/2    HL = (a-b+c-d)/2
    LH = (a+b-c-d)/2    HH = (a-b-c+d)/2

where HL is the highpass-along-rows (vertical edge) band.  The filters are
orthonormal, so the transform conserves energy and inverts exactly in float
arithmetic, which is what makes the zero-gain embedding path lossless.
"""

from dataclasses import dataclass

import numpy as np

from .netpbm import GrayImage


class OddDimensionsError(ValueError):
    """Raster has an odd width or height; the transform needs 2x2 blocks."""


@dataclass
class SubbandSet:
    """The four subbands of one decomposition level, each (h/2, w/2) float64."""

    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray

    def __post_init__(self):
        self.ll = np.asarray(self.ll, dtype=np.float64)
        self.lh = np.asarray(self.lh, dtype=np.float64)
        self.hl = np.asarray(self.hl, dtype=np.float64)
        self.hh = np.asarray(self.hh, dtype=np.float64)
        shapes = {self.ll.shape, self.lh.shape, self.hl.shape, self.hh.shape}
        if len(shapes) != 1 or self.ll.ndim != 2:
            raise ValueError(f"subbands must be identically shaped 2-D matrices, got {sorted(shapes)}")


def _as_matrix(img) -> np.ndarray:
    if isinstance(img, GrayImage):
        return img.pixels()
    return np.asarray(img, dtype=np.float64)


def forward_haar1(img) -> SubbandSet:
    """Decompose a GrayImage (or real 2-D matrix) into LL/LH/HL/HH.

    Raises `OddDimensionsError` for odd widths or heights; nothing is padded
    because padding would silently change the stego geometry.
    """
    x = _as_matrix(img)
    h, w = x.shape
    if h % 2 or w % 2:
        raise OddDimensionsError(f"dimensions must be even, got {w}x{h}")
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    return SubbandSet(
        ll=(a + b + c + d) / 2.0,
        lh=(a + b - c - d) / 2.0,
        hl=(a - b + c - d) / 2.0,
        hh=(a - b - c + d) / 2.0,
    )


def inverse_haar1(bands: SubbandSet) -> np.ndarray:
    """Exact inverse of `forward_haar1`; output is 2x the subband size."""
    ll, lh, hl, hh = bands.ll, bands.lh, bands.hl, bands.hh
    h, w = ll.shape
    out = np.empty((2 * h, 2 * w), dtype=np.float64)
    out[0::2, 0::2] = (ll + lh + hl + hh) / 2.0
    out[0::2, 1::2] = (ll + lh - hl - hh) / 2.0
    out[1::2, 0::2] = (ll - lh + hl - hh) / 2.0
    out[1::2, 1::2] = (ll - lh - hl + hh) / 2.0
    return out


def quantize(m: np.ndarray) -> GrayImage:
    """Round half away from zero, clamp to [0, 255], return an 8-bit image."""
    m = np.asarray(m, dtype=np.float64)
    rounded = np.sign(m) * np.floor(np.abs(m) + 0.5)
    return GrayImage(np.clip(rounded, 0, 255).astype(np.uint8))
