"""Stego quality metrics: PSNR in dB, Pearson correlation, bit-error rate."""

import math

import numpy as np

from . import haar


class MismatchError(ValueError):
    """Inputs have different lengths or dimensions."""


class ConstantInputError(ValueError):
    """Correlation is undefined because an input has zero variance."""


def _flat(v) -> np.ndarray:
    arr = v
    if hasattr(arr, "samples"):
        arr = arr.samples
    elif hasattr(arr, "bits"):
        arr = arr.bits
    return np.asarray(arr, dtype=np.float64).ravel()


def psnr(a, b) -> float:
    """10*log10(255^2 / MSE); +inf for identical images.

    Peak is fixed at 255 regardless of content (8-bit rasters only).
    """
    x = _flat(a)
    y = _flat(b)
    if x.size != y.size:
        raise MismatchError(f"image sizes differ: {x.size} vs {y.size}")
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def pearson(x, y) -> float:
    """Standard Pearson correlation coefficient of two equal-length vectors."""
    xv = _flat(x)
    yv = _flat(y)
    if xv.size != yv.size:
        raise MismatchError(f"vector lengths differ: {xv.size} vs {yv.size}")
    if xv.size < 2:
        raise MismatchError("correlation needs at least 2 points")
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    denom = math.sqrt(float(dx @ dx)) * math.sqrt(float(dy @ dy))
    if denom == 0.0:
        raise ConstantInputError("correlation undefined: constant input vector")
    return float(dx @ dy) / denom


def ber(a, b) -> float:
    """Fraction of positions where two bit vectors disagree."""
    x = _flat(a)
    y = _flat(b)
    if x.size != y.size:
        raise MismatchError(f"vector lengths differ: {x.size} vs {y.size}")
    if x.size == 0:
        raise MismatchError("bit vectors must be non-empty")
    return float(np.mean(x != y))


def wavelet_pearson(a, b) -> float:
    """Pearson correlation computed between one-level Haar coefficient sets.

    Optional variant of the plain pixel-domain correlation; both images must
    have even dimensions.
    """
    ba = haar.forward_haar1(_to_matrix(a))
    bb = haar.forward_haar1(_to_matrix(b))
    ca = np.concatenate([ba.ll.ravel(), ba.lh.ravel(), ba.hl.ravel(), ba.hh.ravel()])
    cb = np.concatenate([bb.ll.ravel(), bb.lh.ravel(), bb.hl.ravel(), bb.hh.ravel()])
    return pearson(ca, cb)


def _to_matrix(v) -> np.ndarray:
    if hasattr(v, "samples"):
        return v.samples.astype(np.float64)
    if hasattr(v, "bits"):
        return v.bits.astype(np.float64)
    return np.asarray(v, dtype=np.float64)
