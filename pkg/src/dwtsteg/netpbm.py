"""Bit-exact netpbm codecs for the raster types used throughout the pipeline.

Grayscale images travel as PGM (binary P5 or ASCII P2, maxval <= 255) and
binary images as PBM (packed P4 or ASCII P1).  Readers accept '#' comments
and any whitespace between header tokens; writers always emit the canonical
binary form (P5 / P4), so write -> parse -> write is byte-identical.

Readers never consume more than the declared sample count: trailing bytes
after the raster are ignored, missing bytes raise `PnmParseError`.
"""

from dataclasses import dataclass

import numpy as np

_WHITESPACE = b" \t\n\r\v\f"


class PnmParseError(ValueError):
    """Malformed PGM/PBM input; `offset` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(eq=False)
class GrayImage:
    """8-bit grayscale raster, stored as a (height, width) uint8 array."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("GrayImage needs a non-empty 2-D sample array")
        if arr.dtype != np.uint8:
            if not (np.issubdtype(arr.dtype, np.integer) and arr.min() >= 0 and arr.max() <= 255):
                raise ValueError("GrayImage samples must be integers in [0, 255]")
            arr = arr.astype(np.uint8)
        self.samples = arr

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    def pixels(self) -> np.ndarray:
        """Samples as float64, the working dtype of the transform stages."""
        return self.samples.astype(np.float64)

    def __eq__(self, other):
        return (
            isinstance(other, GrayImage)
            and self.samples.shape == other.samples.shape
            and np.array_equal(self.samples, other.samples)
        )


@dataclass(eq=False)
class BitImage:
    """Binary raster, stored as a (height, width) uint8 array of 0/1 values.

    Bit value 1 is PBM black; the embedding stage keys off bit value 0.
    """

    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("BitImage needs a non-empty 2-D bit array")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("BitImage entries must be 0 or 1")
        self.bits = arr.astype(np.uint8)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, BitImage)
            and self.bits.shape == other.bits.shape
            and np.array_equal(self.bits, other.bits)
        )


class _TokenReader:
    """Whitespace/comment-aware scanner over a netpbm header."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_filler(self):
        data = self.data
        while self.pos < len(data):
            byte = data[self.pos : self.pos + 1]
            if byte in (b"#",):
                while self.pos < len(data) and data[self.pos : self.pos + 1] not in (b"\n", b"\r"):
                    self.pos += 1
            elif byte in _WHITESPACE:
                self.pos += 1
            else:
                return

    def at_end(self) -> bool:
        self.skip_filler()
        return self.pos >= len(self.data)

    def token(self, what: str) -> bytes:
        self.skip_filler()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            if self.data[self.pos : self.pos + 1] == b"#":
                break
            self.pos += 1
        if self.pos == start:
            raise PnmParseError(f"missing {what}", start)
        return self.data[start : self.pos]

    def unsigned(self, what: str) -> int:
        self.skip_filler()
        start = self.pos
        tok = self.token(what)
        if not tok.isdigit():
            raise PnmParseError(f"{what} is not an unsigned integer: {tok!r}", start)
        return int(tok)

    def raster_separator(self):
        # Exactly one whitespace byte separates the header from a binary raster.
        if self.pos >= len(self.data) or self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise PnmParseError("expected single whitespace before raster", self.pos)
        self.pos += 1


def parse_pgm(data: bytes) -> GrayImage:
    """Decode a P5 (binary) or P2 (ASCII) PGM with maxval <= 255.

    Raises `PnmParseError` for a bad magic number, maxval outside [1, 255],
    truncated raster data, or a sample above maxval.
    """
    reader = _TokenReader(bytes(data))
    magic = reader.token("magic number")
    if magic not in (b"P5", b"P2"):
        raise PnmParseError(f"not a PGM magic number: {magic!r}", 0)
    width = reader.unsigned("width")
    height = reader.unsigned("height")
    if width == 0 or height == 0:
        raise PnmParseError("zero image dimension", reader.pos)
    reader.skip_filler()
    maxval_at = reader.pos
    maxval = reader.unsigned("maxval")
    if maxval > 255:
        raise PnmParseError(f"maxval {maxval} exceeds 255 (16-bit PGM unsupported)", maxval_at)
    if maxval == 0:
        raise PnmParseError("maxval must be positive", maxval_at)
    count = width * height

    if magic == b"P5":
        reader.raster_separator()
        raster_start = reader.pos
        raster = reader.data[raster_start : raster_start + count]
        if len(raster) < count:
            raise PnmParseError(
                f"truncated raster: expected {count} samples, found {len(raster)}",
                len(reader.data),
            )
        samples = np.frombuffer(raster, dtype=np.uint8)
        over = samples > maxval
        if over.any():
            offset = raster_start + int(np.argmax(over))
            raise PnmParseError(f"sample exceeds maxval {maxval}", offset)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            if reader.at_end():
                raise PnmParseError(
                    f"truncated raster: expected {count} samples, found {i}", reader.pos
                )
            at = reader.pos
            value = reader.unsigned("sample")
            if value > maxval:
                raise PnmParseError(f"sample {value} exceeds maxval {maxval}", at)
            values[i] = value
        samples = values

    return GrayImage(samples.reshape(height, width))


def write_pgm(img: GrayImage) -> bytes:
    """Serialize to canonical P5: ``P5\\n<w> <h>\\n255\\n`` + raw samples."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.samples.tobytes()


def parse_pbm(data: bytes) -> BitImage:
    """Decode a P4 (packed) or P1 (ASCII) PBM; bit 1 is black.

    P4 rows are padded to a byte boundary, most significant bit first.
    P1 rasters may pack digits with or without separating whitespace.
    """
    reader = _TokenReader(bytes(data))
    magic = reader.token("magic number")
    if magic not in (b"P4", b"P1"):
        raise PnmParseError(f"not a PBM magic number: {magic!r}", 0)
    width = reader.unsigned("width")
    height = reader.unsigned("height")
    if width == 0 or height == 0:
        raise PnmParseError("zero image dimension", reader.pos)

    if magic == b"P4":
        reader.raster_separator()
        row_bytes = (width + 7) // 8
        need = row_bytes * height
        raster = reader.data[reader.pos : reader.pos + need]
        if len(raster) < need:
            raise PnmParseError(
                f"truncated raster: expected {need} row bytes, found {len(raster)}",
                len(reader.data),
            )
        packed = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(packed, axis=1)[:, :width]
    else:
        flat = np.empty(width * height, dtype=np.uint8)
        filled = 0
        data_ = reader.data
        while filled < flat.size:
            if reader.at_end():
                raise PnmParseError(
                    f"truncated raster: expected {flat.size} bits, found {filled}", reader.pos
                )
            byte = data_[reader.pos : reader.pos + 1]
            if byte not in (b"0", b"1"):
                raise PnmParseError(f"P1 raster token is not 0 or 1: {byte!r}", reader.pos)
            flat[filled] = byte == b"1"
            filled += 1
            reader.pos += 1
        bits = flat.reshape(height, width)

    return BitImage(bits)


def write_pbm(img: BitImage) -> bytes:
    """Serialize to canonical P4: ``P4\\n<w> <h>\\n`` + MSB-first packed rows."""
    header = f"P4\n{img.width} {img.height}\n".encode("ascii")
    packed = np.packbits(img.bits, axis=1)
    return header + packed.tobytes()


def flatten_bits(img: BitImage) -> np.ndarray:
    """Row-major 1-D bit vector of the raster (the embedding message)."""
    return img.bits.ravel().copy()


def unflatten_bits(v, width: int, height: int) -> BitImage:
    """Reshape a row-major bit vector back into a raster of the given size."""
    vec = np.asarray(v)
    if vec.size != width * height:
        raise ValueError(f"bit vector length {vec.size} != {width}x{height}")
    return BitImage(vec.reshape(height, width))
