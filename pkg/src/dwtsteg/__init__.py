"""Session-keyed dual-image steganography in Haar wavelet subbands.

Two binary secret images are spread across the HL and HH detail bands of a
grayscale cover with per-bit keyed pseudo-noise patterns, and recovered
blindly by correlation detection given only the key and the secret sizes.
"""

from .codec import (
    DEFAULT_GAIN,
    CapacityError,
    RecoveryReport,
    StegoParams,
    detect_bits,
    embed_message,
    extract,
    hide,
    majority_filter3,
)
from .haar import OddDimensionsError, SubbandSet, forward_haar1, inverse_haar1, quantize
from .metrics import ConstantInputError, MismatchError, ber, pearson, psnr, wavelet_pearson
from .netpbm import (
    BitImage,
    GrayImage,
    PnmParseError,
    flatten_bits,
    parse_pbm,
    parse_pgm,
    unflatten_bits,
    write_pbm,
    write_pgm,
)
from .pn import HH, HL, PnStream, derive_seed, fnv1a64, pn_stream

__version__ = "0.1.0"

__all__ = [
    "BitImage",
    "CapacityError",
    "ConstantInputError",
    "DEFAULT_GAIN",
    "GrayImage",
    "HH",
    "HL",
    "MismatchError",
    "OddDimensionsError",
    "PnStream",
    "PnmParseError",
    "RecoveryReport",
    "StegoParams",
    "SubbandSet",
    "ber",
    "derive_seed",
    "detect_bits",
    "embed_message",
    "extract",
    "flatten_bits",
    "fnv1a64",
    "forward_haar1",
    "hide",
    "inverse_haar1",
    "majority_filter3",
    "parse_pbm",
    "parse_pgm",
    "pearson",
    "pn_stream",
    "psnr",
    "quantize",
    "unflatten_bits",
    "wavelet_pearson",
    "write_pbm",
    "write_pgm",
]
