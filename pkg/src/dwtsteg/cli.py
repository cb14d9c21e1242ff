"""Command-line front end: hide, extract, and metrics subcommands.

The session key and the secret image sizes are never stored in the stego
file; the operator passes them out of band, exactly as flags here.  Exit
codes: 0 success, 1 usage error, 2 data/format error, 3 capacity or
geometry error.  Stdout carries one key=value line per fact; diagnostics
go to stderr.  Output files are written atomically (temp + rename).
"""

import argparse
import os
import re
import sys
import tempfile
from pathlib import Path

from . import metrics
from .codec import CapacityError, StegoParams, extract, hide
from .haar import OddDimensionsError
from .netpbm import PnmParseError, parse_pbm, parse_pgm, write_pbm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CAPACITY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the CLI contract reserves 2 for
    # data errors, so usage problems must exit 1 instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _size(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"(\d+)x(\d+)", text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected WxH (e.g. 32x32), got {text!r}")
    w, h = int(match.group(1)), int(match.group(2))
    if w == 0 or h == 0:
        raise argparse.ArgumentTypeError(f"size must be positive, got {text}")
    return w, h


def _key_text(text: str) -> bytes:
    if not text:
        raise argparse.ArgumentTypeError("session key must not be empty")
    return text.encode("utf-8")


def _key_hex(text: str) -> bytes:
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid hex key: {text!r}") from None
    if not raw:
        raise argparse.ArgumentTypeError("session key must not be empty")
    return raw


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _pos_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _add_key_flags(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--key", type=_key_text, help="session key as UTF-8 text")
    group.add_argument("--key-hex", type=_key_hex, dest="key_hex", help="session key as hex bytes")


def _session_key(args) -> bytes:
    return args.key if args.key is not None else args.key_hex


def _write_atomic(path: str, data: bytes):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dwtsteg-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _load_image(path: str):
    """PGM or PBM, chosen by magic number."""
    data = Path(path).read_bytes()
    if data[:2] in (b"P1", b"P4"):
        return parse_pbm(data)
    return parse_pgm(data)


def _run_hide(args) -> int:
    cover = parse_pgm(Path(args.cover).read_bytes())
    secret1 = parse_pbm(Path(args.secret1).read_bytes())
    secret2 = parse_pbm(Path(args.secret2).read_bytes())
    params = StegoParams(gain=args.gain)
    stego = hide(cover, secret1, secret2, _session_key(args), params)
    _write_atomic(args.out, write_pgm(stego))
    print(f"secret1={secret1.width}x{secret1.height}")
    print(f"secret2={secret2.width}x{secret2.height}")
    print(f"gain={args.gain:g}")
    print(f"PSNR={metrics.psnr(cover, stego):.4f} dB")
    return EXIT_OK


def _run_extract(args) -> int:
    stego = parse_pgm(Path(args.stego).read_bytes())
    params = StegoParams(
        threshold_factor=args.threshold,
        filter_enabled=not args.no_filter,
    )
    img1, img2, report1, report2 = extract(
        stego, _session_key(args), args.size1, args.size2, params
    )
    _write_atomic(args.out1, write_pbm(img1))
    _write_atomic(args.out2, write_pbm(img2))
    for label, report in (("1", report1), ("2", report2)):
        print(f"mean_correlation{label}={report.mean_correlation:.4f}")
        print(f"used_threshold{label}={report.used_threshold:.4f}")
        for note in report.warnings:
            print(f"warning: secret{label}: {note}", file=sys.stderr)
    return EXIT_OK


def _run_metrics(args) -> int:
    if args.metric == "psnr":
        a = parse_pgm(Path(args.a).read_bytes())
        b = parse_pgm(Path(args.b).read_bytes())
        print(f"psnr={metrics.psnr(a, b):.4f}")
    elif args.metric == "corr":
        a = _load_image(args.a)
        b = _load_image(args.b)
        value = metrics.wavelet_pearson(a, b) if args.wavelet else metrics.pearson(a, b)
        print(f"corr={value:.4f}")
    else:
        a = parse_pbm(Path(args.a).read_bytes())
        b = parse_pbm(Path(args.b).read_bytes())
        print(f"ber={metrics.ber(a, b):.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dwtsteg",
        description="Hide two binary images in the wavelet subbands of a grayscale cover.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_hide = sub.add_parser("hide", help="embed two PBM secrets into a PGM cover")
    p_hide.add_argument("--cover", required=True, help="cover image (PGM)")
    p_hide.add_argument("--secret1", required=True, help="first secret (PBM, goes to HL)")
    p_hide.add_argument("--secret2", required=True, help="second secret (PBM, goes to HH)")
    _add_key_flags(p_hide)
    p_hide.add_argument("--out", required=True, help="stego image to write (PGM)")
    p_hide.add_argument(
        "--gain", type=_nonneg_float, default=StegoParams().gain,
        help="embedding amplification factor (default %(default)s)",
    )
    p_hide.set_defaults(func=_run_hide)

    p_ext = sub.add_parser("extract", help="recover both secrets from a stego PGM")
    p_ext.add_argument("--stego", required=True, help="stego image (PGM)")
    _add_key_flags(p_ext)
    p_ext.add_argument("--size1", required=True, type=_size, help="secret 1 size as WxH")
    p_ext.add_argument("--size2", required=True, type=_size, help="secret 2 size as WxH")
    p_ext.add_argument("--out1", required=True, help="recovered secret 1 (PBM)")
    p_ext.add_argument("--out2", required=True, help="recovered secret 2 (PBM)")
    p_ext.add_argument(
        "--threshold", type=_pos_float, default=1.0,
        help="threshold factor over the mean correlation (default %(default)s)",
    )
    p_ext.add_argument(
        "--no-filter", action="store_true",
        help="skip the 3x3 majority filter on the recovered rasters",
    )
    p_ext.set_defaults(func=_run_extract)

    p_met = sub.add_parser("metrics", help="quality metrics between two images")
    met_sub = p_met.add_subparsers(dest="metric", required=True)

    m_psnr = met_sub.add_parser("psnr", help="PSNR in dB between two PGMs")
    m_psnr.add_argument("--a", required=True)
    m_psnr.add_argument("--b", required=True)
    m_psnr.set_defaults(func=_run_metrics)

    m_corr = met_sub.add_parser("corr", help="Pearson correlation between two images")
    m_corr.add_argument("--a", required=True)
    m_corr.add_argument("--b", required=True)
    m_corr.add_argument(
        "--wavelet", action="store_true",
        help="correlate one-level Haar coefficients instead of pixels",
    )
    m_corr.set_defaults(func=_run_metrics)

    m_ber = met_sub.add_parser("ber", help="bit error rate between two PBMs")
    m_ber.add_argument("--a", required=True)
    m_ber.add_argument("--b", required=True)
    m_ber.set_defaults(func=_run_metrics)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PnmParseError, OSError, metrics.MismatchError, metrics.ConstantInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (CapacityError, OddDimensionsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
