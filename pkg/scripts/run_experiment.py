#!/usr/bin/env python3
"""Embed/extract quality sweep on the reference images.

For each gain, hides both secrets in the cover, measures stego quality
(PSNR), then blind-extracts with the same key and reports how well each
secret survives the quantized round trip: bit error rate before filtering
and Pearson correlation of the filtered raster against the original.
"""

import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dwtsteg import StegoParams, extract, hide, parse_pbm, parse_pgm, pearson, psnr

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


def load(path, parser):
    with open(path, "rb") as fh:
        return parser(fh.read())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cover", default=os.path.join(DATA_DIR, "cover_camera_256.pgm"))
    ap.add_argument("--secret1", default=os.path.join(DATA_DIR, "secret1_disc_32.pbm"))
    ap.add_argument("--secret2", default=os.path.join(DATA_DIR, "secret2_stripes_32.pbm"))
    ap.add_argument("--key", default="session-key")
    ap.add_argument(
        "--gains", type=float, nargs="+",
        default=[0.5, StegoParams().gain, 1.0, 2.0, 4.0],
    )
    args = ap.parse_args()

    cover = load(args.cover, parse_pgm)
    secret1 = load(args.secret1, parse_pbm)
    secret2 = load(args.secret2, parse_pbm)
    key = args.key.encode("utf-8")
    size1 = (secret1.width, secret1.height)
    size2 = (secret2.width, secret2.height)

    print(f"cover={args.cover} ({cover.width}x{cover.height})")
    print(f"secret1={size1[0]}x{size1[1]}  secret2={size2[0]}x{size2[1]}  key={args.key!r}")
    print()
    print(f"{'gain':>6}  {'PSNR[dB]':>9}  {'ber1':>7}  {'ber2':>7}  {'corr1':>7}  {'corr2':>7}")
    for gain in args.gains:
        params = StegoParams(gain=gain)
        stego = hide(cover, secret1, secret2, key, params)
        quality = psnr(cover, stego)
        raw1, raw2, _, _ = extract(
            stego, key, size1, size2, StegoParams(gain=gain, filter_enabled=False)
        )
        fil1, fil2, _, _ = extract(stego, key, size1, size2, params)
        ber1 = float(np.mean(raw1.bits != secret1.bits))
        ber2 = float(np.mean(raw2.bits != secret2.bits))
        corr1 = pearson(secret1, fil1)
        corr2 = pearson(secret2, fil2)
        marker = "  <- default" if gain == StegoParams().gain else ""
        print(
            f"{gain:>6g}  {quality:>9.4f}  {ber1:>7.4f}  {ber2:>7.4f}"
            f"  {corr1:>7.4f}  {corr2:>7.4f}{marker}"
        )


if __name__ == "__main__":
    main()
