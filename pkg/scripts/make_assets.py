#!/usr/bin/env python3
"""Regenerate the reference images under data/.

Cover: the classic 512x512 'camera' test image (bundled with scikit-image),
block-averaged down to 256x256 and written as canonical P5.  Secrets: two
deterministic 32x32 binary rasters whose features are chunky enough to
survive a 3x3 majority vote.  Output is byte-stable, so re-running this
script never dirties the checked-in files.
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dwtsteg import BitImage, GrayImage, write_pbm, write_pgm

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


def make_cover() -> GrayImage:
    from skimage import data

    full = data.camera().astype(np.float64)
    halved = (full[0::2, 0::2] + full[0::2, 1::2] + full[1::2, 0::2] + full[1::2, 1::2]) / 4.0
    return GrayImage(np.floor(halved + 0.5).astype(np.uint8))


def make_secret_disc(side: int = 32) -> BitImage:
    yy, xx = np.mgrid[0:side, 0:side]
    center = (side - 1) / 2.0
    disc = (xx - center) ** 2 + (yy - center) ** 2 <= 12.0**2
    return BitImage(disc.astype(np.uint8))


def make_secret_stripes(side: int = 32) -> BitImage:
    yy, xx = np.mgrid[0:side, 0:side]
    stripes = ((xx + yy) // 4) % 2
    return BitImage(stripes.astype(np.uint8))


def main():
    os.makedirs(DATA_DIR, exist_ok=True)
    outputs = {
        "cover_camera_256.pgm": write_pgm(make_cover()),
        "secret1_disc_32.pbm": write_pbm(make_secret_disc()),
        "secret2_stripes_32.pbm": write_pbm(make_secret_stripes()),
    }
    for name, blob in outputs.items():
        path = os.path.join(DATA_DIR, name)
        with open(path, "wb") as fh:
            fh.write(blob)
        print(f"wrote {path} ({len(blob)} bytes)")


if __name__ == "__main__":
    main()
