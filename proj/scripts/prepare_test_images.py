#!/usr/bin/env python3
"""Build the grayscale 512x512 benchmark PGMs under data/.

Sources (fetch with the package managers, no other network access needed):

    npm pack lena@1.0.0                      # -> lena-1.0.0.tgz
    pip download --no-deps sporco==0.2.2.post1   # -> sporco-*.whl

Usage:
    prepare_test_images.py --lena lena-1.0.0.tgz --sporco sporco-*.whl --out data/

Color images are converted with Y = 0.299 R + 0.587 G + 0.114 B, rounded
half away from zero. Barbara ships as 702x574, so the central 512x512 region
is kept. There is no packaged source for House; drop a 512x512 (or any size)
P5 house.pgm into data/ by hand to enable the House benchmark cases.
"""

import argparse
import base64
import io
import re
import tarfile
import zipfile

import numpy as np
from PIL import Image


def to_gray(rgb):
    rgb = rgb.astype(np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)


def write_pgm(path, gray):
    h, w = gray.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(gray.tobytes())


def load_lena(tgz):
    with tarfile.open(tgz) as t:
        js = t.extractfile("package/lena.js").read().decode()
    payload = re.search(r"base64decode\(\s*'([^']*)'", js).group(1)
    raw = np.frombuffer(base64.b64decode(payload), dtype=np.uint8)
    # ndarray shape [512,512,3] with strides [3,1536,1]: rows are the slow axis.
    return raw.reshape(512, 512, 3)


def load_barbara(whl):
    with zipfile.ZipFile(whl) as z:
        im = Image.open(io.BytesIO(z.read("sporco/data/barbara.png"))).convert("RGB")
    rgb = np.asarray(im)
    h, w = rgb.shape[:2]
    top, left = (h - 512) // 2, (w - 512) // 2
    return rgb[top:top + 512, left:left + 512]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lena", required=True)
    ap.add_argument("--sporco", required=True)
    ap.add_argument("--out", default="data")
    args = ap.parse_args()

    write_pgm(f"{args.out}/lena.pgm", to_gray(load_lena(args.lena)))
    write_pgm(f"{args.out}/barbara.pgm", to_gray(load_barbara(args.sporco)))


if __name__ == "__main__":
    main()
