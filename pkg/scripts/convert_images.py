"""Convert ordinary image files (PNG, JPEG, TIFF, ...) to 8-bit binary PGM.

The package itself reads only PGM; this helper lets you bring your own
benchmark images.  Requires Pillow, which is not a package dependency.

    python3 scripts/convert_images.py photos/*.png --outdir images/
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from graphheat.image import GrayImage, save_pgm


def main(argv=None):
    try:
        from PIL import Image
    except ImportError:
        sys.exit("this script needs Pillow: pip install Pillow")

    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inputs", nargs="+")
    ap.add_argument("--outdir", default=".")
    args = ap.parse_args(argv)

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for src in map(Path, args.inputs):
        with Image.open(src) as im:
            gray = np.asarray(im.convert("L"), dtype=np.float64)
        dest = out / (src.stem + ".pgm")
        save_pgm(GrayImage(gray), dest)
        print(f"{src} -> {dest} ({gray.shape[1]}x{gray.shape[0]})")


if __name__ == "__main__":
    main()
