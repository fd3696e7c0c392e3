"""Regenerate the synthetic PGM images shipped in src/graphheat/data."""

from pathlib import Path

from graphheat.image import save_pgm
from graphheat.samples import KINDS, SIZES, generate

OUT = Path(__file__).resolve().parents[1] / "src" / "graphheat" / "data"

if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for size in SIZES:
        for kind in KINDS:
            path = OUT / f"{kind}_{size}.pgm"
            save_pgm(generate(kind, size), path)
            print(path)
