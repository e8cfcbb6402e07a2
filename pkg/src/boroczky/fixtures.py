"""Published generator lists shipped as data, plus the dual-Hesse arrangement.

The polynomials are stored verbatim in the coordinates used by their
source, which differ from the coordinates of :func:`boroczky_lines`.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .arrangement import dual_hesse
from .ideals import RQ, HilbertBurchMatrix
from .polyring import Polynomial

FILES = ("published_n10.txt", "published_n10_hb.txt", "published_n11.txt")


def _text(name: str) -> str:
    return resources.files("boroczky.data").joinpath(name).read_text()


def _blocks(text: str) -> list[list[Polynomial]]:
    blocks, cur = [], []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        cur.append(RQ.parse(line))
    if cur:
        blocks.append(cur)
    return blocks


def published_generators(n: int) -> list[Polynomial]:
    if n not in (10, 11):
        raise KeyError(f"no published generators for n={n}")
    return _blocks(_text(f"published_n{n}.txt"))[0]


def published_hilbert_burch() -> HilbertBurchMatrix:
    """The published 2 x 3 matrix for n = 10, with its own 2x2 minors as generators."""
    rows = _blocks(_text("published_n10_hb.txt"))
    A = HilbertBurchMatrix(rows, [], 4, 2, 2)
    A.generators = A.minors()
    return A


def load_generators(path) -> list[Polynomial]:
    """Read a generator file: one polynomial per line, '#' comments."""
    return [f for b in _blocks(Path(path).read_text()) for f in b]


def write_fixtures(outdir, dual: bool = True, published: bool = True) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if dual:
        p = out / "dual_hesse.json"
        p.write_text(json.dumps(dual_hesse().to_json(), indent=2) + "\n")
        written.append(p)
    if published:
        for name in FILES:
            p = out / name
            p.write_text(_text(name))
            written.append(p)
    return written
