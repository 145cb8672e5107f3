"""Plain-text file formats.

Degree file::

    # comment lines start with '#'
    N<TAB>D          one row per node, node index = row index

Edge list::

    src<TAB>dst[<TAB>multiplicity]   0-indexed, sorted by (src, dst)

Config file: flat ``key=value`` lines whose keys mirror the long CLI flags
(``fin``, ``fout``, ``n``, ``delta0``, ``seed``, ``model``, ``reps``, ...).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bidegree import BiDegreeSequence


def _header(comments) -> str:
    return "".join(f"# {line}\n" for line in comments)


def format_degree_file(seq: BiDegreeSequence, comments=()) -> str:
    body = "".join(f"{int(a)}\t{int(b)}\n" for a, b in zip(seq.in_degrees, seq.out_degrees))
    return _header(comments) + "# N\tD\n" + body


def parse_degree_file(text: str) -> BiDegreeSequence:
    ins, outs = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'N<TAB>D', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: degrees must be integers, got {line!r}") from None
        ins.append(a)
        outs.append(b)
    return BiDegreeSequence(np.array(ins, dtype=np.int64), np.array(outs, dtype=np.int64))


def read_degree_file(path) -> BiDegreeSequence:
    return parse_degree_file(Path(path).read_text())


def format_edge_list(src, dst, mult=None, comments=()) -> str:
    src = np.asarray(src)
    dst = np.asarray(dst)
    order = np.lexsort((dst, src))
    if mult is None:
        body = "".join(f"{int(src[i])}\t{int(dst[i])}\n" for i in order)
        cols = "# src\tdst\n"
    else:
        mult = np.asarray(mult)
        body = "".join(f"{int(src[i])}\t{int(dst[i])}\t{int(mult[i])}\n" for i in order)
        cols = "# src\tdst\tmultiplicity\n"
    return _header(comments) + cols + body


def parse_edge_list(text: str) -> list[tuple[int, ...]]:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append(tuple(int(x) for x in line.split()))
    return rows


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def parse_config_file(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def histogram(values) -> list[list[int]]:
    """Sorted ``[[value, count], ...]`` pairs, JSON friendly."""
    v, c = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
    return [[int(a), int(b)] for a, b in zip(v, c)]
