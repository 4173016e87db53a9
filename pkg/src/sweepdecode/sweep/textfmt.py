"""Plain-text interchange format for embedded tensor networks.

Grammar (whitespace separated, ``#`` starts a comment running to end of
line)::

    tn2d v1 <num_vertices> <num_bonds>
    v <id> <x> <y> <rank> <extent_1> ... <extent_rank> <elements...>
    b <id_a> <axis_a> <id_b> <axis_b>

Elements are listed in axis-major (C) order and may be decimal or
``%a``-style hex floats.  Emission uses ``repr`` decimals, which round-trip
float64 exactly.
"""

from __future__ import annotations

import math

import numpy as np

from ..tensor import DenseTensor
from .network import Bond, TensorNetwork2D, TNVertex

__all__ = ["parse_network", "format_network", "load_network", "save_network"]


def _parse_float(token: str) -> float:
    try:
        return float(token)
    except ValueError:
        return float.fromhex(token)


def _tokens(text: str):
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        yield from body.split()


def parse_network(text: str) -> TensorNetwork2D:
    toks = list(_tokens(text))
    pos = 0

    def take(n: int) -> list:
        nonlocal pos
        if pos + n > len(toks):
            raise ValueError("truncated network description")
        out = toks[pos : pos + n]
        pos += n
        return out

    magic, version, nv, nb = take(4)
    if magic != "tn2d" or version != "v1":
        raise ValueError(f"unrecognized header {magic} {version!r}; expected 'tn2d v1'")
    nv, nb = int(nv), int(nb)

    tn = TensorNetwork2D()
    pending_bonds = []
    for _ in range(nv + nb):
        (kind,) = take(1)
        if kind == "v":
            vid, x, y, rank = take(4)
            vid, rank = int(vid), int(rank)
            extents = tuple(int(t) for t in take(rank))
            count = math.prod(extents) if extents else 1
            elements = np.array([_parse_float(t) for t in take(count)])
            tensor = DenseTensor(elements.reshape(extents))
            tn.add_vertex(TNVertex(vid, tensor, (_parse_float(x), _parse_float(y))))
        elif kind == "b":
            ida, axa, idb, axb = (int(t) for t in take(4))
            pending_bonds.append(((ida, axa), (idb, axb)))
        else:
            raise ValueError(f"unknown record type {kind!r}")
    if pos != len(toks):
        raise ValueError("trailing tokens after declared records")

    for (ida, axa), (idb, axb) in pending_bonds:
        if ida not in tn.vertices:
            raise ValueError(f"bond references missing vertex {ida}")
        dim = tn.vertices[ida].tensor.extents[axa]
        tn.add_bond(Bond((ida, axa), (idb, axb), dim))
    tn.validate_closed()
    return tn


def format_network(tn: TensorNetwork2D) -> str:
    lines = [f"tn2d v1 {len(tn.vertices)} {len(tn.bonds)}"]
    for vid in sorted(tn.vertices):
        v = tn.vertices[vid]
        t = v.tensor
        parts = ["v", str(vid), repr(float(v.position[0])), repr(float(v.position[1])), str(t.rank)]
        parts += [str(e) for e in t.extents]
        parts += [repr(float(e)) for e in t.densify().reshape(-1)]
        lines.append(" ".join(parts))
    for b in tn.bonds:
        lines.append(f"b {b.endpoint_a[0]} {b.endpoint_a[1]} {b.endpoint_b[0]} {b.endpoint_b[1]}")
    return "\n".join(lines) + "\n"


def load_network(path) -> TensorNetwork2D:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_network(fh.read())


def save_network(tn: TensorNetwork2D, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_network(tn))
