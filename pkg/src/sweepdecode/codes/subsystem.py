"""Subsystem surface code built from fan-split triangular patches.

Every gauge generator acts on three qubits (two at a truncated
boundary): each face of the patch contributes its edge triple as a Z
generator, and the six edges around an interior vertex split into two
X fans of three.  Multiplying the two fans at a vertex restores the
full vertex star, and each fan anticommutes with exactly two faces,
the pair facing each other across its vertex; the product of such a
pair commutes with everything again.  The stabiliser group is
therefore generated by weight-6 operators, stars and face bowties, and
one gauge qubit lives at every split vertex.

Splitting leaves Z strings intact but lets X strings shortcut through
bowties, so the patch is sized by the dressed distances rather than
the surface-code ones.
"""

import math
from functools import lru_cache

import numpy as np

from ..pauli import CodeDefinition, PauliOperator, gf2_rref, validate_code
from .graphs import (
    PatchError,
    PlanarGraph,
    _bfs_path,
    _kept_edges,
    _logical_paths,
    edge_face_table,
    validate_patch,
)
from .lattices import _coord_steps, cut_window, template

# sextants NE, NW, W; the other fan takes SW, SE, E
_WEST_FAN = frozenset((1, 2, 3))


def _sextant(coords, a, b) -> int:
    """Direction class of the edge a -> b in 60 degree steps from east."""
    dx = coords[b][0] - coords[a][0]
    dy = coords[b][1] - coords[a][1]
    return round(math.degrees(math.atan2(dy, dx)) / 60.0) % 6


def _fan_split(g: PlanarGraph):
    """Spokes by direction, split vertices, and straddle faces per vertex.

    A face straddles the one corner where its two edges fall in
    different fans.  A vertex is split when all six spokes and both of
    its straddle faces are present, i.e. away from the boundary; there
    the paired faces merge into bowtie stabilisers.
    """
    kept, ghosts = _kept_edges(g)
    coords = g.positions
    spokes = {}
    for e in kept:
        u, v = g.edges[e]
        for a, b in ((u, v), (v, u)):
            if a in ghosts:
                continue
            s = _sextant(coords, a, b)
            sm = spokes.setdefault(a, {})
            if s in sm:
                raise PatchError(f"vertex {a} has two spokes toward sextant {s}")
            sm[s] = e

    straddle_at = {}
    for fi, cycle in enumerate(g.faces):
        vs = g.face_vertices(fi)
        k = len(cycle)
        corner = None
        for idx, v in enumerate(vs):
            e1, e2 = cycle[idx], cycle[(idx + 1) % k]
            if v not in g.edges[e1] or v not in g.edges[e2]:
                e1, e2 = cycle[(idx - 1) % k], cycle[idx]
            w1 = next(w for w in g.edges[e1] if w != v)
            w2 = next(w for w in g.edges[e2] if w != v)
            s1, s2 = _sextant(coords, v, w1), _sextant(coords, v, w2)
            if (s1 in _WEST_FAN) != (s2 in _WEST_FAN):
                if corner is not None:
                    raise PatchError(f"face {fi} straddles two corners")
                corner = v
        if corner is not None:
            straddle_at.setdefault(corner, []).append(fi)

    split = {v for v, sm in spokes.items()
             if len(sm) == 6 and len(straddle_at.get(v, ())) == 2}
    return kept, ghosts, spokes, split, straddle_at


def dressed_distances(g: PlanarGraph):
    """(x, z) dressed distances of the fan-split code, or None.

    Both come from shortest paths.  Z strings must still join the rough
    sides vertex by vertex, unchanged by the split.  X strings join the
    smooth sides in the dual, but entering one face of a bowtie and
    leaving through its partner costs nothing, so the dual walk runs
    over faces with each straddle pair contracted to a single node.
    """
    table = edge_face_table(g)
    kept, ghosts, spokes, split, straddle_at = _fan_split(g)

    adj = {}
    for e in kept:
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    for ns in adj.values():
        ns.sort()
    rough = g.rough_segments()
    z_path = _bfs_path(adj, rough[0].vertices, set(rough[1].vertices))
    if z_path is None:
        return None

    node_of = {}
    nid = 0
    for v in sorted(split):
        f1, f2 = straddle_at[v]
        node_of[f1] = node_of[f2] = nid
        nid += 1
    for fi in range(len(g.faces)):
        if fi not in node_of:
            node_of[fi] = nid
            nid += 1

    smooth_of = {}
    for si, s in enumerate(g.smooth_segments()):
        for v in s.vertices:
            smooth_of[v] = si
    dual_adj = {}

    def link(a, b, e):
        dual_adj.setdefault(a, []).append((b, e))
        dual_adj.setdefault(b, []).append((a, e))

    for e in kept:
        fs = table[e]
        if len(fs) == 2:
            a, b = node_of[fs[0]], node_of[fs[1]]
            if a != b:
                link(a, b, e)
            continue
        u, v = g.edges[e]
        sides = {smooth_of[w] for w in (u, v) if w in smooth_of}
        if len(sides) != 1:
            return None
        link(node_of[fs[0]], nid + sides.pop(), e)
    for ns in dual_adj.values():
        ns.sort()
    x_path = _bfs_path(dual_adj, [nid], {nid + 1})
    if x_path is None:
        return None
    return len(x_path), len(z_path)


@lru_cache(maxsize=None)
def subsystem_patch(d: int) -> PlanarGraph:
    """Smallest triangular window whose fan-split code has distances (d, d).

    The scan orders candidates by qubit count, then window extents and
    offsets, and certifies each with :func:`dressed_distances`.
    Windows without a split vertex are rejected, so the delivered code
    always carries at least one gauge qubit.
    """
    if d < 2:
        raise ValueError("distance must be at least 2")
    t = template("triangular")
    gx, gy = _coord_steps(t)
    ax = t.basis[0][0]
    by = t.basis[1][1]
    sx = max(s[0] for s in t.sites) - min(s[0] for s in t.sites)
    sy = max(s[1] for s in t.sites) - min(s[1] for s in t.sites)
    best = None
    for oy in range(0, by, gy):
        for ox in range(0, ax, gx):
            for wx in range(gx, ax * (d + 4) + sx + gx + 1, gx):
                for wy in range(gy, by * (d + 4) + sy + gy + 1, gy):
                    g = cut_window(t, ox, oy, wx, wy)
                    if g is None:
                        continue
                    try:
                        kept, _, _, split, _ = _fan_split(g)
                    except PatchError:
                        continue
                    if not split:
                        continue
                    key = (len(kept), wy, wx, oy, ox)
                    if best is not None and key >= best[0]:
                        continue
                    try:
                        dd = dressed_distances(g)
                    except PatchError:
                        continue
                    if dd == (d, d):
                        best = (key, g)
    if best is None:
        raise ValueError(f"no subsystem patch found with distances {d}")
    g = best[1]
    validate_patch(g)
    return g


def _commuting_z_logical(n, z_path_bits, fan_rows, face_rows):
    """Adjust a rough-to-rough Z string by faces until every fan commutes.

    The string already commutes with every full star, so the system
    asks only for the right intersection parity with each fan; it is
    consistent because a Z logical of the gauge-fixed surface code lies
    in the same face coset.
    """
    overlap = (fan_rows @ face_rows.T) % 2
    target = (fan_rows @ z_path_bits) % 2
    aug = np.concatenate([overlap, target[:, None]], axis=1)
    r, pivots, _ = gf2_rref(aug)
    if overlap.shape[1] in pivots:
        raise PatchError("no face adjustment makes the Z string gauge-even")
    out = z_path_bits.copy()
    for row, col in enumerate(pivots):
        if r[row, -1]:
            out ^= face_rows[col]
    return out


def subsystem_code(d: int, *, check: bool = True) -> CodeDefinition:
    """Fan-split subsystem code of dressed distance d on both sectors.

    Checks hold the gauge generators: X fans (full stars along the
    boundary) listed per vertex, then Z faces truncated to their kept
    edges.  The logicals commute with every gauge generator; the X one
    is a dual smooth-to-smooth path, the Z one a rough-to-rough path
    pushed into the gauge centraliser by face multiplication.
    """
    g = subsystem_patch(d)
    table = edge_face_table(g)
    kept, ghosts, spokes, split, straddle_at = _fan_split(g)
    qubit_of = {e: i for i, e in enumerate(kept)}
    n = len(kept)

    def midpoint(e):
        u, v = g.edges[e]
        (ux, uy), (vx, vy) = g.positions[u], g.positions[v]
        return ((ux + vx) / 2.0, (uy + vy) / 2.0)

    checks = []
    coords = []
    fan_bits = []
    for v in range(g.num_vertices):
        if v in ghosts:
            continue
        sm = spokes.get(v)
        if not sm:
            raise PatchError(f"vertex {v} acts on zero qubits")
        groups = [sorted(sm)]
        if v in split:
            west = [s for s in sorted(sm) if s in _WEST_FAN]
            east = [s for s in sorted(sm) if s not in _WEST_FAN]
            groups = [west, east]
        for sextants in groups:
            x = np.zeros(n, dtype=np.uint8)
            for s in sextants:
                x[qubit_of[sm[s]]] = 1
            checks.append(PauliOperator(x, np.zeros(n, dtype=np.uint8)))
            fan_bits.append(x)
            mids = [midpoint(sm[s]) for s in sextants]
            cx = sum(m[0] for m in mids) / len(mids)
            cy = sum(m[1] for m in mids) / len(mids)
            px, py = g.positions[v]
            pull = 0.3 if v in split else 0.0
            coords.append((px + pull * (cx - px), py + pull * (cy - py)))

    face_bits = []
    for fi, cycle in enumerate(g.faces):
        z = np.zeros(n, dtype=np.uint8)
        support = [e for e in cycle if e in qubit_of]
        if not support:
            raise PatchError(f"face {fi} lost all qubit edges")
        for e in support:
            z[qubit_of[e]] = 1
        checks.append(PauliOperator(np.zeros(n, dtype=np.uint8), z))
        face_bits.append(z)
        coords.append(g.face_centroid(fi))

    x_path, z_path = _logical_paths(g, kept, ghosts, table)
    lx = np.zeros(n, dtype=np.uint8)
    for e in x_path:
        lx[qubit_of[e]] = 1
    lz = np.zeros(n, dtype=np.uint8)
    for e in z_path:
        lz[qubit_of[e]] = 1
    lz = _commuting_z_logical(
        n, lz, np.array(fan_bits, dtype=np.uint8),
        np.array(face_bits, dtype=np.uint8))

    code = CodeDefinition(
        n=n,
        checks=checks,
        logical_x=PauliOperator(lx, np.zeros(n, dtype=np.uint8)),
        logical_z=PauliOperator(np.zeros(n, dtype=np.uint8), lz),
        qubit_coords=[midpoint(e) for e in kept],
        check_coords=coords,
        claimed_distance=d,
        is_subsystem=True,
        family="subsystem_square",
    )
    if check:
        validate_code(code)
    return code
