"""Planar patch graphs and the face/vertex surface-code construction.

A patch is stored untruncated: every edge of the cut lattice window is
present, faces are full cycles, and the outer boundary is designated as
four alternating rough/smooth segments.  Building the code truncates it:
vertices on rough segments are ghosts that carry no vertex check, and
edges joining two ghosts are dropped from the qubit set.  A ghost may
lose every edge this way (lattices whose window boundary zigzags can
strand rough vertices); such ghosts are inert.
"""

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from ..pauli import (
    CodeDefinition,
    PauliOperator,
    commutes,
    validate_code,
)

ROUGH = "rough"
SMOOTH = "smooth"


class PatchError(ValueError):
    """Raised when a patch graph or its boundary designation is malformed."""


@dataclass(frozen=True)
class BoundarySegment:
    kind: str
    vertices: tuple

    def __post_init__(self):
        if self.kind not in (ROUGH, SMOOTH):
            raise PatchError(f"unknown boundary kind {self.kind!r}")
        if not self.vertices:
            raise PatchError("empty boundary segment")


@dataclass(frozen=True)
class PlanarGraph:
    """Straight-line planar patch with designated boundary segments.

    ``faces`` lists internal faces only, each as a cyclically ordered
    tuple of edge indices.  ``segments`` partitions the outer cycle into
    four runs, alternating rough and smooth; rough runs own the corner
    vertices.
    """

    positions: tuple
    edges: tuple
    faces: tuple
    segments: tuple

    @property
    def num_vertices(self) -> int:
        return len(self.positions)

    def rough_segments(self):
        return [s for s in self.segments if s.kind == ROUGH]

    def smooth_segments(self):
        return [s for s in self.segments if s.kind == SMOOTH]

    def ghosts(self) -> set:
        out = set()
        for s in self.rough_segments():
            out.update(s.vertices)
        return out

    def face_vertices(self, face_index: int) -> list:
        """Vertices of a face in cycle order."""
        cycle = self.faces[face_index]
        if len(cycle) == 1:
            raise PatchError("single-edge face")
        out = []
        for k, e in enumerate(cycle):
            u, v = self.edges[e]
            nu, nv = self.edges[cycle[(k + 1) % len(cycle)]]
            # the shared endpoint belongs to the next edge; emit the other
            if u in (nu, nv) and v in (nu, nv):
                raise PatchError("repeated edge pair in face")
            out.append(v if u in (nu, nv) else u)
        return out

    def face_centroid(self, face_index: int):
        vs = self.face_vertices(face_index)
        xs = [self.positions[v][0] for v in vs]
        ys = [self.positions[v][1] for v in vs]
        return (sum(xs) / len(vs), sum(ys) / len(vs))


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segments_cross(a, b, c, d) -> bool:
    """Proper interior crossing of segments ab and cd (no shared endpoints)."""
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    return ((d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0)
            and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0)


def edge_face_table(g: PlanarGraph):
    """List of face indices per edge; every edge must lie in one or two."""
    table = [[] for _ in g.edges]
    for fi, cycle in enumerate(g.faces):
        seen = set()
        for e in cycle:
            if e in seen:
                raise PatchError(f"face {fi} repeats edge {e}")
            seen.add(e)
            table[e].append(fi)
    for e, fs in enumerate(table):
        if not fs:
            raise PatchError(f"edge {e} lies in no face")
        if len(fs) > 2:
            raise PatchError(f"edge {e} lies in {len(fs)} faces")
    return table


def perimeter_cycle(g: PlanarGraph, table=None) -> list:
    """Outer cycle as a vertex list, from the edges lying in one face."""
    if table is None:
        table = edge_face_table(g)
    boundary = [e for e, fs in enumerate(table) if len(fs) == 1]
    if not boundary:
        raise PatchError("patch has no boundary")
    nbr = {}
    for e in boundary:
        u, v = g.edges[e]
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    for v, ns in nbr.items():
        if len(ns) != 2:
            raise PatchError(f"boundary is not a simple cycle at vertex {v}")
    start = min(nbr)
    cycle = [start, min(nbr[start])]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        a, b = nbr[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        cycle.append(nxt)
        if len(cycle) > len(boundary):
            raise PatchError("boundary walk does not close")
    if len(cycle) != len(boundary):
        raise PatchError("boundary edges form more than one cycle")
    return cycle


def validate_patch(g: PlanarGraph, *, geometry: bool = False):
    """Structural checks; ``geometry`` adds the O(E^2) crossing scan."""
    n = g.num_vertices
    seen_pairs = set()
    for e, (u, v) in enumerate(g.edges):
        if not (0 <= u < n and 0 <= v < n):
            raise PatchError(f"edge {e} endpoint out of range")
        if u == v:
            raise PatchError(f"edge {e} is a loop")
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise PatchError(f"duplicate edge {pair}")
        seen_pairs.add(pair)

    table = edge_face_table(g)
    for fi in range(len(g.faces)):
        g.face_vertices(fi)  # raises on malformed cycles

    # Euler formula, counting the outer face.
    if n - len(g.edges) + len(g.faces) + 1 != 2:
        raise PatchError("Euler formula violated; faces missing or extra")

    cyc = perimeter_cycle(g, table)

    # Segments must partition the outer cycle into contiguous runs.
    if len(g.segments) != 4:
        raise PatchError("expected four boundary segments")
    kinds = [s.kind for s in g.segments]
    if kinds not in ([ROUGH, SMOOTH, ROUGH, SMOOTH], [SMOOTH, ROUGH, SMOOTH, ROUGH]):
        raise PatchError("boundary segments must alternate rough/smooth")
    chain = [v for s in g.segments for v in s.vertices]
    if sorted(chain) != sorted(cyc):
        raise PatchError("segments do not partition the outer cycle")
    k = len(cyc)
    pos0 = cyc.index(chain[0])
    forward = [cyc[(pos0 + i) % k] for i in range(k)]
    backward = [cyc[(pos0 - i) % k] for i in range(k)]
    if chain != forward and chain != backward:
        raise PatchError("segments are not contiguous along the outer cycle")

    if geometry:
        pts = g.positions
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i] == pts[j]:
                    raise PatchError(f"vertices {i} and {j} coincide")
        for e in range(len(g.edges)):
            a, b = g.edges[e]
            for f in range(e + 1, len(g.edges)):
                c, d = g.edges[f]
                if len({a, b, c, d}) < 4:
                    continue
                if _segments_cross(pts[a], pts[b], pts[c], pts[d]):
                    raise PatchError(f"edges {e} and {f} cross")


def _bfs_path(adjacency, sources, targets):
    """Deterministic BFS; returns the edge list of a shortest path."""
    target_set = set(targets)
    parent = {}
    queue = deque()
    for s in sorted(sources):
        parent[s] = (None, None)
        queue.append(s)
    while queue:
        v = queue.popleft()
        if v in target_set:
            path = []
            while parent[v][0] is not None:
                v, e = parent[v]
                path.append(e)
            return path[::-1]
        for w, e in adjacency.get(v, ()):
            if w not in parent:
                parent[w] = (v, e)
                queue.append(w)
    return None


def _kept_edges(g: PlanarGraph):
    ghosts = g.ghosts()
    kept = []
    for e, (u, v) in enumerate(g.edges):
        if u in ghosts and v in ghosts:
            continue
        kept.append(e)
    return kept, ghosts


def _logical_paths(g: PlanarGraph, kept, ghosts, table):
    """Shortest rough-to-rough edge path and smooth-to-smooth dual path."""
    rough = g.rough_segments()
    smooth = g.smooth_segments()
    kept_set = set(kept)

    adj = {}
    for e in kept:
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    for ns in adj.values():
        ns.sort()
    z_path = _bfs_path(adj, rough[0].vertices, set(rough[1].vertices))
    if z_path is None:
        raise PatchError("rough boundaries are not connected by kept edges")

    # Dual nodes: faces, then one node per smooth segment.
    smooth_of = {}
    for si, s in enumerate(smooth):
        for v in s.vertices:
            smooth_of[v] = si
    nf = len(g.faces)
    dual_adj = {}

    def link(a, b, e):
        dual_adj.setdefault(a, []).append((b, e))
        dual_adj.setdefault(b, []).append((a, e))

    for e in kept:
        fs = table[e]
        if len(fs) == 2:
            link(fs[0], fs[1], e)
            continue
        u, v = g.edges[e]
        sides = {smooth_of[w] for w in (u, v) if w in smooth_of}
        if len(sides) != 1:
            raise PatchError(f"boundary edge {e} has no unique smooth side")
        link(fs[0], nf + sides.pop(), e)
    for ns in dual_adj.values():
        ns.sort()
    x_path = _bfs_path(dual_adj, [nf], {nf + 1})
    if x_path is None:
        raise PatchError("smooth boundaries are not connected in the dual")
    assert all(e in kept_set for e in x_path)
    return x_path, z_path


def surface_code_from_graph(g: PlanarGraph, *, family: str = "",
                            check: bool = True) -> CodeDefinition:
    """Qubit per edge, X check per non-ghost vertex, Z check per face.

    Checks incident to the rough boundary are truncated by the removal
    of ghost-to-ghost edges.  The logicals are shortest boundary-to-
    boundary paths, so their weights certify the code distances.
    """
    if check:
        validate_patch(g)
    table = edge_face_table(g)
    kept, ghosts = _kept_edges(g)
    qubit_of = {e: i for i, e in enumerate(kept)}
    n = len(kept)

    incident = [[] for _ in range(g.num_vertices)]
    for e in kept:
        u, v = g.edges[e]
        incident[u].append(e)
        incident[v].append(e)

    checks = []
    coords = []
    for v in range(g.num_vertices):
        if v in ghosts:
            # a ghost stranded by the truncation is inert, not an error
            continue
        if not incident[v]:
            raise PatchError(f"vertex {v} acts on zero qubits")
        x = np.zeros(n, dtype=np.uint8)
        for e in incident[v]:
            x[qubit_of[e]] = 1
        checks.append(PauliOperator(x, np.zeros(n, dtype=np.uint8)))
        coords.append(g.positions[v])
    for fi, cycle in enumerate(g.faces):
        z = np.zeros(n, dtype=np.uint8)
        support = [e for e in cycle if e in qubit_of]
        if not support:
            raise PatchError(f"face {fi} lost all qubit edges")
        for e in support:
            z[qubit_of[e]] = 1
        checks.append(PauliOperator(np.zeros(n, dtype=np.uint8), z))
        coords.append(g.face_centroid(fi))

    x_path, z_path = _logical_paths(g, kept, ghosts, table)
    lx = np.zeros(n, dtype=np.uint8)
    for e in x_path:
        lx[qubit_of[e]] = 1
    lz = np.zeros(n, dtype=np.uint8)
    for e in z_path:
        lz[qubit_of[e]] = 1
    logical_x = PauliOperator(lx, np.zeros(n, dtype=np.uint8))
    logical_z = PauliOperator(np.zeros(n, dtype=np.uint8), lz)
    if commutes(logical_x, logical_z):
        raise PatchError("boundary paths cross an even number of times")

    qubit_coords = []
    for e in kept:
        u, v = g.edges[e]
        (ux, uy), (vx, vy) = g.positions[u], g.positions[v]
        qubit_coords.append(((ux + vx) / 2.0, (uy + vy) / 2.0))

    code = CodeDefinition(
        n=n,
        checks=checks,
        logical_x=logical_x,
        logical_z=logical_z,
        qubit_coords=qubit_coords,
        check_coords=coords,
        claimed_distance=min(len(x_path), len(z_path)),
        is_subsystem=False,
        family=family,
    )
    if check:
        validate_code(code)
    return code


def code_distances(g: PlanarGraph) -> tuple:
    """(x_distance, z_distance) certified by shortest boundary paths."""
    table = edge_face_table(g)
    kept, ghosts = _kept_edges(g)
    x_path, z_path = _logical_paths(g, kept, ghosts, table)
    return len(x_path), len(z_path)


def dual_patch(g: PlanarGraph) -> PlanarGraph:
    """Planar dual of a patch, with rough and smooth sides exchanged.

    Faces become vertices at their centroids.  Each smooth perimeter
    edge grows an outward ghost vertex, and consecutive ghosts along a
    side are joined so the dual's boundary faces close; those joining
    edges are exactly the ones the code construction drops again.  The
    dual's qubit edges appear in the same order as the primal's, so the
    two codes match check for check under an X/Z exchange.
    """
    validate_patch(g)
    table = edge_face_table(g)
    kept, ghosts = _kept_edges(g)
    smooth = g.smooth_segments()
    smooth_of = {}
    for si, s in enumerate(smooth):
        for v in s.vertices:
            smooth_of[v] = si

    positions = [g.face_centroid(fi) for fi in range(len(g.faces))]
    nf = len(g.faces)

    # One ghost per smooth perimeter qubit edge, pushed outward.
    ghost_of_edge = {}
    for e in kept:
        if len(table[e]) != 1:
            continue
        u, v = g.edges[e]
        (ux, uy), (vx, vy) = g.positions[u], g.positions[v]
        mx, my = (ux + vx) / 2.0, (uy + vy) / 2.0
        cx, cy = positions[table[e][0]]
        positions.append((mx + (mx - cx) * 0.5, my + (my - cy) * 0.5))
        ghost_of_edge[e] = nf + len(ghost_of_edge)

    edges = []
    edge_index = {}
    for e in kept:
        fs = table[e]
        if len(fs) == 2:
            pair = (fs[0], fs[1])
        else:
            pair = (fs[0], ghost_of_edge[e])
        edge_index[e] = len(edges)
        edges.append(pair)

    # Joining edges between ghosts of consecutive perimeter edges at a
    # shared smooth vertex; recorded per vertex for the face cycles.
    join_at = {}
    perim_at = {}
    for e in kept:
        if len(table[e]) != 1:
            continue
        for w in g.edges[e]:
            perim_at.setdefault(w, []).append(e)
    for v, es in sorted(perim_at.items()):
        if v in ghosts:
            continue
        if len(es) != 2:
            raise PatchError(f"smooth vertex {v} lies on {len(es)} boundary edges")
        a, b = es
        join_at[v] = len(edges)
        edges.append((ghost_of_edge[a], ghost_of_edge[b]))

    # A dual face per non-ghost primal vertex: its fan of incident
    # faces in angular order, closed through ghosts on the boundary.
    incident = {}
    for e in kept:
        u, v = g.edges[e]
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)

    faces = []
    for v in range(g.num_vertices):
        if v in ghosts or v not in incident:
            continue
        vx, vy = g.positions[v]

        def angle(e, v=v, vx=vx, vy=vy):
            a, b = g.edges[e]
            w = b if a == v else a
            wx, wy = g.positions[w]
            return math.atan2(wy - vy, wx - vx)

        ring = sorted(incident[v], key=angle)
        k = len(ring)
        if k < 2:
            raise PatchError(f"dangling boundary vertex {v}")
        # Cut the angular ring where consecutive edges share no face;
        # that gap faces the outside and exists only at the boundary.
        cuts = [r for r in range(k)
                if not set(table[ring[r - 1]]) & set(table[ring[r]])]
        if v in perim_at:
            if len(cuts) == 1:
                r = cuts[0]
                ring = ring[r:] + ring[:r]
            elif cuts:
                raise PatchError(f"boundary fan at vertex {v} is split")
            cycle = [edge_index[e] for e in ring] + [join_at[v]]
        else:
            if cuts:
                raise PatchError(f"interior fan at vertex {v} is split")
            cycle = [edge_index[e] for e in ring]
        faces.append(tuple(cycle))

    # Boundary runs: ghosts along each primal smooth side become the
    # dual rough segments; the faces met between them form the smooth
    # segments.  Walk the dual perimeter and classify.
    dual = PlanarGraph(
        positions=tuple(positions),
        edges=tuple(edges),
        faces=tuple(faces),
        segments=(
            BoundarySegment(ROUGH, (0,)),
            BoundarySegment(SMOOTH, (0,)),
            BoundarySegment(ROUGH, (0,)),
            BoundarySegment(SMOOTH, (0,)),
        ),
    )
    cyc = perimeter_cycle(dual)
    is_ghost = [v >= nf for v in cyc]
    if not any(is_ghost) or all(is_ghost):
        raise PatchError("dual boundary lacks alternation")
    # rotate the cycle to a rough-run start
    k = len(cyc)
    start = next(i for i in range(k)
                 if is_ghost[i] and not is_ghost[(i - 1) % k])
    cyc = [cyc[(start + i) % k] for i in range(k)]
    is_ghost = [v >= nf for v in cyc]
    segments = []
    i = 0
    while i < k:
        kind = ROUGH if is_ghost[i] else SMOOTH
        j = i
        while j < k and is_ghost[j] == is_ghost[i]:
            j += 1
        segments.append(BoundarySegment(kind, tuple(cyc[i:j])))
        i = j
    if len(segments) != 4:
        raise PatchError(f"dual boundary has {len(segments)} runs, expected 4")

    dual = PlanarGraph(
        positions=dual.positions,
        edges=dual.edges,
        faces=dual.faces,
        segments=tuple(segments),
    )
    validate_patch(dual)
    return dual
