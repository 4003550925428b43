"""Layered ideal triangulation of a once-punctured torus bundle.

Ideal triangulations of the punctured torus are triples of slopes
``{k1, k2, k1 + k2}`` for an oriented frame ``F = (k1 | k2)`` in SL(2, Z).
Letter L replaces ``F`` by ``F (1 1; 0 1)``, letter R by ``F (1 0; 1 1)``;
each replacement is a diagonal exchange and contributes one tetrahedron.

Tetrahedron ``i`` is modelled on the parallelogram with corners
``P0 = 0, P1 = k1, P2 = k1 + k2, P3 = k2`` (counterclockwise, since
``det F = 1``). Edge 13 is the removed diagonal, edge 02 the new one. An
ideal triangle of the torus is identified by its three counterclockwise edge
vectors, a corner by the edge vector leaving it; the two triangles of a
layer are negatives of each other, so no extra tags are needed. Top faces of
layer ``i`` glue to bottom faces of layer ``i + 1`` by the identity, and the
top of the last layer glues to the bottom of the first through ``A^-1``
where ``A = F_N`` is the monodromy.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InternalGluingError
from .torus import M_L, M_R, mul2
from .words import CyclicWord, as_word

# Opposite-edge pairs; the angle vector of a tetrahedron follows this order.
PAIRS = (((0, 1), (2, 3)), ((0, 3), (1, 2)), ((0, 2), (1, 3)))
PAIR_NAMES = ("side1", "side2", "diagonal")
EDGES = tuple(e for pair in PAIRS for e in pair)
PAIR_OF_EDGE = {e: p for p, pair in enumerate(PAIRS) for e in pair}
TOP_FACES = (3, 1)      # faces named by the opposite vertex
BOTTOM_FACES = (2, 0)


def normalize_slope(v):
    """Sign representative: second coordinate positive, else ``(1, 0)``."""
    p, q = v
    if q < 0 or (q == 0 and p < 0):
        return (-p, -q)
    return (p, q)


def _apply(F, v):
    a, b, c, d = F
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def _inverse(F):
    a, b, c, d = F
    return (d, -b, -c, a)


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _neg(u):
    return (-u[0], -u[1])


@dataclass(frozen=True)
class FareyStep:
    index: int
    letter: str
    frame: tuple[int, int, int, int]
    kept: tuple[tuple[int, int], tuple[int, int]]
    removed: tuple[int, int]
    created: tuple[int, int]

    @property
    def k1(self):
        return (self.frame[0], self.frame[2])

    @property
    def k2(self):
        return (self.frame[1], self.frame[3])


def farey_path(w) -> list[FareyStep]:
    """Frames and flipped slopes along ``w`` (a word or a raw letter string)."""
    letters = w.letters if isinstance(w, CyclicWord) else str(w).upper()
    F = (1, 0, 0, 1)
    steps = []
    for i, ch in enumerate(letters, start=1):
        c1, c2 = (F[0], F[2]), (F[1], F[3])
        if ch == "L":
            F = mul2(F, M_L)
            removed = c2
        else:
            F = mul2(F, M_R)
            removed = c1
        k1, k2 = (F[0], F[2]), (F[1], F[3])
        steps.append(FareyStep(
            index=i, letter=ch, frame=F,
            kept=(normalize_slope(k1), normalize_slope(k2)),
            removed=normalize_slope(removed),
            created=normalize_slope(_add(k1, k2)),
        ))
    return steps


def _corners(step: FareyStep):
    k1, k2 = step.k1, step.k2
    return ((0, 0), k1, _add(k1, k2), k2)


def _face_vectors(corners, face):
    """Outgoing counterclockwise edge vector at each vertex of ``face``."""
    verts = [v for v in range(4) if v != face]
    # Counterclockwise order of the corners is 0, 1, 2, 3.
    out = {}
    for a, b in zip(verts, verts[1:] + verts[:1]):
        out[a] = (corners[b][0] - corners[a][0], corners[b][1] - corners[a][1])
    return out


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class Gluing:
    tet: int
    perm: tuple[int, int, int, int]  # vertex v of source -> perm[v] of target


@dataclass
class LayeredTriangulation:
    word: str
    steps: list[FareyStep]
    gluings: list[dict[int, Gluing]]
    edge_classes: list[list[tuple[int, tuple[int, int]]]]
    edge_slopes: list[tuple[int, int]]
    monodromy: tuple[int, int, int, int]
    edge_index: dict = field(default_factory=dict)

    @property
    def num_tetrahedra(self) -> int:
        return len(self.steps)

    @property
    def num_edges(self) -> int:
        return len(self.edge_classes)

    def degrees(self) -> list[int]:
        return [len(c) for c in self.edge_classes]

    def edge_pair_counts(self):
        """``counts[e][t][p]``: slots of pair ``p`` of tet ``t`` in edge ``e``."""
        n = self.num_tetrahedra
        counts = [[[0, 0, 0] for _ in range(n)] for _ in self.edge_classes]
        for e, cls in enumerate(self.edge_classes):
            for t, edge in cls:
                counts[e][t][PAIR_OF_EDGE[edge]] += 1
        return counts

    def dump(self) -> str:
        """Text dump: one line per tetrahedron, then one per edge class."""
        lines = [f"word {self.word}", f"tetrahedra {self.num_tetrahedra}"]
        for t, faces in enumerate(self.gluings):
            parts = [f"f{f}->t{g.tet}:{''.join(map(str, g.perm))}"
                     for f, g in sorted(faces.items())]
            eids = [str(self.edge_index[(t, e)]) for e in EDGES]
            lines.append(f"tet {t} " + " ".join(parts) + " edges " + ",".join(eids))
        lines.append(f"edges {self.num_edges}")
        for e, cls in enumerate(self.edge_classes):
            slots = " ".join(f"t{t}:{a}{b}" for t, (a, b) in cls)
            s = self.edge_slopes[e]
            lines.append(f"edge {e} degree {len(cls)} slope {s[0]},{s[1]} {slots}")
        return "\n".join(lines) + "\n"


def _perm_sign(p):
    inv = sum(1 for i, j in itertools.combinations(range(4), 2) if p[i] > p[j])
    return -1 if inv % 2 else 1


def build(w) -> LayeredTriangulation:
    w = as_word(w)
    steps = farey_path(w)
    n = len(steps)
    A = steps[-1].frame
    Ainv = _inverse(A)
    corners = [_corners(s) for s in steps]

    gluings = [dict() for _ in range(n)]
    for i in range(n):
        j = (i + 1) % n
        bottoms = {}
        for f in BOTTOM_FACES:
            vecs = _face_vectors(corners[j], f)
            bottoms[frozenset(vecs.values())] = (f, {v: k for k, v in vecs.items()})
        for f in TOP_FACES:
            vecs = _face_vectors(corners[i], f)
            if j == 0:
                vecs = {k: _apply(Ainv, v) for k, v in vecs.items()}
            key = frozenset(vecs.values())
            if key not in bottoms:
                raise InternalGluingError(f"top face {f} of tet {i} has no partner")
            g, by_vec = bottoms.pop(key)
            perm = [None] * 4
            perm[f] = g
            for vert, vec in vecs.items():
                perm[vert] = by_vec[vec]
            perm = tuple(perm)
            gluings[i][f] = Gluing(j, perm)
            inv = [None] * 4
            for a, b in enumerate(perm):
                inv[b] = a
            gluings[j][g] = Gluing(i, tuple(inv))

    slots = [(t, e) for t in range(n) for e in EDGES]
    uf = UnionFind(slots)
    for t in range(n):
        for f, g in gluings[t].items():
            for a, b in itertools.combinations([v for v in range(4) if v != f], 2):
                c, d = sorted((g.perm[a], g.perm[b]))
                uf.union((t, (a, b)), (g.tet, (c, d)))
    roots = {}
    for s in slots:
        roots.setdefault(uf.find(s), []).append(s)
    classes = sorted(roots.values())
    edge_index = {s: e for e, cls in enumerate(classes) for s in cls}

    # Representative slope of each class: the one seen in the lowest layer.
    edge_slopes = [normalize_slope(_slot_vector(corners[t], e)) for t, e in
                   (cls[0] for cls in classes)]

    tri = LayeredTriangulation(
        word=w.letters, steps=steps, gluings=gluings, edge_classes=classes,
        edge_slopes=edge_slopes, monodromy=A, edge_index=edge_index,
    )
    _verify(tri, corners)
    return tri


def count_vertex_classes(tri: LayeredTriangulation) -> int:
    n = tri.num_tetrahedra
    uf = UnionFind([(t, v) for t in range(n) for v in range(4)])
    for t in range(n):
        for f, g in tri.gluings[t].items():
            for v in range(4):
                if v != f:
                    uf.union((t, v), (g.tet, g.perm[v]))
    return len({uf.find((t, v)) for t in range(n) for v in range(4)})


def _slot_vector(corners, edge):
    a, b = edge
    return (corners[b][0] - corners[a][0], corners[b][1] - corners[a][1])


def _slot_vectors(corners):
    return [_slot_vector(corners, e) for e in EDGES]


def _verify(tri: LayeredTriangulation, corners) -> None:
    n = tri.num_tetrahedra
    for t in range(n):
        if sorted(tri.gluings[t]) != [0, 1, 2, 3]:
            raise InternalGluingError(f"tet {t} has unglued faces")
        for f, g in tri.gluings[t].items():
            back = tri.gluings[g.tet][g.perm[f]]
            if back.tet != t or any(back.perm[g.perm[v]] != v for v in range(4)):
                raise InternalGluingError(f"gluing of tet {t} face {f} not involutive")
            # Consistent orientation of the standard labelling means odd gluings.
            if _perm_sign(g.perm) != -1:
                raise InternalGluingError(f"gluing of tet {t} face {f} reverses orientation")
    if tri.num_edges != n:
        raise InternalGluingError(f"{tri.num_edges} edge classes for {n} tetrahedra")
    if sum(tri.degrees()) != 6 * n:
        raise InternalGluingError("edge degrees do not sum to 6N")
    # Edge classes must correspond one-to-one with slopes modulo the monodromy.
    base = [(1, 0), (0, 1), (1, 1)]
    slope_uf = UnionFind({normalize_slope(s) for t in range(n) for s in _slot_vectors(corners[t])}
                         | {normalize_slope(_apply(tri.monodromy, b)) for b in base} | set(base))
    for b in base:
        slope_uf.union(b, normalize_slope(_apply(tri.monodromy, b)))
    orbit_of_class = {}
    for e, cls in enumerate(tri.edge_classes):
        orbits = {slope_uf.find(normalize_slope(_slot_vector(corners[t], edge))) for t, edge in cls}
        if len(orbits) != 1:
            raise InternalGluingError(f"edge class {e} mixes slopes")
        orbit_of_class[e] = orbits.pop()
    if len(set(orbit_of_class.values())) != n:
        raise InternalGluingError("distinct edge classes share a slope")
    if count_vertex_classes(tri) != 1:
        raise InternalGluingError("triangulation has more than one cusp")
    # Cusp cross-section: 4N triangles, 6N edges, 2N vertices.
    chi = 2 * tri.num_edges - 6 * n + 4 * n
    if chi != 0:
        raise InternalGluingError(f"cusp Euler characteristic {chi} != 0")
