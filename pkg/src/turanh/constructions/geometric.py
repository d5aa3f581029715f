"""Random parity construction on a chord arrangement.

Points sit on the unit circle in convex position. All chords are drawn, each
bounded face of the resulting subdivision gets an independent fair bit, and a
triple spans an edge when the faces inside its triangle have odd total.

Points are rational via the tangent half-angle map, so the only geometric
predicate (the order of crossings along a chord) is decided exactly. Cyclic
orders at vertices follow from the circular order of the points.

The parity vector of all triples is a linear image of the face bits over
GF(2), so it is uniform on the column span of the face/triangle incidence
matrix. Exact distributions enumerate that span instead of all face
assignments; the two agree and tests compare them for small cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from ..canon import canonical_graph
from ..density import class_counts, mask_class
from ..graph import GraphError, UniformGraph

MAX_EXACT = 6
MAX_SAMPLE = 12
_RETRIES = 50


class DegenerateArrangement(GraphError):
    pass


def circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@dataclass
class Arrangement:
    """Subdivision of the convex hull of ``len(params)`` circle points by all chords."""

    params: tuple                       # tangent half-angle parameters, increasing
    points: tuple = field(init=False)
    crossings: dict = field(init=False)     # ((a,c),(b,d)) -> exact point
    faces: list = field(init=False)         # vertex cycles of bounded faces
    face_chords: list = field(init=False)   # chord sides as a bitmask per face
    chords: list = field(init=False)
    chord_id: dict = field(init=False, repr=False)
    num_vertices: int = field(init=False)
    num_edges: int = field(init=False)

    def __post_init__(self):
        ts = tuple(Fraction(t) for t in self.params)
        if list(ts) != sorted(set(ts)):
            raise DegenerateArrangement("parameters must be distinct and increasing")
        if len(ts) < 3:
            raise GraphError("need at least three points")
        self.params = ts
        self.points = tuple(circle_point(t) for t in ts)
        self._build()

    @property
    def n(self) -> int:
        return len(self.points)

    # -- construction ----------------------------------------------------

    def _build(self):
        n = self.n
        P = self.points
        self.chords = list(combinations(range(n), 2))
        chord_id = self.chord_id = {c: k for k, c in enumerate(self.chords)}
        along = {c: [] for c in self.chords}
        self.crossings = {}
        for a, b, c, d in combinations(range(n), 4):
            (ax, ay), (bx, by), (cx, cy), (dx, dy) = P[a], P[b], P[c], P[d]
            den = _cross(0, 0, cx - ax, cy - ay, dx - bx, dy - by)
            s = _cross(0, 0, bx - ax, by - ay, dx - bx, dy - by) / den
            u = _cross(0, 0, bx - ax, by - ay, cx - ax, cy - ay) / den
            x = (ax + s * (cx - ax), ay + s * (cy - ay))
            node = ("x", a, b, c, d)
            self.crossings[node] = x
            along[(a, c)].append((s, node))
            along[(b, d)].append((u, node))
        # neighbours of each node, keyed by the circle point the direction leads to
        toward: dict = {}
        for (p, q), lst in along.items():
            lst.sort()
            if any(lst[i][0] == lst[i + 1][0] for i in range(len(lst) - 1)):
                raise DegenerateArrangement("three chords meet in a point")
            chain = [("p", p)] + [nd for _, nd in lst] + [("p", q)]
            for i in range(len(chain) - 1):
                u, v = chain[i], chain[i + 1]
                toward.setdefault(u, {})[q] = (v, chord_id[(p, q)])
                toward.setdefault(v, {})[p] = (u, chord_id[(p, q)])
        # ccw order of outgoing edges: directions to circle points are ccw in point order,
        # starting just after the node itself for boundary points
        rot = {}
        for node, nb in toward.items():
            targets = sorted(nb)
            if node[0] == "p":
                i = node[1]
                targets = [t for t in targets if t > i] + [t for t in targets if t < i]
            rot[node] = [nb[t] for t in targets]
        pos = {}
        for node, lst in rot.items():
            for k, (v, _) in enumerate(lst):
                pos[(node, v)] = k
        self.num_vertices = len(rot)
        self.num_edges = sum(len(x) for x in rot.values()) // 2
        # trace faces: next(u->v) = v->w where w precedes u in ccw order around v
        face_of = {}
        cycles = []
        half_chord = {}
        for node, lst in rot.items():
            for v, ch in lst:
                half_chord[(node, v)] = ch
        for start in half_chord:
            if start in face_of:
                continue
            cyc = []
            u, v = start
            while (u, v) not in face_of:
                face_of[(u, v)] = len(cycles)
                cyc.append((u, v))
                lst = rot[v]
                w = lst[(pos[(v, u)] - 1) % len(lst)][0]
                u, v = v, w
            cycles.append(cyc)
        outer = face_of[(("p", 1), ("p", 0))]
        if self.num_vertices - self.num_edges + len(cycles) != 2:
            raise DegenerateArrangement("Euler relation fails")
        if len(cycles) - 1 != comb(n, 4) + comb(n - 1, 2):
            raise DegenerateArrangement("unexpected number of faces")
        # chord sides: bit k set when the face is on the side of chord (p,q) holding
        # the points strictly between p and q; propagate from the corner face at point 0
        start_face = face_of[(("p", 0), rot[("p", 0)][0][0])]
        ref = 0
        for k, (p, q) in enumerate(self.chords):
            if p == 0 and q >= 2:
                ref |= 1 << k
        sides = {start_face: ref}
        stack = [start_face]
        while stack:
            f = stack.pop()
            for u, v in cycles[f]:
                g = face_of[(v, u)]
                if g == outer or g in sides:
                    continue
                sides[g] = sides[f] ^ (1 << half_chord[(u, v)])
                stack.append(g)
        keep = [i for i in range(len(cycles)) if i != outer]
        self.faces = [[u for u, _ in cycles[i]] for i in keep]
        self.face_chords = [sides[i] for i in keep]

    # -- geometry ---------------------------------------------------------

    def coords(self, node):
        return self.points[node[1]] if node[0] == "p" else self.crossings[node]

    def representative(self, f: int) -> tuple[Fraction, Fraction]:
        """Vertex centroid of face ``f`` (interior, faces are convex)."""
        pts = [self.coords(v) for v in self.faces[f]]
        return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))

    def triangle_faces(self, x: int, y: int, z: int) -> int:
        """Bitmask of faces inside triangle ``xyz`` (x < y < z), from chord sides."""
        cid = self.chord_id
        need = 1 << cid[(x, z)]
        mask = need | 1 << cid[(x, y)] | 1 << cid[(y, z)]
        out = 0
        for i, s in enumerate(self.face_chords):
            if s & mask == need:
                out |= 1 << i
        return out

    def triangle_faces_exact(self, x: int, y: int, z: int) -> int:
        """Same as :meth:`triangle_faces` via exact point-in-triangle tests."""
        A, B, C = self.points[x], self.points[y], self.points[z]
        out = 0
        for i in range(len(self.faces)):
            px, py = self.representative(i)
            s = [_cross(*A, *B, px, py), _cross(*B, *C, px, py), _cross(*C, *A, px, py)]
            if all(v > 0 for v in s) or all(v < 0 for v in s):
                out |= 1 << i
        return out

    def incidence(self) -> list[int]:
        """Per face, the bitmask of triples (in combinations order) whose triangle contains it."""
        cols = [0] * len(self.faces)
        for k, t in enumerate(combinations(range(self.n), 3)):
            m = self.triangle_faces(*t)
            i = 0
            while m:
                if m & 1:
                    cols[i] |= 1 << k
                m >>= 1
                i += 1
        return cols

    def graph_from_bits(self, bits: int) -> UniformGraph:
        """3-graph whose triples have odd face-bit sum."""
        cols = self.incidence()
        mask = 0
        for i, c in enumerate(cols):
            if bits >> i & 1:
                mask ^= c
        return UniformGraph.from_mask(self.n, mask, 3)


def random_arrangement(n: int, rng: np.random.Generator) -> Arrangement:
    """Arrangement on ``n`` random circle points; degenerate draws are redrawn."""
    for _ in range(_RETRIES):
        theta = rng.uniform(-math.pi, math.pi, size=n)
        ts = sorted({Fraction(math.tan(x / 2)).limit_denominator(10 ** 6) for x in theta})
        if len(ts) < n:
            continue
        try:
            return Arrangement(tuple(ts))
        except DegenerateArrangement:
            continue
    raise DegenerateArrangement("could not draw a general-position arrangement")


def gf2_basis(vectors) -> list[int]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


@dataclass(frozen=True)
class GeometricDistribution:
    h: int
    probabilities: dict          # canonical key -> Fraction
    graphs: dict                 # canonical key -> canonical representative
    rank: int
    faces: int

    def prob(self, target) -> Fraction:
        """Probability of one class or the total over a list of classes."""
        hs = [target] if isinstance(target, UniformGraph) else list(target)
        keys = {mask_class(g.n, g.arity, g.directed, g.mask()) for g in hs}
        if any(g.n != self.h or g.kind != (3, False) for g in hs):
            raise GraphError("target must be a 3-graph on the same number of vertices")
        return sum((self.probabilities.get(k, Fraction(0)) for k in keys), Fraction(0))

    def edge_marginal(self) -> Fraction:
        total = Fraction(0)
        for k, p in self.probabilities.items():
            total += p * Fraction(self.graphs[k].num_edges, comb(self.h, 3))
        return total


def _distribution(arr: Arrangement, outcomes) -> GeometricDistribution:
    h = arr.n
    probs: dict = {}
    graphs: dict = {}
    for mask, p in outcomes:
        key = mask_class(h, 3, False, mask)
        if key not in probs:
            probs[key] = Fraction(0)
            graphs[key] = canonical_graph(UniformGraph.from_mask(h, mask, 3))
        probs[key] += p
    return GeometricDistribution(h, dict(sorted(probs.items())), graphs,
                                 len(gf2_basis(arr.incidence())), len(arr.faces))


def geometric_exact(h: int, seed: int = 0) -> GeometricDistribution:
    """Exact distribution of the ``h``-vertex 3-graph spanned by ``h`` of the points."""
    if h not in (4, 5, 6):
        raise GraphError("exact distribution is available for h in {4, 5, 6}")
    arr = random_arrangement(h, np.random.default_rng(seed))
    basis = gf2_basis(arr.incidence())
    weight = Fraction(1, 2 ** len(basis))

    def span():
        cur = 0
        yield cur
        for i in range(1, 2 ** len(basis)):
            cur ^= basis[(i & -i).bit_length() - 1]   # gray code step
            yield cur

    return _distribution(arr, ((m, weight) for m in span()))


def geometric_bruteforce(arr: Arrangement) -> GeometricDistribution:
    """Enumerate every face assignment (reference for small arrangements)."""
    cols = arr.incidence()
    weight = Fraction(1, 2 ** len(cols))

    def gen():
        for bits in range(2 ** len(cols)):
            m = 0
            for i, c in enumerate(cols):
                if bits >> i & 1:
                    m ^= c
            yield m, weight
    return _distribution(arr, gen())


@dataclass(frozen=True)
class SampleStats:
    n: int
    trials: int
    seed: int
    edge_density: tuple                  # (mean, standard error)
    classes: dict                        # h -> {canonical key: (mean, standard error)}

    def stat(self, target) -> tuple[float, float]:
        """(mean, standard error) of the summed density of one class or a list of classes."""
        hs = [target] if isinstance(target, UniformGraph) else list(target)
        h = hs[0].n
        keys = {mask_class(g.n, 3, False, g.mask()) for g in hs}
        # per-trial sums are not stored; classes are disjoint so means add, errors bound
        mean = sum(self.classes[h].get(k, (0.0, 0.0))[0] for k in keys)
        se = sum(self.classes[h].get(k, (0.0, 0.0))[1] for k in keys)
        return mean, se


def _mean_se(xs):
    a = np.asarray(xs, dtype=float)
    se = float(a.std(ddof=1) / math.sqrt(len(a))) if len(a) > 1 else float("nan")
    return float(a.mean()), se


def geometric_sample(n: int, trials: int, seed: int = 0, sizes=(4, 5)) -> SampleStats:
    """Monte Carlo statistics of the construction on ``n`` points.

    Trial ``i`` draws angles and face bits from ``default_rng([seed, i])``.
    """
    if not 5 <= n <= MAX_SAMPLE:
        raise GraphError(f"n must be between 5 and {MAX_SAMPLE}")
    if trials < 1:
        raise GraphError("need at least one trial")
    edge = []
    per: dict = {h: [] for h in sizes}
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        arr = random_arrangement(n, rng)
        bits = rng.integers(0, 2, size=len(arr.faces))
        g = arr.graph_from_bits(int("".join(str(b) for b in bits[::-1]), 2))
        edge.append(g.num_edges / comb(n, 3))
        for h in sizes:
            per[h].append(class_counts(g, h))
    classes = {}
    for h in sizes:
        keys = sorted(set().union(*per[h]))
        total = comb(n, h)
        classes[h] = {k: _mean_se([c.get(k, 0) / total for c in per[h]]) for k in keys}
    return SampleStats(n, trials, seed, _mean_se(edge), classes)
