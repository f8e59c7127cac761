"""Framed link diagrams as weighted graphs, and their first homology order.

A diagram is a set of vertices (surgery components) carrying exact
rational framings, together with symmetric integer edge weights recording
pairwise linking numbers.  The presentation matrix of the first homology
of the surgered manifold has M_ii = p_i and M_ij = q_i * lk_ij, where the
framing of component i is p_i/q_i in lowest terms; the order of H_1 is
|det M|, with 0 reported as INFINITE.

Diagrams are immutable values.  Moves (in the kirby module) return new
diagrams and append MoveRecords; every record stores the H_1 order on
both sides of the move, which must agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import det_sparse_rows
from .serialize import fraction_str, parse_fraction


class _InfiniteOrder:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteOrder()


def order_to_jsonable(order):
    return "INF" if order is INFINITE else order


def order_from_jsonable(data):
    return INFINITE if data == "INF" else int(data)


@dataclass(frozen=True)
class Vertex:
    id: str
    framing: Fraction
    is_unknot: bool = True

    def __post_init__(self):
        object.__setattr__(self, "framing", Fraction(self.framing))


@dataclass(frozen=True)
class MoveRecord:
    """Audit entry for one move: kind, arguments, and the H_1 order check."""

    move: str
    args: tuple  # ((name, jsonable value), ...)
    h1_before: object
    h1_after: object

    def to_jsonable(self):
        return {
            "move": self.move,
            "args": {k: v for k, v in self.args},
            "h1_before": order_to_jsonable(self.h1_before),
            "h1_after": order_to_jsonable(self.h1_after),
        }


@dataclass(frozen=True)
class FramedLinkDiagram:
    """Framed unknots with integer pairwise linking, plus a move log."""

    vertices: tuple = ()
    edges: tuple = ()  # ((id_i, id_j, weight), ...) with id_i < id_j, sorted
    move_log: tuple = ()

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        idset = set(ids)
        if len(idset) != len(ids):
            raise ValueError("vertex ids must be distinct")
        seen = set()
        for i, j, w in self.edges:
            if i == j:
                raise ValueError(f"self-edge at {i!r}")
            if i not in idset or j not in idset:
                raise ValueError(f"edge ({i!r}, {j!r}) references unknown vertex")
            if not isinstance(w, int) or w == 0:
                raise ValueError("edge weights must be nonzero integers")
            if (i, j) in seen or i > j:
                raise ValueError("edges must be canonical: id_i < id_j, unique")
            seen.add((i, j))

    @staticmethod
    def _trusted(vertices, edges, move_log) -> "FramedLinkDiagram":
        # fast path for the move engine: inputs are canonical by construction
        d = object.__new__(FramedLinkDiagram)
        object.__setattr__(d, "vertices", vertices)
        object.__setattr__(d, "edges", edges)
        object.__setattr__(d, "move_log", move_log)
        return d

    @staticmethod
    def build(vertices, edges, move_log=()) -> "FramedLinkDiagram":
        """Construct from any iterable of vertices and an edge mapping/iterable.

        Edges may be given as ((i, j), w) pairs, (i, j, w) triples, or a dict
        {(i, j): w}; zero weights are dropped and pairs are canonicalized.
        """
        vs = tuple(
            v if isinstance(v, Vertex) else Vertex(v[0], Fraction(v[1]), *(v[2:] or (True,)))
            for v in vertices
        )
        if isinstance(edges, dict):
            items = [(i, j, w) for (i, j), w in edges.items()]
        else:
            items = []
            for e in edges:
                if len(e) == 2:
                    (i, j), w = e
                else:
                    i, j, w = e
                items.append((i, j, w))
        canon = {}
        for i, j, w in items:
            if w == 0:
                continue
            key = (i, j) if i < j else (j, i)
            if key in canon:
                raise ValueError(f"duplicate edge {key}")
            canon[key] = int(w)
        es = tuple(sorted((i, j, w) for (i, j), w in canon.items()))
        return FramedLinkDiagram(vs, es, tuple(move_log))

    # -- accessors ---------------------------------------------------------

    @cached_property
    def _index(self):
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _edge_map(self):
        m = {}
        for i, j, w in self.edges:
            m[(i, j)] = w
            m[(j, i)] = w
        return m

    def vertex(self, vid: str) -> Vertex:
        return self.vertices[self._index[vid]]

    def framing(self, vid: str) -> Fraction:
        return self.vertex(vid).framing

    def linking(self, i: str, j: str) -> int:
        return self._edge_map.get((i, j), 0)

    def neighbors(self, vid: str):
        out = []
        for i, j, w in self.edges:
            if i == vid:
                out.append((j, w))
            elif j == vid:
                out.append((i, w))
        return out

    def has_integer_framings(self) -> bool:
        return all(v.framing.denominator == 1 for v in self.vertices)

    # -- invariants --------------------------------------------------------

    @cached_property
    def h1(self):
        """Order of H_1 of the surgered manifold; INFINITE when b_1 > 0."""
        return compute_h1(self.vertices, self.edges)

    def linking_matrix(self):
        """Symmetric integer linking matrix (framings on the diagonal).

        Only defined when every framing is an integer.
        """
        if not self.has_integer_framings():
            raise ValueError("linking matrix needs integer framings")
        n = len(self.vertices)
        idx = self._index
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            m[i][i] = v.framing.numerator
        for a, b, w in self.edges:
            ia, ib = idx[a], idx[b]
            m[ia][ib] = w
            m[ib][ia] = w
        return m

    def is_linear_chain(self) -> bool:
        """Connected path with all linking weights of absolute value 1."""
        n = len(self.vertices)
        if n == 0:
            return False
        if len(self.edges) != n - 1:
            return False
        if any(abs(w) != 1 for _, _, w in self.edges):
            return False
        deg = {v.id: 0 for v in self.vertices}
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        if any(d > 2 for d in deg.values()):
            return False
        # n-1 edges with max degree 2 and no repeats: a path iff connected
        return self._is_connected()

    def _is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v.id: [] for v in self.vertices}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def chain_framings(self) -> list:
        """Framings read along the chain, starting from the endpoint that
        appears first in vertex order (deterministic)."""
        if not self.is_linear_chain():
            raise ValueError("diagram is not a linear chain")
        if len(self.vertices) == 1:
            return [self.vertices[0].framing]
        deg = {v.id: [] for v in self.vertices}
        for i, j, _ in self.edges:
            deg[i].append(j)
            deg[j].append(i)
        start = next(v.id for v in self.vertices if len(deg[v.id]) == 1)
        out = [start]
        prev = None
        cur = start
        while len(out) < len(self.vertices):
            nxt = next(u for u in deg[cur] if u != prev)
            out.append(nxt)
            prev, cur = cur, nxt
        return [self.framing(v) for v in out]

    # -- serialization -----------------------------------------------------

    def to_jsonable(self):
        return {
            "vertices": [
                {"id": v.id, "framing": fraction_str(v.framing), "unknot": v.is_unknot}
                for v in self.vertices
            ],
            "edges": [[i, j, w] for i, j, w in self.edges],
            "moves": [r.to_jsonable() for r in self.move_log],
        }

    @classmethod
    def from_jsonable(cls, data) -> "FramedLinkDiagram":
        vs = tuple(
            Vertex(v["id"], parse_fraction(v["framing"]), bool(v.get("unknot", True)))
            for v in data["vertices"]
        )
        es = tuple(sorted((i, j, int(w)) for i, j, w in data.get("edges", [])))
        return cls(vs, es)

    def same_diagram(self, other: "FramedLinkDiagram") -> bool:
        """Equality of vertices and edges, ignoring the move logs."""
        return self.vertices == other.vertices and self.edges == other.edges


def compute_h1(vertices, edges):
    """H_1 order from raw vertex/edge data: |det| of the presentation matrix."""
    n = len(vertices)
    if n == 0:
        return 1
    idx = {v.id: i for i, v in enumerate(vertices)}
    qs = [v.framing.denominator for v in vertices]
    rows = [
        {i: v.framing.numerator} if v.framing.numerator else {}
        for i, v in enumerate(vertices)
    ]
    for a, b, w in edges:
        ia, ib = idx[a], idx[b]
        rows[ia][ib] = qs[ia] * w
        rows[ib][ia] = qs[ib] * w
    d = det_sparse_rows(rows, n)
    return INFINITE if d == 0 else abs(d)


def h1_order(d: FramedLinkDiagram):
    """Order of the first homology of the 3-manifold presented by d."""
    return d.h1
