"""Kirby calculus moves on framed link diagrams, done algebraically.

Moves act on the weighted-graph model of a diagram (framings on vertices,
linking numbers on edges), not on pictures.  Each move returns a new
diagram whose move log gains one record; the order of the first homology
of the presented 3-manifold is recomputed on both sides of every move and
any disagreement aborts with a diagnostic, since each move is supposed to
be a diffeomorphism of the underlying manifold.

Geometric validity (e.g. that a component really is an unknot after a
handle slide) is only guaranteed for diagrams built by this package's
constructors and for the scripted family reduction, which replays a fixed
sequence of moves whose pictures are known.

The family reduction takes the two-component rational diagram of the
(h, k) surgery presentation down to a linear chain of unknots:

    two +1 blowups, two inverse slam dunks, one handle slide, two +1
    blowdowns, an orientation normalization, then h-1 blowups framed -1
    and a final +1 blowdown converting the h-framed component into a
    string of -2-framed unknots.

The result is the chain [-2, -(k+1), -2 x h] with all edges +1.
"""

from fractions import Fraction

from .diagram import (
    INFINITE,
    FramedLinkDiagram,
    MoveRecord,
    Vertex,
    compute_h1,
    h1_order,
)

__all__ = [
    "INFINITE",
    "FramedLinkDiagram",
    "IllegalMoveError",
    "InvariantViolationError",
    "MoveRecord",
    "blow_down",
    "blow_up",
    "h1_order",
    "handle_slide",
    "inverse_slam_dunk",
    "reduce_family_diagram",
    "replay",
    "reverse_orientation",
    "slam_dunk",
]


class IllegalMoveError(ValueError):
    """The requested move's preconditions are not met."""


class InvariantViolationError(RuntimeError):
    """A move changed the order of the first homology; the diagram is corrupt."""


def _edge_dict(d: FramedLinkDiagram):
    return {(i, j): w for i, j, w in d.edges}


def _key(i, j):
    return (i, j) if i < j else (j, i)


def _record(before, after_vertices, after_edges, move, args):
    """Assemble the post-move diagram and verify the H_1 order is unchanged.

    `after_edges` is a dict keyed by canonical (sorted) id pairs; zero
    weights may be present and are dropped here.
    """
    before_h1 = before.h1
    vertices = tuple(after_vertices)
    edges = tuple(sorted((i, j, w) for (i, j), w in after_edges.items() if w))
    after_h1 = compute_h1(vertices, edges)
    if after_h1 != before_h1:
        raise InvariantViolationError(
            f"move {move} with args {dict(args)} changed |H_1|: "
            f"{before_h1!r} -> {after_h1!r}"
        )
    rec = MoveRecord(move, tuple(args), before_h1, after_h1)
    final = FramedLinkDiagram._trusted(vertices, edges, before.move_log + (rec,))
    final.__dict__["h1"] = after_h1
    return final


def _fresh_id(d: FramedLinkDiagram, base: str) -> str:
    ids = {v.id for v in d.vertices}
    if base not in ids:
        return base
    n = 1
    while f"{base}{n}" in ids:
        n += 1
    return f"{base}{n}"


def blow_down(d: FramedLinkDiagram, vid: str) -> FramedLinkDiagram:
    """Remove a +1- or -1-framed unknot, twisting everything it links.

    For framing e = +-1: each remaining framing drops by e * lk^2 and each
    remaining linking number by e * lk_i * lk_j.
    """
    try:
        v = d.vertex(vid)
    except KeyError:
        raise IllegalMoveError(f"no vertex {vid!r}") from None
    if v.framing not in (1, -1):
        raise IllegalMoveError(f"blow down needs framing +-1, got {v.framing}")
    if not v.is_unknot:
        raise IllegalMoveError(f"blow down needs an unknot at {vid!r}")
    eps = int(v.framing)
    lk = {u: w for u, w in d.neighbors(vid)}
    vertices = [
        Vertex(u.id, u.framing - eps * lk[u.id] ** 2, u.is_unknot)
        if u.id in lk
        else u
        for u in d.vertices
        if u.id != vid
    ]
    edges = {k: w for k, w in _edge_dict(d).items() if vid not in k}
    touched = sorted(lk)
    for a in range(len(touched)):
        for b in range(a + 1, len(touched)):
            i, j = touched[a], touched[b]
            key = _key(i, j)
            edges[key] = edges.get(key, 0) - eps * lk[i] * lk[j]
    args = (("vertex", vid), ("sign", eps))
    return _record(d, vertices, edges, "blow_down", args)


def blow_up(d: FramedLinkDiagram, sign: int, star=None, new_id: str = None) -> FramedLinkDiagram:
    """Introduce a +-1-framed unknot with a prescribed star of linking numbers.

    The existing framings and linkings are adjusted by the inverse of the
    blow-down rule, so blow_down of the new vertex is the exact identity.
    """
    if sign not in (1, -1):
        raise IllegalMoveError(f"blow up sign must be +-1, got {sign}")
    star = dict(star or {})
    for u in star:
        if u not in {v.id for v in d.vertices}:
            raise IllegalMoveError(f"star references unknown vertex {u!r}")
    star = {u: int(w) for u, w in star.items() if w}
    vid = _fresh_id(d, new_id or "u")
    vertices = [
        Vertex(u.id, u.framing + sign * star[u.id] ** 2, u.is_unknot)
        if u.id in star
        else u
        for u in d.vertices
    ]
    vertices.append(Vertex(vid, Fraction(sign), True))
    edges = _edge_dict(d)
    touched = sorted(star)
    for a in range(len(touched)):
        for b in range(a + 1, len(touched)):
            i, j = touched[a], touched[b]
            key = _key(i, j)
            edges[key] = edges.get(key, 0) + sign * star[i] * star[j]
    for u, w in star.items():
        edges[_key(u, vid)] = w
    args = (
        ("id", vid),
        ("sign", sign),
        ("star", tuple(sorted(star.items()))),
    )
    return _record(d, vertices, edges, "blow_up", args)


def _canonical_split(r: Fraction) -> int:
    # n - 1/x = r with the integer part rounded away from zero, so that
    # repeated splits of a rational < -1 produce entries <= -2 (and of a
    # rational > 1, entries >= 2).
    p, q = r.numerator, r.denominator
    if p > 0:
        return -((-p) // q)
    return p // q


def inverse_slam_dunk(d: FramedLinkDiagram, vid: str, n: int = None, leaf_id: str = None) -> FramedLinkDiagram:
    """Split a rational framing p/q as n - 1/x, hanging a new x-framed leaf.

    The vertex keeps its other edges and becomes n-framed; the new leaf
    links it exactly once.  Without a forced n the framing must be honestly
    rational (q >= 2) and the canonical split is used; a caller-forced n is
    accepted for any framing as long as n differs from it.
    """
    try:
        v = d.vertex(vid)
    except KeyError:
        raise IllegalMoveError(f"no vertex {vid!r}") from None
    r = v.framing
    if n is None:
        if r.denominator in (0, 1):
            raise IllegalMoveError(
                f"framing {r} is an integer; a split must be forced to dunk it"
            )
        n = _canonical_split(r)
    n = int(n)
    if Fraction(n) == r:
        raise IllegalMoveError(f"forced split n={n} equals the framing itself")
    x = 1 / (Fraction(n) - r)  # n - 1/x = r
    leaf = _fresh_id(d, leaf_id or f"{vid}_leaf")
    vertices = [
        Vertex(u.id, Fraction(n), u.is_unknot) if u.id == vid else u
        for u in d.vertices
    ]
    vertices.append(Vertex(leaf, x, True))
    edges = _edge_dict(d)
    edges[_key(vid, leaf)] = 1
    args = (("vertex", vid), ("n", n), ("leaf", leaf))
    return _record(d, vertices, edges, "inverse_slam_dunk", args)


def slam_dunk(d: FramedLinkDiagram, leaf_id: str) -> FramedLinkDiagram:
    """Absorb a rational leaf into its integer-framed neighbor: n - 1/x.

    The leaf must link exactly one other component, once.  The neighbor's
    framing must be an integer (the move is not a diffeomorphism otherwise)
    and the leaf framing must be nonzero (a 0-framed leaf would send the
    neighbor's coefficient to infinity; cancel such pairs by other means).
    """
    try:
        leaf = d.vertex(leaf_id)
    except KeyError:
        raise IllegalMoveError(f"no vertex {leaf_id!r}") from None
    nbrs = d.neighbors(leaf_id)
    if len(nbrs) != 1:
        raise IllegalMoveError(f"slam dunk needs a leaf; {leaf_id!r} has {len(nbrs)} neighbors")
    (nid, w) = nbrs[0]
    if abs(w) != 1:
        raise IllegalMoveError(f"leaf must link its neighbor once, got {w}")
    nv = d.vertex(nid)
    if nv.framing.denominator != 1:
        raise IllegalMoveError(
            f"slam dunk needs an integer framing on the neighbor, got {nv.framing}"
        )
    x = leaf.framing
    if x == 0:
        raise IllegalMoveError("0-framed leaf: coefficient would become infinite")
    new_framing = nv.framing - 1 / x
    vertices = [
        Vertex(u.id, new_framing, u.is_unknot) if u.id == nid else u
        for u in d.vertices
        if u.id != leaf_id
    ]
    edges = {k: w2 for k, w2 in _edge_dict(d).items() if leaf_id not in k}
    args = (("leaf", leaf_id), ("into", nid))
    return _record(d, vertices, edges, "slam_dunk", args)


def handle_slide(d: FramedLinkDiagram, slide_id: str, over_id: str, sign: int) -> FramedLinkDiagram:
    """Slide one integer-framed component over another.

    On the linking matrix this is the congruence adding +-(row and column
    of `over_id`) to those of `slide_id`; it preserves the determinant and
    the signature.  The unknottedness flag of the slid component is kept,
    which is only geometrically sound for the scripted reductions replayed
    by this package.
    """
    if slide_id == over_id:
        raise IllegalMoveError("cannot slide a component over itself")
    if sign not in (1, -1):
        raise IllegalMoveError(f"slide sign must be +-1, got {sign}")
    try:
        vi = d.vertex(slide_id)
        vj = d.vertex(over_id)
    except KeyError as e:
        raise IllegalMoveError(str(e)) from None
    if vi.framing.denominator != 1 or vj.framing.denominator != 1:
        raise IllegalMoveError("handle slide needs integer framings on both components")
    lij = d.linking(slide_id, over_id)
    new_fi = vi.framing + vj.framing + 2 * sign * lij
    vertices = [
        Vertex(u.id, new_fi, u.is_unknot) if u.id == slide_id else u
        for u in d.vertices
    ]
    edges = _edge_dict(d)
    for uid, ljk in d.neighbors(over_id):
        if uid == slide_id:
            continue
        key = _key(slide_id, uid)
        edges[key] = edges.get(key, 0) + sign * ljk
    edges[_key(slide_id, over_id)] = lij + sign * vj.framing.numerator
    args = (("slide", slide_id), ("over", over_id), ("sign", sign))
    return _record(d, vertices, edges, "handle_slide", args)


def reverse_orientation(d: FramedLinkDiagram, vid: str) -> FramedLinkDiagram:
    """Reverse the orientation of one component: its linking numbers flip sign.

    A relabeling of the same diagram, recorded in the move log so replays
    stay complete; framings and all invariants are untouched.
    """
    if vid not in {v.id for v in d.vertices}:
        raise IllegalMoveError(f"no vertex {vid!r}")
    edges = {
        k: (-w if vid in k else w)
        for k, w in _edge_dict(d).items()
    }
    args = (("vertex", vid),)
    return _record(d, list(d.vertices), edges, "reverse_orientation", args)


MOVES = {
    "blow_down": lambda d, a: blow_down(d, a["vertex"]),
    "blow_up": lambda d, a: blow_up(d, a["sign"], a.get("star", {}), a.get("id")),
    "inverse_slam_dunk": lambda d, a: inverse_slam_dunk(d, a["vertex"], a.get("n"), a.get("leaf")),
    "slam_dunk": lambda d, a: slam_dunk(d, a["leaf"]),
    "handle_slide": lambda d, a: handle_slide(d, a["slide"], a["over"], a["sign"]),
    "reverse_orientation": lambda d, a: reverse_orientation(d, a["vertex"]),
}


def replay(d: FramedLinkDiagram, script) -> FramedLinkDiagram:
    """Apply a JSON move script, a list of {"move": name, "args": {...}}."""
    for step in script:
        name = step["move"]
        if name not in MOVES:
            raise IllegalMoveError(f"unknown move {name!r}")
        d = MOVES[name](d, step.get("args", {}))
    return d


def reduce_family_diagram(h: int, k: int) -> FramedLinkDiagram:
    """Replay the scripted reduction of the (h, k) surgery diagram to a chain.

    Starts from the two-component rational diagram (framings -2 + 1/(k+1)
    and -3 - 1/h, linking -2) and returns the linear chain

        [-2, -(k+1), -2 repeated h times]

    with all edges +1 and the full move log attached.  Every move checks
    that |H_1| = (h+1)(2k-1)+2 is preserved.
    """
    from .contact import presentation_for, smooth_diagram

    if h < 1 or k < 1:
        raise ValueError(f"family is defined for h, k >= 1, got h={h}, k={k}")
    d = smooth_diagram(presentation_for(h, k))
    d = blow_up(d, +1, {"K_e": 1, "K_a": 1}, new_id="p1")
    d = blow_up(d, +1, {"K_e": 1, "K_a": 1}, new_id="p2")
    d = inverse_slam_dunk(d, "K_e", n=0, leaf_id="L_e")   # leaf framed -(k+1)
    d = inverse_slam_dunk(d, "K_a", n=-1, leaf_id="L_a")  # leaf framed h
    d = handle_slide(d, "K_a", "K_e", -1)
    d = blow_down(d, "p1")
    d = blow_down(d, "p2")
    # normalize the edge signs left by the slide before the chain conversion
    d = reverse_orientation(d, "K_a")
    d = reverse_orientation(d, "L_a")
    prev = "K_a"
    for j in range(1, h):
        nid = f"t{j}"
        d = blow_up(d, -1, {"L_a": 1, prev: 1}, new_id=nid)
        prev = nid
    d = blow_down(d, "L_a")

    expected_order = (h + 1) * (2 * k - 1) + 2
    if d.h1 != expected_order:
        raise InvariantViolationError(
            f"family reduction ({h}, {k}): |H_1| = {d.h1!r}, expected {expected_order}"
        )
    if not d.is_linear_chain() or any(w != 1 for _, _, w in d.edges):
        raise InvariantViolationError(
            f"family reduction ({h}, {k}) did not end on a +1-edge chain"
        )
    framings = d.chain_framings()
    expected = [Fraction(-2), Fraction(-(k + 1))] + [Fraction(-2)] * h
    if framings != expected and framings != expected[::-1]:
        raise InvariantViolationError(
            f"family reduction ({h}, {k}) produced unexpected chain {framings}"
        )
    return d
