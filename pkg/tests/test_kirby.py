import random
from fractions import Fraction

import pytest

from openbooks.diagram import INFINITE, FramedLinkDiagram, h1_order
from openbooks.kirby import (
    IllegalMoveError,
    blow_down,
    blow_up,
    handle_slide,
    inverse_slam_dunk,
    reduce_family_diagram,
    replay,
    reverse_orientation,
    slam_dunk,
)
from openbooks.lens import chain_to_lens, family_lens, lens_equal
from openbooks.linalg import det, signature

from diagram_gen import exercise_moves, random_diagram


def chain(*framings, weight=1):
    vs = [(f"c{i}", f) for i, f in enumerate(framings)]
    es = {(f"c{i}", f"c{i+1}"): weight for i in range(len(framings) - 1)}
    return FramedLinkDiagram.build(vs, es)


def test_h1_order_examples():
    assert h1_order(FramedLinkDiagram.build([], {})) == 1
    assert h1_order(FramedLinkDiagram.build([("x", 0)], {})) is INFINITE
    d = FramedLinkDiagram.build(
        [("x", Fraction(-3, 2)), ("y", -4)], {("x", "y"): -2}
    )
    assert h1_order(d) == 4  # det [[-3, -4], [-2, -4]]


def test_blow_down_chain_to_s1xs2():
    d = chain(-2, -1, -2)
    assert d.h1 is INFINITE
    d = blow_down(d, "c1")
    assert [v.framing for v in d.vertices] == [-1, -1]
    assert d.linking("c0", "c2") == 1
    assert d.h1 is INFINITE
    d = blow_down(d, "c0")
    assert [v.framing for v in d.vertices] == [0]
    assert d.h1 is INFINITE


def test_blow_down_split_unknot():
    d = FramedLinkDiagram.build([("x", 1)], {})
    assert blow_down(d, "x").vertices == ()


def test_blow_down_preconditions():
    with pytest.raises(IllegalMoveError):
        blow_down(chain(-2, -1), "c0")  # framing not +-1
    knotted = FramedLinkDiagram.build([("x", Fraction(1), False)], {})
    with pytest.raises(IllegalMoveError):
        blow_down(knotted, "x")
    with pytest.raises(IllegalMoveError):
        blow_down(chain(-2), "zz")


def test_blow_up_then_down_is_identity():
    d = chain(-2, 3, 7)
    up = blow_up(d, 1, {"c0": 1, "c2": -2}, new_id="b")
    assert blow_down(up, "b").same_diagram(d)
    up = blow_up(d, -1, {}, new_id="b")
    assert up.framing("b") == -1
    assert up.h1 == d.h1
    assert blow_down(up, "b").same_diagram(d)


def test_blow_up_family_step():
    # two +1-blowups linking both components raise both framings by 2
    # and the edge from -2 to 0
    from openbooks.contact import presentation_for, smooth_diagram

    d = smooth_diagram(presentation_for(1, 1))
    d = blow_up(d, 1, {"K_e": 1, "K_a": 1})
    d = blow_up(d, 1, {"K_e": 1, "K_a": 1})
    assert d.framing("K_e") == Fraction(-3, 2) + 2
    assert d.framing("K_a") == -2
    assert d.linking("K_e", "K_a") == 0


def test_inverse_slam_dunk_forced_splits():
    d = FramedLinkDiagram.build([("v", Fraction(1, 3))], {})
    d2 = inverse_slam_dunk(d, "v", n=0, leaf_id="w")
    assert d2.framing("v") == 0
    assert d2.framing("w") == -3
    assert d2.linking("v", "w") == 1

    d = FramedLinkDiagram.build([("v", Fraction(-3, 2))], {})
    d2 = inverse_slam_dunk(d, "v", n=-1, leaf_id="w")
    assert d2.framing("v") == -1
    assert d2.framing("w") == 2


def test_inverse_slam_dunk_canonical():
    d = FramedLinkDiagram.build([("v", Fraction(-3, 2))], {})
    d2 = inverse_slam_dunk(d, "v")
    assert d2.framing("v") == -2
    assert d2.framing("v_leaf") == -2
    assert Fraction(-2) - 1 / Fraction(-2) == Fraction(-3, 2)


def test_inverse_slam_dunk_errors():
    d = FramedLinkDiagram.build([("v", 3)], {})
    with pytest.raises(IllegalMoveError):
        inverse_slam_dunk(d, "v")  # integer framing, no forced split
    with pytest.raises(IllegalMoveError):
        inverse_slam_dunk(d, "v", n=3)  # split equal to the framing


def test_slam_dunk_undoes_inverse():
    d = chain(-2, -5, 4)
    d2 = inverse_slam_dunk(d, "c2", n=3, leaf_id="w")
    back = slam_dunk(d2, "w")
    assert back.same_diagram(d)


def test_slam_dunk_chain_of_two():
    d = chain(-2, -2)
    d2 = slam_dunk(d, "c1")
    assert [v.framing for v in d2.vertices] == [Fraction(-3, 2)]


def test_slam_dunk_family_chain_collapses_to_surgery_coefficient():
    for h in range(1, 7):
        for k in range(1, 7):
            framings = [-2, -(k + 1)] + [-2] * h
            d = chain(*framings)
            while len(d.vertices) > 1:
                leaf = d.vertices[-1].id
                d = slam_dunk(d, leaf)
            p = (h + 1) * (2 * k - 1) + 2
            q = (h + 1) * k + 1
            assert d.vertices[0].framing == Fraction(-p, q)


def test_slam_dunk_preconditions():
    with pytest.raises(IllegalMoveError):
        slam_dunk(chain(-2, -3, -2), "c1")  # not a leaf
    d = FramedLinkDiagram.build(
        [("v", Fraction(1, 2)), ("w", 4)], {("v", "w"): 1}
    )
    with pytest.raises(IllegalMoveError):
        slam_dunk(d, "w")  # neighbor framing is rational
    d = chain(-2, 0)
    with pytest.raises(IllegalMoveError):
        slam_dunk(d, "c1")  # 0-framed leaf


def test_handle_slide_preserves_det_and_signature():
    rng = random.Random(5)
    for _ in range(200):
        d = random_diagram(rng, rational_prob=0.0)
        ids = [v.id for v in d.vertices]
        if len(ids) < 2:
            continue
        i, j = rng.sample(ids, 2)
        s = rng.choice((1, -1))
        slid = handle_slide(d, i, j, s)
        m0, m1 = d.linking_matrix(), slid.linking_matrix()
        assert det(m0) == det(m1)
        assert signature(m0) == signature(m1)
        assert slid.h1 == d.h1


def test_handle_slide_rejects_rational_framings():
    d = FramedLinkDiagram.build(
        [("v", Fraction(1, 2)), ("w", 4)], {("v", "w"): 1}
    )
    with pytest.raises(IllegalMoveError):
        handle_slide(d, "v", "w", 1)
    with pytest.raises(IllegalMoveError):
        handle_slide(d, "w", "w", 1)


def test_reverse_orientation_flips_incident_edges_only():
    d = chain(-2, -3, -2)
    r = reverse_orientation(d, "c1")
    assert r.linking("c0", "c1") == -1
    assert r.linking("c1", "c2") == -1
    assert [v.framing for v in r.vertices] == [v.framing for v in d.vertices]
    assert r.h1 == d.h1
    assert reverse_orientation(r, "c1").same_diagram(d)


def test_family_intermediate_pictures():
    # replay the scripted reduction by hand and check the two labeled
    # intermediate states: after the blowups and dunks, and after the
    # slide plus the two +1-blowdowns
    from openbooks.contact import presentation_for, smooth_diagram

    for h, k in [(1, 1), (3, 2), (2, 5)]:
        d = smooth_diagram(presentation_for(h, k))
        d = blow_up(d, 1, {"K_e": 1, "K_a": 1}, new_id="p1")
        d = blow_up(d, 1, {"K_e": 1, "K_a": 1}, new_id="p2")
        d = inverse_slam_dunk(d, "K_e", n=0, leaf_id="L_e")
        d = inverse_slam_dunk(d, "K_a", n=-1, leaf_id="L_a")
        # second picture: 0- and -1-framed components, two +1 circles,
        # leaves framed -(k+1) and h
        assert d.framing("K_e") == 0
        assert d.framing("K_a") == -1
        assert d.framing("p1") == d.framing("p2") == 1
        assert d.framing("L_e") == -(k + 1)
        assert d.framing("L_a") == h
        assert d.linking("K_e", "K_a") == 0

        d = handle_slide(d, "K_a", "K_e", -1)
        d = blow_down(d, "p1")
        d = blow_down(d, "p2")
        # third picture: the chain h, -1, -(k+1), -2
        assert sorted(v.id for v in d.vertices) == ["K_a", "K_e", "L_a", "L_e"]
        assert d.framing("L_a") == h
        assert d.framing("K_a") == -1
        assert d.framing("L_e") == -(k + 1)
        assert d.framing("K_e") == -2
        assert abs(d.linking("L_a", "K_a")) == 1
        assert abs(d.linking("K_a", "L_e")) == 1
        assert abs(d.linking("L_e", "K_e")) == 1
        assert d.is_linear_chain()


def test_move_log_records_have_constant_h1():
    d = reduce_family_diagram(3, 2)
    order = 4 * 3 + 2
    assert len(d.move_log) > 0
    for rec in d.move_log:
        assert rec.h1_before == order
        assert rec.h1_after == order


def test_reduce_family_examples():
    assert [v.framing for v in reduce_family_diagram(1, 1).vertices] == [-2, -2, -2]
    d21 = reduce_family_diagram(2, 1)
    assert sorted(v.framing for v in d21.vertices) == [-2, -2, -2, -2]
    assert d21.h1 == 5
    d12 = reduce_family_diagram(1, 2)
    assert d12.chain_framings() in ([-2, -3, -2], [-2, -3, -2][::-1])
    assert d12.h1 == 8


def test_reduce_family_chain_shape():
    for h in range(1, 9):
        for k in range(1, 9):
            d = reduce_family_diagram(h, k)
            assert d.is_linear_chain()
            assert all(w == 1 for _, _, w in d.edges)
            framings = d.chain_framings()
            expected = [Fraction(-2), Fraction(-(k + 1))] + [Fraction(-2)] * h
            assert framings in (expected, expected[::-1])
            assert lens_equal(
                chain_to_lens(framings), family_lens(h, k), oriented=True
            )


def test_reduce_family_signature_walk():
    # per-move signature bookkeeping on a replay of the recorded script:
    # +-1 blowups shift the signature by their sign, every other move
    # preserves it (slides by congruence, dunks and flips trivially)
    from openbooks.contact import presentation_for, smooth_diagram

    for h, k in [(1, 1), (2, 3), (4, 2), (5, 5)]:
        final = reduce_family_diagram(h, k)
        d = smooth_diagram(presentation_for(h, k))
        for rec in final.move_log:
            args = dict(rec.args)
            before_sig = (
                signature(d.linking_matrix()) if d.has_integer_framings() else None
            )
            if rec.move == "blow_up":
                d = blow_up(d, args["sign"], dict(args["star"]), args["id"])
                if before_sig is not None:
                    assert signature(d.linking_matrix()) == before_sig + args["sign"]
            elif rec.move == "blow_down":
                d = blow_down(d, args["vertex"])
                if before_sig is not None and d.has_integer_framings():
                    assert signature(d.linking_matrix()) == before_sig - args["sign"]
            elif rec.move == "inverse_slam_dunk":
                d = inverse_slam_dunk(d, args["vertex"], args["n"], args["leaf"])
            elif rec.move == "slam_dunk":
                d = slam_dunk(d, args["leaf"])
            elif rec.move == "handle_slide":
                d = handle_slide(d, args["slide"], args["over"], args["sign"])
                if before_sig is not None:
                    assert signature(d.linking_matrix()) == before_sig
            elif rec.move == "reverse_orientation":
                d = reverse_orientation(d, args["vertex"])
                if before_sig is not None:
                    assert signature(d.linking_matrix()) == before_sig
        assert d.same_diagram(final)


def test_replay_script_matches_direct_calls():
    d = chain(-2, Fraction(-7, 3))
    script = [
        {"move": "inverse_slam_dunk", "args": {"vertex": "c1", "leaf": "L"}},
        {"move": "blow_up", "args": {"sign": -1, "star": {"c0": 1, "c1": 1}, "id": "B"}},
        {"move": "blow_down", "args": {"vertex": "B"}},
        {"move": "reverse_orientation", "args": {"vertex": "c0"}},
    ]
    replayed = replay(d, script)
    direct = inverse_slam_dunk(d, "c1", leaf_id="L")
    direct = blow_up(direct, -1, {"c0": 1, "c1": 1}, new_id="B")
    direct = blow_down(direct, "B")
    direct = reverse_orientation(direct, "c0")
    assert replayed.same_diagram(direct)
    with pytest.raises(IllegalMoveError):
        replay(d, [{"move": "rolfsen_twist", "args": {}}])


def test_diagram_serialization_roundtrip():
    d = reduce_family_diagram(2, 2)
    back = FramedLinkDiagram.from_jsonable(d.to_jsonable())
    assert back.same_diagram(d)


def test_move_property_suite_small():
    rng = random.Random(2718)
    moves = 0
    for _ in range(250):
        d = random_diagram(rng)
        moves += exercise_moves(d, rng)
    assert moves >= 750
