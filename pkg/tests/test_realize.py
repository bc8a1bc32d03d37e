import json

import pytest

from gridknot import jumps as jp
from gridknot import moves as mv
from gridknot import planar as pl
from gridknot import realize as rz
from gridknot.grid import trivial_diagram, validate

from conftest import knot_reps


def _exterior_moves(d):
    for m in mv.available_moves(d):
        if m.kind in (
            mv.MoveKind.EXTERIOR_EXCHANGE,
            mv.MoveKind.EXTERIOR_MERGE,
            mv.MoveKind.ROTATION,
        ):
            yield m


def assert_trace_contract(d, m):
    trace = rz.realize(d, m)
    replayed = rz.replay(trace)
    assert pl.gauss_code(replayed) == pl.gauss_code(trace.final)
    assert pl.gauss_code(replayed) == pl.gauss_code(rz.to_planar(mv.apply(d, m)))
    sigmas = [jp.sigma(s) for s in jp.jump_decomposition(d, m)]
    assert len(trace.moves) <= rz.sigma_budget(d, m) == sum(s.sigma_simple for s in sigmas)
    if not trace.isotopy_shortcut:
        for r3c, s in zip(trace.jump_r3_counts, sigmas):
            assert r3c == s.v
    counts = trace.counts_by_kind()
    if all(s.e_boundary == 0 for s in sigmas):
        assert counts.get("r1_create", 0) + counts.get("r1_delete", 0) == 0
    return trace


def test_rotations_on_trivial_are_empty():
    for rot in mv.ROTATIONS:
        trace = assert_trace_contract(trivial_diagram(), rot)
        assert trace.moves == ()


def test_stuck_eight_exchanges(stuck8):
    for axis in (mv.Axis.HORIZONTAL, mv.Axis.VERTICAL):
        trace = assert_trace_contract(stuck8, mv.exterior_exchange(axis))
        assert 0 < len(trace.moves) <= 156


def test_trefoil_rotations(trefoil5):
    for rot in mv.ROTATIONS:
        assert_trace_contract(trefoil5, rot)


@pytest.mark.parametrize("n", (2, 3, 4))
def test_exhaustive_small(n):
    for d in knot_reps(n):
        for m in _exterior_moves(d):
            assert_trace_contract(d, m)


def test_realize_rejects_links():
    link = validate(4, [(1, 2), (1, 2), (3, 4), (3, 4)])
    from gridknot.simplify import NotAKnotError

    with pytest.raises(NotAKnotError):
        rz.realize(link, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))


def test_realize_rejects_inapplicable_move(trefoil5):
    # the spiral diagram's extreme rows are interleaved
    with pytest.raises(mv.InapplicableMoveError):
        rz.realize(trefoil5, mv.exterior_exchange(mv.Axis.HORIZONTAL))


def test_trace_json_and_tamper_detection(stuck8):
    m = mv.exterior_exchange(mv.Axis.HORIZONTAL)
    trace = rz.realize(stuck8, m)
    obj = rz.trace_to_json(trace, stuck8, m)
    assert obj["counts"]["r3"] == sum(trace.jump_r3_counts)
    assert json.loads(json.dumps(obj))["final_gauss"] == obj["final_gauss"]

    r3_at = next(i for i, r in enumerate(trace.moves) if r.kind == "r3")
    forged = list(trace.moves)
    labels = list(forged[r3_at].payload["labels"])
    labels[0], labels[1] = labels[1], labels[0]
    bad_payload = dict(forged[r3_at].payload)
    bad_payload["labels"] = labels
    bad_payload["sides"] = [[["missing", True], ["missing", False]]] * 3
    forged[r3_at] = pl.ReidemeisterMove("r3", bad_payload)
    tampered = rz.RealizationTrace(
        trace.initial,
        tuple(forged),
        trace.final,
        trace.jump_move_counts,
        trace.jump_r3_counts,
    )
    with pytest.raises(pl.IllegalMoveAtSiteError):
        rz.replay(tampered)


def test_frames_written(tmp_path, stuck8):
    frames: list = []
    trace = rz.realize(stuck8, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW), frames=frames)
    names = rz.write_frames(frames, str(tmp_path))
    assert len(names) == len(frames) >= len(trace.moves)
    for name in names:
        text = (tmp_path / name).read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    # deterministic rendering
    again = rz.render_frame_svg(frames[0][0], frames[0][1])
    assert again == (tmp_path / names[0]).read_text()


def test_replay_of_empty_trace_is_initial(trefoil5):
    # a rotation of the spiral diagram is a planar isotopy of the drawing
    trace = rz.realize(trefoil5, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))
    if trace.isotopy_shortcut:
        assert trace.moves == ()
        assert rz.replay(trace) is trace.initial
