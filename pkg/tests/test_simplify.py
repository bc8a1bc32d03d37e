import pytest

from gridknot import moves as mv
from gridknot import simplify as sp
from gridknot.census import knot_determinant
from gridknot.grid import apply_symmetry, canonical_form, trivial_diagram, validate

from conftest import knot_reps


def test_trivial_diagram_is_trivial():
    report = sp.is_trivial(trivial_diagram())
    assert report.verdict is sp.Verdict.TRIVIAL
    assert report.witness is not None and report.witness.moves == ()


def test_trefoil_is_not_trivial(trefoil5):
    assert knot_determinant(trefoil5) == 3
    report = sp.is_trivial(trefoil5, want_witness=False)
    assert report.verdict is sp.Verdict.NOT_TRIVIAL


def test_not_a_knot_rejected():
    link = validate(4, [(1, 2), (1, 2), (3, 4), (3, 4)])
    with pytest.raises(sp.NotAKnotError):
        sp.is_trivial(link)


def test_scramble_deterministic_and_trivial():
    assert sp.scramble(7, 0) == trivial_diagram()
    assert sp.scramble(123, 12) == sp.scramble(123, 12)
    for seed in range(40):
        d = sp.scramble(seed, seed % 21)
        report = sp.is_trivial(d)
        assert report.verdict is sp.Verdict.TRIVIAL
        sp.replay_witness(report.witness)


def test_witness_monotone_and_exterior_flags(stuck8):
    report = sp.is_trivial(stuck8)
    assert report.verdict is sp.Verdict.TRIVIAL
    w = report.witness
    sp.replay_witness(w)
    sizes = [w.start.n]
    d = w.start
    for m in w.moves:
        d = mv.apply(d, m)
        sizes.append(d.n)
    assert all(b <= a for a, b in zip(sizes, sizes[1:]))
    assert len(w.uses_exterior) == len(w.moves)
    assert any(w.uses_exterior) == any(
        m.kind is mv.MoveKind.EXTERIOR_EXCHANGE for m in w.moves
    )


def test_verdict_invariant_under_canonical_form():
    for seed in (3, 11, 19):
        d = sp.scramble(seed, 9)
        rep = canonical_form(d).diagram
        assert sp.is_trivial(d, want_witness=False).verdict is sp.is_trivial(
            rep, want_witness=False
        ).verdict
        img = apply_symmetry(d, "rot90")
        assert sp.is_trivial(img, want_witness=False).verdict is sp.Verdict.TRIVIAL


def test_bfs_strategy_agrees_and_gives_shortest_witnesses(stuck8, trefoil5):
    greedy = sp.is_trivial(stuck8)
    bfs = sp.is_trivial(stuck8, strategy="bfs")
    assert greedy.verdict is bfs.verdict is sp.Verdict.TRIVIAL
    assert len(bfs.witness.moves) <= len(greedy.witness.moves)
    sp.replay_witness(bfs.witness)
    assert sp.is_trivial(trefoil5, strategy="bfs", want_witness=False).verdict is sp.Verdict.NOT_TRIVIAL
    for seed in range(8):
        d = sp.scramble(seed, 8)
        a = sp.is_trivial(d, strategy="bfs")
        b = sp.is_trivial(d)
        assert a.verdict is b.verdict is sp.Verdict.TRIVIAL
        assert len(a.witness.moves) <= len(b.witness.moves)


def test_strict_mode_same_verdicts(stuck8, trefoil5):
    assert (
        sp.is_trivial(stuck8, include_rotations=False, want_witness=False).verdict
        is sp.Verdict.TRIVIAL
    )
    assert (
        sp.is_trivial(trefoil5, include_rotations=False, want_witness=False).verdict
        is sp.Verdict.NOT_TRIVIAL
    )


def test_limit_exceeded_is_a_distinct_outcome(stuck8):
    report = sp.is_trivial(stuck8, limits=sp.SearchLimits(max_states=3), want_witness=False)
    assert report.verdict is sp.Verdict.LIMIT_EXCEEDED


def test_needs_exterior_examples(stuck8):
    assert sp.needs_exterior(trivial_diagram()) is False
    assert sp.needs_exterior(stuck8) is True
    report = sp.is_trivial(stuck8, check_exterior_requirement=True)
    assert report.exterior_required is True


def test_needs_exterior_rejects_nontrivial(trefoil5):
    with pytest.raises(sp.NotTrivialInputError):
        sp.needs_exterior(trefoil5)


@pytest.mark.parametrize("n", (3, 4, 5))
def test_no_small_diagram_needs_exterior(n):
    for d in knot_reps(n):
        if knot_determinant(d) != 1:
            continue
        if sp.is_trivial(d, want_witness=False).verdict is not sp.Verdict.TRIVIAL:
            continue
        assert sp.needs_exterior(d) is False


def test_witness_json_round_trip(stuck8):
    report = sp.is_trivial(stuck8)
    obj = report.witness.to_json_obj()
    from gridknot.grid import from_json_obj

    start = from_json_obj(obj["start"])
    seq = tuple(mv.move_from_json_obj(o) for o in obj["moves"])
    rebuilt = sp.SimplificationWitness(
        start, seq, tuple(m.kind is mv.MoveKind.EXTERIOR_EXCHANGE for m in seq)
    )
    sp.replay_witness(rebuilt)
