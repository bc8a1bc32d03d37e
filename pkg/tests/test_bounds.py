import pytest

from gridknot import jumps as jp
from gridknot import moves as mv
from gridknot.grid import (
    GridDiagram,
    component_count,
    extremal_diagram,
    trivial_diagram,
    validate,
)

from conftest import knot_reps


def test_bound_values_at_eight():
    assert jp.move_count_bound(8, "exterior_exchange") == 156
    assert jp.move_count_bound(8, "exterior_merge") == 78
    assert jp.move_count_bound(8, "rotation") == 79


def test_bound_values_at_three():
    assert jp.move_count_bound(3, "exterior_exchange") == 8
    assert jp.move_count_bound(3, "exterior_merge") == 4
    assert jp.move_count_bound(3, "rotation") == 5


def test_bound_values_at_two():
    assert jp.move_count_bound(2, "exterior_exchange") == 0
    assert jp.move_count_bound(2, "exterior_merge") == 0
    assert jp.move_count_bound(2, "rotation") == 1


@pytest.mark.parametrize("n", range(2, 40))
def test_bound_divisibility(n):
    eps = n % 2
    assert (3 * n * n - 4 * n - 4 - 3 * eps) % 2 == 0
    assert (3 * n * n - 4 * n - 2 - 3 * eps) % 2 == 0
    assert jp.move_count_bound(n, "exterior_exchange") == 2 * jp.move_count_bound(
        n, "exterior_merge"
    )


def test_unknown_kind_rejected():
    with pytest.raises(jp.JumpError):
        jp.move_count_bound(5, "interior_exchange")


def test_decomposition_shapes(stuck8):
    rot = jp.jump_decomposition(stuck8, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))
    assert len(rot) == 1 and rot[0].row == stuck8.n and rot[0].direction == -1
    ex = jp.jump_decomposition(stuck8, mv.exterior_exchange(mv.Axis.HORIZONTAL))
    assert len(ex) == 2
    # the second jump acts on the genuinely rotated intermediate diagram
    rows = stuck8.row_spans()
    top_len = rows[-1][1] - rows[-1][0]
    bottom_len = rows[0][1] - rows[0][0]
    if top_len >= bottom_len:
        mid = mv.apply(stuck8, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))
    else:
        mid = mv.apply(stuck8, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_HIGH))
    assert ex[1].host == mid


def test_decomposition_longer_edge_jumps_first():
    # top length 2, bottom length 6: the bottom edge must jump first
    d = validate(8, [(1, 5), (3, 7), (6, 8), (4, 7), (5, 8), (2, 6), (1, 3), (2, 4)])
    rows = d.row_spans()
    assert rows[-1][1] - rows[-1][0] < rows[0][1] - rows[0][0]
    specs = jp.jump_decomposition(d, mv.exterior_exchange(mv.Axis.HORIZONTAL))
    assert specs[0].row == 1 and specs[0].direction == +1


def test_transposed_jumps_are_understrand():
    d = extremal_diagram(4)
    specs = jp.jump_decomposition(d, mv.rotation(mv.Axis.VERTICAL, mv.TO_LOW))
    assert specs[0].transposed and specs[0].strand_role == "under"


def test_sigma_worked_example():
    d = validate(5, [(3, 5), (1, 4), (2, 4), (2, 3), (1, 5)])
    spec = jp.jump_decomposition(d, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))[0]
    b = jp.sigma(spec)
    assert (b.v, b.e, b.e_i, b.e_ss, b.e_boundary, b.e_s, b.e_svs) == (2, 5, 3, 0, 2, 0, 0)
    assert b.sigma_simple == 7 and b.sigma_strong == 7
    assert b.sigma_no_r1 is None


def test_sigma_minimal_merge_region():
    # a narrow merge region crossed by a single arc hanging off the strand
    # endpoint: one edge, one endpoint-touching edge, nothing else
    d = validate(3, [(1, 2), (1, 3), (2, 3)])
    spec = jp.jump_decomposition(d, mv.exterior_merge(mv.Axis.HORIZONTAL, 2, mv.LOW))[0]
    b = jp.sigma(spec)
    assert (b.v, b.e, b.e_boundary) == (0, 1, 1)
    assert b.sigma_strong == b.sigma_simple == 1


def test_sigma_parallel_strand_case_counts_nothing_strong():
    # the opposite edge of the 2x2 diagram runs from one strand endpoint to
    # the other: it contributes to the plain edge count only, and the move
    # is a pure isotopy
    spec = jp.jump_decomposition(
        trivial_diagram(), mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW)
    )[0]
    b = jp.sigma(spec)
    assert (b.v, b.e) == (0, 1)
    assert b.sigma_strong == 0


def test_sigma_both_endpoint_edge_counts_in_e_only():
    d = validate(3, [(1, 3), (1, 2), (2, 3)])
    spec = jp.jump_decomposition(d, mv.rotation(mv.Axis.HORIZONTAL, mv.TO_LOW))[0]
    b = jp.sigma(spec)
    assert (b.v, b.e, b.e_boundary) == (0, 1, 0)
    assert b.sigma_strong < b.sigma_simple


def _exterior_moves(d):
    for m in mv.available_moves(d):
        if m.kind in (
            mv.MoveKind.EXTERIOR_EXCHANGE,
            mv.MoveKind.EXTERIOR_MERGE,
            mv.MoveKind.ROTATION,
        ):
            yield m


@pytest.mark.parametrize("n", (2, 3, 4, 5))
def test_sigma_consistency_small(n):
    for d in knot_reps(n):
        for m in _exterior_moves(d):
            report = jp.verify_move_count_bound(d, m)
            assert report.holds, (d.columns, m)
            for s in report.per_jump:
                assert s.sigma_strong <= s.sigma_simple
                assert 2 * s.e == 4 * s.v + s.boundary_points


@pytest.mark.parametrize("n", (4, 5, 6, 7))
def test_paper_per_jump_inequalities(n):
    eps = n % 2
    v_cap = (n * (n - 2) - eps) // 2
    for d in knot_reps(min(n, 5)) if n <= 5 else [extremal_diagram(n)]:
        if component_count(d) != 1:
            continue
        for m in _exterior_moves(d):
            kind = jp.bound_kind_of(m)
            for s in (jp.sigma(sp) for sp in jp.jump_decomposition(d, m)):
                assert s.v <= v_cap
                if kind == "rotation":
                    assert s.e <= n * n - n - 1 - eps
                else:
                    assert s.e <= n * n - n - 2 - eps


def framed_extremal(n: int) -> GridDiagram:
    """A maximal-crossing core framed by two wide, nested extreme rows, so
    the exterior horizontal exchange is available and its jump regions cover
    nearly the whole diagram."""
    assert n >= 6
    inner = extremal_diagram(n - 4)
    cols = [(n - 2, n), (1, n - 1)]
    cols += [(lo + 1, hi + 1) for lo, hi in inner.columns]
    cols += [(1, n - 2), (n - 1, n)]
    return validate(n, cols)


@pytest.mark.parametrize("n", (6, 7, 8, 9))
def test_framed_extremal_exchange_near_tight(n):
    d = framed_extremal(n)
    rows = d.row_spans()
    assert mv.interleaved(rows[0], rows[n - 1]) is mv.Interleaving.NESTED
    ex = mv.exterior_exchange(mv.Axis.HORIZONTAL)
    report = jp.verify_move_count_bound(d, ex)
    assert report.holds
    # the first jump's region contains the dense core
    assert report.per_jump[0].v >= jp.move_count_bound(n - 4, "exterior_merge") // 3
    assert report.per_jump[0].v > 0
    assert report.slack < report.bound


def test_svs_is_bounded_by_two_finger_vertices():
    for n in (4, 5):
        for d in knot_reps(n):
            for m in _exterior_moves(d):
                for spec in jp.jump_decomposition(d, m):
                    edges, interior = jp.region_graph(spec)
                    fingers = {c: 0 for c in interior}
                    for e in edges:
                        for a, b in ((0, 1), (1, 0)):
                            if e.ends[a][0] == "X" and e.ends[b][0] == "S":
                                fingers[(e.ends[a][1], e.ends[a][2])] += 1
                    cap = sum(1 for v in fingers.values() if v == 2)
                    assert jp.sigma(spec).e_svs <= cap


_ROTATION_IMAGES = {
    "identity": lambda ax, dr: (ax, dr),
    "rot180": lambda ax, dr: (ax, mv.TO_HIGH if dr == mv.TO_LOW else mv.TO_LOW),
    "flip_x": lambda ax, dr: (ax, dr)
    if ax == mv.Axis.HORIZONTAL
    else (ax, mv.TO_HIGH if dr == mv.TO_LOW else mv.TO_LOW),
    "flip_y": lambda ax, dr: (ax, dr)
    if ax == mv.Axis.VERTICAL
    else (ax, mv.TO_HIGH if dr == mv.TO_LOW else mv.TO_LOW),
    "transpose": lambda ax, dr: (
        mv.Axis.VERTICAL if ax == mv.Axis.HORIZONTAL else mv.Axis.HORIZONTAL,
        dr,
    ),
}


def test_sigma_invariant_under_symmetry(stuck8, trefoil5):
    from gridknot.grid import apply_symmetry

    for d in (stuck8, trefoil5):
        for ax, dr in ((mv.Axis.HORIZONTAL, mv.TO_LOW), (mv.Axis.VERTICAL, mv.TO_HIGH)):
            base = [
                jp.sigma(s).to_json_obj()
                for s in jp.jump_decomposition(d, mv.rotation(ax, dr))
            ]
            for sym, image in _ROTATION_IMAGES.items():
                ax2, dr2 = image(ax, dr)
                img = apply_symmetry(d, sym)
                got = [
                    jp.sigma(s).to_json_obj()
                    for s in jp.jump_decomposition(img, mv.rotation(ax2, dr2))
                ]
                assert got == base, (sym, ax, dr)


def test_two_finger_component_pattern_counted():
    # a one-crossing component hanging onto the strand by two edges: the
    # pattern costs an extra move beyond the naive category counts, and the
    # region graph records it
    d = GridDiagram(6, ((1, 2), (1, 4), (5, 6), (3, 6), (3, 4), (2, 5)))
    m = mv.exterior_merge(mv.Axis.VERTICAL, 2, mv.LOW)
    b = jp.sigma(jp.jump_decomposition(d, m)[0])
    assert (b.v, b.e, b.e_i, b.e_svs) == (1, 3, 1, 1)
    assert b.sigma_strong == 3
    from gridknot import realize as rz

    trace = rz.realize(d, m)
    assert 3 <= len(trace.moves) <= b.sigma_simple


def test_high_valence_strand_contact_counted():
    # three edges from one interior vertex reaching the strand: the excess
    # over two is charged to the vertex
    d = GridDiagram(5, ((1, 2), (3, 4), (1, 5), (2, 4), (3, 5)))
    m = mv.exterior_merge(mv.Axis.HORIZONTAL, 3, mv.LOW)
    b = jp.sigma(jp.jump_decomposition(d, m)[0])
    assert (b.v, b.e, b.e_s, b.e_boundary) == (1, 4, 1, 1)
    assert b.sigma_strong == 3
