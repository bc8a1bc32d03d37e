"""Realizing exterior moves and rotations as explicit Reidemeister sequences.

The carried strand (an extreme horizontal edge plus its two attached
verticals) sweeps monotonically across the jump region: an event queue over
the rows it passes emits one R3 per interior crossing passed, an R2 pair
where a vertical strand begins and ends inside the strip, and an R1 exactly
where a row hangs off one of the strand's own endpoints.  Every intermediate
state is an explicit rectilinear polyline on the scaled integer grid; each
emitted move is cross-checked by replaying it combinatorially and comparing
against a fresh geometric extraction of the post-state, so the recorded
trace is guaranteed replayable.

Vertical-axis moves run on the transposed grid (where the carried strand is
an understrand) and the finished trace is transposed back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import moves as mv
from . import planar
from .grid import GridDiagram, component_count, crossings, to_json_obj
from .jumps import JumpSpec, jump_decomposition, grid_cycles, sigma
from .planar import PlanarDiagram, ReidemeisterMove
from .simplify import NotAKnotError

Point = tuple[int, int]


class SweepObstructionError(RuntimeError):
    """The sweep produced an event with no legal move; indicates a bug for
    grid-derived jumps and is never expected in normal operation."""


@dataclass(frozen=True, slots=True)
class RealizationTrace:
    initial: PlanarDiagram
    moves: tuple[ReidemeisterMove, ...]
    final: PlanarDiagram
    jump_move_counts: tuple[int, ...]
    jump_r3_counts: tuple[int, ...]
    isotopy_shortcut: bool = False

    def counts_by_kind(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for m in self.moves:
            out[m.kind] = out.get(m.kind, 0) + 1
        return out

    def to_json_obj(self) -> dict:
        return {
            "initial_gauss": planar.gauss_code(self.initial),
            "moves": [m.to_json_obj() for m in self.moves],
            "final_gauss": planar.gauss_code(self.final),
            "counts": self.counts_by_kind(),
        }


# --- geometric extraction -----------------------------------------------------


def _segments(chain: list[tuple[bool, list[Point]]]):
    segs = []
    for si, (is_m, pts) in enumerate(chain):
        for k in range(len(pts) - 1):
            if pts[k] != pts[k + 1]:
                segs.append((si, k, pts[k], pts[k + 1], is_m))
    return segs


def _extract_cycles(
    cycles: list[list[tuple[bool, list[Point]]]],
    moving_over: bool = True,
    moving_labels: dict[Point, str] | None = None,
    static_labels: dict[Point, str] | None = None,
) -> PlanarDiagram:
    """Build the combinatorial diagram from rectilinear cycle geometry.

    Crossings between two static segments are vertical-over; crossings
    involving the moving strand take its over/under role.  Labels come from
    the provided position maps, defaulting to x{col}-{row} for static pairs.
    """
    moving_labels = moving_labels or {}
    all_segs = []
    for ci, chain in enumerate(cycles):
        for seg in _segments(chain):
            all_segs.append((ci, *seg))
    verticals = [s for s in all_segs if s[3][0] == s[4][0]]
    horizontals = [s for s in all_segs if s[3][1] == s[4][1]]
    hits: dict[tuple, list[tuple[int, str, bool]]] = {}
    signs: dict[str, int] = {}

    def direction(p1: Point, p2: Point) -> Point:
        return (
            0 if p2[0] == p1[0] else (1 if p2[0] > p1[0] else -1),
            0 if p2[1] == p1[1] else (1 if p2[1] > p1[1] else -1),
        )

    for vs in verticals:
        vx = vs[3][0]
        vy1, vy2 = sorted((vs[3][1], vs[4][1]))
        for hs in horizontals:
            hy = hs[3][1]
            hx1, hx2 = sorted((hs[3][0], hs[4][0]))
            if not (hx1 < vx < hx2 and vy1 < hy < vy2):
                continue
            pos = (vx, hy)
            v_moving, h_moving = vs[5], hs[5]
            if v_moving and h_moving:
                raise SweepObstructionError(f"moving strand self-crossing at {pos}")
            if v_moving or h_moving:
                over_is_vertical = v_moving if moving_over else h_moving
                label = moving_labels.get(pos)
                if label is None:
                    raise SweepObstructionError(f"unlabeled moving crossing at {pos}")
            else:
                over_is_vertical = True
                if static_labels is not None:
                    label = static_labels.get(pos)
                    if label is None:
                        raise SweepObstructionError(f"unlabeled static crossing at {pos}")
                else:
                    label = f"x{vx // 4}-{hy // 4}"
            over_seg, under_seg = (vs, hs) if over_is_vertical else (hs, vs)
            over_dir = direction(over_seg[3], over_seg[4])
            under_dir = direction(under_seg[3], under_seg[4])
            # sign is +1 when the under direction is the over direction
            # rotated a quarter turn counterclockwise
            sign = 1 if (-over_dir[1], over_dir[0]) == under_dir else -1
            signs[label] = sign
            v_key = (hy if vs[3][1] < vs[4][1] else -hy, label, over_is_vertical)
            h_key = (vx if hs[3][0] < hs[4][0] else -vx, label, not over_is_vertical)
            hits.setdefault((vs[0], vs[1], vs[2]), []).append(v_key)
            hits.setdefault((hs[0], hs[1], hs[2]), []).append(h_key)

    components = []
    crossing_free = 0
    for ci, chain in enumerate(cycles):
        passages: list[tuple[str, bool]] = []
        for seg in _segments(chain):
            key = (ci, seg[0], seg[1])
            for _, label, over in sorted(hits.get(key, [])):
                passages.append((label, over))
        if passages:
            best = min(
                tuple(passages[r:] + passages[:r]) for r in range(len(passages))
            )
            components.append(best)
        else:
            crossing_free += 1
    pd = PlanarDiagram(tuple(components), signs, crossing_free)
    pd.validate()
    return pd


def _grid_edge_polyline(e: tuple[str, int, int, int]) -> list[Point]:
    if e[0] == "v":
        return [(4 * e[1], 4 * e[2]), (4 * e[1], 4 * e[3])]
    return [(4 * e[2], 4 * e[1]), (4 * e[3], 4 * e[1])]


def to_planar(d: GridDiagram) -> PlanarDiagram:
    """Faithful planar diagram of a grid: every crossing vertical-over."""
    cycles = [
        [(False, _grid_edge_polyline(e)) for e in cyc] for cyc in grid_cycles(d)
    ]
    return _extract_cycles(cycles)


# --- the sweep ---------------------------------------------------------------


@dataclass(slots=True)
class _MState:
    """Moving-strand shape: a run at flat_y with an optional rectangular dip
    of [lo_x, hi_x] at dip_y; lo_x == 4*c_left means the dip is open at the
    west corner of the strand (and mirrored for hi_x)."""

    flat_y: int
    dip: tuple[int, int, int] | None = None  # (lo_x, hi_x, dip_y)


def _m_polyline(spec: JumpSpec, st: _MState) -> list[Point]:
    c_left, c_right = spec.strip()
    e_left, e_right = spec.far_ends()
    xl, xr = 4 * c_left, 4 * c_right
    pts: list[Point] = [(xl, 4 * e_left)]
    if st.dip is None:
        pts += [(xl, st.flat_y), (xr, st.flat_y)]
    else:
        lo, hi, dy = st.dip
        if lo == xl:
            pts += [(xl, dy)]
        else:
            pts += [(xl, st.flat_y), (lo, st.flat_y), (lo, dy)]
        if hi == xr:
            pts += [(xr, dy)]
        else:
            pts += [(hi, dy), (hi, st.flat_y), (xr, st.flat_y)]
    pts.append((xr, 4 * e_right))
    return pts


@dataclass(slots=True)
class _SweepContext:
    spec: JumpSpec
    static_label: dict[Point, str]
    registry: dict[tuple, str]
    mint: list[int]
    state: _MState = field(init=False)
    diagram: PlanarDiagram = field(init=False)
    records: list[ReidemeisterMove] = field(default_factory=list)
    r3_count: int = 0
    frames: list | None = None

    def new_label(self) -> str:
        self.mint[0] += 1
        return f"m{self.mint[0]}"

    # -- geometry ---------------------------------------------------------------

    def moving_positions(self, st: _MState) -> dict[Point, str]:
        spec = self.spec
        host = spec.host
        c_left, c_right = spec.strip()
        e_left, e_right = spec.far_ends()
        xl, xr = 4 * c_left, 4 * c_right
        rows = host.row_spans()
        out: dict[Point, str] = {}
        lo, hi, dy = st.dip if st.dip else (None, None, None)
        for v in range(c_left + 1, c_right):
            h_at = dy if st.dip and lo <= 4 * v <= hi else st.flat_y
            a, b = host.columns[v - 1]
            if 4 * a < h_at < 4 * b:
                out[(4 * v, h_at)] = self.registry[("v", v)]
        west_y = dy if (st.dip and lo == xl) else st.flat_y
        east_y = dy if (st.dip and hi == xr) else st.flat_y
        for side, x_line, col, far, y_end in (
            ("postL", xl, c_left, e_left, west_y),
            ("postR", xr, c_right, e_right, east_y),
        ):
            y1, y2 = sorted((4 * far, y_end))
            for r in range(1, host.n + 1):
                a, b = rows[r - 1]
                if 4 * a < x_line < 4 * b and y1 < 4 * r < y2:
                    out[(x_line, 4 * r)] = self.registry[(side, r)]
        if st.dip:
            for wall_x, key in ((lo, ("wall_lo",)), (hi, ("wall_hi",))):
                if wall_x in (xl, xr):
                    continue
                y1, y2 = sorted((dy, st.flat_y))
                for r in range(1, host.n + 1):
                    a, b = rows[r - 1]
                    if 4 * a < wall_x < 4 * b and y1 < 4 * r < y2:
                        key_label = self.registry.get(key)
                        if key_label is not None:
                            out[(wall_x, 4 * r)] = key_label
        return out

    def extract(self, st: _MState) -> PlanarDiagram:
        spec = self.spec
        host = spec.host
        j0 = spec.row
        c_left, c_right = spec.strip()
        cycles = []
        moving = self.moving_positions(st)
        for cyc in grid_cycles(host):
            m = len(cyc)
            s_at = [
                t
                for t, e in enumerate(cyc)
                if (e[0] == "h" and e[1] == j0) or (e[0] == "v" and e[1] in (c_left, c_right))
            ]
            if not s_at:
                cycles.append([(False, _grid_edge_polyline(e)) for e in cyc])
                continue
            top_pos = next(t for t in s_at if cyc[t][0] == "h")
            chain: list[tuple[bool, list[Point]]] = []
            m_pts = _m_polyline(spec, st)
            before = cyc[(top_pos - 1) % m]
            # orient the moving polyline to match the traversal direction
            enters_left = before[1] == c_left
            chain.append((True, m_pts if enters_left else list(reversed(m_pts))))
            for k in range(m - 3):
                e = cyc[(top_pos + 2 + k) % m]
                chain.append((False, _grid_edge_polyline(e)))
            cycles.append(chain)
        return _extract_with_labels(cycles, moving, self.static_label)

    # -- move emission ----------------------------------------------------------

    def emit(self, kind: str, payload: dict, new_state: _MState) -> None:
        """Record one move.  The maintained diagram evolves by the recorded
        rewrite itself, so its traversal direction is stable across the whole
        trace; the fresh geometric extraction is aligned to it (extraction
        direction is an artifact of the grid walk and may flip)."""
        post = self.extract(new_state)
        last_error: Exception | None = None
        for candidate in (post, _reverse_diagram(post)):
            if kind == "r3":
                # a crossing triple can bound more than one triangle; pin the
                # face whose flip matches the geometry and record its sides
                faces = planar.triangle_faces_for(self.diagram, payload["labels"])
                comp = self.diagram.components[0]
                variants = [
                    {**payload, "sides": planar.gap_sides(comp, gaps)} for gaps in faces
                ]
            else:
                variants = [payload]
            for pl in variants:
                record = _build_record(kind, self.diagram, candidate, pl)
                try:
                    replayed = planar.apply_move(self.diagram, record)
                except planar.IllegalMoveAtSiteError as exc:
                    last_error = exc
                    continue
                if _same_diagram(replayed, candidate):
                    self.records.append(record)
                    self.diagram = replayed
                    self.state = new_state
                    if kind == "r3":
                        self.r3_count += 1
                    if self.frames is not None:
                        self.frames.append((self.spec, new_state, record.kind))
                    return
        raise SweepObstructionError(
            f"{kind} record does not reproduce the geometric state: {last_error}"
        )

    def slide(self, new_state: _MState) -> None:
        post = self.extract(new_state)
        if not (_same_diagram(self.diagram, post) or _same_diagram(self.diagram, _reverse_diagram(post))):
            raise SweepObstructionError("slide changed the diagram structurally")
        self.state = new_state


def _extract_with_labels(cycles, moving_labels, static_labels) -> PlanarDiagram:
    return _extract_cycles(
        cycles, moving_over=True, moving_labels=moving_labels, static_labels=static_labels
    )


def _reverse_diagram(p: PlanarDiagram) -> PlanarDiagram:
    comps = tuple(tuple(reversed(comp)) for comp in p.components)
    return PlanarDiagram(comps, p.signs, p.crossing_free_components)


def _same_diagram(p1: PlanarDiagram, p2: PlanarDiagram) -> bool:
    if p1.signs != p2.signs or p1.crossing_free_components != p2.crossing_free_components:
        return False
    if len(p1.components) != len(p2.components):
        return False
    for c1, c2 in zip(p1.components, p2.components):
        if len(c1) != len(c2):
            return False
        if not any(tuple(c1[r:] + c1[:r]) == c2 for r in range(max(1, len(c1)))):
            return False
    return True


def _build_record(kind: str, pre: PlanarDiagram, post: PlanarDiagram, payload: dict) -> ReidemeisterMove:
    """Fill in anchors and insertion blocks by diffing the passage cycles."""
    if kind in ("r3", "r2_delete", "r1_delete"):
        return ReidemeisterMove(kind, payload)
    pre_seq = list(pre.components[0]) if pre.components else []
    post_seq = list(post.components[0])
    new_labels = set(post.signs) - set(pre.signs)
    if pre_seq:
        # rotate so position zero holds an old passage; blocks then never
        # wrap around the seam and every anchor is an old passage
        for r in range(len(post_seq)):
            if post_seq[r][0] not in new_labels:
                post_seq = post_seq[r:] + post_seq[:r]
                break
    inserts: list[list] = []
    i = 0
    L = len(post_seq)
    while i < L:
        if post_seq[i][0] in new_labels:
            block = []
            j = i
            while j < L and post_seq[j][0] in new_labels:
                block.append([post_seq[j][0], post_seq[j][1]])
                j += 1
            anchor = None
            if pre_seq:
                prev = post_seq[i - 1]
                anchor = [prev[0], prev[1]]
            inserts.append([anchor, block])
            i = j
        else:
            i += 1
    if kind == "r1_create":
        (label,) = payload["labels"]
        block = inserts[0][1] if inserts else []
        return ReidemeisterMove(
            "r1_create",
            {
                "label": label,
                "sign": post.signs[label],
                "over_first": bool(block[0][1]) if block else True,
                "after": inserts[0][0] if inserts else None,
            },
        )
    la, lb = payload["labels"]
    return ReidemeisterMove(
        "r2_create",
        {
            "labels": [la, lb],
            "signs": [post.signs[la], post.signs[lb]],
            "inserts": inserts,
        },
    )


@dataclass(frozen=True, slots=True)
class _EndEvent:
    kind: str  # "corner" | "post" | "attach" | "none"
    value: int  # +1 born, -1 died, 0 otherwise
    x: int  # scaled x position of the event


def _classify_end(spec: JumpSpec, j: int, end_col: int, other_col: int, side: str) -> _EndEvent:
    host = spec.host
    c_left, c_right = spec.strip()
    e_left, e_right = spec.far_ends()
    down = spec.direction < 0
    post_col, far = (c_left, e_left) if side == "west" else (c_right, e_right)
    lo_lim, hi_lim = (c_left, c_right)
    beyond = (end_col < post_col) if side == "west" else (end_col > post_col)
    if beyond:
        if (other_col < post_col) == (end_col < post_col):
            return _EndEvent("none", 0, 0)  # row entirely outside on this side
        born = (j < far) if down else (j > far)
        return _EndEvent("post", 1 if born else -1, 4 * post_col)
    if end_col == post_col:
        if j != far:
            raise SweepObstructionError(f"row {j} attaches at an impossible height")
        return _EndEvent("attach", 0, 4 * post_col)
    if not (lo_lim < end_col < hi_lim):
        return _EndEvent("none", 0, 0)
    a, b = host.columns[end_col - 1]
    if down:
        born = b == j  # vertical hangs below the row
    else:
        born = a == j  # vertical rises above the row
    return _EndEvent("corner", 1 if born else -1, 4 * end_col)


def _sweep_jump(ctx: _SweepContext) -> None:
    spec = ctx.spec
    host = spec.host
    c_left, c_right = spec.strip()
    down = spec.direction < 0
    rows = host.row_spans()
    for j in spec.swept_rows():
        before_y = 4 * j + (1 if down else -1)
        after_y = 4 * j - (1 if down else -1)
        ctx.slide(_MState(flat_y=before_y))
        lj, rj = rows[j - 1]
        if rj <= c_left or lj >= c_right:
            continue
        west = _classify_end(spec, j, lj, rj, "west")
        east = _classify_end(spec, j, rj, lj, "east")
        statics = sorted(
            cr.column for cr in crossings(host) if cr.row == j and c_left < cr.column < c_right
        )
        net = west.value + east.value
        if west.kind == "none" and east.kind == "none":
            if statics:
                raise SweepObstructionError(f"row {j} has crossings but no strand events")
            ctx.slide(_MState(flat_y=after_y))
            continue
        if net == 0 and west.value == 0 and east.value == 0:
            if statics:
                raise SweepObstructionError(f"row {j} is a closed pocket with crossings")
            ctx.slide(_MState(flat_y=after_y))
            continue
        _run_batch(ctx, j, before_y, after_y, west, east, statics)
    ctx.slide(_MState(flat_y=spec.target_level()))


def _host_key(spec: JumpSpec, ev: _EndEvent, j: int, side: str) -> tuple:
    if ev.kind == "corner":
        return ("v", ev.x // 4)
    if ev.kind == "post":
        return ("postL" if side == "west" else "postR", j)
    raise SweepObstructionError("no resting place at an attach end")


def _run_batch(ctx, j, before_y, after_y, west, east, statics) -> None:
    """Execute all moves for the passage of one row."""
    spec = ctx.spec
    c_left, c_right = spec.strip()
    xl, xr = 4 * c_left, 4 * c_right
    reg = ctx.registry
    net = west.value + east.value

    def dip(lo, hi):
        return _MState(flat_y=before_y, dip=(lo, hi, after_y))

    # wall tracks for the propagating crossing
    def walls_eastward():
        return [4 * x + 1 for x in statics]

    def walls_westward():
        return [4 * x - 1 for x in reversed(statics)]

    def r3_labels(x, wall_key):
        return [ctx.static_label[(4 * x, 4 * j)], reg[("v", x)], reg[wall_key]]

    if net == 2:
        lo0 = west.x + 1
        hi0 = (4 * statics[0] - 1) if statics else (east.x - 1)
        k_w, k_e = ctx.new_label(), ctx.new_label()
        reg[("wall_lo",)] = k_w
        reg[("wall_hi",)] = k_e
        ctx.emit("r2_create", {"labels": [k_w, k_e]}, dip(lo0, hi0))
        for x, wall in zip(statics, walls_eastward()):
            ctx.emit("r3", {"labels": r3_labels(x, ("wall_hi",))}, dip(lo0, wall))
        reg[_host_key(spec, west, j, "west")] = reg.pop(("wall_lo",))
        reg[_host_key(spec, east, j, "east")] = reg.pop(("wall_hi",))
        ctx.slide(_MState(flat_y=after_y))
        return

    if net == -2:
        if west.kind == "corner":
            lo0, hi0 = west.x - 1, west.x + 1
        else:
            lo0, hi0 = xl, xl + 1
        reg[("wall_hi",)] = reg.pop(_host_key(spec, west, j, "west"))
        ctx.slide(dip(lo0, hi0))
        for x, wall in zip(statics, walls_eastward()):
            ctx.emit("r3", {"labels": r3_labels(x, ("wall_hi",))}, dip(lo0, wall))
        k = reg.pop(("wall_hi",))
        other = reg.pop(_host_key(spec, east, j, "east"))
        ctx.emit("r2_delete", {"labels": [k, other]}, _MState(flat_y=after_y))
        return

    if net == 0:
        # one side born, the other died: the crossing migrates across the row
        dying, born = (west, east) if west.value < 0 else (east, west)
        toward_east = dying is west
        if dying.kind == "corner":
            anchor = (dying.x - 1, dying.x + 1) if toward_east else (dying.x - 1, dying.x + 1)
            lo0, hi0 = anchor
        else:
            lo0, hi0 = (xl, xl + 1) if toward_east else (xr - 1, xr)
        wall_key = ("wall_hi",) if toward_east else ("wall_lo",)
        reg[wall_key] = reg.pop(_host_key(spec, dying, j, "west" if dying is west else "east"))
        ctx.slide(dip(lo0, hi0))
        track = walls_eastward() if toward_east else walls_westward()
        xs = statics if toward_east else list(reversed(statics))
        for x, wall in zip(xs, track):
            st = dip(lo0, wall) if toward_east else dip(wall, hi0)
            ctx.emit("r3", {"labels": r3_labels(x, wall_key)}, st)
        reg[_host_key(spec, born, j, "west" if born is west else "east")] = reg.pop(wall_key)
        ctx.slide(_MState(flat_y=after_y))
        return

    # net is +1 or -1: exactly one attach end
    attach_west = west.kind == "attach"
    other = east if attach_west else west
    if net == 1:
        # kink created at the attachment, propagates to the far end
        k = ctx.new_label()
        if attach_west:
            wall_key = ("wall_hi",)
            lo0, hi0 = xl, (4 * statics[0] - 1) if statics else (other.x - 1)
        else:
            wall_key = ("wall_lo",)
            lo0, hi0 = (4 * statics[-1] + 1) if statics else (other.x + 1), xr
        reg[wall_key] = k
        ctx.emit("r1_create", {"labels": [k]}, dip(lo0, hi0))
        track = walls_eastward() if attach_west else walls_westward()
        xs = statics if attach_west else list(reversed(statics))
        for x, wall in zip(xs, track):
            st = dip(lo0, wall) if attach_west else dip(wall, hi0)
            ctx.emit("r3", {"labels": r3_labels(x, wall_key)}, st)
        reg[_host_key(spec, other, j, "east" if attach_west else "west")] = reg.pop(wall_key)
        ctx.slide(_MState(flat_y=after_y))
        return

    # net == -1: far crossing slides in, propagates to the attachment, kinks away
    if attach_west:
        wall_key = ("wall_lo",)
        if other.kind == "corner":
            lo0, hi0 = other.x - 1, other.x + 1
        else:
            lo0, hi0 = xr - 1, xr
    else:
        wall_key = ("wall_hi",)
        if other.kind == "corner":
            lo0, hi0 = other.x - 1, other.x + 1
        else:
            lo0, hi0 = xl, xl + 1
    reg[wall_key] = reg.pop(_host_key(spec, other, j, "east" if attach_west else "west"))
    ctx.slide(dip(lo0, hi0))
    track = walls_westward() if attach_west else walls_eastward()
    xs = list(reversed(statics)) if attach_west else statics
    for x, wall in zip(xs, track):
        st = dip(wall, hi0) if attach_west else dip(lo0, wall)
        ctx.emit("r3", {"labels": r3_labels(x, wall_key)}, st)
    k = reg.pop(wall_key)
    ctx.emit("r1_delete", {"label": k}, _MState(flat_y=after_y))


def _initial_registry(spec: JumpSpec, static_label: dict[Point, str]) -> dict[tuple, str]:
    host = spec.host
    c_left, c_right = spec.strip()
    e_left, e_right = spec.far_ends()
    j0 = spec.row
    rows = host.row_spans()
    reg: dict[tuple, str] = {}
    for side, col, far in (("postL", c_left, e_left), ("postR", c_right, e_right)):
        y1, y2 = sorted((far, j0))
        for r in range(y1 + 1, y2):
            a, b = rows[r - 1]
            if a < col < b:
                reg[(side, r)] = static_label[(4 * col, 4 * r)]
    return reg


def _jump_trace(
    spec: JumpSpec,
    static_label: dict[Point, str],
    mint: list[int],
    start_diagram: PlanarDiagram | None = None,
    frames: list | None = None,
):
    """Run the sweep for one jump.  Returns (records, initial, final,
    final position->label map, r3 count).

    start_diagram carries the traversal direction across the jumps of an
    exchange; it must be the same labeled diagram as the jump's own initial
    extraction (possibly reversed)."""
    ctx = _SweepContext(
        spec=spec, static_label=static_label, registry=_initial_registry(spec, static_label), mint=mint
    )
    ctx.frames = frames
    ctx.state = _MState(flat_y=4 * spec.row)
    extracted = ctx.extract(ctx.state)
    if start_diagram is None:
        ctx.diagram = extracted
    else:
        if not (
            _same_diagram(start_diagram, extracted)
            or _same_diagram(start_diagram, _reverse_diagram(extracted))
        ):
            raise SweepObstructionError("jump handoff does not match the next grid")
        ctx.diagram = start_diagram
    initial = ctx.diagram
    _sweep_jump(ctx)
    final_positions = dict(ctx.static_label)
    final_positions.update(ctx.moving_positions(ctx.state))
    return ctx.records, initial, ctx.diagram, final_positions, ctx.r3_count


def _static_labels_for(host: GridDiagram) -> dict[Point, str]:
    return {(4 * c.column, 4 * c.row): f"x{c.column}-{c.row}" for c in crossings(host)}


def _relabel_after_rotation(spec: JumpSpec, mid: GridDiagram, final_positions: dict[Point, str]) -> dict[Point, str]:
    """Static labels for the intermediate diagram of an exchange, inherited
    from the first jump's final state."""
    out: dict[Point, str] = {}
    n = mid.n
    down_first = spec.direction < 0
    for c in crossings(mid):
        old_row = c.row - 1 if down_first else c.row + 1
        pos = (4 * c.column, 4 * old_row)
        out[(4 * c.column, 4 * c.row)] = final_positions[pos]
    return out


def _transpose_label(label: str) -> str:
    if label.startswith("x"):
        a, b = label[1:].split("-")
        return f"x{b}-{a}"
    return label


def _transpose_diagram(p: PlanarDiagram) -> PlanarDiagram:
    comps = tuple(
        tuple((_transpose_label(l), not o) for l, o in comp) for comp in p.components
    )
    comps = tuple(
        min(tuple(c[r:] + c[:r]) for r in range(max(1, len(c)))) for c in comps
    )
    signs = {_transpose_label(l): s for l, s in p.signs.items()}
    return PlanarDiagram(comps, signs, p.crossing_free_components)


def _transpose_record(rec: ReidemeisterMove) -> ReidemeisterMove:
    pl = json.loads(json.dumps(rec.payload))
    if "label" in pl:
        pl["label"] = _transpose_label(pl["label"])
    if "labels" in pl:
        pl["labels"] = [_transpose_label(l) for l in pl["labels"]]
    if "after" in pl and pl["after"] is not None:
        pl["after"] = [_transpose_label(pl["after"][0]), not pl["after"][1]]
    if "over_first" in pl:
        pl["over_first"] = not pl["over_first"]
    if "inserts" in pl:
        for ins in pl["inserts"]:
            if ins[0] is not None:
                ins[0] = [_transpose_label(ins[0][0]), not ins[0][1]]
            ins[1] = [[_transpose_label(l), not o] for l, o in ins[1]]
    if "sides" in pl:
        pl["sides"] = [
            [[_transpose_label(a), not oa], [_transpose_label(b), not ob]]
            for (a, oa), (b, ob) in pl["sides"]
        ]
    return ReidemeisterMove(rec.kind, pl)


def realize(d: GridDiagram, m: mv.CromwellMove, frames: list | None = None) -> RealizationTrace:
    """Turn an exterior exchange, exterior merge or rotation into an explicit
    Reidemeister sequence from to_planar(d) to to_planar(apply(d, m))."""
    if component_count(d) != 1:
        raise NotAKnotError("realization requires a knot diagram")
    after = mv.apply(d, m)  # validates applicability
    frame_after = mv._transpose(after) if m.axis is mv.Axis.VERTICAL else after
    specs = jump_decomposition(d, m)
    mint = [0]
    records: list[ReidemeisterMove] = []
    jump_counts: list[int] = []
    r3_counts: list[int] = []
    initial = None
    final = None
    jump_of: list[int] = []
    static_label = _static_labels_for(specs[0].host)
    carry: PlanarDiagram | None = None
    for idx, spec in enumerate(specs):
        recs, init_pd, final_pd, final_positions, r3s = _jump_trace(spec, static_label, mint, carry, frames)
        records.extend(recs)
        jump_of.extend([idx] * len(recs))
        r3_counts.append(r3s)
        if idx == 0:
            initial = init_pd
        final = final_pd
        carry = final_pd
        if idx + 1 < len(specs):
            static_label = _relabel_after_rotation(specs[0], specs[idx + 1].host, final_positions)
    assert initial is not None and final is not None
    # A merge jump can leave one removable kink where the partner row
    # straddles the other attached column; straighten it away so the trace
    # ends exactly at the grid move's result.
    target_code = planar.gauss_code(to_planar(frame_after), strict=True)
    shortcut = planar.gauss_code(initial, strict=True) == target_code
    if shortcut:
        # the move is a planar isotopy of the drawing; no moves needed
        records, jump_of, final = [], [], initial
        r3_counts = [0] * len(specs)
    while planar.gauss_code(final, strict=True) != target_code:
        for label in _monogon_labels(final):
            candidate_rec = ReidemeisterMove("r1_delete", {"label": label})
            try:
                candidate = planar.apply_move(final, candidate_rec)
            except planar.IllegalMoveAtSiteError:
                continue
            if planar.gauss_code(candidate, strict=True) == target_code:
                records.append(candidate_rec)
                jump_of.append(len(specs) - 1)
                final = candidate
                break
        else:
            raise SweepObstructionError("swept diagram does not straighten to the move result")
    records, jump_of, final = _cancel_idle_kinks(initial, records, jump_of, target_code)
    jump_counts = [jump_of.count(i) for i in range(len(specs))]
    if m.axis is mv.Axis.VERTICAL:
        initial = _transpose_diagram(initial)
        final = _transpose_diagram(final)
        records = [_transpose_record(r) for r in records]
    return RealizationTrace(
        initial, tuple(records), final, tuple(jump_counts), tuple(r3_counts), shortcut
    )


def _references(rec: ReidemeisterMove, label: str) -> bool:
    pl = rec.payload
    if pl.get("label") == label or label in pl.get("labels", ()):
        return True
    after = pl.get("after")
    if after is not None and after[0] == label:
        return True
    for ins in pl.get("inserts", ()):
        if ins[0] is not None and ins[0][0] == label:
            return True
        if any(l == label for l, _ in ins[1]):
            return True
    return False


def _cancel_idle_kinks(initial, records, jump_of, target_code):
    """Peephole pass: a kink the sweep creates and then merely destroys
    again (alone, or together with one other crossing) need never be made.
    Each shortened sequence is re-verified by a full replay from the initial
    diagram; this is what keeps every trace inside its region budget.

    With no intermediate move touching the created crossings, a creation at
    move i and a deletion at move j sharing the crossing k reduce to the net
    difference:
      r1_create(k) ... r1_delete(k)       ->  nothing
      r1_create(k) ... r2_delete(k, x)    ->  r1_delete(x)
      r2_create(k, b) ... r1_delete(k)    ->  r1_create(b)
      r2_create(k, b) ... r2_delete(k, b) ->  nothing
      r2_create(k, b) ... r2_delete(x, k) ->  nothing, renaming b to x later
    """

    def verified(cand, cand_jumps):
        p = initial
        try:
            for r in cand:
                p = planar.apply_move(p, r)
        except planar.IllegalMoveAtSiteError:
            return None
        if planar.gauss_code(p, strict=True) != target_code:
            return None
        return cand, cand_jumps

    def shrink_r2_create(rec: ReidemeisterMove, dropped: str) -> ReidemeisterMove | None:
        survivor = next(l for l in rec.payload["labels"] if l != dropped)
        sign = dict(zip(rec.payload["labels"], rec.payload["signs"]))[survivor]
        blocks = []
        for anchor, block in rec.payload["inserts"]:
            kept = [p for p in block if p[0] != dropped]
            if kept:
                blocks.append([anchor, kept])
        if len(blocks) != 1 or len(blocks[0][1]) != 2:
            return None
        return ReidemeisterMove(
            "r1_create",
            {
                "label": survivor,
                "sign": sign,
                "over_first": bool(blocks[0][1][0][1]),
                "after": blocks[0][0],
            },
        )

    def rename_label(rec: ReidemeisterMove, old: str, new: str) -> ReidemeisterMove:
        pl = json.loads(json.dumps(rec.payload).replace(f'"{old}"', f'"{new}"'))
        return ReidemeisterMove(rec.kind, pl)

    def try_pair(i: int, partner: int):
        rec, other = records[i], records[partner]
        created = (
            {rec.payload["label"]} if rec.kind == "r1_create" else set(rec.payload["labels"])
        )
        deleted = (
            {other.payload["label"]} if other.kind == "r1_delete" else set(other.payload["labels"])
        )
        shared = created & deleted
        if not shared:
            return None
        if any(
            _references(records[k], l) for k in range(i + 1, partner) for l in shared
        ):
            return None
        born = created - deleted
        gone = deleted - created
        rename: tuple[str, str] | None = None
        replacement: list[ReidemeisterMove] | None
        if not born and not gone:
            replacement = []
        elif not born and len(gone) == 1:
            replacement = [ReidemeisterMove("r1_delete", {"label": gone.pop()})]
        elif len(born) == 1 and not gone:
            shrunk = shrink_r2_create(rec, next(iter(shared)))
            replacement = [shrunk] if shrunk is not None else None
        else:
            replacement = []
            rename = (born.pop(), gone.pop())
        if replacement is None:
            return None
        tail = records[partner + 1 :]
        if rename is not None:
            tail = [rename_label(r, rename[0], rename[1]) for r in tail]
        cand = (
            records[:i]
            + ([replacement[0]] if replacement and replacement[0].kind == "r1_create" else [])
            + records[i + 1 : partner]
            + ([replacement[0]] if replacement and replacement[0].kind == "r1_delete" else [])
            + tail
        )
        cand_jumps = (
            jump_of[:i]
            + ([jump_of[i]] if replacement and replacement[0].kind == "r1_create" else [])
            + jump_of[i + 1 : partner]
            + ([jump_of[partner]] if replacement and replacement[0].kind == "r1_delete" else [])
            + jump_of[partner + 1 :]
        )
        return verified(cand, cand_jumps)

    changed = True
    while changed:
        changed = False
        for i, rec in enumerate(records):
            if rec.kind not in ("r1_create", "r2_create"):
                continue
            for partner in range(i + 1, len(records)):
                if records[partner].kind not in ("r1_delete", "r2_delete"):
                    continue
                got = try_pair(i, partner)
                if got is not None:
                    records, jump_of = got
                    changed = True
                    break
            if changed:
                break
    final = initial
    for r in records:
        final = planar.apply_move(final, r)
    return records, jump_of, final


def _monogon_labels(p: PlanarDiagram) -> list[str]:
    if not p.components:
        return []
    comp = p.components[0]
    m = len(comp)
    return sorted(
        {comp[t][0] for t in range(m) if comp[t][0] == comp[(t + 1) % m][0]}
    )


def replay(trace: RealizationTrace) -> PlanarDiagram:
    """Re-apply the recorded moves by local combinatorial rewriting,
    verifying each site; returns the final diagram."""
    p = trace.initial
    for rec in trace.moves:
        p = planar.apply_move(p, rec)
    return p


# --- trace serialization and frames -------------------------------------------


def trace_to_json(trace: RealizationTrace, d: GridDiagram, m: mv.CromwellMove) -> dict:
    return {
        "grid": to_json_obj(d),
        "move": m.to_json_obj(),
        "initial_gauss": planar.gauss_code(trace.initial),
        "moves": [r.to_json_obj() for r in trace.moves],
        "final_gauss": planar.gauss_code(trace.final),
        "counts": trace.counts_by_kind(),
        "moves_per_jump": list(trace.jump_move_counts),
        "r3_per_jump": list(trace.jump_r3_counts),
    }


def sigma_budget(d: GridDiagram, m: mv.CromwellMove) -> int:
    return sum(sigma(s).sigma_simple for s in jump_decomposition(d, m))


def render_frame_svg(spec: JumpSpec, state: _MState) -> str:
    """One deterministic SVG of a mid-sweep state: the host grid's static
    edges plus the moving strand's polyline."""
    host = spec.host
    unit = 12
    pad = 18
    n4 = 4 * host.n

    def sx(x: int) -> float:
        return pad + unit * x / 4

    def sy(y: int) -> float:
        return pad + unit * (n4 + 2 - y) / 4

    c_left, c_right = spec.strip()
    parts = []
    side_w = 2 * pad + unit * host.n
    side_h = 2 * pad + unit * (host.n + 1)
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{side_w}" height="{side_h}">'
    )
    parts.append(f'<rect width="{side_w}" height="{side_h}" fill="white"/>')
    from .jumps import grid_cycles

    for cyc in grid_cycles(host):
        for e in cyc:
            if e[0] == "h" and e[1] == spec.row:
                continue
            if e[0] == "v" and e[1] in (c_left, c_right):
                continue
            p = _grid_edge_polyline(e)
            parts.append(
                f'<line x1="{sx(p[0][0])}" y1="{sy(p[0][1])}" x2="{sx(p[1][0])}" '
                f'y2="{sy(p[1][1])}" stroke="black" stroke-width="1.5"/>'
            )
    pts = _m_polyline(spec, state)
    path = " ".join(
        f"{'M' if i == 0 else 'L'} {sx(x)} {sy(y)}" for i, (x, y) in enumerate(pts)
    )
    parts.append(f'<path d="{path}" stroke="crimson" stroke-width="2" fill="none"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_frames(frames: list, directory: str) -> list[str]:
    import os

    os.makedirs(directory, exist_ok=True)
    names = []
    for i, (spec, state, kind) in enumerate(frames):
        name = f"frame{i:04d}_{kind}.svg"
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(render_frame_svg(spec, state))
        names.append(name)
    return names
