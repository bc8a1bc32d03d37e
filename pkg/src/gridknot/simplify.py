"""Unknot recognition by exhaustive monotone search.

From any knot diagram, breadth-first search over merges, exchanges and
rotations (never divides, so grid size never increases) either reaches the
2x2 diagram, proving the knot trivial with a replayable witness, or exhausts
the reachable state space.  States are deduplicated by their canonical key
under the eight square symmetries; BFS order yields shortest witnesses.
"""

from __future__ import annotations

import heapq
import os
import random
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from . import moves as mv
from .grid import GridDiagram, canonical_key, component_count, trivial_diagram


class NotAKnotError(ValueError):
    """The operation requires a single-component diagram."""


class NotTrivialInputError(ValueError):
    """The operation requires a diagram of the trivial knot."""


class LimitExceededError(RuntimeError):
    """A search limit was hit where an exhaustive answer was required."""


class Verdict(Enum):
    TRIVIAL = "trivial"
    NOT_TRIVIAL = "not_trivial"
    LIMIT_EXCEEDED = "limit_exceeded"


_STATE_BYTES_ESTIMATE = 120  # rough per-visited-state footprint for the MB cap


def _default_state_limit() -> int:
    env = os.environ.get("GRIDKNOT_LIMIT_MB")
    if env:
        try:
            return max(1000, int(float(env) * 1_000_000 / _STATE_BYTES_ESTIMATE))
        except ValueError:
            pass
    return 5_000_000


@dataclass(frozen=True, slots=True)
class SearchLimits:
    max_states: int = field(default_factory=_default_state_limit)
    max_seconds: float | None = None


@dataclass(frozen=True, slots=True)
class SimplificationWitness:
    """A replayable move sequence from `start` down to the 2x2 diagram."""

    start: GridDiagram
    moves: tuple[mv.CromwellMove, ...]
    uses_exterior: tuple[bool, ...]

    def to_json_obj(self) -> dict:
        from .grid import to_json_obj
        return {
            "start": to_json_obj(self.start),
            "moves": [m.to_json_obj() for m in self.moves],
        }


@dataclass(frozen=True, slots=True)
class SearchReport:
    verdict: Verdict
    states_visited: int
    witness: SimplificationWitness | None
    exterior_required: bool | None = None

    def to_json_obj(self) -> dict:
        obj: dict = {"verdict": self.verdict.value, "states_visited": self.states_visited}
        if self.witness is not None:
            obj["witness"] = self.witness.to_json_obj()
        if self.exterior_required is not None:
            obj["exterior_required"] = self.exterior_required
        return obj


_SHRINKING = (mv.MoveKind.INTERIOR_MERGE, mv.MoveKind.EXTERIOR_MERGE)


def _search_arcs(d: GridDiagram, include_rotations: bool, include_exterior_exchange: bool):
    for m in mv.available_moves(d):
        kind = m.kind
        if kind is mv.MoveKind.ROTATION:
            if include_rotations:
                yield m
        elif kind is mv.MoveKind.EXTERIOR_EXCHANGE:
            if include_exterior_exchange:
                yield m
        elif kind in _SHRINKING and d.n == 2:
            continue  # terminal object; listed merges are not applicable
        else:
            yield m


def _search(
    start: GridDiagram,
    limits: SearchLimits,
    include_rotations: bool,
    include_exterior_exchange: bool,
    want_witness: bool,
    strategy: str = "greedy",
) -> tuple[Verdict, int, SimplificationWitness | None]:
    """Exhaustive reachability search for the 2x2 diagram.

    strategy="bfs" expands states in move-count order (shortest witnesses);
    strategy="greedy" expands smallest-grid states first, which reaches the
    target vastly faster on trivial inputs.  Both orders visit exactly the
    same reachable set when the target is absent, so verdicts agree.
    """
    target = canonical_key(trivial_diagram())
    start_key = canonical_key(start)
    deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds

    if start_key == target:
        witness = SimplificationWitness(start, (), ()) if want_witness else None
        return Verdict.TRIVIAL, 1, witness

    # parents: canonical key -> (exact diagram reached, parent key, move from parent)
    parents: dict[bytes, tuple[GridDiagram, bytes | None, mv.CromwellMove | None]] = {
        start_key: (start, None, None)
    }
    visited = 1
    heap: list[tuple[int, int, bytes]] = []
    fifo: deque[bytes] = deque()
    counter = 0
    if strategy == "greedy":
        heapq.heappush(heap, (start.n, counter, start_key))
    else:
        fifo.append(start_key)

    while heap or fifo:
        if deadline is not None and time.monotonic() > deadline:
            return Verdict.LIMIT_EXCEEDED, visited, None
        key = heapq.heappop(heap)[2] if strategy == "greedy" else fifo.popleft()
        d = parents[key][0]
        for m in _search_arcs(d, include_rotations, include_exterior_exchange):
            child = mv.apply(d, m)
            child_key = canonical_key(child)
            if child_key in parents:
                continue
            parents[child_key] = (child, key, m)
            visited += 1
            if child_key == target:
                witness = _build_witness(parents, child_key) if want_witness else None
                return Verdict.TRIVIAL, visited, witness
            if visited >= limits.max_states:
                return Verdict.LIMIT_EXCEEDED, visited, None
            if strategy == "greedy":
                counter += 1
                heapq.heappush(heap, (child.n, counter, child_key))
            else:
                fifo.append(child_key)
    return Verdict.NOT_TRIVIAL, visited, None


def _build_witness(parents, end_key: bytes) -> SimplificationWitness:
    chain: list[mv.CromwellMove] = []
    key = end_key
    while True:
        _, parent_key, move = parents[key]
        if parent_key is None:
            break
        chain.append(move)
        key = parent_key
    chain.reverse()
    start = parents[key][0]
    flags = tuple(m.kind is mv.MoveKind.EXTERIOR_EXCHANGE for m in chain)
    return SimplificationWitness(start, tuple(chain), flags)


def is_trivial(
    d: GridDiagram,
    limits: SearchLimits | None = None,
    include_rotations: bool = True,
    want_witness: bool = True,
    check_exterior_requirement: bool = False,
    strategy: str = "greedy",
) -> SearchReport:
    """Decide whether a knot diagram represents the trivial knot.

    The search graph never increases grid size, and every trivial knot
    diagram admits a monotone path to the 2x2 diagram, so TRIVIAL and
    NOT_TRIVIAL are both exact answers; LIMIT_EXCEEDED is reported as a
    distinct third outcome and never silently collapsed into NOT_TRIVIAL.

    include_rotations=False replicates the strict merge/exchange-only move
    set; it never changes the verdict, only witness shapes and search size.
    """
    if component_count(d) != 1:
        raise NotAKnotError(f"diagram has {component_count(d)} components")
    limits = limits or SearchLimits()
    verdict, visited, witness = _search(
        d, limits, include_rotations, include_exterior_exchange=True,
        want_witness=want_witness, strategy=strategy,
    )
    exterior_required: bool | None = None
    if check_exterior_requirement and verdict is Verdict.TRIVIAL:
        sub, _, _ = _search(
            d, limits, include_rotations=False, include_exterior_exchange=False, want_witness=False
        )
        if sub is Verdict.LIMIT_EXCEEDED:
            exterior_required = None
        else:
            exterior_required = sub is not Verdict.TRIVIAL
    return SearchReport(verdict, visited, witness, exterior_required)


def needs_exterior(d: GridDiagram, limits: SearchLimits | None = None, strict: bool = True) -> bool:
    """True iff every monotone simplification of d uses an exterior exchange.

    Computed by rerunning the reachability search with exterior exchanges
    disabled.  In strict mode (the default) rotations are disabled too:
    a rotation followed by an interior exchange imitates an exterior
    exchange, so leaving rotations enabled would make the answer vacuously
    false on every input.  Raises NotTrivialInputError on nontrivial knots.
    """
    if component_count(d) != 1:
        raise NotAKnotError(f"diagram has {component_count(d)} components")
    limits = limits or SearchLimits()
    sub_verdict, _, _ = _search(
        d,
        limits,
        include_rotations=not strict,
        include_exterior_exchange=False,
        want_witness=False,
    )
    if sub_verdict is Verdict.TRIVIAL:
        return False
    if sub_verdict is Verdict.LIMIT_EXCEEDED:
        raise LimitExceededError("restricted search hit its limits")
    full = is_trivial(d, limits, want_witness=False)
    if full.verdict is Verdict.LIMIT_EXCEEDED:
        raise LimitExceededError("full search hit its limits")
    if full.verdict is not Verdict.TRIVIAL:
        raise NotTrivialInputError("diagram is not a trivial knot")
    return True


def replay_witness(w: SimplificationWitness) -> GridDiagram:
    """Re-apply the witness mechanically; checks monotonicity and the target."""
    d = w.start
    for m in w.moves:
        if m.kind is mv.MoveKind.DIVIDE:
            raise mv.InapplicableMoveError("witness contains a divide move")
        before_n = d.n
        d = mv.apply(d, m)
        if d.n > before_n:
            raise mv.InapplicableMoveError("witness move increased grid size")
    if d != trivial_diagram():
        raise mv.InapplicableMoveError("witness does not end at the 2x2 diagram")
    return d


_SCRAMBLE_GROW = 0.4
_SCRAMBLE_EXCHANGE = 0.8  # of the remaining mass; rest is rotations


def scramble(seed: int, steps: int) -> GridDiagram:
    """A pseudorandom trivial-knot diagram: `steps` random divides,
    exchanges and rotations applied to the 2x2 diagram.

    Divides are drawn with probability 0.4 per step so the expected grid
    size stays moderate; the output is reproducible for a fixed seed.
    """
    rng = random.Random(seed)
    d = trivial_diagram()
    for _ in range(steps):
        r = rng.random()
        if r < _SCRAMBLE_GROW:
            choice = rng.choice(mv.all_divides(d))
        else:
            exchanges = [
                m
                for m in mv.available_moves(d)
                if m.kind in (mv.MoveKind.INTERIOR_EXCHANGE, mv.MoveKind.EXTERIOR_EXCHANGE)
            ]
            if exchanges and (r - _SCRAMBLE_GROW) / (1 - _SCRAMBLE_GROW) < _SCRAMBLE_EXCHANGE:
                choice = rng.choice(exchanges)
            else:
                choice = rng.choice(mv.ROTATIONS)
        d = mv.apply(d, choice)
    return d
