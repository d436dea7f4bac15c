"""Fiber search engine: components, connecting paths, fiber enumeration,
and extensional Markov-basis verification.

The engine walks the implicit graph whose nodes are tables and whose edges
are move applications (in either orientation).  Tables are interned as
packed byte strings via the kernel backend; see fiberwalk._kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from . import _kernel as kernel
from .errors import FiberTooLargeError, TooLargeError
from .graphs import MarginMap
from .tables import Move, StateSpace, Table, apply_move, state_at, state_index

DEFAULT_NODE_CAP = 1_000_000
# total multisets enumerated by verify_markov_basis before giving up
DEFAULT_TABLE_BUDGET = 5_000_000


def pack_table(t: Table, space: StateSpace) -> bytes:
    cells = bytearray(space.total_cells)
    for s, c in t.items():
        if c > kernel.pure.MAX_COUNT:
            raise TooLargeError(f"count {c} exceeds packed byte range")
        cells[state_index(s, space)] = c
    return bytes(cells)


def unpack_table(b: bytes, space: StateSpace) -> Table:
    return Table([(state_at(i, space), c) for i, c in enumerate(b) if c])


def pack_move_set(moves: Sequence[Move], space: StateSpace):
    packed = []
    for m in moves:
        minus = tuple((state_index(s, space), c) for s, c in m.minus.items())
        plus = tuple((state_index(s, space), c) for s, c in m.plus.items())
        packed.append((minus, plus))
    return kernel.pack_moves(packed)


@dataclass
class ComponentReport:
    """BFS closure of a start table under a move set."""

    start: Table
    size: int
    truncated: bool
    members: Optional[tuple[Table, ...]] = None  # canonical order; None above cap

    def contains(self, t: Table) -> bool:
        return self.members is not None and t in set(self.members)


def connected_component(
    start: Table,
    moves: Sequence[Move],
    space: StateSpace,
    node_cap: int = DEFAULT_NODE_CAP,
    keep_members: bool = True,
) -> ComponentReport:
    """Exact component when its size fits in node_cap, else a truncated report."""
    if node_cap < 1:
        raise TooLargeError("node_cap must be >= 1")
    start.validate_on(space)
    pm = pack_move_set(moves, space)
    visited, truncated = kernel.component(pack_table(start, space), pm, node_cap)
    members = None
    if keep_members and not truncated:
        members = tuple(unpack_table(b, space) for b in sorted(visited))
    return ComponentReport(start=start, size=len(visited), truncated=truncated, members=members)


@dataclass
class PathStep:
    move: Move
    forward: bool  # False means the move was applied in reverse


@dataclass
class ConnectResult:
    status: str  # "connected" | "not-connected" | "inconclusive"
    path: Optional[list[PathStep]] = None

    @property
    def connected(self) -> bool:
        return self.status == "connected"


def _trace(parents: dict, end: bytes) -> list[tuple[int, bool]]:
    steps = []
    cur = end
    while True:
        prev = parents[cur]
        if prev is None:
            break
        pb, k, fwd = prev
        steps.append((k, fwd))
        cur = pb
    steps.reverse()
    return steps


def are_connected(
    u: Table,
    v: Table,
    moves: Sequence[Move],
    space: StateSpace,
    node_cap: int = DEFAULT_NODE_CAP,
) -> ConnectResult:
    """Bidirectional BFS between two tables.

    Returns a replayable path on success (verified by re-applying it), a
    definite "not-connected" when either side is exhausted below its cap,
    and "inconclusive" when both searches were truncated first.
    """
    u.validate_on(space)
    v.validate_on(space)
    pm = pack_move_set(moves, space)
    bu, bv = pack_table(u, space), pack_table(v, space)
    if bu == bv:
        return ConnectResult("connected", [])

    sides = [
        {"parents": {bu: None}, "frontier": [bu], "done": False},
        {"parents": {bv: None}, "frontier": [bv], "done": False},
    ]

    def expand(side_idx: int) -> Optional[bytes]:
        side, other = sides[side_idx], sides[1 - side_idx]
        nxt = []
        for t in sorted(side["frontier"]):
            for k, fwd, nb in kernel.neighbors_signed(t, pm):
                if nb in side["parents"]:
                    continue
                if len(side["parents"]) >= node_cap:
                    side["done"] = "truncated"
                    side["frontier"] = nxt
                    return None
                side["parents"][nb] = (t, k, fwd)
                nxt.append(nb)
                if nb in other["parents"]:
                    side["frontier"] = nxt
                    return nb
        side["frontier"] = nxt
        if not nxt:
            side["done"] = "exhausted"
        return None

    meet = None
    while meet is None:
        active = [i for i in (0, 1) if not sides[i]["done"] and sides[i]["frontier"]]
        if not active:
            break
        i = min(active, key=lambda j: len(sides[j]["parents"]))
        meet = expand(i)

    if meet is None:
        if any(s["done"] == "exhausted" for s in sides):
            return ConnectResult("not-connected")
        return ConnectResult("inconclusive")

    fwd_steps = _trace(sides[0]["parents"], meet)
    back_steps = _trace(sides[1]["parents"], meet)
    # steps recorded from v toward the meeting point replay reversed
    steps = fwd_steps + [(k, not fwd) for k, fwd in reversed(back_steps)]
    path = [PathStep(moves[k], fwd) for k, fwd in steps]

    cur = u
    for st in path:
        cur = apply_move(cur, st.move if st.forward else st.move.reverse())
    if cur != v:
        raise AssertionError("path replay failed; kernel inconsistency")
    return ConnectResult("connected", path)


def enumerate_fiber(am: MarginMap, key: tuple[int, ...], size_cap: int = 100_000) -> frozenset[Table]:
    """All nonnegative tables with the given margin vector.

    Backtracks over cells in index order, bounding each count by the
    running residual margins and forcing residuals of completed rows to
    zero.  Raises FiberTooLargeError beyond size_cap.
    """
    am.validate_key(tuple(key))
    space = am.space
    n_cells = am.n_cols
    residual = list(key)
    # rows whose incident cells are exhausted after cell i must be at zero
    last_cell = [0] * am.n_rows
    for i in range(n_cells):
        for r in am.rows_of_cell(i):
            last_cell[r] = i
    finishing = [[] for _ in range(n_cells)]
    for r, i in enumerate(last_cell):
        finishing[i].append(r)

    out: list[Table] = []
    counts = [0] * n_cells

    def backtrack(i: int) -> None:
        if i == n_cells:
            out.append(Table([(state_at(j, space), c) for j, c in enumerate(counts) if c]))
            if len(out) > size_cap:
                raise FiberTooLargeError(f"fiber exceeds the cap of {size_cap}")
            return
        rows = am.rows_of_cell(i)
        hi = min(residual[r] for r in rows)
        for c in range(hi, -1, -1):
            counts[i] = c
            for r in rows:
                residual[r] -= c
            if all(residual[r] == 0 for r in finishing[i]):
                backtrack(i + 1)
            for r in rows:
                residual[r] += c
        counts[i] = 0

    backtrack(0)
    return frozenset(out)


def _degree_tables(space: StateSpace, degree: int) -> Iterable[bytes]:
    """Packed tables of exact degree d = multisets of d cells."""
    n = space.total_cells
    for combo in itertools.combinations_with_replacement(range(n), degree):
        cells = bytearray(n)
        for i in combo:
            cells[i] += 1
        yield bytes(cells)


@dataclass
class BasisVerdict:
    passed: bool
    degree_bound: int
    fibers_checked: int
    witness: Optional[tuple[Table, Table]] = None  # same margins, different components
    witness_degree: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed


def verify_markov_basis(
    moves: Sequence[Move],
    am: MarginMap,
    degree_bound: int,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> BasisVerdict:
    """Extensional check: do the moves connect every fiber up to a degree?

    Enumerates all tables of degree <= degree_bound, groups them by margin
    vector, and union-finds components via forward move applications.  On
    failure the witness pair is canonical: lowest degree, smallest margin
    key, then the two smallest tables in distinct components.
    """
    if degree_bound < 1:
        raise TooLargeError("degree bound must be >= 1")
    n = am.n_cols
    total = sum(comb(n + d - 1, d) for d in range(1, degree_bound + 1))
    if total > table_budget:
        raise TooLargeError(
            f"degree {degree_bound} needs {total} tables (> budget {table_budget})"
        )
    space = am.space
    pm = pack_move_set(moves, space)

    fibers_checked = 0
    for degree in range(1, degree_bound + 1):
        parent: dict[bytes, bytes] = {}

        def find(x: bytes) -> bytes:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        def union(x: bytes, y: bytes) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx > ry:
                    rx, ry = ry, rx
                parent[ry] = rx

        groups: dict[tuple[int, ...], list[bytes]] = {}
        rows_of = am.rows_of_cell
        for tb in _degree_tables(space, degree):
            parent[tb] = tb
            marg = [0] * am.n_rows
            for i, c in enumerate(tb):
                if c:
                    for r in rows_of(i):
                        marg[r] += c
            groups.setdefault(tuple(marg), []).append(tb)
        for tb in parent:
            for nb in kernel.forward_neighbors(tb, pm):
                union(tb, nb)

        for key in sorted(groups):
            members = groups[key]
            fibers_checked += 1
            roots = {find(tb) for tb in members}
            if len(roots) > 1:
                members.sort()
                first = members[0]
                r0 = find(first)
                second = next(tb for tb in members if find(tb) != r0)
                witness = (unpack_table(first, space), unpack_table(second, space))
                return BasisVerdict(
                    passed=False,
                    degree_bound=degree_bound,
                    fibers_checked=fibers_checked,
                    witness=witness,
                    witness_degree=degree,
                )
    return BasisVerdict(passed=True, degree_bound=degree_bound, fibers_checked=fibers_checked)
