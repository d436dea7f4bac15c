"""Closed-form move and prime families for binary cycles and for complete
bipartite graphs K_{2,m} with a binary first group.

Everything here is generated directly from the defining patterns (block
swaps on cyclic arcs, slice swaps on tensor coordinates) and then
canonically deduplicated; the graph-side machinery in fiberwalk.graphs is
deliberately not reused, so the two routes can be cross-checked in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .cones import Functional
from .errors import InvalidStateError, UnsupportedLevelsError
from .graphs import LabeledGraph, MarginMap, margin_map
from .tables import Move, State, StateSpace, Table, dedup_moves


@dataclass(frozen=True)
class PrimeWitness:
    """A minimal-prime descriptor: its generating cells and witness table.

    The witness table is the exponent vector of the product of all cells
    *not* generating the prime.  The toric component is a marker with no
    variables and no witness table.
    """

    id: str
    variables: frozenset[State]
    table: Optional[Table]
    origin: str  # "cycle" | "k2n" | "pyramid" | "toric"

    @property
    def is_toric(self) -> bool:
        return self.table is None


def toric_marker(origin: str = "toric") -> PrimeWitness:
    return PrimeWitness(id="toric", variables=frozenset(), table=None, origin=origin)


# ---------------------------------------------------------------------------
# binary cycles


def cycle_graph(n: int, level: int = 2) -> LabeledGraph:
    if n < 3:
        raise InvalidStateError("cycles need at least 3 vertices")
    edges = [(i, i % n + 1) for i in range(1, n + 1)]
    return LabeledGraph.build(n, edges, [level] * n)


def _flip(block: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(3 - c for c in block)


def cycle_quadratic_moves(n: int) -> list[Move]:
    """Swap moves between two opposite arcs of the binary n-cycle.

    For every pair of non-adjacent positions, two cells agreeing at those
    positions trade one of the two arcs between them.
    """
    if n < 4:
        return []
    moves = []
    pos = list(range(n))
    for k, l in itertools.combinations(pos, 2):
        arc1 = [(k + 1 + i) % n for i in range(l - k - 1)]
        arc2 = [(l + 1 + i) % n for i in range(n - (l - k) - 1)]
        if not arc1 or not arc2:
            continue
        arc1_vals = list(itertools.product((1, 2), repeat=len(arc1)))
        arc2_vals = list(itertools.product((1, 2), repeat=len(arc2)))
        for a, b in itertools.product((1, 2), repeat=2):
            for va, va2 in itertools.combinations(arc1_vals, 2):
                for vb, vb2 in itertools.combinations(arc2_vals, 2):
                    def cell(x1, x2):
                        coords = [0] * n
                        coords[k], coords[l] = a, b
                        for p, c in zip(arc1, x1):
                            coords[p] = c
                        for p, c in zip(arc2, x2):
                            coords[p] = c
                        return tuple(coords)

                    plus = Table([(cell(va, vb), 1), (cell(va2, vb2), 1)])
                    minus = Table([(cell(va2, vb), 1), (cell(va, vb2), 1)])
                    moves.append(Move(plus, minus))
    return dedup_moves(moves)


def cycle_quartic_moves(n: int) -> list[Move]:
    """Sign-pattern quartics: three cyclic blocks, rows flip two blocks at
    a time on one side and the complementary patterns on the other.
    """
    if n < 3:
        raise InvalidStateError("quartics need at least 3 positions")
    moves = []
    for cuts in itertools.combinations(range(n), 3):
        c1, c2, c3 = cuts
        blocks = [
            [p % n for p in range(c1 + 1, c2 + 1)],
            [p % n for p in range(c2 + 1, c3 + 1)],
            [p % n for p in range(c3 + 1, c1 + 1 + n)],
        ]

        def cell(va, vb, vc):
            coords = [0] * n
            for p, c in zip(blocks[0], va):
                coords[p] = c
            for p, c in zip(blocks[1], vb):
                coords[p] = c
            for p, c in zip(blocks[2], vc):
                coords[p] = c
            return tuple(coords)

        for va in itertools.product((1, 2), repeat=len(blocks[0])):
            for vb in itertools.product((1, 2), repeat=len(blocks[1])):
                for vc in itertools.product((1, 2), repeat=len(blocks[2])):
                    fa, fb, fc = _flip(va), _flip(vb), _flip(vc)
                    plus = Table(
                        [(cell(va, vb, vc), 1), (cell(va, fb, fc), 1),
                         (cell(fa, vb, fc), 1), (cell(fa, fb, vc), 1)]
                    )
                    minus = Table(
                        [(cell(va, vb, fc), 1), (cell(va, fb, vc), 1),
                         (cell(fa, vb, vc), 1), (cell(fa, fb, fc), 1)]
                    )
                    moves.append(Move(plus, minus))
    return dedup_moves(moves)


def cycle_markov_basis(n: int, allow_three_cycle: bool = False) -> list[Move]:
    """Quadratic plus quartic moves connecting every fiber of the binary n-cycle."""
    if n < 4:
        if n == 3 and allow_three_cycle:
            # the lone quartic of the no-three-way interaction model
            return cycle_quartic_moves(3)
        raise UnsupportedLevelsError(
            "cycle basis needs n >= 4 (n=3 available via allow_three_cycle)"
        )
    return dedup_moves(cycle_quadratic_moves(n) + cycle_quartic_moves(n))


def cycle_prime_witnesses(n: int) -> list[PrimeWitness]:
    """One witness per distinct quartic support, plus the toric marker.

    The prime generated by all cells dividing neither quartic term is
    witnessed by the quartic's own support (all eight cells, count one).
    """
    if n < 4:
        raise UnsupportedLevelsError("cycle witnesses need n >= 4")
    space = StateSpace((2,) * n)
    seen: dict[frozenset[State], PrimeWitness] = {}
    for f in cycle_quartic_moves(n):
        support = frozenset(f.plus.support) | frozenset(f.minus.support)
        variables = frozenset(x for x in space.states() if x not in support)
        if variables in seen:
            continue
        label = ".".join("".join(map(str, s)) for s in sorted(support))
        seen[variables] = PrimeWitness(
            id=f"P_f[{label}]",
            variables=variables,
            table=f.plus + f.minus,
            origin="cycle",
        )
    out = sorted(seen.values(), key=lambda w: w.id)
    out.append(toric_marker())
    return out


# ---------------------------------------------------------------------------
# complete bipartite K_{2, m} with binary first group


@dataclass(frozen=True)
class K2NShape:
    """Levels of the second-group vertices 3..N; the first two are binary."""

    free_levels: tuple[int, ...]

    def __post_init__(self):
        if len(self.free_levels) < 2:
            raise InvalidStateError("need at least two second-group vertices (N >= 4)")
        if any(d < 2 for d in self.free_levels):
            raise InvalidStateError("levels must be >= 2")
        object.__setattr__(self, "free_levels", tuple(self.free_levels))

    @property
    def n_total(self) -> int:
        return len(self.free_levels) + 2

    @property
    def space(self) -> StateSpace:
        return StateSpace((2, 2) + self.free_levels)

    def level_of(self, vertex: int) -> int:
        return self.free_levels[vertex - 3]


def k2n_graph(shape: K2NShape) -> LabeledGraph:
    n = shape.n_total
    edges = [(i, a) for i in (1, 2) for a in range(3, n + 1)]
    return LabeledGraph.build(n, edges, (2, 2) + shape.free_levels)


def _free_states(shape: K2NShape, vertices: list[int]):
    return itertools.product(*(range(1, shape.level_of(v) + 1) for v in vertices))


def k2n_quadratic_moves(shape: K2NShape) -> list[Move]:
    """Diagonal swaps in the 2x2 first-group slice, and block swaps inside
    each (i,j)-slice across every bipartition of the second group.
    """
    n = shape.n_total
    free = list(range(3, n + 1))
    moves = []
    # first-group diagonal swap per second-group state
    for k in _free_states(shape, free):
        plus = Table([((1, 1) + k, 1), ((2, 2) + k, 1)])
        minus = Table([((1, 2) + k, 1), ((2, 1) + k, 1)])
        moves.append(Move(plus, minus))
    # in-slice swaps: bipartition the second group, trade one side
    for i, j in itertools.product((1, 2), repeat=2):
        for r in range(1, len(free)):
            for s_verts in itertools.combinations(free, r):
                t_verts = [v for v in free if v not in s_verts]
                s_vals = list(_free_states(shape, list(s_verts)))
                t_vals = list(_free_states(shape, t_verts))

                def cell(sv, tv):
                    coords = [0] * n
                    coords[0], coords[1] = i, j
                    for v, c in zip(s_verts, sv):
                        coords[v - 1] = c
                    for v, c in zip(t_verts, tv):
                        coords[v - 1] = c
                    return tuple(coords)

                for sv, sv2 in itertools.combinations(s_vals, 2):
                    for tv, tv2 in itertools.combinations(t_vals, 2):
                        plus = Table([(cell(sv, tv), 1), (cell(sv2, tv2), 1)])
                        minus = Table([(cell(sv2, tv), 1), (cell(sv, tv2), 1)])
                        moves.append(Move(plus, minus))
    return dedup_moves(moves)


def k2n_quartic_moves(shape: K2NShape) -> list[Move]:
    """Quartics trading a distinguished coordinate's two values between the
    diagonal and antidiagonal first-group slices.
    """
    n = shape.n_total
    free = list(range(3, n + 1))
    moves = []
    for a in free:
        others = [v for v in free if v != a]
        da = shape.level_of(a)
        for k1, k2 in itertools.combinations(range(1, da + 1), 2):
            for l11 in _free_states(shape, others):
                for l12 in _free_states(shape, others):
                    for l21 in _free_states(shape, others):
                        for l22 in _free_states(shape, others):

                            def cell(i, j, ka, other_vals):
                                coords = [0] * n
                                coords[0], coords[1] = i, j
                                coords[a - 1] = ka
                                for v, c in zip(others, other_vals):
                                    coords[v - 1] = c
                                return tuple(coords)

                            plus = Table(
                                [(cell(1, 1, k1, l11), 1), (cell(1, 2, k2, l12), 1),
                                 (cell(2, 1, k2, l21), 1), (cell(2, 2, k1, l22), 1)]
                            )
                            minus = Table(
                                [(cell(1, 1, k2, l11), 1), (cell(1, 2, k1, l12), 1),
                                 (cell(2, 1, k1, l21), 1), (cell(2, 2, k2, l22), 1)]
                            )
                            moves.append(Move(plus, minus))
    return dedup_moves(moves)


def k2n_markov_basis(shape: K2NShape) -> list[Move]:
    return dedup_moves(k2n_quadratic_moves(shape) + k2n_quartic_moves(shape))


def k2n_prime_witnesses(shape: K2NShape) -> list[PrimeWitness]:
    """Slice primes P(a,C,b,D), deduplicated by variable set, plus toric.

    Variables: cells with (x1,x2)=(1,1) and x_a in C; (1,2) and x_b in D;
    (2,1) and x_b not in D; (2,2) and x_a not in C.  For N=4 only a=b
    occurs.  C and D run over nonempty proper subsets.
    """
    n = shape.n_total
    free = list(range(3, n + 1))
    space = shape.space
    pair_iter = (
        [(a, a) for a in free] if n == 4 else itertools.product(free, repeat=2)
    )
    seen: dict[frozenset[State], PrimeWitness] = {}
    for a, b in pair_iter:
        da, db = shape.level_of(a), shape.level_of(b)
        c_subsets = [
            frozenset(c)
            for r in range(1, da)
            for c in itertools.combinations(range(1, da + 1), r)
        ]
        d_subsets = [
            frozenset(d)
            for r in range(1, db)
            for d in itertools.combinations(range(1, db + 1), r)
        ]
        for c_set in c_subsets:
            for d_set in d_subsets:
                variables = set()
                for x in space.states():
                    i, j = x[0], x[1]
                    xa, xb = x[a - 1], x[b - 1]
                    if (
                        (i == 1 and j == 1 and xa in c_set)
                        or (i == 1 and j == 2 and xb in d_set)
                        or (i == 2 and j == 1 and xb not in d_set)
                        or (i == 2 and j == 2 and xa not in c_set)
                    ):
                        variables.add(x)
                variables = frozenset(variables)
                if variables in seen:
                    continue
                witness = Table([(x, 1) for x in space.states() if x not in variables])
                fmt = lambda s: "".join(map(str, sorted(s)))
                seen[variables] = PrimeWitness(
                    id=f"P[a={a},C={{{fmt(c_set)}}},b={b},D={{{fmt(d_set)}}}]",
                    variables=variables,
                    table=witness,
                    origin="k2n",
                )
    out = sorted(seen.values(), key=lambda w: w.id)
    out.append(toric_marker())
    return out


def k2n_facet_inequalities(
    shape: K2NShape, am: Optional[MarginMap] = None, include_mirrored: bool = False
) -> list[Functional]:
    """The explicit valid inequalities of the bipartite marginal cone.

    One functional per (a < b, C, D): the (1,a)-margins over C, plus the
    (2,a)-margins over the complement of C, plus the (2,b)-margins at
    x_2=1 over D, minus the (1,b)-margins at x_1=1 over D.

    With include_mirrored=True the pairs run ordered (a != b); the mirrored
    half is the image of the base family under swapping the two
    distinguished second-group vertices and is needed to pin every slice
    prime onto a vanishing functional (P(a,C,b,D) vanishes exactly on the
    functional with indices (a, C, b, complement of D)).
    """
    g = k2n_graph(shape)
    if am is None:
        am = margin_map(g)
    n = shape.n_total

    def row(i: int, a: int, xi: int, xa: int) -> int:
        clique = (i, a)
        ci = am.cliques.index(clique)
        return am.block_starts[ci] + (xi - 1) * shape.level_of(a) + (xa - 1)

    out = []
    free = list(range(3, n + 1))
    pairs = itertools.permutations(free, 2) if include_mirrored else itertools.combinations(free, 2)
    for a, b in pairs:
        da, db = shape.level_of(a), shape.level_of(b)
        c_subsets = [
            set(c) for r in range(1, da) for c in itertools.combinations(range(1, da + 1), r)
        ]
        d_subsets = [
            set(d) for r in range(1, db) for d in itertools.combinations(range(1, db + 1), r)
        ]
        for c_set in c_subsets:
            for d_set in d_subsets:
                coeffs = [0] * am.n_rows
                for k in range(1, da + 1):
                    if k in c_set:
                        coeffs[row(1, a, 1, k)] += 1
                    else:
                        coeffs[row(2, a, 2, k)] += 1
                for l in d_set:
                    coeffs[row(2, b, 1, l)] += 1
                    coeffs[row(1, b, 1, l)] -= 1
                out.append(Functional(tuple(coeffs)))
    return out


# ---------------------------------------------------------------------------
# cones over a base graph (disjoint layers per apex level)


def pyramid_prime_count(base_count: int, d0: int) -> int:
    """Minimal primes of a coned model: one base component per apex level."""
    if base_count < 1 or d0 < 2:
        raise InvalidStateError("need base_count >= 1 and apex level >= 2")
    return base_count ** d0


def pyramid_prime_witnesses(
    base_graph: LabeledGraph, base_witnesses: Iterable[PrimeWitness], d0: int
) -> list[PrimeWitness]:
    """Compose coned-graph witnesses layerwise from base witnesses.

    Each apex level carries an independent base component (monomial prime
    or toric); a toric layer contributes every layer cell to the witness
    monomial and no variables.  The all-toric tuple is the coned graph's
    toric component and is returned as the marker.
    """
    base_space = base_graph.levels
    base_list = sorted(
        [w for w in base_witnesses if not w.is_toric], key=lambda w: w.id
    )
    choices = base_list + [toric_marker()]
    out = []
    for combo in itertools.product(choices, repeat=d0):
        if all(w.is_toric for w in combo):
            continue
        variables = set()
        cells = []
        for level, w in enumerate(combo, start=1):
            if w.is_toric:
                cells.extend((x + (level,), 1) for x in base_space.states())
            else:
                cells.extend((s + (level,), c) for s, c in w.table.items())
                variables.update(x + (level,) for x in w.variables)
        label = ",".join(w.id for w in combo)
        out.append(
            PrimeWitness(
                id=f"pyr[{label}]",
                variables=frozenset(variables),
                table=Table(cells),
                origin="pyramid",
            )
        )
    out.sort(key=lambda w: w.id)
    out.append(toric_marker())
    return out
