import random

import pytest

from fiberwalk.cones import (
    Functional,
    _reduce,
    build_disconnection_witness,
    check_margin_property,
    cone_facets,
    facets_of_columns,
    find_disconnecting_move,
    integer_rank,
    is_relative_interior,
    is_strictly_positive,
)
from fiberwalk.errors import InvalidWitnessMoveError, MissingFacetsError, TooLargeError
from fiberwalk.families import (
    cycle_prime_witnesses,
    k2n_facet_inequalities,
    k2n_prime_witnesses,
    k2n_quartic_moves,
)
from fiberwalk.graphs import margin_map, margins
from fiberwalk.tables import Move, Table


def test_facets_orthant():
    fs = facets_of_columns([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert sorted(f.coeffs for f in fs) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_facets_single_ray_empty():
    assert facets_of_columns([(1, 2, 3)]) == []


def test_facets_column_budget():
    with pytest.raises(TooLargeError):
        facets_of_columns([(1, i) for i in range(200)])


def test_facet_exactness_on_preset_cones(c4, c5, k23):
    # every facet is >= 0 on all columns and tight on a rank-(r-1) subset
    for g in (c4, c5, k23):
        am = margin_map(g)
        cols = am.columns()
        r = integer_rank(cols)
        for f in cone_facets(am):
            evals = [f.evaluate(c) for c in cols]
            assert all(v >= 0 for v in evals)
            tight = [c for c, v in zip(cols, evals) if v == 0]
            assert integer_rank(tight) == r - 1


def test_k22_facets_contain_family_inequalities(k22, k22_shape):
    am = margin_map(k22)
    cols = am.columns()
    facet_evals = {_reduce(tuple(f.evaluate(c) for c in cols)) for f in cone_facets(am)}
    fam = k2n_facet_inequalities(k22_shape, am)
    assert len(fam) == 4
    for f in fam:
        ev = _reduce(tuple(f.evaluate(c) for c in cols))
        assert ev in facet_evals


def test_strict_positivity():
    assert is_strictly_positive((1, 2, 3))
    assert not is_strictly_positive((1, 0, 3))
    assert is_strictly_positive(())


def test_relative_interior_full_table(c4):
    am = margin_map(c4)
    facets = cone_facets(am)
    full = Table({s: 1 for s in c4.levels.states()})
    assert is_relative_interior(am, margins(am, full), facets)
    unit = Table.unit((1, 1, 1, 1))
    assert not is_relative_interior(am, margins(am, unit), facets)
    with pytest.raises(MissingFacetsError):
        is_relative_interior(am, margins(am, full), None)


def test_relative_interior_seth_margins():
    from fiberwalk.presets import resolve

    preset = resolve("seth-c4-3")
    am = margin_map(preset.graph)
    facets = cone_facets(am)  # rank-25 cone, still within the facet budget
    assert is_relative_interior(am, margins(am, preset.pinned_table), facets)


def test_relative_interior_implies_strict_positivity(c4):
    # margin rows are valid inequalities of these cones, so interior points
    # must have strictly positive margins; checked instance by instance
    import random

    am = margin_map(c4)
    facets = cone_facets(am)
    rng = random.Random(31)
    states = list(c4.levels.states())
    for _ in range(60):
        t = Table({s: rng.randint(1, 3) for s in rng.sample(states, rng.randint(1, 8))})
        y = margins(am, t)
        if is_relative_interior(am, y, facets):
            assert is_strictly_positive(y)


def test_cycle_witness_margins_fail_strict_positivity(c4):
    # the pinned quartic support misses two diagonal pairs on some edge
    am = margin_map(c4)
    pinned = Table(
        {(1, 1, 1, 1): 1, (1, 2, 2, 2): 1, (2, 1, 2, 2): 1, (2, 2, 1, 1): 1,
         (1, 1, 2, 2): 1, (1, 2, 1, 1): 1, (2, 1, 1, 1): 1, (2, 2, 2, 2): 1}
    )
    w = next(w for w in cycle_prime_witnesses(4) if w.table == pinned)
    y = margins(am, w.table)
    assert not is_strictly_positive(y)
    # edge (3,4) block misses the off-diagonal cells
    ci = am.cliques.index((3, 4))
    block = y[am.block_starts[ci] : am.block_starts[ci] + 4]
    assert block == (4, 0, 0, 4)


def test_check_margin_property_c4(c4):
    am = margin_map(c4)
    ws = [w for w in cycle_prime_witnesses(4) if not w.is_toric]
    assert check_margin_property(ws, am, "positive-margins").holds
    assert check_margin_property(ws, am, "interior-point", cone_facets(am)).holds


def test_check_margin_property_k23(k23, k23_shape):
    am = margin_map(k23)
    ws = [w for w in k2n_prime_witnesses(k23_shape) if not w.is_toric]
    verdict = check_margin_property(ws, am, "positive-margins")
    assert not verdict.holds
    assert verdict.failing_witness.id == "P[a=3,C={1},b=4,D={1}]"
    assert check_margin_property(ws, am, "interior-point", cone_facets(am)).holds
    fam = k2n_facet_inequalities(k23_shape, am, include_mirrored=True)
    assert check_margin_property(ws, am, "interior-point", fam).holds


def test_check_margin_property_permutation_invariant(k23, k23_shape):
    am = margin_map(k23)
    ws = [w for w in k2n_prime_witnesses(k23_shape) if not w.is_toric]
    rng = random.Random(23)
    shuffled = ws[:]
    rng.shuffle(shuffled)
    a = check_margin_property(ws, am, "positive-margins")
    b = check_margin_property(shuffled, am, "positive-margins")
    assert a.holds == b.holds
    assert a.failing_witness.id == b.failing_witness.id


def test_interior_mode_requires_facets(c4):
    ws = [w for w in cycle_prime_witnesses(4) if not w.is_toric]
    with pytest.raises(MissingFacetsError):
        check_margin_property(ws, margin_map(c4), "interior-point")


def test_build_disconnection_witness(k23, k23_shape):
    am = margin_map(k23)
    w = next(
        x for x in k2n_prime_witnesses(k23_shape) if x.id == "P[a=3,C={1},b=4,D={1}]"
    )
    f = find_disconnecting_move(k2n_quartic_moves(k23_shape), w)
    u0, v0 = build_disconnection_witness(w, f, 0, am)
    assert (u0, v0) == (f.plus, f.minus)
    u, v = build_disconnection_witness(w, f, 1, am)
    assert u.degree == 20 and v.degree == 20
    assert margins(am, u) == margins(am, v)
    assert is_strictly_positive(margins(am, u))


def test_build_disconnection_witness_rejects_touching_move(k23_shape):
    w = next(
        x for x in k2n_prime_witnesses(k23_shape) if x.id == "P[a=3,C={1},b=4,D={1}]"
    )
    var = sorted(w.variables)[0]
    other = sorted(w.table.support)[0]
    bad = Move(Table({var: 1}), Table({other: 1}))
    with pytest.raises(InvalidWitnessMoveError):
        build_disconnection_witness(w, bad, 1)


def test_functional_primitive():
    f = Functional((2, 4, -6))
    assert f.coeffs == (1, 2, -3)
    assert f.evaluate((1, 1, 1)) == 0
