import random

import pytest

from fiberwalk.errors import (
    InvalidMoveError,
    InvalidStateError,
    MoveNotApplicableError,
    UnsupportedLevelsError,
)
from fiberwalk.tables import (
    Move,
    StateSpace,
    Table,
    apply_move,
    dedup_moves,
    opposite_state,
    state_at,
    state_index,
)


def test_state_index_corners():
    s = StateSpace((2, 2, 2, 2))
    assert state_index((1, 1, 1, 1), s) == 0
    assert state_index((2, 2, 2, 2), s) == 15


def test_state_index_mixed_radix():
    # independent oracle: explicit mixed-radix formula, last coordinate fastest
    s = StateSpace((2, 3, 2))
    x = (1, 2, 1)
    expected = ((x[0] - 1) * 3 + (x[1] - 1)) * 2 + (x[2] - 1)
    assert expected == 2
    assert state_index(x, s) == 2


@pytest.mark.parametrize(
    "levels", [(2, 2), (2, 3, 2), (3, 3, 3), (4, 4, 4), (2,) * 12, (5, 7)]
)
def test_state_index_bijection_and_monotone(levels):
    s = StateSpace(levels)
    seen = []
    for x in s.states():
        seen.append(state_index(x, s))
        assert state_at(seen[-1], s) == x
    assert seen == list(range(s.total_cells))
    states = sorted(s.states())
    assert [state_index(x, s) for x in states] == sorted(seen)


def test_state_index_rejects_bad_coordinates():
    s = StateSpace((2, 3, 2))
    with pytest.raises(InvalidStateError):
        state_index((1, 4, 1), s)
    with pytest.raises(InvalidStateError):
        state_index((1, 2), s)


def test_space_validation():
    with pytest.raises(InvalidStateError):
        StateSpace((2, 1))
    with pytest.raises(InvalidStateError):
        StateSpace(())


SWAP = Move(Table({(1, 2): 1, (2, 1): 1}), Table({(1, 1): 1, (2, 2): 1}))


def test_apply_move_basic_swap():
    t = Table({(1, 1): 1, (2, 2): 1})
    assert apply_move(t, SWAP) == Table({(1, 2): 1, (2, 1): 1})


def test_apply_move_insufficient_support():
    with pytest.raises(MoveNotApplicableError):
        apply_move(Table({(1, 1): 1}), SWAP)


def test_apply_move_entrywise():
    t = Table({(1, 1): 2, (2, 2): 1})
    assert apply_move(t, SWAP) == Table({(1, 1): 1, (1, 2): 1, (2, 1): 1})


def test_apply_then_reverse_roundtrip_random():
    rng = random.Random(7)
    space = StateSpace((2, 2, 3))
    states = list(space.states())
    for _ in range(200):
        cells = {s: rng.randint(1, 4) for s in rng.sample(states, k=rng.randint(2, 6))}
        t = Table(cells)
        support = list(t.support)
        minus_s = rng.sample(support, k=2)
        plus_pool = [s for s in states if s not in minus_s]
        plus_s = rng.sample(plus_pool, k=2)
        m = Move(Table({plus_s[0]: 1, plus_s[1]: 1}), Table({minus_s[0]: 1, minus_s[1]: 1}))
        out = apply_move(t, m)
        assert out.degree == t.degree
        assert all(c > 0 for _, c in out.items())
        assert apply_move(out, m.reverse()) == t


def test_opposite_state():
    s4 = StateSpace((2, 2, 2, 2))
    assert opposite_state((1, 1, 1, 1), s4) == (2, 2, 2, 2)
    s3 = StateSpace((2, 2, 2))
    assert opposite_state((1, 2, 1), s3) == (2, 1, 2)
    for x in s4.states():
        assert opposite_state(opposite_state(x, s4), s4) == x
        assert all(a != b for a, b in zip(x, opposite_state(x, s4)))


def test_opposite_state_guard():
    with pytest.raises(UnsupportedLevelsError):
        opposite_state((1, 2, 1), StateSpace((2, 3, 2)))


def test_table_equality_is_canonical():
    a = Table([((1, 2), 1), ((1, 1), 2)])
    b = Table({(1, 1): 2, (1, 2): 1})
    assert a == b and hash(a) == hash(b)
    assert Table({(1, 1): 0}) == Table()


def test_table_rejects_negative():
    with pytest.raises(InvalidStateError):
        Table({(1, 1): -1})


def test_move_invariants():
    with pytest.raises(InvalidMoveError):
        Move(Table({(1, 1): 1}), Table({(1, 1): 1}))  # overlapping supports
    with pytest.raises(InvalidMoveError):
        Move(Table({(1, 1): 2}), Table({(1, 2): 1}))  # degree mismatch


def test_canonical_orientation_and_dedup():
    m = SWAP
    # smallest cell (1,1) sits in minus; canonical form flips it into plus
    canon = m.canonical()
    assert canon.plus.support[0] == (1, 1)
    assert dedup_moves([m, m.reverse(), m]) == dedup_moves([m.reverse()])
    # dedup is idempotent and order-independent
    rng = random.Random(3)
    moves = [m, m.reverse(), canon]
    once = dedup_moves(moves)
    rng.shuffle(moves)
    assert dedup_moves(moves) == once == dedup_moves(once)
