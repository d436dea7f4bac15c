"""JSON wire formats.

Graph: {"vertices": 4, "d": [2,2,2,2], "edges": [[1,2],[2,3],[3,4],[4,1]]}
Table: {"d": [2,2,2,2], "cells": [[[1,1,1,1], 1], ...]}
Move:  {"plus": <cells>, "minus": <cells>}   (cells as in Table, counts kept)

States are 1-based coordinate lists throughout.
"""

from __future__ import annotations

import json
from typing import Union

from .errors import InvalidStateError
from .graphs import LabeledGraph
from .tables import Move, StateSpace, Table


def graph_to_json(g: LabeledGraph) -> dict:
    return {
        "vertices": g.n_vertices,
        "d": list(g.levels.levels),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_json(data: dict) -> LabeledGraph:
    try:
        return LabeledGraph.build(int(data["vertices"]), [tuple(e) for e in data["edges"]], data["d"])
    except KeyError as missing:
        raise InvalidStateError(f"graph JSON lacks key {missing}")


def _cells_to_json(t: Table) -> list:
    return [[list(s), c] for s, c in t.items()]


def _cells_from_json(cells) -> Table:
    return Table([(tuple(state), int(count)) for state, count in cells])


def table_to_json(t: Table, space: StateSpace) -> dict:
    return {"d": list(space.levels), "cells": _cells_to_json(t)}


def table_from_json(data: dict) -> tuple[Table, StateSpace]:
    try:
        space = StateSpace(tuple(data["d"]))
        table = _cells_from_json(data["cells"])
    except KeyError as missing:
        raise InvalidStateError(f"table JSON lacks key {missing}")
    table.validate_on(space)
    return table, space


def move_to_json(m: Move) -> dict:
    return {"plus": _cells_to_json(m.plus), "minus": _cells_to_json(m.minus)}


def move_from_json(data: dict) -> Move:
    try:
        return Move(_cells_from_json(data["plus"]), _cells_from_json(data["minus"]))
    except KeyError as missing:
        raise InvalidStateError(f"move JSON lacks key {missing}")


def moves_from_json(data: Union[list, dict]) -> list[Move]:
    if isinstance(data, dict):
        data = data["moves"]
    return [move_from_json(m) for m in data]


def moves_to_json(moves) -> list:
    return [move_to_json(m) for m in moves]


def load(path: str):
    with open(path) as fh:
        return json.load(fh)


def dump(obj, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
