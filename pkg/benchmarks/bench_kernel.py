#!/usr/bin/env python3
"""Compare the pure and compiled kernels on the two hot workloads.

Run from a checkout (after `python setup.py build_ext --inplace` if you
want the compiled column):

    python benchmarks/bench_kernel.py

Both backends must produce identical components and verdicts; the script
asserts that before reporting timings.
"""

import time

from fiberwalk._kernel import pure
from fiberwalk.engine import pack_table, verify_markov_basis
from fiberwalk.families import (
    K2NShape,
    cycle_graph,
    cycle_markov_basis,
    k2n_graph,
    k2n_markov_basis,
)
from fiberwalk.graphs import global_markov_moves, margin_map
from fiberwalk.k33 import k33_graph, k33_witness

try:
    from fiberwalk._kernel import _fast as fast
except ImportError:
    fast = None


def moves_as_pairs(moves, space):
    from fiberwalk.tables import state_index

    out = []
    for m in moves:
        minus = tuple((state_index(s, space), c) for s, c in m.minus.items())
        plus = tuple((state_index(s, space), c) for s, c in m.plus.items())
        out.append((minus, plus))
    return out


def bench_component(backend, repeats=20):
    g = k33_graph()
    wit = k33_witness()
    pm = backend.pack_moves(moves_as_pairs(global_markov_moves(g), g.levels))
    start = pack_table(wit.u_plus + wit.w + wit.w, g.levels)
    t0 = time.perf_counter()
    for _ in range(repeats):
        visited, truncated = backend.component(start, pm, 4096)
    dt = (time.perf_counter() - t0) / repeats
    assert len(visited) == 90 and not truncated
    return dt, frozenset(visited)


def bench_forward_scan(backend, degree=3):
    """The verify-basis inner loop: forward neighbors of every table."""
    import itertools

    g = cycle_graph(5)
    space = g.levels
    pm = backend.pack_moves(moves_as_pairs(cycle_markov_basis(5), space))
    n = space.total_cells
    tables = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        cells = bytearray(n)
        for i in combo:
            cells[i] += 1
        tables.append(bytes(cells))
    t0 = time.perf_counter()
    edges = 0
    for t in tables:
        edges += len(backend.forward_neighbors(t, pm))
    dt = time.perf_counter() - t0
    return dt, edges


def main():
    backends = [("pure", pure)] + ([("fast", fast)] if fast else [])
    if fast is None:
        print("compiled kernel not built; showing pure only "
              "(build with: python setup.py build_ext --inplace)")

    print(f"{'workload':<42}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")

    results = {}
    for name, backend in backends:
        results[name] = bench_component(backend)
    times = [results[name][0] for name, _ in backends]
    sets = {results[name][1] for name, _ in backends}
    assert len(sets) == 1, "backends disagree on the component"
    row = "".join(f"{t * 1e3:>10.1f}ms" for t in times)
    speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
    print(f"{'90-node component closure (x20)':<42}" + row + speed)

    results = {}
    for name, backend in backends:
        results[name] = bench_forward_scan(backend)
    times = [results[name][0] for name, _ in backends]
    counts = {results[name][1] for name, _ in backends}
    assert len(counts) == 1, "backends disagree on edge counts"
    row = "".join(f"{t * 1e3:>10.1f}ms" for t in times)
    speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
    print(f"{'forward scan, 6545 tables x 120 moves':<42}" + row + speed)

    t0 = time.perf_counter()
    shape = K2NShape((2, 2, 2))
    verdict = verify_markov_basis(k2n_markov_basis(shape), margin_map(k2n_graph(shape)), 4)
    dt = time.perf_counter() - t0
    from fiberwalk import kernel_backend

    assert verdict.passed
    print(f"\nend-to-end basis check (degree 4, selected backend = {kernel_backend}): {dt:.2f}s")


if __name__ == "__main__":
    main()
