"""Compare the numpy kernel fallback against the compiled extension.

Run directly:

    python3 benchmarks/bench_kernels.py

Each workload is timed best-of-five on both backends and the outputs are
cross-checked, so this doubles as an equivalence test at benchmark scale.
"""

import time

import numpy as np

from latcolor import bounds, lattice
from latcolor.kernels import _pure

try:
    from latcolor.kernels import _speed
except ImportError:
    _speed = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - started)
    return min(times), result


def _diff_array(dim, alpha, D):
    diffs = lattice.half_difference_vectors(dim, alpha, D)
    return np.array(diffs, dtype=np.int64).reshape(len(diffs), dim)


def workloads():
    diffs3 = _diff_array(3, 2, 10)
    diffs4 = _diff_array(4, 2, 6)
    box3 = ((-8,) * 3, (8,) * 3)
    box4 = ((-4,) * 4, (4,) * 4)
    yield ("box_edges dim3 [-8,8] D=10",
           lambda impl: impl.box_edges(*box3, diffs3),
           lambda a, b: np.array_equal(a, b))
    yield ("box_edges dim4 [-4,4] D=6",
           lambda impl: impl.box_edges(*box4, diffs4),
           lambda a, b: np.array_equal(a, b))

    rng = np.random.default_rng(0)
    colours3 = rng.integers(0, 2, size=17 ** 3, dtype=np.int64)
    yield ("conflict_pairs dim3 [-8,8] D=10",
           lambda impl: impl.conflict_pairs(colours3, *box3, diffs3),
           lambda a, b: np.array_equal(a, b))

    cube = lattice.build_window_graph(lattice.Window(3, 0, 2), 2, 2)
    cube_edges = cube.edges
    yield ("dsatur_chromatic 27-vertex cube",
           lambda impl: impl.dsatur_chromatic(cube.n_vertices, cube_edges),
           lambda a, b: a[0] == b[0])

    triple = bounds.triple_configuration(9).graph()
    yield ("max_independent_set 84-vertex triple graph",
           lambda impl: impl.max_independent_set(triple.n_vertices,
                                                 triple.edges),
           lambda a, b: a[0] == b[0])


def main() -> int:
    if _speed is None:
        print("compiled extension not built; timing the numpy fallback only")
    header = f"{'workload':<42} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call, same in workloads():
        pure_time, pure_result = best_of(lambda: call(_pure))
        if _speed is None:
            print(f"{name:<42} {pure_time * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        fast_time, fast_result = best_of(lambda: call(_speed))
        if not same(pure_result, fast_result):
            print(f"{name:<42} BACKEND MISMATCH")
            return 1
        print(f"{name:<42} {pure_time * 1e3:>8.2f}ms "
              f"{fast_time * 1e3:>8.2f}ms {pure_time / fast_time:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
