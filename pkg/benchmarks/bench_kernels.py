"""Compare the compiled elimination kernels with the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 5]

Matrices are random sparse integer matrices of a fixed density.  Both
backends must agree on every rank; timings are the best of ``--repeat`` runs.
``--pipeline`` also times the two-point scenario family end to end under
each backend (in subprocesses, since the backend is chosen at import).
"""

import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from dgglue import _backend, _pykernels


def random_rows(rng, n, density, bound=5):
    rows = []
    for _ in range(n):
        row = {j: rng.randint(-bound, bound) for j in range(n) if rng.random() < density}
        rows.append({j: x for j, x in row.items() if x})
    return rows


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80, 120])
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pipeline", action="store_true", help="also time the scenario family per backend")
    args = ap.parse_args(argv)

    ext = _backend._ext
    if ext is None:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    p = args.prime
    print(f"{'n':>5} {'kernel':>8} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in args.sizes:
        rows = random_rows(rng, n, args.density)
        red = [{j: x % p for j, x in r.items() if x % p} for r in rows]
        cases = [
            ("int", lambda: _pykernels.rank_int([dict(r) for r in rows], n),
             lambda: _backend.rank_int([dict(r) for r in rows], n)),
            ("mod p", lambda: _pykernels.rank_mod_p([dict(r) for r in red], n, p),
             lambda: ext.rank_mod_p([dict(r) for r in red], n, p)),
        ]
        for name, py, cy in cases:
            if py() != cy():
                print(f"rank mismatch at n={n} ({name})", file=sys.stderr)
                return 2
            tp, tc = best(py, args.repeat), best(cy, args.repeat)
            print(f"{n:>5} {name:>8} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    if args.pipeline:
        times = {label: pipeline_seconds(pure) for label, pure in (("python", True), ("compiled", False))}
        print(f"scenario family: python {times['python']:.2f}s, compiled {times['compiled']:.2f}s")
    return 0


PIPELINE = """
import itertools
from dgglue.scenarios import ScenarioConfig, run_scenario
for l1, l2 in itertools.product((1, 2, 3), repeat=2):
    cfg = ScenarioConfig([(1, k) for k in range(l1)], [(k + 3, 1) for k in range(l2)])
    assert run_scenario(cfg).passed
"""


def pipeline_seconds(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("DGGLUE_PURE_PYTHON", None)
    if pure:
        env["DGGLUE_PURE_PYTHON"] = "1"
    start = time.perf_counter()
    subprocess.run([sys.executable, "-c", PIPELINE], env=env, check=True)
    return time.perf_counter() - start


if __name__ == "__main__":
    sys.exit(main())
