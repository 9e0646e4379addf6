"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Reports the best of ``--repeat`` runs for the hypergeometric series and
for one full RK4 sweep across an oracle box.
"""
import argparse
import timeit

import numpy as np

from wsdirac import _pykernels, model, oracle

try:
    from wsdirac import _core
except ImportError:
    _core = None


def cases():
    xs = np.linspace(-0.95, 0.95, 2001)
    p = model.PhysParams(W=1.2, a=5.0, L=10.0, m0=0.4)
    prof = oracle.woods_saxon_profile(p)
    n = int(round(2 * prof.X / prof.step))
    x = np.linspace(-prof.X, prof.X, 2 * n + 1)
    pot, mass = prof.potential(x), prof.mass(x)
    return {
        "hyp2f1 series, 2001 points": lambda k: k.hyp2f1_series_many(0.3 + 1.1j, 0.3 - 1.1j, 1.6 + 0.2j, xs),
        f"rk4 sweep, {n} steps": lambda k: k.rk4_dirac(1.0, 0.5, 0.6, pot, mass, prof.step),
        f"rk4 sweep stored, {n} steps": lambda k: k.rk4_dirac(1.0, 0.5, 0.6, pot, mass, prof.step, True),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("compiled", _core)] if _core is not None else [])
    if _core is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'case':32s}" + "".join(f"{name:>12s}" for name, _ in backends) + ("     speedup" if _core else ""))
    for label, fn in cases().items():
        best = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in best)
        if len(best) == 2:
            row += f"{best[0] / best[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
