"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from hdcheckerboard import _backend
from hdcheckerboard import checkerboard as cb

CASES = [
    ("dp dim 4, T=8", lambda k: k.dp_counts(4, 8, 0, cb._factor_table(4, "signed"), cb.group_table())),
    ("dp dim 4, T=12", lambda k: k.dp_counts(4, 12, 0, cb._factor_table(4, "signed"), cb.group_table())),
    ("dp dim 2, T=40", lambda k: k.dp_counts(2, 40, 0, cb._factor_table(2, "signed"), cb.group_table())),
    ("decomposition scan, radius 2", lambda k: k.decomposition_scan(4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if _backend.compiled is not None else [])
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in CASES:
        times = []
        for b in backends:
            mod = _backend.get_kernels(b)
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        line = f"{name:32s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(times) == 2:
            line += f"  {times[0] / times[1]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
