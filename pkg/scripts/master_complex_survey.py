"""Term dimensions, cohomology and timings of the master complex and its conjugate."""

import argparse
import time

from kostka_duality.parabolic_complexes import master_cohomology_check


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--threads", type=int, default=None)
    args = p.parse_args()
    for n in range(args.max_n + 1):
        t = time.perf_counter()
        r = master_cohomology_check(n, args.threads)
        dt = time.perf_counter() - t
        print(f"n={n}  dims={r['term_dims']}  H={r['cohomology']}  "
              f"conjugate H={r['conjugate_cohomology']}  passed={r['passed']}  {dt:.2f}s")


if __name__ == "__main__":
    main()
