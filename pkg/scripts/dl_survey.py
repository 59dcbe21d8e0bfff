"""Deligne-Lusztig complexes over small prime fields: flag counts and cohomology."""

import argparse
import time

from kostka_duality.glq_flags import DEFAULT_MAX_FLAGS, FeasibilityError, dl_cohomology_check


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--cases", nargs="+", default=["1,2", "1,3", "1,5", "2,2", "2,3", "2,5", "3,2"],
                   help="n,q pairs")
    p.add_argument("--max-flags", type=int, default=DEFAULT_MAX_FLAGS)
    args = p.parse_args()
    for case in args.cases:
        n, q = map(int, case.split(","))
        t = time.perf_counter()
        try:
            r = dl_cohomology_check(n, q, args.max_flags)
        except FeasibilityError as exc:
            print(f"n={n} q={q}: skipped ({exc})")
            continue
        print(f"n={n} q={q}  dims={r['term_dims']}  H={r['cohomology']}  "
              f"steinberg={r['steinberg_dimension']}  passed={r['passed']}  {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
