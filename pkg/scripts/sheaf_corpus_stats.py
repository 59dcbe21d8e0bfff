"""Run the sheaf round-trip checks on random corpora and report the tallies."""

import argparse
import json

from kostka_duality.acceptance import AcceptanceConfig, corpus_report


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--size", type=int, default=60)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=4)
    args = p.parse_args()
    for seed in args.seeds:
        cfg = AcceptanceConfig(corpus_seed=seed, corpus_size=args.size,
                               corpus_max_n=args.max_n, corpus_max_dim=args.max_dim)
        r = corpus_report(cfg)
        print(f"seed {seed}: passed={r['passed']}")
        print(json.dumps(r["tally"], indent=2))
        for f in r["failures"]:
            print("  failure:", f)


if __name__ == "__main__":
    main()
