"""Print small Kostka tables kappa_{lam, I} for S_{n+1}, one block per n."""

import argparse

from kostka_duality.tableaux import format_int_list, partitions, small_kostka_alt, small_kostka_syt, subsets


def table(n: int) -> list[str]:
    sets = subsets(n)
    header = "lambda".ljust(14) + " ".join(("{" + format_int_list(I) + "}").rjust(9) for I in sets)
    lines = [header]
    for lam in partitions(n + 1):
        row = []
        for I in sets:
            a, s = small_kostka_alt(lam, I, n), small_kostka_syt(lam, I, n)
            assert a == s, (lam, I, a, s)
            row.append(str(s).rjust(9))
        lines.append(format_int_list(lam).ljust(14) + " ".join(row))
    return lines


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=4)
    args = p.parse_args()
    for n in range(args.max_n + 1):
        print(f"n = {n}")
        print("\n".join(table(n)))
        print()


if __name__ == "__main__":
    main()
