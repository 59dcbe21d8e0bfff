"""Show both ways of moving functions from lines to planes of {1,2,3}."""

from kostka_duality.parabolic_complexes import warning_noncommutativity_witness


def main():
    r = warning_noncommutativity_witness()
    for e in r["evaluations"]:
        print("f =", e["f"])
        print("  induce then restrict:", e["induce_then_restrict"])
        print("  restrict then induce:", e["restrict_then_induce"])
    print("witness found:", r["passed"])


if __name__ == "__main__":
    main()
