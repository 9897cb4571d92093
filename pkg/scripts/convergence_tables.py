"""Print exact expected fixed points of short words next to their limiting values."""

import argparse

from surfcover.expectation import convergence_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("words", nargs="*", default=["a", "aa", "ab", "aaa"])
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()
    for word in args.words:
        for row in convergence_table(word, range(2, args.max_n + 1)):
            e, err = row["expectation"], row["error"]
            print(f"{word:6s} n={row['n']}  E={e}  ({float(e):.6f})  limit={row['target']}  |E-limit|={float(err):.6f}")


if __name__ == "__main__":
    main()
