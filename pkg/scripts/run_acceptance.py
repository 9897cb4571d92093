"""Run the acceptance criteria and print one line per criterion."""

import argparse
import json
import sys

from surfcover.acceptance import CRITERIA, run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only", type=int, nargs="+", choices=sorted(CRITERIA))
    parser.add_argument("--json", help="also write the full report to this file")
    args = parser.parse_args()
    results = run_all(args.only)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.as_dict() for r in results], fh, indent=2, sort_keys=True, default=str)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
