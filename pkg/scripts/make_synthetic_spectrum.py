"""Write a synthetic length spectrum CSV with exponential growth of primitive lengths."""

import argparse
from pathlib import Path

from surfcover.trace_numerics import synthetic_spectrum


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-length", type=float, default=12.0)
    parser.add_argument("--density", type=float, default=1.0)
    parser.add_argument("--powers", type=int, default=3)
    parser.add_argument("--output", default="data/synthetic_spectrum.csv")
    args = parser.parse_args()
    spectrum = synthetic_spectrum(args.max_length, args.density, powers=args.powers)
    Path(args.output).write_text(spectrum.to_csv())
    print(f"wrote {len(spectrum.records)} records to {args.output}")


if __name__ == "__main__":
    main()
