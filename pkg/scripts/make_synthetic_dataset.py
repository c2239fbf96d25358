#!/usr/bin/env python3
"""Generate a deterministic synthetic dataset in the heart-disease schema.

Handy for trying the pipeline without the real data, e.g.:

    python3 scripts/make_synthetic_dataset.py --rows 1025 --seed 7 --out synth.csv
    heartcbr run-all --input synth.csv --out-dir out
"""

import argparse

from heartcbr.synthetic import write_synthetic_dataset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=1025)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="synthetic_heart.csv")
    parser.add_argument(
        "--out-of-domain", type=int, default=4,
        help="rows given ca/thal codes outside the documented domains (default: 4)",
    )
    parser.add_argument(
        "--duplicate-fraction", type=float, default=0.3,
        help="fraction of rows repeating an earlier row verbatim (default: 0.3)",
    )
    args = parser.parse_args()
    path = write_synthetic_dataset(
        args.out,
        args.rows,
        seed=args.seed,
        out_of_domain=args.out_of_domain,
        duplicate_fraction=args.duplicate_fraction,
    )
    print(f"wrote {args.rows} rows -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
