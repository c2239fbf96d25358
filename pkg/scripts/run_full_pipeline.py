#!/usr/bin/env python3
"""Run the whole experiment on one dataset and print a method comparison.

Chains the CBR pipeline (split, evaluate, stats, correlate) and the
backpropagation baseline, then prints both accuracies side by side:

    python3 scripts/run_full_pipeline.py --input data/heart.csv --out-dir out
"""

import argparse
import json
from pathlib import Path

from heartcbr.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--input", required=True)
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--train-fraction", default="0.6")
    parser.add_argument("--epochs", type=int, default=200)
    parser.add_argument("--eta", type=float, default=0.1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--incremental-retain", action="store_true")
    args = parser.parse_args()

    out = Path(args.out_dir)
    base = ["--input", args.input, "--train-fraction", args.train_fraction, "--out-dir", str(out)]

    cbr_args = ["run-all", *base]
    if args.incremental_retain:
        cbr_args.append("--incremental-retain")
    rc = cli_main(cbr_args)
    if rc != 0:
        return rc

    rc = cli_main(
        ["train-nn", *base, "--epochs", str(args.epochs), "--eta", str(args.eta), "--seed", str(args.seed)]
    )
    if rc != 0:
        return rc

    evaluation = json.loads((out / "evaluation_report.json").read_text())
    nn = json.loads((out / "mlp_report.json").read_text())

    print()
    print(f"{'method':<28}{'test accuracy':>14}{'merged accuracy':>18}")
    print(
        f"{'case-based reasoning':<28}"
        f"{evaluation['test_accuracy']:>14.4f}{evaluation['merged_accuracy']:>18.4f}"
    )
    print(f"{'backpropagation 13-3-2':<28}{nn['test_accuracy']:>14.4f}{'-':>18}")
    print(f"\nreports in {out}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
