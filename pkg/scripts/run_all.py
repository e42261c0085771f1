"""Run the built-in manifest of all ten scenarios and print the table."""

import argparse
import sys

from deficiency_lab.scenarios import default_manifest, run_all

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    args = ap.parse_args()
    summary = run_all(default_manifest(args.out_dir), args.out_dir)
    print(summary.table())
    sys.exit(0 if summary.passed else 1)
