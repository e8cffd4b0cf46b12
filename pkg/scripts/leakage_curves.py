#!/usr/bin/env python3
"""Generate the leakage-vs-input-size CSV curves for both parameter presets.

Writes ideal_curves.csv and experimental_curves.csv into the given output
directory (default: results/).
"""

import argparse
import pathlib

from click.testing import CliRunner

from qfp.cli import main as qfp_main


def run(out_dir: pathlib.Path, n_points: int) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    runner = CliRunner()
    for preset, name in (("fig2", "ideal_curves.csv"),
                         ("fig3", "experimental_curves.csv")):
        path = out_dir / name
        result = runner.invoke(qfp_main, [
            "curves", "--preset", preset, "--n-points", str(n_points),
            "--out", str(path),
        ], catch_exceptions=False)
        if result.exit_code != 0:
            raise SystemExit(f"{preset} failed: {result.output}")
        print(f"wrote {path}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=pathlib.Path,
                        default=pathlib.Path("results"))
    parser.add_argument("--n-points", type=int, default=11)
    args = parser.parse_args()
    run(args.out_dir, args.n_points)
