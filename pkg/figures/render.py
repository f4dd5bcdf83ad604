#!/usr/bin/env python3
"""Render publication-style figures from onetangle CLI output.

Usage:
    python figures/render.py --recipe fig1a --in RESULTS_DIR --out PNG_DIR
    python figures/render.py --list

Each recipe reads fixed-name CSVs from the input directory (the output
directory of the corresponding onetangle run; see figures/README.md for
the mapping) and writes <recipe>.png.  Bad inputs (missing files, header
mismatches, empty tables) exit nonzero without leaving partial images.
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from csvio import InputError  # noqa: E402
from families import FAMILIES  # noqa: E402
from recipes import RECIPES  # noqa: E402


def render(figure_id: str, in_dir: str, out_dir: str) -> str:
    if figure_id not in RECIPES:
        raise InputError(f"unknown recipe '{figure_id}'; use --list to see the catalogue")
    recipe = RECIPES[figure_id]
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, f"{figure_id}.png")
    FAMILIES[recipe.family](recipe, in_dir, out_path)
    return out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="render.py", description=__doc__)
    parser.add_argument("--recipe", help="figure id, e.g. fig1a")
    parser.add_argument("--in", dest="in_dir", help="directory with the CLI's CSV output")
    parser.add_argument("--out", dest="out_dir", help="directory for the PNG")
    parser.add_argument("--list", action="store_true", help="list available recipes")
    args = parser.parse_args(argv)

    if args.list:
        for figure_id in sorted(RECIPES):
            recipe = RECIPES[figure_id]
            names = ", ".join(spec["name"] for spec in recipe.inputs)
            print(f"{figure_id:7s} [{recipe.family:11s}] <- {names}")
        return 0
    if not (args.recipe and args.in_dir and args.out_dir):
        parser.error("--recipe, --in and --out are required (or use --list)")
    try:
        path = render(args.recipe, args.in_dir, args.out_dir)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
