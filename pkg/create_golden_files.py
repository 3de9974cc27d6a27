#!/usr/bin/env python3
"""
Check the LaTeX golden files used by the renderer tests.
Compares render_latex output for n = 1, 2, 3 with tests/golden/z_n<n>.tex.

The golden files are curated by hand against the published diagrams. Pass
--write to overwrite them with the current renderer output; do that only after
reading the reported differences.
"""

import argparse
import difflib
import os
import sys
import traceback

from controllers.nearby_controller import NearbyController
from models.scalar import scalar_ring
from utils.latex_renderer import render_latex

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tests", "golden")
GOLDEN_RANKS = (1, 2, 3)


def golden_path(n):
    return os.path.join(GOLDEN_DIR, f"z_n{n}.tex")


def drift(n, text):
    """Unified diff between the golden file for n and the given text, empty when they agree."""
    path = golden_path(n)
    if not os.path.exists(path):
        return [f"missing {path}\n"]
    with open(path, encoding="utf-8") as handle:
        expected = handle.read()
    return list(difflib.unified_diff(expected.splitlines(True), text.splitlines(True), path, "render_latex"))


def main(argv=None):
    """Main entry point for the script."""
    parser = argparse.ArgumentParser(description="Check or rewrite the LaTeX golden files")
    parser.add_argument("--write", action="store_true", help="overwrite the golden files with the renderer output")
    args = parser.parse_args(argv)
    try:
        os.makedirs(GOLDEN_DIR, exist_ok=True)
        mismatched = 0
        for n in GOLDEN_RANKS:
            print(f"Rendering Z for n = {n}...")
            text = render_latex(NearbyController(scalar_ring(n)).build_Z())
            diff = drift(n, text)
            if not diff:
                print("  - matches")
                continue
            mismatched += 1
            sys.stdout.writelines(diff)
            if args.write:
                with open(golden_path(n), "w", encoding="utf-8") as handle:
                    handle.write(text)
                print(f"  - Wrote {golden_path(n)}")
        if mismatched and not args.write:
            print(f"\n{mismatched} golden file(s) differ from the renderer; rerun with --write to accept.")
            return 1
        print("\nGolden files checked.")
        return 0
    except Exception as e:
        print(f"Error checking golden files: {e}")
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
