#!/usr/bin/env python3
"""Regenerate golden files after an intentional output change.

Rewrites the Uniswap/Curve comparison text golden. Review the diff before
committing: goldens exist to catch unintentional drift.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tokenlab.economy import compare_specs, load_fixture, render_comparison_text


def main() -> int:
    goldens = Path(__file__).resolve().parents[1] / "src" / "tokenlab" / "fixtures" / "goldens"
    goldens.mkdir(parents=True, exist_ok=True)
    text = render_comparison_text(compare_specs(load_fixture("uniswap"), load_fixture("curve")))
    out = goldens / "compare_uniswap_curve.txt"
    out.write_text(text, encoding="utf-8")
    print(f"wrote {out} ({len(text)} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
