#!/usr/bin/env python3
"""Regenerate the synthetic Curve-style voting-power snapshot.

The published on-chain snapshot behind the reference concentration figures
(Gini 0.8402, Nakamoto 23) lives in an external analysis repository that is
not vendored here. This script builds a synthetic stand-in calibrated to
the same two indicators: a head of 23 near-equal whale lockers jointly
holding 50.8% of voting power (pinning the minimal controlling coalition at
exactly 23) and a 7000-holder power-law tail (pushing Gini to 0.84029).

Deterministic by construction; no randomness involved.
"""

import csv
import sys
from pathlib import Path

TOTAL = 10**8
HEAD_COUNT = 23
HEAD_SHARE = 0.508
TAIL_COUNT = 7000
TAIL_EXPONENT = 0.88


def build_weights():
    head_base = [1 - 0.004 * i for i in range(HEAD_COUNT)]
    head_scale = HEAD_SHARE * TOTAL / sum(head_base)
    head = [int(head_scale * b) for b in head_base]
    tail_profile = [1.0 / ((i + 1) ** TAIL_EXPONENT) for i in range(TAIL_COUNT)]
    tail_scale = (TOTAL - sum(head)) / sum(tail_profile)
    tail = [max(1, int(tail_scale * t)) for t in tail_profile]
    return head + tail


def main() -> int:
    out_path = Path(__file__).resolve().parents[1] / "src" / "tokenlab" / "fixtures" / (
        "curve_voting_power.csv"
    )
    weights = build_weights()
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["entity", "weight"])
        for i, w in enumerate(weights):
            writer.writerow([f"locker{i + 1:05d}", w])
    print(f"wrote {len(weights)} holders to {out_path}")

    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
    from tokenlab.metrics import gini, nakamoto

    g = float(gini(weights))
    n = nakamoto(weights)
    print(f"gini={g:.6f} nakamoto={n}")
    assert n == 23, "fixture must keep Nakamoto exactly 23"
    assert abs(g - 0.8402) < 0.005, "fixture must keep Gini within 0.8402 ± 0.005"
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
