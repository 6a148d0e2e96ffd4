#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Render a bijection trace as Gordon-marked arrays.

Reads the JSONL written by `krlab_cli.py bijection --trace PATH` and prints,
for each step, the step header and the two-dimensional marking
(one row per mark, top mark first).

Usage:
  python tools/render_trace.py --in trace.jsonl
  python tools/render_trace.py --in trace.jsonl --kinds move,extra_move

Notes:
- Intermediate states right after a move may break the difference
  conditions; they are rendered anyway (sorted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if _ROOT not in sys.path:
    sys.path.insert(0, _ROOT)

from krlab_gordon import gordon_mark  # noqa: E402
from krlab_partitions import Partition  # noqa: E402


def parse_args() -> argparse.Namespace:
    ap = argparse.ArgumentParser()
    ap.add_argument("--in", dest="inp", required=True, help="input JSONL trace path")
    ap.add_argument("--kinds", default="", help="comma separated kinds to show (default: all)")
    return ap.parse_args()


def render_event(ev: dict) -> str:
    head = f"#{ev['step']} {ev['kind']} (rank {ev['rank']}, {ev['weight_delta']:+d}) |λ|={ev['weight']}"
    body = gordon_mark(Partition.of(ev["parts"])).render()
    return head + "\n" + body


def main() -> int:
    ns = parse_args()
    wanted = {k.strip() for k in ns.kinds.split(",") if k.strip()}

    events = []
    with open(ns.inp, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if wanted and obj.get("kind") not in wanted:
                continue
            events.append(obj)

    if not events:
        print("No trace events")
        return 1

    for ev in events:
        print(render_event(ev))
        print()
    print(f"{len(events)} steps")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
