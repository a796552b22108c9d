#!/usr/bin/env python3
"""Run the acceptance battery and print one pass/fail line per criterion.

Exits nonzero if any criterion fails.  Criteria 3b and 7b are expected to
fail: they pin tolerance targets that the level-1 tail decay cannot reach
(see scripts/tail_decay.py and the README).
"""

import sys
import time

from shiftrank.acceptance import ALL_CRITERIA, KNOWN_UNATTAINABLE


def main() -> int:
    failed = []
    for cid, fn in ALL_CRITERIA:
        t0 = time.time()
        r = fn()
        mark = " [known-unattainable]" if not r.ok and cid in KNOWN_UNATTAINABLE else ""
        print(f"[{time.time() - t0:6.1f}s] {r.line()}{mark}", flush=True)
        if not r.ok:
            failed.append(cid)
    print()
    if failed:
        print(f"FAILED criteria: {', '.join(failed)}")
        return 1
    print("all criteria passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
