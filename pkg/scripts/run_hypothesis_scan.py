"""Run the exceptional-prime scan (g_squarefull(p) >= p) to a limit.

Thin driver over the library; `sfpr hypothesis` is the same thing with the
shared CLI plumbing.
"""

import argparse
import json
import sys
import time

from sfpr.counting import hypothesis_scan


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=1_100_000)
    parser.add_argument("--jobs", type=int, default=8)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    t0 = time.time()
    rep = hypothesis_scan(
        args.limit,
        jobs=args.jobs,
        progress=lambda d, t: print(f"block {d}/{t}", file=sys.stderr, flush=True),
    )
    payload = {
        "limit": rep.limit,
        "count": len(rep.exceptional),
        "largest": rep.largest,
        "exceptional": [[p, g] for p, g in rep.exceptional],
        "elapsed_seconds": round(time.time() - t0, 2),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
