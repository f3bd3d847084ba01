"""Produce main-term error-profile CSVs for one prime across all targets.

Writes <out_dir>/<target>.csv (lemma22 gets one file per character case).
The CSV schema matches `sfpr profile`.
"""

import argparse
import pathlib
import sys
import time

from sfpr.analytics import main_term_by_target
from sfpr.characters import build_context

GRIDS = {
    "thm1": [10**k for k in range(4, 11, 2)],
    "lemma22": [10**k for k in range(4, 11, 2)],
    "thm31": [10**k for k in range(2, 7)],
    "prop42": [10**k for k in range(2, 7)],
}


def write_profile(ctx, target, case, xs, path: pathlib.Path) -> None:
    lines = ["x,exact,predicted,relative_error,residual_scaled"]
    for x in xs:
        t0 = time.time()
        b = main_term_by_target(ctx, x, target, case=case)
        lines.append(f"{b.x},{b.exact},{b.predicted!r},{b.relative_error!r},{b.residual_scaled!r}")
        print(f"{path.name}: x={x} done in {time.time() - t0:.1f}s", file=sys.stderr, flush=True)
    path.write_text("\n".join(lines) + "\n")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=101)
    parser.add_argument("--out-dir", default="profiles")
    parser.add_argument("--targets", nargs="*", default=list(GRIDS))
    args = parser.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ctx = build_context(args.p)
    for target in args.targets:
        xs = GRIDS[target]
        if target == "lemma22":
            for case in ("principal", "quadratic"):
                write_profile(ctx, target, case, xs, out / f"lemma22_{case}.csv")
        else:
            write_profile(ctx, target, "principal", xs, out / f"{target}.csv")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
