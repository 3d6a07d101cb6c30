"""Render every basin panel of the four reference figures.

Each panel is written as <out>/<figure>/<method>_m<m>_n<n>.ppm with a JSON
sidecar next to it. Schroeder panels get the closed-form Julia set drawn in
white.

    python scripts/reproduce_figures.py --out figures --px 512
"""

import argparse
import sys
import time
from pathlib import Path

from schroeder.cli import main as cli

# (figure, method, m, n, b); a = 1 throughout
PANELS = (
    [("fig1", meth, m, 1, "-1") for m in (2, 5, 8) for meth in ("schroeder", "newton")]
    + [("fig2", meth, m, 6, "-1") for m in (6, 7, 8) for meth in ("schroeder", "newton")]
    + [("fig3", "schroeder", 4, 2, "-1")]
    + [("fig3", "newton", m, n, "-1") for m, n in ((4, 2), (6, 3), (8, 4))]
    + [("fig4", meth, 2, 1, "0,1") for meth in ("schroeder", "newton")]
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--px", type=int, default=512)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    for fig, method, m, n, b in PANELS:
        path = Path(args.out) / fig / f"{method}_m{m}_n{n}.ppm"
        t0 = time.perf_counter()
        argv = ["render", "--method", method, "--m", str(m), "--n", str(n),
                "--a", "1", f"--b={b}", "--px", str(args.px),
                "--threads", str(args.threads), "--out", str(path.resolve())]
        if method == "schroeder":
            argv.append("--overlay")
        code = cli(argv)
        if code:
            return code
        print(f"  {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
