"""Write the data behind the two solution plots (n = 3 polynomial at l = 1, log solutions at l = 0..3)."""

import argparse
import io
from pathlib import Path

from tangherlini.cli import run


def emit(argv, path):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    if code:
        raise SystemExit(f"{' '.join(argv)} failed:\n{buf.getvalue()}")
    path.write_text(buf.getvalue())
    print(f"wrote {path} ({buf.getvalue().count(chr(10)) - 1} rows)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--grid", nargs=3, default=["0.01", "0.95", "200"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    emit(["plot-data", "--figure", "eq9", "--l", "1", "--grid", *args.grid], args.out / "polynomial_l1.csv")
    emit(["plot-data", "--figure", "eq10", "--l", "0", "1", "2", "3", "--grid", *args.grid], args.out / "log_l0-3.csv")


if __name__ == "__main__":
    main()
