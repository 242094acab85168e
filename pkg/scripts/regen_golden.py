"""Rewrite tests/golden/*.txt from the current CLI. Review the diff before committing."""

import contextlib
import io
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "tests"))

from golden_cases import CASES  # noqa: E402

from kdquad.cli import main  # noqa: E402

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden"

for name, argv in CASES.items():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        status = main(argv)
    if status != 0:
        raise SystemExit(f"{name}: exit {status}")
    (GOLDEN / f"{name}.txt").write_text(buf.getvalue())
    print(f"wrote {name}.txt")
