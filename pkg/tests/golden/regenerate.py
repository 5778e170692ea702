"""Rewrite the golden files from the current CLI output (review the diff before committing)."""

import shlex
from pathlib import Path

from moorecell.cli import render, run_command

HERE = Path(__file__).parent


def cases():
    for line in (HERE / "cases.txt").read_text().splitlines():
        if line.strip():
            name, _, cmd = (s.strip() for s in line.partition("|"))
            yield name, shlex.split(cmd)


def output(argv):
    fmt = "structured" if "structured" in argv else "text"
    result = run_command(argv)
    return render(result, fmt) + "\n", result


if __name__ == "__main__":
    for name, argv in cases():
        (HERE / f"{name}.out").write_text(output(argv)[0])
