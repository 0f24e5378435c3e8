"""Reader and writer for the ``QCHK v1`` check-matrix text format.

::

    QCHK v1 n=<n> r=<r>
    <2n characters of 0/1: hx row then hz row>   (r lines)
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import CodeError
from .stabilizer import CheckMatrix

_HEADER = re.compile(r"^QCHK v1 n=(\d+) r=(\d+)$")


def dumps(check: CheckMatrix) -> str:
    rows = check.symplectic.to_dense()
    lines = [f"QCHK v1 n={check.n} r={check.r}"]
    lines += ["".join("1" if b else "0" for b in row) for row in rows]
    return "\n".join(lines) + "\n"


def loads(text: str) -> CheckMatrix:
    lines = text.splitlines()
    if not lines:
        raise CodeError("QCHK: empty input")
    m = _HEADER.match(lines[0])
    if not m:
        raise CodeError(f"QCHK: bad header {lines[0]!r}")
    n, r = int(m.group(1)), int(m.group(2))
    body = lines[1:]
    if len(body) != r:
        raise CodeError(f"QCHK: header says r={r} but {len(body)} rows follow")
    rows = np.zeros((r, 2 * n), dtype=np.uint8)
    for i, line in enumerate(body):
        if len(line) != 2 * n or set(line) - {"0", "1"}:
            raise CodeError(f"QCHK: row {i + 1} must be {2 * n} characters of 0/1")
        rows[i] = [c == "1" for c in line]
    if r == 0:
        return CheckMatrix.from_paulis([], n=n)
    return CheckMatrix.from_symplectic(rows)


def write(path: str | Path, check: CheckMatrix) -> None:
    Path(path).write_text(dumps(check))


def read(path: str | Path) -> CheckMatrix:
    return loads(Path(path).read_text())
