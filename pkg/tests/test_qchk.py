from __future__ import annotations

import pytest

from stabkit import qchk
from stabkit.constructions import shor, steane, toric
from stabkit.errors import CodeError
from stabkit.stabilizer import CheckMatrix


@pytest.mark.parametrize("make", [steane, shor, lambda: toric(2)])
def test_roundtrip(make, tmp_path):
    check = make().check
    path = tmp_path / "code.qchk"
    qchk.write(path, check)
    back = qchk.read(path)
    assert back.hx == check.hx and back.hz == check.hz


def test_steane_layout():
    text = qchk.dumps(steane().check)
    lines = text.splitlines()
    assert lines[0] == "QCHK v1 n=7 r=6"
    assert len(lines) == 7 and all(len(l) == 14 for l in lines[1:])


def test_empty_generator_list():
    check = qchk.loads("QCHK v1 n=3 r=0\n")
    assert check.n == 3 and check.r == 0
    assert qchk.dumps(CheckMatrix.from_paulis([], n=3)) == "QCHK v1 n=3 r=0\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "QCHK v2 n=1 r=1\n10\n",
        "QCHK v1 n=1 r=2\n10\n",
        "QCHK v1 n=1 r=1\n102\n",
        "QCHK v1 n=1 r=1\n1\n",
        "QCHK v1 n=1 r=1\n12\n",
        "QCHK v1  n=1 r=1\n10\n",
        "QCHK v1 n=1 r=1\n10\n01\n",
    ],
)
def test_rejects_malformed(text):
    with pytest.raises(CodeError):
        qchk.loads(text)
