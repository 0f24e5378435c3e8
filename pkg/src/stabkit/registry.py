"""Text names for code constructions, shared by the harness and the CLI.

Grammar (``NAME[:ARGS]``)::

    steane | shor | bitflip | phaseflip
    surface:L | toric:L | hgp-rep:L
    css:C1,C2 | hgp:C1,C2          C = repL | hamming, optional ".T" suffix
    concat:OUTER,INNER             OUTER, INNER are any argument-free names
    lp:l:A1/A2                     A = rows split by ";", entries by ",";
                                   an entry is "-" (zero) or exponents joined by "+"

Example: ``lp:3:0+1,0;-,2/0,1`` lifts a 2x2 and a 1x2 polynomial matrix over
``F2[x]/(x^3 - 1)``.
"""

from __future__ import annotations

from collections.abc import Callable

from . import constructions as cx
from .errors import CodeError, ConfigError
from .stabilizer import StabilizerCode

SIMPLE: dict[str, Callable[[], StabilizerCode]] = {
    "steane": cx.steane,
    "shor": cx.shor,
    "bitflip": cx.bit_flip_code,
    "phaseflip": cx.phase_flip_code,
}

SIZED: dict[str, Callable[[int], StabilizerCode]] = {
    "surface": cx.surface,
    "toric": cx.toric,
    "hgp-rep": lambda L: cx.hgp(cx.repetition(L), cx.repetition(L)),
}

CODE_NAMES = (*SIMPLE, *SIZED, "css", "hgp", "concat", "lp")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {text!r}") from None


def parse_classical(text: str) -> cx.ClassicalCode:
    name = text.strip()
    transpose = name.endswith(".T")
    if transpose:
        name = name[:-2]
    if name == "hamming":
        code = cx.hamming_7_4()
    elif name.startswith("rep"):
        code = cx.repetition(_int(name[3:], "repetition length"))
    else:
        raise ConfigError(f"unknown classical code {text!r} (use repL or hamming, optional .T)")
    return code.transpose() if transpose else code


def _pair(args: str, what: str) -> tuple[str, str]:
    parts = args.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{what} needs two comma-separated components, got {args!r}")
    return parts[0], parts[1]


def parse_poly_matrix(text: str, l: int) -> cx.PolyMatrix:
    rows = []
    for row in text.split(";"):
        entries = []
        for entry in row.split(","):
            entry = entry.strip()
            exps = [] if entry == "-" else [_int(e, "exponent") for e in entry.split("+")]
            entries.append(cx.CirculantPoly.from_exponents(exps, l))
        rows.append(entries)
    if len({len(r) for r in rows}) != 1:
        raise ConfigError(f"ragged polynomial matrix {text!r}")
    return cx.PolyMatrix.from_polys(rows)


def build_code(text: str) -> StabilizerCode:
    """Construct the code named by ``text``; raises :class:`ConfigError` on bad input."""
    name, _, args = text.strip().partition(":")
    try:
        if name in SIMPLE:
            if args:
                raise ConfigError(f"{name} takes no parameters")
            return SIMPLE[name]()
        if name in SIZED:
            if not args:
                raise ConfigError(f"{name} needs a size, e.g. {name}:3")
            return SIZED[name](_int(args, f"{name} size"))
        if name in ("css", "hgp"):
            a, b = (parse_classical(p) for p in _pair(args, name))
            return cx.css(a, b) if name == "css" else cx.hgp(a, b)
        if name == "concat":
            outer, inner = _pair(args, name)
            return cx.concatenate(build_code(outer), build_code(inner))
        if name == "lp":
            l_text, _, mats = args.partition(":")
            l = _int(l_text, "lift size")
            if l < 1:
                raise ConfigError(f"lift size must be >= 1, got {l}")
            parts = mats.split("/")
            if len(parts) != 2:
                raise ConfigError("lp needs two matrices separated by '/'")
            return cx.lifted_product(parse_poly_matrix(parts[0], l), parse_poly_matrix(parts[1], l))
    except CodeError as exc:
        raise ConfigError(f"cannot build {text!r}: {exc}") from exc
    raise ConfigError(f"unknown code {name!r}; choose from {', '.join(CODE_NAMES)}")
