"""Plain-text complex files.

A complex file is UTF-8 text with one directive per line:

    # a comment (also allowed after a directive)
    m 6
    facet 1 3 5
    facet 2 4 6

``m`` comes first and exactly once. ``void`` declares the VOID complex and excludes ``facet`` lines.
A file with ``m`` alone describes {∅} on m ghost vertices.
"""

import logging
from pathlib import Path

from momangle.complexes import SimplicialComplex, members
from momangle.config import HARD_MAX_M
from momangle.exceptions import ComplexFileError

logger = logging.getLogger(__name__)

DIRECTIVE_M = "m"
DIRECTIVE_FACET = "facet"
DIRECTIVE_VOID = "void"


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ComplexFileError(f"expected an integer, got {token!r}", line) from None


def parse_complex(text: str) -> SimplicialComplex:
    """Parse complex file contents.

    Raises:
        ComplexFileError: The text is not a valid complex file; the message carries the line number.
    """
    m: int | None = None
    void = False
    facets: list[list[int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == DIRECTIVE_M:
            if m is not None:
                raise ComplexFileError("m appears more than once", number)
            if len(args) != 1:
                raise ComplexFileError("m takes exactly one value", number)
            m = _parse_int(args[0], number)
            if not 0 <= m <= HARD_MAX_M:
                raise ComplexFileError(f"m must be in range 0-{HARD_MAX_M}, got {m}", number)
            continue
        if m is None:
            raise ComplexFileError(f"{directive!r} before m", number)
        if directive == DIRECTIVE_VOID:
            if args:
                raise ComplexFileError("void takes no values", number)
            if facets:
                raise ComplexFileError("void after facet lines", number)
            void = True
        elif directive == DIRECTIVE_FACET:
            if void:
                raise ComplexFileError("facet in a void complex", number)
            facet = [_parse_int(token, number) for token in args]
            for v in facet:
                if not 1 <= v <= m:
                    raise ComplexFileError(f"vertex {v} is outside 1..{m}", number)
            if len(set(facet)) != len(facet):
                raise ComplexFileError("repeated vertex in facet", number)
            facets.append(facet)
        else:
            raise ComplexFileError(f"unknown directive {directive!r}", number)
    if m is None:
        raise ComplexFileError("missing m")
    if void:
        return SimplicialComplex.void(m)
    return SimplicialComplex.from_facets(m, facets, include_empty=True)


def format_complex(K: SimplicialComplex, comment: str | None = None) -> str:
    """Render a complex in file form: facets in canonical order, LF line endings."""
    lines = [f"# {text}" for text in comment.splitlines()] if comment else []
    lines.append(f"{DIRECTIVE_M} {K.m}")
    if K.is_void:
        lines.append(DIRECTIVE_VOID)
    else:
        lines.extend(
            " ".join([DIRECTIVE_FACET, *(str(v) for v in members(facet))]) for facet in K.facets() if facet
        )
    return "\n".join(lines) + "\n"


def read_complex(path: str | Path) -> SimplicialComplex:
    """Read a complex file."""
    logger.debug(f"Reading complex file {path}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ComplexFileError(f"cannot read {path}: {e}") from e
    return parse_complex(text)


def write_complex(K: SimplicialComplex, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_complex(K, comment), encoding="utf-8", newline="\n")
