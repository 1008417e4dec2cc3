"""Named complexes shipped with momangle.

Corpus files live in the ``corpus`` directory of the package and are addressed as ``corpus:NAME``.
"""

import logging
from importlib.resources import files
from pathlib import Path

from momangle.complexes import SimplicialComplex
from momangle.complexfile import parse_complex, read_complex
from momangle.exceptions import ComplexFileError

logger = logging.getLogger(__name__)

CORPUS_PREFIX = "corpus:"
CORPUS_SUFFIX = ".cplx"


def _corpus_dir():
    return files("momangle") / "corpus"


def corpus_names() -> list[str]:
    return sorted(
        entry.name.removesuffix(CORPUS_SUFFIX)
        for entry in _corpus_dir().iterdir()
        if entry.name.endswith(CORPUS_SUFFIX)
    )


def corpus_text(name: str) -> str:
    """Raw file contents of a corpus complex."""
    entry = _corpus_dir() / f"{name}{CORPUS_SUFFIX}"
    if not entry.is_file():
        raise ComplexFileError(f"unknown corpus complex {name!r}")
    return entry.read_text(encoding="utf-8")


def load_corpus(name: str) -> SimplicialComplex:
    return parse_complex(corpus_text(name))


def resolve_complex(source: str | Path) -> SimplicialComplex:
    """Load ``corpus:NAME`` from the corpus and anything else from the filesystem."""
    if isinstance(source, str) and source.startswith(CORPUS_PREFIX):
        name = source.removeprefix(CORPUS_PREFIX)
        logger.debug(f"Loading corpus complex {name}")
        return load_corpus(name)
    return read_complex(source)
