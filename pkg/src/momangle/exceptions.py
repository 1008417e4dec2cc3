"""Exceptions raised by momangle.

Every exception carries the CLI exit code it maps to, so the command-line front end can translate
library failures without knowing where they came from.
"""

from typing import Any, ClassVar


class MomangleError(Exception):
    """Base class for all momangle errors."""

    exit_code: ClassVar[int] = 1


class ComplexError(MomangleError, ValueError):
    """A simplicial complex or vertex set is invalid for the requested operation."""

    exit_code = 2


class VoidComplexError(ComplexError):
    """The operation is undefined on the VOID complex (no faces, not even the empty one)."""


class PairContainmentError(ComplexError):
    """The small side of a simplicial pair is not contained in the big side."""


class ComplexFileError(MomangleError, ValueError):
    """A ComplexFile could not be parsed."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ChainLevelError(MomangleError, ValueError):
    """A chain-level precondition failed (cycle, cocycle, support or degree bookkeeping)."""


class BudgetExceededError(MomangleError, RuntimeError):
    """A configured size cap was exceeded."""

    exit_code = 3


class OracleMismatchError(MomangleError, RuntimeError):
    """The direct cellular computation disagrees with the Hochster totalization."""

    exit_code = 4


class CheckerDisagreementError(MomangleError, RuntimeError):
    """Duality checkers that must agree returned different verdicts."""

    exit_code = 5


class NoFundamentalClassError(MomangleError, RuntimeError):
    """The top homology of the moment-angle complex is not infinite cyclic.

    Attributes:
        top_degree: The highest degree with nonzero homology, or None when there is none.
        failing_degrees: Degrees l for which H^l and H_{top-l} are not abstractly isomorphic.
        homology: The homology groups of Z_K, when they were computed.
    """

    def __init__(
        self,
        message: str,
        top_degree: int | None = None,
        failing_degrees: list[int] | None = None,
        homology: Any = None,
    ):
        self.top_degree = top_degree
        self.failing_degrees = failing_degrees or []
        self.homology = homology
        super().__init__(message)
