from __future__ import annotations
from typing import Optional


class DilatorsError(Exception):
    """Base class for every error raised by the package."""


class NotationError(DilatorsError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class ArityError(DilatorsError):
    pass


class InfiniteFiberError(DilatorsError):
    pass


class PresentationError(DilatorsError):
    pass


class NotNormalError(DilatorsError):
    pass


class NotRepresentableError(DilatorsError):
    pass


class TermError(DilatorsError):
    pass


class SubstitutionError(DilatorsError):
    pass


class EmbeddingError(DilatorsError):
    pass


class UniverseError(DilatorsError):
    pass


class FormulaError(DilatorsError):
    pass


class OracleError(DilatorsError):
    pass


class CollapseError(DilatorsError):
    pass


class SpecFileError(DilatorsError):
    pass
