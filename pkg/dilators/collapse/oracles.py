"""Answers to ``delta <=_1 t`` for the normalization of a dilator.

No finite computation certifies the hypothesis a collapse is built from, so
the construction asks an oracle. Every oracle remembers its answers, so a
query asked twice in a session is answered the same way.
"""
from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..core.dilator import Dilator
from ..errors import NotRepresentableError, OracleError
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..resemblance.structure import Leq1Table
from ..terms.term import Representation
from ..terms.values import evaluate

logger = logging.getLogger(__name__)

Query = Tuple[ExtendedBase, Representation]


class ResemblanceOracle(ABC):
    #: ordinals a collapse search walks through when none are given
    universe: Optional[List[ExtendedBase]] = None

    def __init__(self) -> None:
        self._answers: Dict[Query, bool] = {}

    @abstractmethod
    def answer(self, delta: ExtendedBase, t: Representation) -> bool:
        ...

    def __call__(self, delta: BaseLike, t: Representation) -> bool:
        key = (as_base(delta), t)
        if key not in self._answers:
            self._answers[key] = self.answer(*key)
            logger.debug("oracle: %s <=_1 %s is %s", key[0], t, self._answers[key])
        return self._answers[key]

    @property
    def queries(self) -> int:
        return len(self._answers)


class TableOracle(ResemblanceOracle):
    """Reads the answer off a computed ``<=_1`` table of the normalization ``e``."""

    def __init__(self, e: Dilator, table: Leq1Table):
        super().__init__()
        self.e = e
        self.table = table
        self.universe = list(table.structure.universe)

    def answer(self, delta: ExtendedBase, t: Representation) -> bool:
        try:
            value = evaluate(self.e, t)
        except NotRepresentableError as exc:
            raise OracleError(f"cannot evaluate {t}: {exc}") from exc
        if value not in self.table.structure or delta not in self.table.structure:
            raise OracleError(f"{delta} <=_1 {value} is outside the table")
        return self.table.holds(delta, value)


class FixtureOracle(ResemblanceOracle):
    """True exactly on the listed pairs."""

    def __init__(self, pairs: Iterable[Tuple[BaseLike, Representation]], universe: Optional[Iterable[BaseLike]] = None):
        super().__init__()
        self.pairs = {(as_base(d), t) for d, t in pairs}
        if universe is not None:
            self.universe = sorted(as_base(u) for u in universe)

    def answer(self, delta: ExtendedBase, t: Representation) -> bool:
        return (delta, t) in self.pairs


class PredicateOracle(ResemblanceOracle):
    def __init__(self, predicate: Callable[[ExtendedBase, Representation], bool], universe: Optional[Iterable[BaseLike]] = None):
        super().__init__()
        self.predicate = predicate
        if universe is not None:
            self.universe = sorted(as_base(u) for u in universe)

    def answer(self, delta: ExtendedBase, t: Representation) -> bool:
        return bool(self.predicate(delta, t))


class AssumeOracle(ResemblanceOracle):
    """Answers every query with the same verdict."""

    def __init__(self, verdict: bool = True, universe: Optional[Iterable[BaseLike]] = None):
        super().__init__()
        self.verdict = verdict
        if universe is not None:
            self.universe = sorted(as_base(u) for u in universe)

    def answer(self, delta: ExtendedBase, t: Representation) -> bool:
        return self.verdict
