from __future__ import annotations
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from ..core.dilator import Dilator
from ..domain import EntryStatus, Provenance
from ..errors import TermError
from ..ordinals.cnf import ExtendedBase
from ..terms.term import DilatorTerm, term_compare


@dataclass
class CollapseTable:
    """A finite part of a collapse ``theta : D(alpha) -> alpha``.

    A value of None records that no witness was found in the searched range.
    """

    dilator: Dilator
    alpha: ExtendedBase
    entries: Dict[DilatorTerm, Optional[ExtendedBase]] = field(default_factory=dict)
    provenance: Provenance = Provenance.user_supplied

    def __post_init__(self) -> None:
        for t in self.entries:
            if t.base != self.alpha:
                raise TermError(f"{t} does not live over {self.alpha}")

    def ordered(self) -> List[Tuple[DilatorTerm, Optional[ExtendedBase]]]:
        """Entries in the order of their terms."""
        keys = sorted(self.entries, key=cmp_to_key(lambda s, t: int(term_compare(self.dilator, s, t))))
        return [(t, self.entries[t]) for t in keys]

    def status(self, t: DilatorTerm) -> EntryStatus:
        return EntryStatus.ok if self.entries[t] is not None else EntryStatus.no_witness

    def defined(self) -> List[Tuple[DilatorTerm, ExtendedBase]]:
        return [(t, v) for t, v in self.ordered() if v is not None]
