from __future__ import annotations
import enum


class OrdinalKind(enum.StrEnum):
    zero = "zero"
    successor = "successor"
    limit = "limit"


class Semantics(enum.StrEnum):
    exact = "exact"
    relativized = "relativized"


class LawMode(enum.StrEnum):
    exhaustive = "exhaustive"
    sampled = "sampled"


class ClauseStatus(enum.StrEnum):
    passed = "passed"
    failed = "failed"
    vacuous = "vacuous"


class Provenance(enum.StrEnum):
    constructed_normal = "constructed-normal"
    constructed_oracle = "constructed-oracle"
    user_supplied = "user-supplied"


class EntryStatus(enum.StrEnum):
    ok = "ok"
    no_witness = "no-witness-in-range"


class WfStatus(enum.StrEnum):
    refuted = "refuted"
    unknown = "unknown"


class OutputFormat(enum.StrEnum):
    text = "text"
    json = "json"


class TableFormat(enum.StrEnum):
    tsv = "tsv"
    dot = "dot"
    xlsx = "xlsx"


class Ordering(enum.IntEnum):
    less = -1
    equal = 0
    greater = 1

    @property
    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[int(self)]


class ExitCode(enum.IntEnum):
    ok = 0
    violation = 1
    usage = 2
    internal = 3
