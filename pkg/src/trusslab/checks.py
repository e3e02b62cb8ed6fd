"""Witness-carrying verdicts and check reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import TheoremViolation


@dataclass(frozen=True)
class Verdict:
    law: str
    ok: bool
    witness: tuple[int, ...] | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"law": self.law, "ok": self.ok, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = [int(w) for w in self.witness]
        return out


def compare(law: str, lhs, rhs, index_map=None) -> Verdict:
    """Entrywise comparison of two equally shaped arrays.

    The witness is the multi-index of the first mismatch in C order, optionally
    translated by ``index_map`` (e.g. to undo a mirroring of the arguments).
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    bad = lhs != rhs
    if bad.ndim > 1 and bad.shape != lhs.shape[: bad.ndim]:
        raise ValueError("shape mismatch")
    if not bad.any():
        return Verdict(law, True, None, int(bad.size))
    first = np.unravel_index(int(np.flatnonzero(bad)[0]), bad.shape)
    witness = tuple(int(i) for i in first)
    if index_map is not None:
        witness = index_map(witness)
    return Verdict(law, False, witness, int(bad.size))


def holds(law: str, mask, index_map=None) -> Verdict:
    """Verdict for a boolean array that must be all True."""
    mask = np.asarray(mask, dtype=bool)
    return compare(law, mask, np.ones_like(mask), index_map)


@dataclass
class Report:
    title: str
    verdicts: list[Verdict] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def extend(self, verdicts) -> None:
        for v in verdicts:
            self.add(v)

    def note(self, key: str, value: Any) -> None:
        self.notes[key] = value

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    def __getitem__(self, law: str) -> Verdict:
        for v in self.verdicts:
            if v.law == law:
                return v
        raise KeyError(law)

    def __contains__(self, law: str) -> bool:
        return any(v.law == law for v in self.verdicts)

    def raise_on_failure(self) -> "Report":
        bad = self.failures()
        if bad:
            first = bad[0]
            raise TheoremViolation(
                f"{self.title}: {first.law} failed at {first.witness}",
                kind=first.law,
                witness=first.witness,
            )
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [v.to_json() for v in self.verdicts],
            "notes": _jsonable(self.notes),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value
