"""Claims ledger for the K3-fibred mirrors of Fano 3-folds.

The catalog records which Mori-Mukai families have a nontrivial Galois
action on the Picard lattice of the geometric generic fiber, which ones are
known to be 2-reflective, and the lattices that are given explicitly. Only
stated facts are stored: lattices that were not given stay absent.

File format: a JSON array whose elements are entries

    {"label": ..., "galois_trivial": bool, "status": ..., "provenance": ...,
     "lattice": {"label": ..., "blocks": [...]}}     # lattice optional

plus exactly one ``{"summary": {"total": ..., "excluded": ..., "infinite": ...}}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Sequence

from .lattice import GramLattice, lattice_from_definition
from .vinberg import Verdict, VinbergResult, run_vinberg

__all__ = [
    "Status",
    "FanoEntry",
    "CatalogSummary",
    "Catalog",
    "CatalogError",
    "Outcome",
    "CrossCheckRow",
    "load_catalog",
    "loads_catalog",
    "dumps_catalog",
    "save_catalog",
    "catalog_arithmetic",
    "cross_check",
]

DEFAULT_CATALOG = "fano_mirrors.json"


class CatalogError(ValueError):
    pass


class Status(str, Enum):
    ASSERTED_2REFLECTIVE = "ASSERTED_2REFLECTIVE"
    ASSERTED_NOT_2REFLECTIVE = "ASSERTED_NOT_2REFLECTIVE"
    UNKNOWN = "UNKNOWN"


@dataclass
class FanoEntry:
    label: str
    galois_trivial: bool
    status: Status = Status.UNKNOWN
    provenance: str = ""
    lattice: GramLattice | None = None
    lattice_doc: dict[str, Any] | None = None

    def __post_init__(self):
        if self.status is not Status.UNKNOWN and not self.provenance.strip():
            raise CatalogError(f"{self.label}: asserted status needs a provenance")

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "label": self.label,
            "galois_trivial": self.galois_trivial,
            "status": self.status.value,
            "provenance": self.provenance,
        }
        if self.lattice_doc is not None:
            doc["lattice"] = self.lattice_doc
        return doc


@dataclass(frozen=True)
class CatalogSummary:
    total: int
    excluded: int
    infinite: int


@dataclass
class Catalog:
    entries: list[FanoEntry]
    summary: CatalogSummary

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def get(self, label: str) -> FanoEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)


def _line_of(text: str, needle: str, occurrence: int = 1) -> int:
    pos = -1
    for _ in range(occurrence):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return 0
    return text.count("\n", 0, pos) + 1


def loads_catalog(text: str) -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, list):
        raise CatalogError("line 1: catalog must be a JSON array")
    entries: list[FanoEntry] = []
    summary = None
    seen: dict[str, int] = {}
    for item in doc:
        if not isinstance(item, dict):
            raise CatalogError("catalog elements must be objects")
        if "summary" in item:
            if summary is not None:
                line = _line_of(text, '"summary"', 2)
                raise CatalogError(f"line {line}: second summary object")
            s = item["summary"]
            try:
                summary = CatalogSummary(int(s["total"]), int(s["excluded"]), int(s["infinite"]))
            except (KeyError, TypeError, ValueError) as exc:
                line = _line_of(text, '"summary"')
                raise CatalogError(f"line {line}: bad summary ({exc})") from None
            continue
        label = item.get("label")
        if not isinstance(label, str) or not label:
            raise CatalogError("entry without a label")
        key = json.dumps(label, ensure_ascii=False)
        seen[label] = seen.get(label, 0) + 1
        where = _line_of(text, f'"label": {key}', seen[label]) or _line_of(text, key, seen[label])
        if seen[label] > 1:
            raise CatalogError(f"line {where}: duplicate label {label!r}")
        try:
            status = Status(item.get("status", "UNKNOWN"))
            galois = item["galois_trivial"]
            if not isinstance(galois, bool):
                raise ValueError("galois_trivial must be true or false")
            lattice_doc = item.get("lattice")
            lattice = lattice_from_definition(lattice_doc) if lattice_doc is not None else None
            entries.append(FanoEntry(label, galois, status, item.get("provenance", ""), lattice, lattice_doc))
        except (KeyError, ValueError) as exc:
            raise CatalogError(f"line {where}: entry {label!r}: {exc}") from None
    if summary is None:
        raise CatalogError("catalog has no summary object")
    return Catalog(entries, summary)


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Load a catalog file; the shipped one when ``path`` is None."""
    if path is None:
        text = resources.files("k3cone.data").joinpath(DEFAULT_CATALOG).read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return loads_catalog(text)


def dumps_catalog(catalog: Catalog) -> str:
    """Canonical serialization (2-space indent, sorted keys, trailing newline)."""
    doc: list[dict[str, Any]] = [e.to_json() for e in catalog.entries]
    s = catalog.summary
    doc.append({"summary": {"total": s.total, "excluded": s.excluded, "infinite": s.infinite}})
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_catalog(catalog: Catalog, path: str | Path) -> None:
    Path(path).write_text(dumps_catalog(catalog), encoding="utf-8")


def catalog_arithmetic(catalog: Catalog) -> dict[str, Any]:
    """The 105 / 13 / 92 bookkeeping: exclusions are Galois-twisted or 2-reflective cases."""
    nontrivial = [e.label for e in catalog if not e.galois_trivial]
    reflective = [e.label for e in catalog if e.galois_trivial and e.status is Status.ASSERTED_2REFLECTIVE]
    s = catalog.summary
    checks = {
        "excluded_count": len(nontrivial) + len(reflective) == s.excluded,
        "remaining": s.total - s.excluded == s.infinite,
    }
    return {
        "galois_nontrivial": nontrivial,
        "two_reflective": reflective,
        "total": s.total,
        "excluded": s.excluded,
        "infinite": s.infinite,
        "checks": checks,
        "passed": all(checks.values()),
    }


class Outcome(str, Enum):
    CONSISTENT = "CONSISTENT"
    CONTRADICTION = "CONTRADICTION"
    INCONCLUSIVE = "INCONCLUSIVE"
    UNASSERTED = "UNASSERTED"
    SKIPPED = "SKIPPED"


@dataclass
class CrossCheckRow:
    label: str
    outcome: Outcome
    verdict: Verdict | None = None
    notice: str = ""

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "outcome": self.outcome.value,
            "verdict": self.verdict.value if self.verdict else None,
            "notice": self.notice,
        }


def cross_check(entries: Sequence[FanoEntry] | Catalog,
                vinberg_runner: Callable[[GramLattice], VinbergResult] = run_vinberg) -> list[CrossCheckRow]:
    """Compare each asserted status with a Vinberg run on the entry's lattice.

    A certificate for a lattice asserted not 2-reflective is a CONTRADICTION;
    an exhausted budget for one asserted 2-reflective is INCONCLUSIVE.
    """
    rows = []
    for e in entries:
        if e.lattice is None:
            rows.append(CrossCheckRow(e.label, Outcome.SKIPPED, notice="no lattice attached"))
            continue
        res = vinberg_runner(e.lattice)
        certified = res.verdict is Verdict.TWO_REFLECTIVE
        if e.status is Status.ASSERTED_2REFLECTIVE:
            outcome = Outcome.CONSISTENT if certified else Outcome.INCONCLUSIVE
        elif e.status is Status.ASSERTED_NOT_2REFLECTIVE:
            outcome = Outcome.CONTRADICTION if certified else Outcome.CONSISTENT
        else:
            outcome = Outcome.UNASSERTED
        notice = "" if certified else res.stop_reason
        rows.append(CrossCheckRow(e.label, outcome, res.verdict, notice))
    return rows
