"""JSON network documents and serializable analysis reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from . import __version__
from .emp import Emp, NecessaryViolation
from .graph import NetworkPattern, NodeClassification, PatternError
from .identifiability import IdentVerdict
from .search import SearchResult

__all__ = [
    "DocumentError",
    "NetworkDocument",
    "Report",
    "load_document",
    "builtin_fixture",
    "classification_to_dict",
    "verdict_to_dict",
    "verdict_from_dict",
    "search_to_dict",
]


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkDocument:
    name: str
    n: int
    edges: tuple[tuple[int, int], ...]
    emp: Emp | None = None
    seed: int | None = None

    @classmethod
    def from_dict(cls, data: Any) -> "NetworkDocument":
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        missing = [k for k in ("n", "edges") if k not in data]
        if missing:
            raise DocumentError(f"missing field(s): {', '.join(missing)}")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise DocumentError(f"'n' must be an integer, got {n!r}")
        raw_edges = data["edges"]
        if not isinstance(raw_edges, list):
            raise DocumentError("'edges' must be a list of [from, to] pairs")
        edges = []
        for e in raw_edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise DocumentError(f"malformed edge {e!r}; expected [from, to] integers")
            edges.append((e[0], e[1]))
        emp = None
        if data.get("emp") is not None:
            raw = data["emp"]
            if not isinstance(raw, dict) or not {"excited", "measured"} <= raw.keys():
                raise DocumentError("'emp' must have 'excited' and 'measured' node lists")
            for key in ("excited", "measured"):
                if not isinstance(raw[key], list) or not all(isinstance(x, int) for x in raw[key]):
                    raise DocumentError(f"emp.{key} must be a list of node ids")
            emp = Emp(raw["excited"], raw["measured"])
        seed = data.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
            raise DocumentError(f"'seed' must be an integer, got {seed!r}")
        doc = cls(str(data.get("name", "network")), n, tuple(edges), emp, seed)
        doc.pattern()
        if emp is not None:
            try:
                emp.check_nodes(doc.pattern())
            except ValueError as exc:
                raise DocumentError(str(exc)) from None
        return doc

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "n": self.n, "edges": [list(e) for e in self.edges]}
        if self.emp is not None:
            out["emp"] = {"excited": sorted(self.emp.excited), "measured": sorted(self.emp.measured)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def pattern(self) -> NetworkPattern:
        try:
            return NetworkPattern(self.n, self.edges)
        except PatternError as exc:
            raise DocumentError(str(exc)) from None


def load_document(path: str | Path) -> NetworkDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return NetworkDocument.from_dict(data)


def builtin_fixture(name: str) -> Path:
    """Path of a shipped fixture, e.g. ``builtin_fixture("exampleA")``."""
    path = Path(str(resources.files("netident") / "fixtures" / f"{name}.json"))
    if not path.exists():
        raise DocumentError(f"no built-in fixture named {name!r}")
    return path


def classification_to_dict(cl: NodeClassification, verbose: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {
        "sources": sorted(cl.sources),
        "sinks": sorted(cl.sinks),
        "internal": sorted(cl.internal),
        "dources": {str(k): v for k, v in sorted(cl.dources.items())},
        "dinks": {str(k): v for k, v in sorted(cl.dinks.items())},
    }
    if verbose:
        out["dource_witnesses"] = {str(k): list(v) for k, v in sorted(cl.dource_witnesses.items())}
        out["dink_witnesses"] = {str(k): list(v) for k, v in sorted(cl.dink_witnesses.items())}
    return out


def _violation_from_str(s: str) -> NecessaryViolation:
    if "(" in s:
        kind, node = s.rstrip(")").split("(")
        return NecessaryViolation(kind, int(node))
    return NecessaryViolation(s)


def verdict_to_dict(v: IdentVerdict) -> dict[str, Any]:
    return {
        "identifiable": v.identifiable,
        "achieved_rank": v.achieved_rank,
        "required_rank": v.required_rank,
        "trials": v.trials,
        "per_trial_ranks": list(v.per_trial_ranks),
        "necessary_violations": [str(x) for x in v.necessary_violations],
        "seed": v.seed,
    }


def verdict_from_dict(d: dict[str, Any]) -> IdentVerdict:
    return IdentVerdict(
        identifiable=d["identifiable"],
        achieved_rank=d["achieved_rank"],
        required_rank=d["required_rank"],
        trials=d["trials"],
        per_trial_ranks=tuple(d["per_trial_ranks"]),
        necessary_violations=tuple(_violation_from_str(s) for s in d["necessary_violations"]),
        seed=d.get("seed"),
    )


def search_to_dict(r: SearchResult) -> dict[str, Any]:
    return {
        "emp": None if r.emp is None else {"excited": sorted(r.emp.excited), "measured": sorted(r.emp.measured)},
        "cardinality": None if r.emp is None else r.emp.cardinality,
        "proven_minimal": r.proven_minimal,
        "explored": r.explored,
        "budget_exhausted": r.budget_exhausted,
        "verdict": None if r.verdict is None else verdict_to_dict(r.verdict),
    }


@dataclass
class Report:
    """Machine-readable outcome of one CLI command; plain JSON types only."""

    network: str
    classification: dict[str, Any] | None = None
    violations: list[str] = field(default_factory=list)
    verdict: dict[str, Any] | None = None
    bounds: tuple[int, int] | None = None
    search: dict[str, Any] | None = None
    checks: list[dict[str, Any]] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.provenance.setdefault("tool_version", __version__)
        if self.bounds is not None:
            self.bounds = (int(self.bounds[0]), int(self.bounds[1]))

    def to_dict(self) -> dict[str, Any]:
        return {
            "network": self.network,
            "classification": self.classification,
            "violations": list(self.violations),
            "verdict": self.verdict,
            "bounds": None if self.bounds is None else list(self.bounds),
            "search": self.search,
            "checks": list(self.checks),
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        bounds = d.get("bounds")
        return cls(
            network=d["network"],
            classification=d.get("classification"),
            violations=list(d.get("violations", [])),
            verdict=d.get("verdict"),
            bounds=None if bounds is None else (bounds[0], bounds[1]),
            search=d.get("search"),
            checks=list(d.get("checks", [])),
            provenance=dict(d.get("provenance", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))
