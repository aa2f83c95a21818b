"""EMP validation and minimal-EMP search."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Mapping

from .emp import Emp, necessary_check
from .graph import NetworkPattern, classify
from .identifiability import IdentVerdict, generic_identifiability

__all__ = ["OracleConfig", "SearchResult", "validate_emp", "find_minimal_emp", "candidate_levels"]

_E, _M, _EM = "E", "M", "EM"


@dataclass(frozen=True)
class OracleConfig:
    trials: int = 3
    seed: int = 42


@dataclass(frozen=True)
class SearchResult:
    emp: Emp | None
    proven_minimal: bool
    explored: int
    budget_exhausted: bool = False
    verdict: IdentVerdict | None = None


def validate_emp(pattern: NetworkPattern, emp: Emp, config: OracleConfig = OracleConfig()) -> IdentVerdict:
    """Screen ``emp`` with the topological conditions, then run the rank oracle."""
    violations = necessary_check(pattern, emp)
    if violations:
        return IdentVerdict(
            identifiable=False,
            achieved_rank=0,
            required_rank=len(pattern.edges),
            trials=0,
            necessary_violations=tuple(violations),
            seed=config.seed,
        )
    return generic_identifiability(pattern, emp, trials=config.trials, seed=config.seed)


def _node_options(pattern: NetworkPattern) -> dict[int, tuple[str, ...]]:
    cl = classify(pattern)
    need_e, need_m = cl.must_excite(), cl.must_measure()
    opts = {}
    for v in pattern.nodes:
        # a source's row and a sink's column of T are unit vectors, so a second status adds nothing
        if v in cl.sources:
            opts[v] = (_E,)
        elif v in cl.sinks:
            opts[v] = (_M,)
        elif v in need_e and v in need_m:
            opts[v] = (_EM,)
        elif v in need_e:
            opts[v] = (_E, _EM)
        elif v in need_m:
            opts[v] = (_M, _EM)
        else:
            opts[v] = (_E, _M, _EM)
    return opts


def candidate_levels(pattern: NetworkPattern) -> Iterator[tuple[int, list[Emp]]]:
    """Yield ``(cardinality, candidates)`` for the pruned search space, smallest first.

    Each node gets one status out of excited, measured or both; sources are
    only excited and sinks only measured. A node with status "both" adds one
    to the cardinality, so every candidate in a level has the same number of
    doubly covered nodes.
    """
    opts = _node_options(pattern)
    nodes = list(pattern.nodes)
    forced = [v for v in nodes if opts[v] == (_EM,)]
    optional = [v for v in nodes if _EM in opts[v] and len(opts[v]) > 1]
    for extra in range(len(optional) + 1):
        level = []
        for doubled in itertools.combinations(optional, extra):
            both = set(forced) | set(doubled)
            singles = [v for v in nodes if v not in both]
            choices = [[s for s in opts[v] if s != _EM] for v in singles]
            for combo in itertools.product(*choices):
                status = dict(zip(singles, combo))
                excited = both | {v for v, s in status.items() if s == _E}
                measured = both | {v for v, s in status.items() if s == _M}
                level.append(Emp(excited, measured))
        level.sort(key=Emp.sort_key)
        yield len(nodes) + len(forced) + extra, level


def find_minimal_emp(
    pattern: NetworkPattern,
    config: OracleConfig = OracleConfig(trials=2),
    max_candidates: int | None = None,
    time_budget: float | None = None,
    confirm_trials: int = 3,
    costs: Mapping[int, tuple[float, float]] | None = None,
) -> SearchResult:
    """Find a valid EMP of least cardinality.

    Candidates are visited in nondecreasing cardinality; within a level they
    are ordered by total cost (``costs[v] = (excite, measure)``, default 1
    each) and then lexicographically. The first candidate accepted by the
    oracle and by a confirmation run with ``confirm_trials`` trials wins.
    """

    def cost(emp: Emp) -> float:
        if costs is None:
            return 0.0
        return sum(costs.get(v, (1.0, 1.0))[0] for v in emp.excited) + sum(
            costs.get(v, (1.0, 1.0))[1] for v in emp.measured
        )

    start = time.monotonic()
    explored = 0
    for _, level in candidate_levels(pattern):
        level.sort(key=lambda e: (e.cardinality, cost(e), *e.sort_key()[1:]))
        for emp in level:
            if max_candidates is not None and explored >= max_candidates:
                return SearchResult(None, False, explored, budget_exhausted=True)
            if time_budget is not None and time.monotonic() - start > time_budget:
                return SearchResult(None, False, explored, budget_exhausted=True)
            explored += 1
            if necessary_check(pattern, emp):
                continue
            verdict = generic_identifiability(pattern, emp, trials=config.trials, seed=config.seed)
            if not verdict.identifiable:
                continue
            confirm = generic_identifiability(pattern, emp, trials=confirm_trials, seed=config.seed)
            if confirm.identifiable:
                return SearchResult(emp, True, explored, verdict=confirm)
    return SearchResult(None, True, explored)
