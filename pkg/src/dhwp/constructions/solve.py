"""Top-level dispatch: conditions, catalogue, assemblies, search fallback."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from ..atlas import Atlas, AtlasKey, get_default_atlas
from ..digraph import complete_symmetric
from ..errors import (
    GenerationTimeoutError,
    UnknownOpenError,
    UnsupportedByAtlasError,
)
from ..model import Factorization, ProblemSpec, verify_factorization
from ..oracle import SearchInstance, exact_search
from .assemble import base_coverage_ok, even_hwp, odd_hwp
from .feasibility import FeasibilityReport, check_necessary

__all__ = ["SolveResult", "solve"]

# pairs with full catalogue coverage at lcm(m, n); pure profiles may be
# rerouted through any of them that contains the one cycle length in use
_KNOWN_PAIRS = [
    (4, 6), (4, 8), (4, 12), (4, 16), (6, 12), (8, 16),
    (3, 5), (3, 15), (5, 15),
]


@dataclass
class SolveResult:
    status: str  # found | infeasible | unsupported | unknown-open | budget-exhausted
    factorization: Factorization | None = None
    detail: str = ""
    report: FeasibilityReport | None = None

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.status == "found"


def _found(spec: ProblemSpec, fac: Factorization, how: str) -> SolveResult:
    verdict = verify_factorization(fac.host, fac, spec)
    assert verdict.valid, f"solver returned invalid factorization: {verdict.first_failure}"
    return SolveResult("found", fac, how)


def _solve_pure(
    spec: ProblemSpec, length: int, atlas: Atlas, time_limit: float
) -> SolveResult | None:
    """Route an all-one-length profile through any covering catalogue pair.

    A pure profile does not involve the other declared cycle length, so any
    supported pair containing ``length`` whose lcm divides v (odd x for odd
    pairs) can build it.  Returns None when no pair applies.
    """
    v = spec.v
    for (pm, pn) in _KNOWN_PAIRS:
        if length not in (pm, pn):
            continue
        h = lcm(pm, pn)
        if v % h:
            continue
        x = v // h
        pr = v - 1 if length == pm else 0
        ps = v - 1 - pr
        try:
            if pm % 2 == 0 and base_coverage_ok(pm, pn, atlas):
                fac = even_hwp(pm, pn, x, pr, ps, atlas, time_limit)
            elif pm % 2 == 1 and x % 2 == 1 and base_coverage_ok(pm, pn, atlas):
                fac = odd_hwp(pm, pn, x, pr, ps, atlas, time_limit)
            else:
                continue
        except (UnknownOpenError, UnsupportedByAtlasError, GenerationTimeoutError):
            continue
        return _found(spec, fac, f"pure profile via the ({pm},{pn}) bases")
    return None


def solve(
    spec: ProblemSpec,
    atlas: Atlas | None = None,
    time_limit: float = 120.0,
    oracle_fallback: bool = True,
    oracle_node_limit: int = 10**8,
) -> SolveResult:
    """Construct a verified factorization for the instance, or say why not.

    Dispatch: necessary conditions, catalogue lookup (which also answers the
    recorded-open keys), the even or odd assembly when the cycle lengths and
    catalogue coverage allow it, and finally bounded exact search.  A search
    that exhausts the space proves infeasibility; running out of budget is
    reported as such, never as nonexistence.
    """
    spec = spec.normalized()
    report = check_necessary(spec)
    if not report.met:
        return SolveResult(
            "infeasible", detail="; ".join(report.violations()), report=report
        )
    atlas = atlas or get_default_atlas()
    v, m, n, r, s = spec.v, spec.m, spec.n, spec.r, spec.s

    entry = atlas.lookup(AtlasKey.of(v, m, n, r, s))
    if entry is not None:
        if entry.status == "unknown-open":
            return SolveResult(
                "unknown-open", detail=f"recorded as unsettled: {entry.key}", report=report
            )
        return _found(spec, entry.factorization, "catalogue")

    h = lcm(m, n)
    if v % h == 0:
        x = v // h
        try:
            if m % 2 == 0 and n % 2 == 0 and base_coverage_ok(m, n, atlas):
                return _found(
                    spec, even_hwp(m, n, x, r, s, atlas, time_limit), "even assembly"
                )
            if (
                m % 2 == 1
                and n % 2 == 1
                and h % 3 == 0
                and x % 2 == 1
                and base_coverage_ok(m, n, atlas)
            ):
                return _found(
                    spec, odd_hwp(m, n, x, r, s, atlas, time_limit), "odd assembly"
                )
        except UnknownOpenError as exc:
            return SolveResult("unknown-open", detail=str(exc), report=report)
        except UnsupportedByAtlasError as exc:
            return SolveResult("unsupported", detail=str(exc), report=report)
        except GenerationTimeoutError as exc:
            return SolveResult("budget-exhausted", detail=str(exc), report=report)

    if r == 0 or s == 0:
        length = n if r == 0 else m
        reroute = _solve_pure(spec, length, atlas, time_limit)
        if reroute is not None:
            return reroute

    if not oracle_fallback:
        return SolveResult("unsupported", detail="no construction covers this instance",
                           report=report)

    profile = {}
    if r:
        profile[m] = r
    if s:
        profile[n] = s
    outcome = exact_search(
        SearchInstance(
            complete_symmetric(v),
            profile,
            node_limit=oracle_node_limit,
            time_limit=time_limit,
        )
    )
    if outcome.status == "found":
        return _found(spec, outcome.witness, "exact search")
    if outcome.status == "none":
        return SolveResult(
            "infeasible",
            detail=f"exhaustive search: no solution ({outcome.nodes} nodes)",
            report=report,
        )
    return SolveResult(
        "budget-exhausted",
        detail=f"search budget exhausted after {outcome.nodes} nodes",
        report=report,
    )
