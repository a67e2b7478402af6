"""Recipes for catalogue entries that are generated rather than transcribed.

The construction stack needs base cases nobody prints: the pure entries
(all factors one cycle length) at 8, 12, 15 and 16 vertices, and the
even-count mixed entries on 15 vertices.  Odd orders come from doubling an
undirected solution (classical constructions where available, exact search
otherwise); even orders come from direct search, except the all-C_4 order-16
entry, which is assembled by the even blow-up construction from order-8
bases because direct search measures far worse there.

All results are verified by the caller before they are stored or returned.
"""

from __future__ import annotations

from .atlas import Atlas, AtlasKey
from .digraph import complete_symmetric
from .errors import GenerationTimeoutError, UnsupportedByAtlasError
from .model import Factorization, complete_graph
from .oracle import generation_search

__all__ = ["generate_base"]


def _pure_length(key: AtlasKey) -> int | None:
    if key.s == 0 and key.r == key.v - 1:
        return key.m
    if key.r == 0 and key.s == key.v - 1:
        return key.n
    return None


def _double_search_undirected(v: int, profile: dict[int, int], time_limit: float):
    from .constructions.doubling import double_factorization
    from .constructions.undirected import kirkman_resolution, walecki_hamilton

    if profile == {3: (v - 1) // 2}:
        return double_factorization(kirkman_resolution(v))
    if profile == {v: (v - 1) // 2}:
        return double_factorization(walecki_hamilton(v))
    outcome = generation_search(complete_graph(v), profile, time_limit=time_limit)
    if outcome.status != "found":
        raise GenerationTimeoutError(f"undirected search for {profile} on K_{v} ran out")
    return double_factorization(outcome.witness)


def generate_base(atlas: Atlas, key: AtlasKey, time_limit: float) -> tuple[Factorization, str]:
    """Build the factorization for a generatable base key.

    Returns (factorization, provenance).  Raises UnsupportedByAtlasError for
    keys outside the generatable families and GenerationTimeoutError when a
    search runs out of budget.
    """
    v = key.v
    pure = _pure_length(key)

    if pure is not None:
        memo = atlas.pure_memo()
        if (v, pure) in memo:
            return memo[(v, pure)]
        if v % 2 == 1:
            fac = _double_search_undirected(v, {pure: (v - 1) // 2}, time_limit)
            provenance = "generated-doubling"
        elif v == 16 and pure == 4:
            # assembled from the order-8 bases; direct search is impractical here
            from .constructions.assemble import even_hwp

            fac = even_hwp(4, 8, 2, 15, 0, atlas=atlas)
            provenance = "composite"
        else:
            outcome = generation_search(complete_symmetric(v), {pure: v - 1}, time_limit)
            if outcome.status != "found":
                raise GenerationTimeoutError(f"search for all-C_{pure} on K_{v}* ran out")
            fac = outcome.witness
            provenance = "generated-search"
        memo[(v, pure)] = (fac, provenance)
        return fac, provenance

    if v % 2 == 1 and key.r % 2 == 0 and key.s % 2 == 0 and key.r and key.s:
        fac = _double_search_undirected(
            v, {key.m: key.r // 2, key.n: key.s // 2}, time_limit
        )
        return fac, "generated-doubling"

    raise UnsupportedByAtlasError(f"no generation recipe for {key}")
