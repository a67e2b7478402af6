"""Doubling: turn undirected factorizations into directed ones.

An undirected 2-factor doubles into two directed factors, one per traversal
orientation of its cycles; a perfect matching lifts to a single factor of
digons (both arcs of every edge).  The resulting factorization lives on the
symmetric digraph of the undirected host and is verified before return.
"""

from __future__ import annotations

from ..digraph import Digraph
from ..model import (
    Factorization,
    TwoFactor,
    UndirectedTwoFactorization,
    verify_factorization,
    verify_undirected,
)

__all__ = ["double_factorization", "symmetrize"]


def symmetrize(u_host) -> Digraph:
    """The symmetric digraph of an undirected graph: both arcs per edge."""
    arcs = []
    for (a, b) in u_host.edges:
        arcs.append((a, b))
        arcs.append((b, a))
    g = Digraph(u_host.vertex_count, arcs)
    return g


def double_factorization(u: UndirectedTwoFactorization) -> Factorization:
    """Two directed factors per undirected 2-factor; digon factors from matchings."""
    verdict = verify_undirected(u)
    if not verdict.valid:
        raise ValueError(f"doubling rejected invalid input: {verdict.first_failure}")
    host = symmetrize(u.host)
    factors: list[TwoFactor] = []
    for factor in u.factors:
        if all(len(c) == 2 for c in factor):
            factors.append(TwoFactor.of([(a, b) for (a, b) in factor]))
            continue
        factors.append(TwoFactor.of([tuple(c) for c in factor]))
        factors.append(TwoFactor.of([tuple(reversed(c)) for c in factor]))
    result = Factorization(host, tuple(factors))
    check = verify_factorization(host, result)
    assert check.valid, f"doubling produced invalid factorization: {check.first_failure}"
    return result
