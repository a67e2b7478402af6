"""Classical undirected ingredients: one-factorizations, Hamilton
decompositions of odd complete graphs, and resolvable triangle systems.

These feed the doubling construction and the blow-up assemblies.  Every
builder returns an :class:`UndirectedTwoFactorization` that has already
passed the undirected verifier.
"""

from __future__ import annotations

from ..errors import GenerationTimeoutError, InvalidParameterError
from ..model import (
    UndirectedTwoFactorization,
    complete_graph,
    verify_undirected,
)
from ..oracle import SearchInstance, search_with_restarts

__all__ = ["kotzig_one_factorization", "walecki_hamilton", "kirkman_resolution"]


def _checked(u: UndirectedTwoFactorization) -> UndirectedTwoFactorization:
    verdict = verify_undirected(u)
    assert verdict.valid, f"construction produced invalid factorization: {verdict.first_failure}"
    return u


def kotzig_one_factorization(even_n: int) -> UndirectedTwoFactorization:
    """Round-robin 1-factorization of K_n for even n, in pairing-first labels.

    The n-1 perfect matchings partition the edges of K_n.  Labels are chosen
    so that the first factor is exactly the consecutive pairing
    {0,1}, {2,3}, ..., {n-2, n-1}; discarding it leaves a 1-factorization of
    K_n minus that pairing, which is what the blow-up assembly consumes.
    """
    n = even_n
    if n < 2 or n % 2:
        raise InvalidParameterError("one-factorization of K_n needs even n >= 2")
    host = complete_graph(n)
    if n == 2:
        return _checked(UndirectedTwoFactorization.of(host, [[(0, 1)]]))

    # circle method on points {inf} + Z_{n-1}: round i pairs {inf, i} and
    # {i+j, i-j}; then relabel so round 0 becomes the consecutive pairing.
    mod = n - 1
    inf = n - 1
    relabel = {inf: 0, 0: 1}
    for j in range(1, n // 2):
        relabel[j] = 2 * j
        relabel[(mod - j) % mod] = 2 * j + 1
    rounds = []
    for i in range(mod):
        matching = [(relabel[inf], relabel[i])]
        for j in range(1, n // 2):
            a = (i + j) % mod
            b = (i - j) % mod
            matching.append((relabel[a], relabel[b]))
        rounds.append(matching)
    return _checked(UndirectedTwoFactorization.of(host, rounds))


def walecki_hamilton(v: int) -> UndirectedTwoFactorization:
    """Hamilton decomposition of K_v for odd v: (v-1)/2 zig-zag cycles.

    Points are {inf} + Z_{v-1}; cycle i follows the classical zig-zag
    inf, i, i+1, i-1, i+2, i-2, ... and is developed by +1.
    """
    if v < 3 or v % 2 == 0:
        raise InvalidParameterError("Hamilton decomposition here needs odd v >= 3")
    host = complete_graph(v)
    mod = v - 1
    inf = v - 1
    factors = []
    for i in range(mod // 2):
        seq = [inf, i % mod]
        for j in range(1, mod // 2 + 1):
            seq.append((i + j) % mod)
            if len(seq) < v:
                seq.append((i - j) % mod)
        factors.append([tuple(seq)])
    return _checked(UndirectedTwoFactorization.of(host, factors))


def _affine_plane_order3() -> list[list[tuple[int, int, int]]]:
    """The 4 parallel classes of lines of AG(2,3) on points 3*x + y."""
    classes = []
    for (da, db) in ((0, 1), (1, 0), (1, 1), (1, 2)):
        cls = []
        # lines through (x, y) in direction (da, db); pick one representative
        seen = set()
        for x in range(3):
            for y in range(3):
                line = tuple(sorted((3 * ((x + t * da) % 3) + (y + t * db) % 3) for t in range(3)))
                if line not in seen:
                    seen.add(line)
                    cls.append(line)
        classes.append(cls)
    return classes


def kirkman_resolution(v: int, time_limit: float = 60.0) -> UndirectedTwoFactorization:
    """Resolvable triangle factorization of K_v for v = 3 (mod 6).

    v=3 and v=9 come from direct constructions (the single triangle and the
    affine plane of order 3); larger orders are found by the exact search
    with seeded restarts, which handles v=15 in well under a second.
    """
    if v % 6 != 3:
        raise InvalidParameterError("resolvable triangle systems need v = 3 (mod 6)")
    host = complete_graph(v)
    if v == 3:
        return _checked(UndirectedTwoFactorization.of(host, [[(0, 1, 2)]]))
    if v == 9:
        return _checked(UndirectedTwoFactorization.of(host, _affine_plane_order3()))
    inst = SearchInstance(
        host,
        {3: (v - 1) // 2},
        time_limit=time_limit,
        anchor_rule="fail-first",
        value_order="mrv",
    )
    outcome = search_with_restarts(inst, tries=4000, base_nodes=40_000, growth=1.0)
    if outcome.status != "found":
        raise GenerationTimeoutError(f"no triangle resolution of K_{v} within budget")
    return outcome.witness


def relabel_with_class_first(
    u: UndirectedTwoFactorization, class_index: int = 0
) -> UndirectedTwoFactorization:
    """Relabel points so the chosen parallel class becomes the block triples.

    After relabelling, factor ``class_index`` is moved to the front and its
    t-th triangle is exactly {3t, 3t+1, 3t+2}; the remaining factors are the
    classes the blow-up assembly keeps.
    """
    chosen = sorted(u.factors[class_index])
    mapping: dict[int, int] = {}
    for t, tri in enumerate(chosen):
        for off, p in enumerate(sorted(tri)):
            mapping[p] = 3 * t + off
    new_factors = []
    order = [class_index] + [i for i in range(len(u.factors)) if i != class_index]
    for i in order:
        new_factors.append([tuple(mapping[p] for p in cyc) for cyc in u.factors[i]])
    return _checked(UndirectedTwoFactorization.of(u.host, new_factors))
