"""Uniform cycle factorizations of complete equipartite hosts.

Two shapes are supported, matching what the blow-up assemblies consume:

* two parts (K_{w,w} as a digraph: K_{(w:2)}*), factorized into directed
  m-cycles for even m dividing 2w;
* three parts (K_{(p:3)}*), factorized into directed m-cycles for m
  dividing 3p.

Strategy: build an undirected factorization first (difference pairing on
K_{w,w}; a transversal-design class family for triangles on three parts;
exact search otherwise) and double it.  Results are memoized per parameter
tuple and verified before return.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from ..digraph import equipartite_symmetric
from ..errors import GenerationTimeoutError, UnsupportedShapeError
from ..model import (
    Factorization,
    UndirectedTwoFactorization,
    equipartite_graph,
    verify_factorization,
    verify_undirected,
)
from ..oracle import generation_search
from .doubling import double_factorization

__all__ = ["equipartite_cycle_factorization"]


def _pairing_deltas(w: int, m: int) -> tuple[list[tuple[int, int]], int] | None:
    """Pair the w difference classes of K_{w,w} so each pair closes m-cycles.

    Classes d and d+delta combine into cycles of length 2w/gcd(w, delta);
    we need gcd(w, delta) = 2w/m and a perfect matching {d, d+delta} on Z_w,
    which exists exactly when the circulant components have even length.
    """
    if m < 4 or m % 2 or (2 * w) % m:
        return None
    target = 2 * w // m
    for delta in range(1, w):
        if gcd(w, delta) != target:
            continue
        comp_len = w // target
        if delta * 2 % w == 0:
            pairs = [(d, d + delta) for d in range(delta)]
            return pairs, delta
        if comp_len % 2 == 0:
            pairs = []
            for start in range(target):
                comp = [(start + i * delta) % w for i in range(comp_len)]
                pairs.extend((comp[2 * i], comp[2 * i + 1]) for i in range(comp_len // 2))
            return pairs, delta
    return None


def _two_part_undirected(w: int, m: int) -> UndirectedTwoFactorization | None:
    pairing = _pairing_deltas(w, m)
    if pairing is None:
        return None
    pairs, _ = pairing
    host = equipartite_graph(w, 2)
    factors = []
    for (d1, d2) in pairs:
        cycles = []
        visited = set()
        for a0 in range(w):
            if a0 in visited:
                continue
            seq = []
            x = a0
            while True:
                visited.add(x)
                seq.append(x)
                seq.append(w + (x + d1) % w)
                x = (x + d1 - d2) % w
                if x == a0:
                    break
            cycles.append(tuple(seq))
        factors.append(cycles)
    u = UndirectedTwoFactorization.of(host, factors)
    assert verify_undirected(u).valid
    return u


def _three_part_triangles(p: int) -> UndirectedTwoFactorization | None:
    """Resolvable transversal triples {i, p+(i+d), 2p+(2i+d)}; needs odd p."""
    if p % 2 == 0:
        return None
    host = equipartite_graph(p, 3)
    factors = []
    for d in range(p):
        factors.append(
            [(i, p + (i + d) % p, 2 * p + (2 * i + d) % p) for i in range(p)]
        )
    u = UndirectedTwoFactorization.of(host, factors)
    assert verify_undirected(u).valid
    return u


# undirected factorizations of these (part_size, parts, m) shapes do not
# exist; the directed ones are built by direct search instead
_NO_UNDIRECTED = {(2, 3, 3), (6, 3, 3), (2, 6, 3), (6, 2, 6)}


def _search_undirected(part: int, parts: int, m: int, time_limit: float):
    host = equipartite_graph(part, parts)
    v = part * parts
    count = host.edge_count // v
    out = generation_search(host, {m: count}, time_limit=time_limit)
    if out.status != "found":
        raise GenerationTimeoutError(
            f"no undirected C_{m}-factorization of K_({part}:{parts}) found within budget"
        )
    return out.witness


def _direct_undirected(part: int, parts: int, m: int) -> UndirectedTwoFactorization | None:
    if parts == 2:
        return _two_part_undirected(part, m)
    if parts == 3 and m == 3:
        return _three_part_triangles(part)
    return None


@lru_cache(maxsize=None)
def _undirected_cached(part: int, parts: int, m: int) -> UndirectedTwoFactorization:
    if (part, parts, m) in _NO_UNDIRECTED:
        raise UnsupportedShapeError(
            f"K_({part}:{parts}) has no undirected C_{m}-factorization"
        )
    u = _direct_undirected(part, parts, m)
    if u is not None:
        return u
    return _search_undirected(part, parts, m, time_limit=60.0)


@lru_cache(maxsize=None)
def _directed_cached(part: int, parts: int, m: int) -> Factorization:
    u = _direct_undirected(part, parts, m)
    if u is not None:
        return double_factorization(u)
    if (part, parts, m) not in _NO_UNDIRECTED:
        try:
            return double_factorization(_search_undirected(part, parts, m, time_limit=30.0))
        except GenerationTimeoutError:
            pass
    host = equipartite_symmetric(part, parts)
    count = host.arc_count // (part * parts)
    out = generation_search(host, {m: count}, time_limit=60.0)
    if out.status != "found":
        raise GenerationTimeoutError(
            f"no directed C_{m}-factorization of K_({part}:{parts})* found within budget"
        )
    return out.witness


def equipartite_cycle_factorization(
    part: int, parts: int, m: int, directed: bool = True
) -> Factorization | UndirectedTwoFactorization:
    """Uniform C_m-factorization of the complete equipartite (di)graph.

    Directed two-part hosts need even m >= 4 dividing 2*part; three-part
    hosts need m dividing 3*part (m=3 requires odd part for the direct
    family; others go to search).  Anything else is an unsupported shape.
    """
    v = part * parts
    if parts == 2:
        if m % 2 or m < 4 or (2 * part) % m:
            raise UnsupportedShapeError(
                f"two-part host needs even m >= 4 dividing {2 * part}, got m={m}"
            )
    elif parts == 3:
        if m < 3 or v % m:
            raise UnsupportedShapeError(f"three-part host needs m dividing {v}, got m={m}")
    else:
        raise UnsupportedShapeError(f"unsupported part count {parts}")

    if not directed:
        return _undirected_cached(part, parts, m)
    result = _directed_cached(part, parts, m)
    k = result.host.arc_count // v
    verdict = verify_factorization(result.host, result)
    assert verdict.valid, f"equipartite factorization invalid: {verdict.first_failure}"
    assert verdict.counts == {m: k}, f"unexpected profile {verdict.counts}"
    return result
