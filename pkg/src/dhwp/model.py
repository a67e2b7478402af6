"""Directed cycles, 2-factors, factorizations and the verifier.

The verifier is the ground truth of the whole package: every construction
and every catalogue entry must pass it before being handed to a caller.
It never raises on invalid input; failures are reported in a ``Verdict``
with a first-failure witness.

Directed cycles are canonicalized by rotation only (the minimum vertex
comes first); a cycle and its reverse are different objects.  Undirected
cycles, used by the doubling inputs, canonicalize with rotation plus
reflection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .digraph import Digraph
from .errors import InvalidCycleError, InvalidParameterError

__all__ = [
    "DirectedCycle",
    "TwoFactor",
    "Factorization",
    "ProblemSpec",
    "Failure",
    "Verdict",
    "canonical_cycle",
    "canonical_cycle_undirected",
    "verify_factorization",
    "map_vertices",
    "merge_parallel",
    "UndirectedGraph",
    "complete_graph",
    "equipartite_graph",
    "UndirectedTwoFactorization",
    "verify_undirected",
]


# --------------------------------------------------------------------------
# directed objects
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectedCycle:
    """A directed cycle stored in canonical rotation (minimum vertex first)."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        n = len(vs)
        return [(vs[i], vs[(i + 1) % n]) for i in range(n)]

    def shifted(self, offset: int) -> "DirectedCycle":
        return canonical_cycle(tuple(v + offset for v in self.vertices))

    def reversed(self) -> "DirectedCycle":
        return canonical_cycle(tuple(reversed(self.vertices)))


def canonical_cycle(seq: Sequence[int]) -> DirectedCycle:
    """Rotate ``seq`` so its minimum vertex comes first.

    Equality of canonical forms is equality as directed cycles; the
    traversal direction is never reversed.
    """
    vs = tuple(seq)
    if len(vs) < 2:
        raise InvalidCycleError(f"cycle needs at least 2 vertices, got {vs!r}")
    if len(set(vs)) != len(vs):
        raise InvalidCycleError(f"duplicate vertex in cycle {vs!r}")
    if any(v < 0 for v in vs):
        raise InvalidCycleError(f"negative vertex in cycle {vs!r}")
    k = vs.index(min(vs))
    return DirectedCycle(vs[k:] + vs[:k])


def canonical_cycle_undirected(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical form under rotation and reflection (for undirected cycles)."""
    vs = tuple(seq)
    if len(set(vs)) != len(vs):
        raise InvalidCycleError(f"duplicate vertex in cycle {vs!r}")
    k = vs.index(min(vs))
    rot = vs[k:] + vs[:k]
    rev = (rot[0],) + tuple(reversed(rot[1:]))
    return min(rot, rev)


@dataclass(frozen=True)
class TwoFactor:
    """A set of vertex-disjoint directed cycles, stored sorted by least vertex."""

    cycles: tuple[DirectedCycle, ...]

    @staticmethod
    def of(cycles: Iterable[DirectedCycle | Sequence[int]]) -> "TwoFactor":
        canon = []
        for c in cycles:
            canon.append(c if isinstance(c, DirectedCycle) else canonical_cycle(c))
        return TwoFactor(tuple(sorted(canon, key=lambda c: c.vertices[0])))

    def arc_set(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for c in self.cycles:
            out.update(c.arcs())
        return out

    def vertex_set(self) -> set[int]:
        out: set[int] = set()
        for c in self.cycles:
            out.update(c.vertices)
        return out

    def cycle_lengths(self) -> set[int]:
        return {len(c) for c in self.cycles}


@dataclass(frozen=True)
class Factorization:
    """An ordered list of 2-factors claimed to partition a host's arcs."""

    host: Digraph
    factors: tuple[TwoFactor, ...]


@dataclass(frozen=True)
class ProblemSpec:
    """Instance key (v, m, n, r, s): r factors of m-cycles, s of n-cycles."""

    v: int
    m: int
    n: int
    r: int
    s: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise InvalidParameterError("cycle lengths must be >= 2")
        if self.m == self.n:
            raise InvalidParameterError("cycle lengths must differ (m != n)")
        if self.v < 2:
            raise InvalidParameterError("v must be >= 2")
        if self.r < 0 or self.s < 0:
            raise InvalidParameterError("factor counts must be nonnegative")

    def normalized(self) -> "ProblemSpec":
        if self.m < self.n:
            return self
        return ProblemSpec(self.v, self.n, self.m, self.s, self.r)


@dataclass(frozen=True)
class Failure:
    """First-failure witness: which factor broke and why."""

    factor_index: int | None
    reason: str  # duplicate-arc | non-host-arc | non-spanning | wrong-cycle-length
    #             | degree-violation | missing-arc | count-mismatch
    detail: str


@dataclass
class Verdict:
    valid: bool
    counts: dict[int, int] = field(default_factory=dict)
    first_failure: Failure | None = None

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.valid


def verify_factorization(
    host: Digraph, f: Factorization, spec: ProblemSpec | None = None
) -> Verdict:
    """Check that ``f`` partitions ``host``'s arcs into spanning 2-factors.

    Valid iff (a) each factor spans the host with in- and out-degree exactly
    one at every vertex, (b) factor arc sets are pairwise disjoint, (c) their
    union equals the host arc set exactly, and (d) when ``spec`` is given,
    each factor is monochromatic of length m or n with counts (r, s).
    Cycle-length counts are reported regardless of validity.
    """
    v = host.vertex_count
    all_vertices = frozenset(range(v))
    seen: set[tuple[int, int]] = set()
    counts: dict[int, int] = {}
    failure: Failure | None = None

    def note(fail: Failure):
        nonlocal failure
        if failure is None:
            failure = fail

    for i, factor in enumerate(f.factors):
        covered: set[int] = set()
        factor_ok = True
        for cyc in factor.cycles:
            vs = cyc.vertices
            if len(vs) < 2 or len(set(vs)) != len(vs):
                note(Failure(i, "degree-violation", f"factor {i}: bad cycle {vs}"))
                factor_ok = False
                continue
            overlap = covered.intersection(vs)
            if overlap:
                note(
                    Failure(
                        i,
                        "degree-violation",
                        f"factor {i}: vertex {min(overlap)} in two cycles",
                    )
                )
                factor_ok = False
            covered.update(vs)
            for (t, h) in cyc.arcs():
                if not host.has_arc(t, h):
                    note(Failure(i, "non-host-arc", f"factor {i}: arc ({t},{h}) not in host"))
                    factor_ok = False
                elif (t, h) in seen:
                    note(Failure(i, "duplicate-arc", f"factor {i}: arc ({t},{h}) reused"))
                    factor_ok = False
                else:
                    seen.add((t, h))
        if covered != all_vertices:
            missing = sorted(all_vertices - covered)[:4]
            note(Failure(i, "non-spanning", f"factor {i}: misses vertices {missing}"))
            factor_ok = False

        lengths = factor.cycle_lengths()
        if len(lengths) == 1:
            length = lengths.pop()
            counts[length] = counts.get(length, 0) + 1
            if spec is not None and length not in (spec.m, spec.n):
                note(
                    Failure(
                        i,
                        "wrong-cycle-length",
                        f"factor {i}: cycle length {length} not in ({spec.m},{spec.n})",
                    )
                )
        elif factor_ok:
            note(
                Failure(
                    i,
                    "wrong-cycle-length",
                    f"factor {i}: mixed cycle lengths {sorted(lengths)}",
                )
            )

    if failure is None and len(seen) != host.arc_count:
        example = next(a for a in host.arcs() if a not in seen)
        note(
            Failure(
                None,
                "missing-arc",
                f"{host.arc_count - len(seen)} host arcs unused, e.g. {example}",
            )
        )

    if failure is None and spec is not None:
        want = {}
        if spec.r:
            want[spec.m] = spec.r
        if spec.s:
            want[spec.n] = spec.s
        if counts != want:
            note(Failure(None, "count-mismatch", f"counts {counts} != expected {want}"))

    return Verdict(valid=failure is None, counts=counts, first_failure=failure)


VertexMap = Mapping[int, int] | Sequence[int] | Callable[[int], int]


def _as_fn(mapping: VertexMap) -> Callable[[int], int]:
    if callable(mapping):
        return mapping
    if isinstance(mapping, Mapping):
        return mapping.__getitem__
    return mapping.__getitem__


def map_vertices(f: Factorization, mapping: VertexMap, new_host: Digraph) -> Factorization:
    """Relabel every cycle of ``f`` through an injective vertex map.

    The caller is responsible for verifying the image against ``new_host``
    (constructions always do before returning).
    """
    fn = _as_fn(mapping)
    support = set()
    for factor in f.factors:
        support.update(factor.vertex_set())
    image = {u: fn(u) for u in support}
    if len(set(image.values())) != len(image):
        raise InvalidParameterError("vertex map is not injective")
    for w in image.values():
        if not (0 <= w < new_host.vertex_count):
            raise InvalidParameterError(f"mapped vertex {w} outside new host")
    factors = tuple(
        TwoFactor.of(tuple(image[u] for u in cyc.vertices) for cyc in factor.cycles)
        for factor in f.factors
    )
    return Factorization(new_host, factors)


def merge_parallel(parts: Sequence[Factorization], host: Digraph) -> Factorization:
    """Combine factorizations on disjoint vertex sets into spanning factors.

    All parts must have the same factor count k; factor j of the result is
    the union of factor j of every part.
    """
    if not parts:
        raise InvalidParameterError("merge_parallel needs at least one part")
    k = len(parts[0].factors)
    if any(len(p.factors) != k for p in parts):
        raise InvalidParameterError("parts have mismatched factor counts")
    supports = []
    for p in parts:
        sup = set()
        for factor in p.factors:
            sup.update(factor.vertex_set())
        supports.append(sup)
    union: set[int] = set()
    total = 0
    for sup in supports:
        union.update(sup)
        total += len(sup)
    if total != len(union) or union != set(range(host.vertex_count)):
        raise InvalidParameterError("part vertex sets do not partition the host")
    factors = []
    for j in range(k):
        cycles: list[DirectedCycle] = []
        for p in parts:
            cycles.extend(p.factors[j].cycles)
        factors.append(TwoFactor.of(cycles))
    return Factorization(host, tuple(factors))


# --------------------------------------------------------------------------
# undirected objects (inputs of the doubling construction)
# --------------------------------------------------------------------------


class UndirectedGraph:
    """Simple undirected graph on ``0..vertex_count-1`` with a frozen edge set."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        norm = set()
        for a, b in edges:
            if a == b:
                raise InvalidParameterError(f"self-loop at vertex {a}")
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise InvalidParameterError(f"edge ({a},{b}) out of range")
            norm.add((a, b) if a < b else (b, a))
        self.vertex_count = vertex_count
        self.edges = frozenset(norm)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges

    def __repr__(self) -> str:
        return f"UndirectedGraph(v={self.vertex_count}, edges={len(self.edges)})"


def complete_graph(v: int) -> UndirectedGraph:
    return UndirectedGraph(v, ((a, b) for a in range(v) for b in range(a + 1, v)))


def equipartite_graph(part_size: int, parts: int) -> UndirectedGraph:
    if part_size < 1 or parts < 2:
        raise InvalidParameterError("equipartite graph needs part_size >= 1, parts >= 2")
    v = part_size * parts
    return UndirectedGraph(
        v,
        (
            (a, b)
            for a in range(v)
            for b in range(a + 1, v)
            if a // part_size != b // part_size
        ),
    )


@dataclass(frozen=True)
class UndirectedTwoFactorization:
    """Edge-disjoint spanning factors of an undirected host.

    Each factor is a tuple of cycles; a length-2 tuple denotes a matching
    edge, so perfect matchings are factors whose members all have length 2.
    """

    host: UndirectedGraph
    factors: tuple[tuple[tuple[int, ...], ...], ...]

    @staticmethod
    def of(
        host: UndirectedGraph, factors: Iterable[Iterable[Sequence[int]]]
    ) -> "UndirectedTwoFactorization":
        canon_factors = []
        for factor in factors:
            canon = []
            for cyc in factor:
                vs = tuple(cyc)
                if len(vs) == 2:
                    canon.append((min(vs), max(vs)))
                else:
                    canon.append(canonical_cycle_undirected(vs))
            canon.sort()
            canon_factors.append(tuple(canon))
        return UndirectedTwoFactorization(host, tuple(canon_factors))


def _undirected_cycle_edges(cyc: tuple[int, ...]) -> list[tuple[int, int]]:
    if len(cyc) == 2:
        return [(min(cyc), max(cyc))]
    n = len(cyc)
    out = []
    for i in range(n):
        a, b = cyc[i], cyc[(i + 1) % n]
        out.append((a, b) if a < b else (b, a))
    return out


def verify_undirected(u: UndirectedTwoFactorization) -> Verdict:
    """Undirected (orientation-agnostic) analogue of ``verify_factorization``.

    A factor must span the host with degree 2 everywhere (cycles) or degree 1
    everywhere (a perfect matching); factors must partition the host's edges.
    Matching factors are counted under cycle length 2.
    """
    host = u.host
    all_vertices = frozenset(range(host.vertex_count))
    seen: set[tuple[int, int]] = set()
    counts: dict[int, int] = {}
    failure: Failure | None = None

    def note(fail: Failure):
        nonlocal failure
        if failure is None:
            failure = fail

    for i, factor in enumerate(u.factors):
        covered: set[int] = set()
        lengths = set()
        for cyc in factor:
            lengths.add(len(cyc))
            if len(set(cyc)) != len(cyc) or len(cyc) < 2:
                note(Failure(i, "degree-violation", f"factor {i}: bad cycle {cyc}"))
                continue
            if covered.intersection(cyc):
                note(Failure(i, "degree-violation", f"factor {i}: overlapping cycles"))
            covered.update(cyc)
            for e in _undirected_cycle_edges(cyc):
                if e not in host.edges:
                    note(Failure(i, "non-host-arc", f"factor {i}: edge {e} not in host"))
                elif e in seen:
                    note(Failure(i, "duplicate-arc", f"factor {i}: edge {e} reused"))
                else:
                    seen.add(e)
        if covered != all_vertices:
            note(Failure(i, "non-spanning", f"factor {i}: not spanning"))
        if len(lengths) == 1:
            length = lengths.pop()
            counts[length] = counts.get(length, 0) + 1
        elif lengths == {2} or not lengths:
            pass
        elif 2 in lengths:
            note(Failure(i, "wrong-cycle-length", f"factor {i}: mixes edges and cycles"))
        else:
            note(Failure(i, "wrong-cycle-length", f"factor {i}: mixed lengths {sorted(lengths)}"))

    if failure is None and len(seen) != host.edge_count:
        note(Failure(None, "missing-arc", f"{host.edge_count - len(seen)} host edges unused"))

    return Verdict(valid=failure is None, counts=counts, first_failure=failure)
