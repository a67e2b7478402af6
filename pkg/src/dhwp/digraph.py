"""Host digraphs: complete symmetric, equipartite, wreath blow-ups and Cayley.

All hosts use a single flat vertex labelling convention: a vertex that sits
at offset ``o`` inside block ``b`` of a blown-up or equipartite host gets the
integer label ``b * block_size + o``.  Keeping one convention everywhere means
factorizations can be moved between hosts by plain index arithmetic.

Digraphs are immutable after construction and store arc membership densely
(one byte per ordered pair), so membership queries are O(1) and hosts can be
shared freely between the verifier and the constructions.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InvalidParameterError

__all__ = [
    "Digraph",
    "complete_symmetric",
    "equipartite_symmetric",
    "wreath_with_empty",
    "cayley_product",
]


class Digraph:
    """An immutable digraph on vertices ``0..vertex_count-1`` without loops.

    ``block_size``/``block_count`` are set when the host has a natural
    equipartite structure (equipartite hosts and blow-ups); they are purely
    informational.
    """

    __slots__ = ("vertex_count", "_adj", "_arc_count", "block_size", "block_count")

    def __init__(
        self,
        vertex_count: int,
        arcs: Iterable[tuple[int, int]],
        block_size: int | None = None,
        block_count: int | None = None,
    ):
        if vertex_count < 1:
            raise InvalidParameterError("vertex_count must be >= 1")
        v = vertex_count
        adj = bytearray(v * v)
        count = 0
        for tail, head in arcs:
            if tail == head:
                raise InvalidParameterError(f"self-loop at vertex {tail}")
            if not (0 <= tail < v and 0 <= head < v):
                raise InvalidParameterError(f"arc ({tail},{head}) out of range")
            idx = tail * v + head
            if not adj[idx]:
                adj[idx] = 1
                count += 1
        object.__setattr__(self, "vertex_count", v)
        object.__setattr__(self, "_adj", bytes(adj))
        object.__setattr__(self, "_arc_count", count)
        object.__setattr__(self, "block_size", block_size)
        object.__setattr__(self, "block_count", block_count)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Digraph is immutable")

    def __reduce__(self):
        return (
            Digraph,
            (self.vertex_count, tuple(self.arcs()), self.block_size, self.block_count),
        )

    @property
    def arc_count(self) -> int:
        return self._arc_count

    def has_arc(self, tail: int, head: int) -> bool:
        v = self.vertex_count
        if not (0 <= tail < v and 0 <= head < v):
            return False
        return bool(self._adj[tail * v + head])

    def arcs(self) -> Iterator[tuple[int, int]]:
        v = self.vertex_count
        adj = self._adj
        for t in range(v):
            base = t * v
            for h in range(v):
                if adj[base + h]:
                    yield (t, h)

    def out_neighbors(self, tail: int) -> tuple[int, ...]:
        v = self.vertex_count
        base = tail * v
        adj = self._adj
        return tuple(h for h in range(v) if adj[base + h])

    def out_masks(self) -> list[int]:
        """Per-vertex out-neighborhoods as bitmasks (for the search core)."""
        v = self.vertex_count
        adj = self._adj
        masks = []
        for t in range(v):
            base = t * v
            m = 0
            for h in range(v):
                if adj[base + h]:
                    m |= 1 << h
            masks.append(m)
        return masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._adj))

    def __repr__(self) -> str:
        return f"Digraph(v={self.vertex_count}, arcs={self._arc_count})"


def complete_symmetric(v: int) -> Digraph:
    """The complete symmetric digraph on ``v`` vertices: all ordered pairs."""
    if v < 2:
        raise InvalidParameterError("complete symmetric digraph needs v >= 2")
    return Digraph(v, ((t, h) for t in range(v) for h in range(v) if t != h))


def equipartite_symmetric(part_size: int, parts: int) -> Digraph:
    """Complete symmetric equipartite digraph with consecutive-range blocks.

    Block ``b`` is the index range ``[b*part_size, (b+1)*part_size)``; every
    ordered pair of vertices from different blocks is an arc.
    """
    if part_size < 1:
        raise InvalidParameterError("part_size must be >= 1")
    if parts < 2:
        raise InvalidParameterError("equipartite digraph needs >= 2 parts")
    v = part_size * parts

    def gen():
        for t in range(v):
            bt = t // part_size
            for h in range(v):
                if h // part_size != bt:
                    yield (t, h)

    return Digraph(v, gen(), block_size=part_size, block_count=parts)


def wreath_with_empty(base: Digraph, n: int) -> Digraph:
    """Blow-up of ``base`` by ``n`` independent copies per vertex.

    Vertex ``(b, o)`` of the product is labelled ``b*n + o``; an arc joins
    ``(b, o)`` to ``(b', o')`` exactly when ``(b, b')`` is an arc of ``base``.
    """
    if n < 1:
        raise InvalidParameterError("blow-up order must be >= 1")
    v = base.vertex_count * n

    def gen():
        for bt, bh in base.arcs():
            for o in range(n):
                for p in range(n):
                    yield (bt * n + o, bh * n + p)

    return Digraph(v, gen(), block_size=n, block_count=base.vertex_count)


def cayley_product(b: int, a: int, connection: Iterable[tuple[int, int]]) -> Digraph:
    """Directed Cayley graph over Z_b x Z_a with the given connection set.

    Group elements ``(level, position)`` are flattened as ``level*a + position``
    (level plays the block role).  There is an arc from ``g`` to ``g + s`` for
    every ``s`` in the connection set, addition componentwise mod ``(b, a)``.
    """
    if b < 1 or a < 1:
        raise InvalidParameterError("group orders must be >= 1")
    conn = list(connection)
    for (sl, sp) in conn:
        if (sl % b, sp % a) == (0, 0):
            raise InvalidParameterError("identity in connection set creates self-loops")

    def gen():
        for lvl in range(b):
            for pos in range(a):
                g = lvl * a + pos
                for (sl, sp) in conn:
                    yield (g, ((lvl + sl) % b) * a + (pos + sp) % a)

    return Digraph(b * a, gen(), block_size=a, block_count=b)
