"""Exact backtracking search for small cycle-factorization instances.

Factors are built one at a time; inside a factor, cycles are grown from the
least uncovered vertex, with arc candidates tried in increasing head order.
Symmetry breaking fixes the least vertex as each cycle's anchor and orders
consecutive factors of equal cycle type by their first arc out of vertex 0.
All pruning rules are necessary conditions, so a ``none`` outcome is exact:
the search space was exhausted.

State lives in per-vertex bitmasks (Python ints), which keeps the inner loop
allocation-light.  Budgets are a node limit and a wall-clock limit; running
out of budget is reported as ``exhausted-budget``, never as ``none``.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from typing import Mapping

from .digraph import Digraph
from .errors import InvalidParameterError
from .model import (
    Factorization,
    TwoFactor,
    UndirectedGraph,
    UndirectedTwoFactorization,
    verify_factorization,
    verify_undirected,
)

__all__ = [
    "SearchInstance",
    "SearchOutcome",
    "exact_search",
    "search_with_restarts",
    "generation_search",
]

DEFAULT_NODE_LIMIT = 10**8
DEFAULT_TIME_LIMIT = 60.0


@dataclass
class SearchInstance:
    """One search problem: a host plus a cycle-length -> factor-count profile."""

    host: Digraph | UndirectedGraph
    profile: Mapping[int, int]
    mode: str = "find-one"  # or "prove-none"
    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit: float = DEFAULT_TIME_LIMIT
    order_seed: int | None = None  # None = deterministic increasing-head ordering
    # shortest cycle type first: the most constrained factors are placed
    # while the host is densest, which measures far better on mixed profiles
    longest_first: bool = False
    # "least-index" anchors each cycle at the smallest uncovered vertex and
    # enables the equal-type factor-order break; "fail-first" anchors at the
    # most constrained uncovered vertex (ties to the smallest index), which
    # is much stronger on resolvable-design style instances.  The factor-order
    # break is disabled there: with varying anchors it is not a symmetry.
    anchor_rule: str = "least-index"
    # "index" tries arc candidates by increasing head; "mrv" prefers heads
    # with the scarcest remaining availability (with order_seed, ties are
    # shuffled).  Both explore the full candidate set, so prove-none stays
    # exact either way.
    value_order: str = "index"
    # restrict the very first arc choice to this head (used by the parallel
    # splitter; the subtrees of distinct first arcs partition the space)
    forced_first_head: int | None = None

    def factor_types(self) -> list[int]:
        items = sorted(
            self.profile.items(), key=lambda kv: (-kv[0] if self.longest_first else kv[0])
        )
        types: list[int] = []
        for length, count in items:
            if count < 0:
                raise InvalidParameterError("negative factor count")
            types.extend([length] * count)
        return types


@dataclass
class SearchOutcome:
    status: str  # found | none | exhausted-budget
    witness: Factorization | UndirectedTwoFactorization | None = None
    nodes: int = 0
    max_depth: int = 0
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)


def _validate(inst: SearchInstance) -> tuple[int, list[int], bool]:
    host = inst.host
    directed = isinstance(host, Digraph)
    v = host.vertex_count
    types = inst.factor_types()
    for length in types:
        if length < (2 if directed else 3):
            raise InvalidParameterError(f"unsupported cycle length {length}")
        if v % length != 0:
            raise InvalidParameterError(f"cycle length {length} does not divide v={v}")
    total = host.arc_count if directed else host.edge_count
    if len(types) * v != total:
        raise InvalidParameterError(
            f"profile covers {len(types) * v} arcs/edges, host has {total}"
        )
    if inst.mode not in ("find-one", "prove-none"):
        raise InvalidParameterError(f"unknown mode {inst.mode!r}")
    if inst.anchor_rule not in ("least-index", "fail-first"):
        raise InvalidParameterError(f"unknown anchor rule {inst.anchor_rule!r}")
    if inst.value_order not in ("index", "mrv"):
        raise InvalidParameterError(f"unknown value order {inst.value_order!r}")
    return v, types, directed


def exact_search(inst: SearchInstance, parallel: int = 1) -> SearchOutcome:
    """Run the backtracking search to completion or budget exhaustion.

    With ``parallel > 1`` the subtrees below the distinct first-arc choices
    are explored by a process pool.  find-one then returns some valid
    witness rather than the deterministic first one; prove-none remains
    exact because the first-arc subtrees partition the search space.
    """
    v, types, directed = _validate(inst)
    if parallel > 1 and inst.forced_first_head is None:
        return _parallel_search(inst, parallel, directed)
    # recursion nests once per placed arc plus once per cycle and factor
    needed = 4 * v * max(1, len(types)) + 200
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    start = time.monotonic()
    runner: _DirectedSearch | _UndirectedSearch
    if directed:
        runner = _DirectedSearch(inst.host, types, inst)
    else:
        runner = _UndirectedSearch(inst.host, types, inst)
    found = runner.run()
    elapsed = time.monotonic() - start
    if found:
        witness = runner.build_witness()
        status = "found"
    elif runner.budget_hit:
        witness, status = None, "exhausted-budget"
    else:
        witness, status = None, "none"
    return SearchOutcome(
        status=status,
        witness=witness,
        nodes=runner.nodes,
        max_depth=runner.max_depth,
        elapsed=elapsed,
        stats={"types": types},
    )


def _first_branch_heads(inst: SearchInstance, directed: bool) -> list[int]:
    if directed:
        masks = inst.host.out_masks()
    else:
        masks = [0] * inst.host.vertex_count
        for (a, b) in inst.host.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
    v = inst.host.vertex_count
    full = (1 << v) - 1
    if inst.anchor_rule == "fail-first":
        anchor = min(range(v), key=lambda z: bin(masks[z] & full).count("1"))
    else:
        anchor = 0
    heads = []
    m = masks[anchor] & ~(1 << anchor)
    while m:
        b = m & -m
        heads.append(b.bit_length() - 1)
        m ^= b
    return heads


def _run_shard(inst: SearchInstance) -> SearchOutcome:
    return exact_search(inst)


def _parallel_search(inst: SearchInstance, parallel: int, directed: bool) -> SearchOutcome:
    import multiprocessing as mp
    from dataclasses import replace

    heads = _first_branch_heads(inst, directed)
    if not heads:
        return exact_search(inst, 1)
    start = time.monotonic()
    shards = [
        replace(inst, forced_first_head=h, node_limit=max(1, inst.node_limit // len(heads)))
        for h in heads
    ]
    nodes = 0
    max_depth = 0
    budget_hit = False
    witness = None
    pool = mp.Pool(processes=min(parallel, len(shards)))
    try:
        for out in pool.imap_unordered(_run_shard, shards):
            nodes += out.nodes
            max_depth = max(max_depth, out.max_depth)
            if out.status == "found":
                witness = out.witness
                pool.terminate()  # find-one: stragglers explore nothing we need
                break
            if out.status == "exhausted-budget":
                budget_hit = True
    finally:
        pool.terminate()
        pool.join()
    elapsed = time.monotonic() - start
    if witness is not None:
        status = "found"
    elif budget_hit:
        status = "exhausted-budget"
    else:
        status = "none"
    return SearchOutcome(
        status=status,
        witness=witness,
        nodes=nodes,
        max_depth=max_depth,
        elapsed=elapsed,
        stats={"shards": len(shards)},
    )


def search_with_restarts(
    inst: SearchInstance,
    tries: int = 10,
    base_nodes: int = 300_000,
    growth: float = 2.0,
) -> SearchOutcome:
    """Seeded-restart wrapper for stubborn find-one instances.

    Attempt 0 uses the deterministic ordering; later attempts shuffle arc
    candidates with seeds 1, 2, ... under a growing node cap.  The schedule
    is fixed, so results are reproducible.  Only sound for find-one.
    """
    if inst.mode != "find-one":
        raise InvalidParameterError("restarts are only sound for find-one")
    total_nodes = 0
    start = time.monotonic()
    cap = base_nodes
    for attempt in range(tries):
        remaining = inst.time_limit - (time.monotonic() - start)
        if remaining <= 0 or total_nodes >= inst.node_limit:
            break
        sub = SearchInstance(
            host=inst.host,
            profile=inst.profile,
            mode="find-one",
            node_limit=min(cap, inst.node_limit - total_nodes),
            time_limit=remaining,
            order_seed=None if attempt == 0 else attempt,
            longest_first=inst.longest_first,
            anchor_rule=inst.anchor_rule,
            value_order=inst.value_order,
        )
        out = exact_search(sub)
        total_nodes += out.nodes
        if out.status in ("found", "none"):
            out.nodes = total_nodes
            out.elapsed = time.monotonic() - start
            out.stats["attempts"] = attempt + 1
            return out
        cap = int(cap * growth)
    return SearchOutcome(
        status="exhausted-budget",
        nodes=total_nodes,
        elapsed=time.monotonic() - start,
        stats={"attempts": tries},
    )


def generation_search(
    host,
    profile: Mapping[int, int],
    time_limit: float = 60.0,
) -> SearchOutcome:
    """Find-one search tuned for base-case generation.

    Fail-first anchoring, scarcest-head value ordering, shortest factor type
    first, and a two-phase restart schedule: a burst of small-cap seeded
    dives (which settles restart-friendly instances like the v=12 all-C_4
    case) followed by exponentially deeper dives (for instances that need
    one long run, like the v=12 all-C_6 case).  Fully reproducible; never
    used for nonexistence claims.
    """
    inst = SearchInstance(
        host,
        profile,
        time_limit=time_limit,
        anchor_rule="fail-first",
        value_order="mrv",
    )
    start = time.monotonic()
    total_nodes = 0
    schedule = [40_000] * 120 + [150_000 * 2**i for i in range(12)]
    for attempt, cap in enumerate(schedule):
        remaining = inst.time_limit - (time.monotonic() - start)
        if remaining <= 0:
            break
        sub = SearchInstance(
            host,
            profile,
            node_limit=cap,
            time_limit=remaining,
            order_seed=None if attempt == 0 else attempt,
            anchor_rule="fail-first",
            value_order="mrv",
        )
        out = exact_search(sub)
        total_nodes += out.nodes
        if out.status in ("found", "none"):
            out.nodes = total_nodes
            out.elapsed = time.monotonic() - start
            out.stats["attempts"] = attempt + 1
            return out
    return SearchOutcome(
        status="exhausted-budget",
        nodes=total_nodes,
        elapsed=time.monotonic() - start,
        stats={"attempts": len(schedule)},
    )


class _SearchBase:
    nodes: int
    node_limit: int
    deadline: float
    budget_hit: bool
    rng: random.Random | None
    fail_first: bool
    mrv: bool
    scarcity: list[int]  # live reference: in_avail (directed) / adj (undirected)

    def _pick_anchor(self, uncov: int, degree_masks: list[int]) -> int:
        if not self.fail_first:
            return (uncov & -uncov).bit_length() - 1
        best = -1
        best_n = 1 << 30
        m = uncov
        while m:
            b = m & -m
            z = b.bit_length() - 1
            n = bin(degree_masks[z] & uncov).count("1")
            if n < best_n:
                best, best_n = z, n
            m ^= b
        return best

    def _tick(self) -> bool:
        self.nodes += 1
        if self.nodes >= self.node_limit:
            self.budget_hit = True
            return False
        if (self.nodes & 0xFFF) == 0 and time.monotonic() > self.deadline:
            self.budget_hit = True
            return False
        return True

    def _heads(self, mask: int, uncov: int) -> list[int]:
        out = []
        while mask:
            b = mask & -mask
            out.append(b.bit_length() - 1)
            mask ^= b
        if self.mrv:
            scarcity = self.scarcity
            if self.rng is not None:
                self.rng.shuffle(out)
            out.sort(key=lambda h: bin(scarcity[h] & uncov).count("1"))
        elif self.rng is not None:
            self.rng.shuffle(out)
        return out


class _DirectedSearch(_SearchBase):
    """Backtracking over directed 2-factors with bitmask in/out state."""

    def __init__(self, host: Digraph, types: list[int], inst: SearchInstance):
        v = host.vertex_count
        self.host = host
        self.v = v
        self.types = types
        self.k = len(types)
        self.out_avail = host.out_masks()
        self.in_avail = [0] * v
        for t in range(v):
            m = self.out_avail[t]
            while m:
                b = m & -m
                self.in_avail[b.bit_length() - 1] |= 1 << t
                m ^= b
        self.full = (1 << v) - 1
        self.node_limit = inst.node_limit
        self.deadline = time.monotonic() + inst.time_limit
        self.rng = None if inst.order_seed is None else random.Random(inst.order_seed)
        self.fail_first = inst.anchor_rule == "fail-first"
        self.mrv = inst.value_order == "mrv"
        self.forced_head = inst.forced_first_head
        self.scarcity = self.in_avail
        self.nodes = 0
        self.max_depth = 0
        self.budget_hit = False
        self.first_heads = [0] * self.k
        self.cycles: list[list[tuple[int, ...]]] = [[] for _ in range(self.k)]
        self.path: list[int] = []

    def _feasible(self, uncov: int, anchor: int, end: int) -> bool:
        """Every uncovered vertex must keep an available out- and in-slot."""
        out_avail = self.out_avail
        in_avail = self.in_avail
        allowed_out = uncov | (1 << anchor)
        allowed_in = uncov | (1 << end)
        m = uncov
        while m:
            b = m & -m
            z = b.bit_length() - 1
            if not (out_avail[z] & allowed_out & ~b):
                return False
            if not (in_avail[z] & allowed_in & ~b):
                return False
            m ^= b
        return True

    def run(self) -> bool:
        return self._factor(0)

    def _factor(self, fi: int) -> bool:
        if fi == self.k:
            return True
        return self._cycle(fi, self.full, first_cycle=True)

    def _cycle(self, fi: int, uncov: int, first_cycle: bool = False) -> bool:
        if uncov == 0:
            return self._factor(fi + 1)
        anchor = self._pick_anchor(uncov, self.out_avail)
        self.path.append(anchor)
        ok = self._extend(fi, uncov ^ (1 << anchor), anchor, anchor, 1, first_cycle)
        self.path.pop()
        return ok

    def _extend(
        self, fi: int, uncov: int, anchor: int, u: int, length: int, first_arc: bool
    ) -> bool:
        L = self.types[fi]
        out_avail = self.out_avail
        in_avail = self.in_avail

        if length == L:
            if not self._tick():
                return False
            ab = 1 << anchor
            if not (out_avail[u] & ab):
                return False
            out_avail[u] &= ~ab
            in_avail[anchor] &= ~(1 << u)
            ok = False
            if not uncov or self._feasible(uncov, anchor, anchor):
                self.cycles[fi].append(tuple(self.path[-L:]))
                ok = self._cycle(fi, uncov)
                if not ok:
                    self.cycles[fi].pop()
            if not ok:
                out_avail[u] |= ab
                in_avail[anchor] |= 1 << u
            return ok

        cands = out_avail[u] & uncov
        if self.forced_head is not None and fi == 0 and first_arc and length == 1:
            cands &= 1 << self.forced_head
        if not cands:
            self._tick()
            return False
        floor = 0
        if (
            not self.fail_first
            and first_arc
            and length == 1
            and fi > 0
            and self.types[fi - 1] == L
        ):
            floor = self.first_heads[fi - 1]
        for h in self._heads(cands, uncov):
            if h < floor:
                continue
            if not self._tick():
                return False
            hb = 1 << h
            ub = 1 << u
            out_avail[u] &= ~hb
            in_avail[h] &= ~ub
            if first_arc and length == 1:
                self.first_heads[fi] = h
            nuncov = uncov ^ hb
            if length + 1 > self.max_depth:
                self.max_depth = length + 1
            if self._feasible(nuncov, anchor, h):
                self.path.append(h)
                if self._extend(fi, nuncov, anchor, h, length + 1, False):
                    return True
                self.path.pop()
            out_avail[u] |= hb
            in_avail[h] |= ub
            if self.budget_hit:
                return False
        return False

    def build_witness(self) -> Factorization:
        factors = tuple(TwoFactor.of(cycs) for cycs in self.cycles)
        witness = Factorization(self.host, factors)
        verdict = verify_factorization(self.host, witness)
        assert verdict.valid, f"search produced invalid witness: {verdict.first_failure}"
        return witness


class _UndirectedSearch(_SearchBase):
    """Backtracking over undirected 2-factors (cycles of length >= 3)."""

    def __init__(self, host: UndirectedGraph, types: list[int], inst: SearchInstance):
        v = host.vertex_count
        self.host = host
        self.v = v
        self.types = types
        self.k = len(types)
        self.adj = [0] * v
        for (a, b) in host.edges:
            self.adj[a] |= 1 << b
            self.adj[b] |= 1 << a
        self.full = (1 << v) - 1
        self.node_limit = inst.node_limit
        self.deadline = time.monotonic() + inst.time_limit
        self.rng = None if inst.order_seed is None else random.Random(inst.order_seed)
        self.fail_first = inst.anchor_rule == "fail-first"
        self.mrv = inst.value_order == "mrv"
        self.forced_head = inst.forced_first_head
        self.scarcity = self.adj
        self.nodes = 0
        self.max_depth = 0
        self.budget_hit = False
        self.first_heads = [0] * self.k
        self.cycles: list[list[tuple[int, ...]]] = [[] for _ in range(self.k)]
        self.path: list[int] = []

    def _use(self, a: int, b: int):
        self.adj[a] &= ~(1 << b)
        self.adj[b] &= ~(1 << a)

    def _free(self, a: int, b: int):
        self.adj[a] |= 1 << b
        self.adj[b] |= 1 << a

    def _feasible(self, uncov: int, anchor: int, end: int) -> bool:
        """Every uncovered vertex must keep two available edge slots."""
        adj = self.adj
        allowed = uncov | (1 << anchor) | (1 << end)
        m = uncov
        while m:
            b = m & -m
            z = b.bit_length() - 1
            cand = adj[z] & allowed & ~b
            if not (cand & (cand - 1)):
                return False
            m ^= b
        return True

    def run(self) -> bool:
        return self._factor(0)

    def _factor(self, fi: int) -> bool:
        if fi == self.k:
            return True
        return self._cycle(fi, self.full, first_cycle=True)

    def _cycle(self, fi: int, uncov: int, first_cycle: bool = False) -> bool:
        if uncov == 0:
            return self._factor(fi + 1)
        anchor = self._pick_anchor(uncov, self.adj)
        self.path.append(anchor)
        ok = self._extend(fi, uncov ^ (1 << anchor), anchor, anchor, 1, first_cycle)
        self.path.pop()
        return ok

    def _extend(
        self, fi: int, uncov: int, anchor: int, u: int, length: int, first_arc: bool
    ) -> bool:
        L = self.types[fi]
        adj = self.adj

        if length == L:
            if not self._tick():
                return False
            if not (adj[u] & (1 << anchor)):
                return False
            if self.path[-L + 1] > self.path[-1]:  # reflection symmetry break
                return False
            self._use(u, anchor)
            ok = False
            if not uncov or self._feasible(uncov, anchor, anchor):
                self.cycles[fi].append(tuple(self.path[-L:]))
                ok = self._cycle(fi, uncov)
                if not ok:
                    self.cycles[fi].pop()
            if not ok:
                self._free(u, anchor)
            return ok

        cands = adj[u] & uncov
        if self.forced_head is not None and fi == 0 and first_arc and length == 1:
            cands &= 1 << self.forced_head
        if not cands:
            self._tick()
            return False
        floor = 0
        if (
            not self.fail_first
            and first_arc
            and length == 1
            and fi > 0
            and self.types[fi - 1] == L
        ):
            floor = self.first_heads[fi - 1]
        for h in self._heads(cands, uncov):
            if h < floor:
                continue
            if not self._tick():
                return False
            self._use(u, h)
            if first_arc and length == 1:
                self.first_heads[fi] = h
            nuncov = uncov ^ (1 << h)
            if length + 1 > self.max_depth:
                self.max_depth = length + 1
            if self._feasible(nuncov, anchor, h):
                self.path.append(h)
                if self._extend(fi, nuncov, anchor, h, length + 1, False):
                    return True
                self.path.pop()
            self._free(u, h)
            if self.budget_hit:
                return False
        return False

    def build_witness(self) -> UndirectedTwoFactorization:
        witness = UndirectedTwoFactorization.of(self.host, self.cycles)
        verdict = verify_undirected(witness)
        assert verdict.valid, f"search produced invalid witness: {verdict.first_failure}"
        return witness
