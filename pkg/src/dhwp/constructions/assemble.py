"""The two recursive blow-up assemblies and the order-16 composite.

Both assemblies split the complete symmetric host on h*x vertices into x
complete blocks of size h plus a blown-up complete x-host between blocks
(block t is the index range [t*h, (t+1)*h)).  Each block receives the same
explicit base solution; the between-block part is cut into equipartite
pieces that are factorized uniformly, one cycle length per piece, so the
piece assignment steers the final factor counts:

* even cycle lengths: the between part splits along a one-factorization of
  the doubled blocks into 2x-2 spanning sets of x disjoint two-part hosts,
  each worth h/2 spanning factors;
* odd cycle lengths (x odd, 3 | h): it splits along a triangle resolution
  of the tripled blocks into (3x-3)/2 spanning sets of x disjoint
  three-part hosts, each worth 2h/3 spanning factors.

Writing r = r' + step*a with step = h/2 (even) or 2h/3 (odd) picks how many
pieces take the first cycle length (a) and which base entry to use (r').
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from ..atlas import Atlas, AtlasKey, get_default_atlas
from ..digraph import complete_symmetric
from ..errors import (
    InfeasibleParametersError,
    InvalidParameterError,
    UnknownOpenError,
    UnsupportedByAtlasError,
)
from ..model import (
    Factorization,
    ProblemSpec,
    map_vertices,
    merge_parallel,
    verify_factorization,
)
from .equipartite import equipartite_cycle_factorization
from .feasibility import check_necessary
from .gadgets import blowup_cycle_factorization, gamma_factorization
from .undirected import (
    kirkman_resolution,
    kotzig_one_factorization,
    relabel_with_class_first,
)

__all__ = [
    "AssemblyPlan",
    "plan_even",
    "plan_odd",
    "base_supply",
    "base_coverage_ok",
    "composite_16_8_16",
    "even_hwp",
    "odd_hwp",
]


@dataclass(frozen=True)
class AssemblyPlan:
    """How an assembly splits r between the base entry and the pieces.

    The first ``pieces_m`` of ``piece_count`` between-block pieces take the
    smaller cycle length m (each piece contributes ``step`` spanning
    factors); the block-diagonal base supplies ``base_r`` m-cycle factors.
    """

    base_r: int
    pieces_m: int
    piece_count: int
    step: int

    def length_for_piece(self, j: int, m: int, n: int) -> int:
        return m if j < self.pieces_m else n


def plan_even(h: int, x: int, r: int) -> AssemblyPlan:
    """r = base_r + (h/2) * pieces_m with 0 <= base_r <= h-1, always solvable."""
    step = h // 2
    pieces = 2 * x - 2
    a = min(pieces, r // step)
    plan = AssemblyPlan(r - step * a, a, pieces, step)
    assert 0 <= plan.base_r <= h - 1
    return plan


def plan_odd(h: int, x: int, r: int, open_base_counts: set[int]) -> AssemblyPlan:
    """r = base_r + (2h/3) * pieces_m, dodging recorded-open base counts.

    When the residual lands on an open base entry, one more piece is shifted
    to length m if the budget allows; otherwise the instance is unsupported
    (every decomposition runs through an open base).
    """
    step = 2 * h // 3
    pieces = (3 * x - 3) // 2
    a = min(pieces, r // step)
    rp = r - step * a
    assert 0 <= rp <= h - 1
    if rp in open_base_counts:
        if a + 1 <= pieces and rp - step >= 0:
            a, rp = a + 1, rp - step
        else:
            raise UnsupportedByAtlasError(
                f"every decomposition r = r' + {step}a forces the open base r' = {rp}"
            )
    return AssemblyPlan(rp, a, pieces, step)


def _verified(host, factors, spec: ProblemSpec) -> Factorization:
    fac = Factorization(host, tuple(factors))
    verdict = verify_factorization(host, fac, spec)
    assert verdict.valid, f"assembly produced invalid factorization: {verdict.first_failure}"
    return fac


def base_supply(
    m: int, n: int, rp: int, atlas: Atlas | None = None, time_limit: float = 120.0
) -> Factorization:
    """An explicit solution on h = lcm(m, n) vertices with rp m-cycle factors.

    Resolution order: registered-open check, catalogue lookup, generation
    for pure profiles and doubled even profiles, the order-16 composite for
    odd counts of the (8,16) pair.  Raises UnknownOpenError for recorded
    open keys and UnsupportedByAtlasError when nothing can supply the entry.
    """
    atlas = atlas or get_default_atlas()
    h = lcm(m, n)
    sp = h - 1 - rp
    if rp < 0 or sp < 0:
        raise InfeasibleParametersError(f"base profile ({rp},{sp}) out of range at h={h}")
    key = AtlasKey.of(h, m, n, rp, sp)
    entry = atlas.lookup(key)
    if entry is not None:
        if entry.status == "unknown-open":
            raise UnknownOpenError(f"{key} is recorded as unsettled")
        return entry.factorization
    if rp == 0 or sp == 0:
        return atlas.ensure_generated(key, time_limit=time_limit).factorization
    if key.v % 2 == 1 and rp % 2 == 0 and sp % 2 == 0:
        return atlas.ensure_generated(key, time_limit=time_limit).factorization
    if (key.m, key.n) == (8, 16) and rp % 2 == 1:
        return composite_16_8_16(rp, atlas=atlas, time_limit=time_limit)
    raise UnsupportedByAtlasError(f"no base supply for {key}")


def base_coverage_ok(m: int, n: int, atlas: Atlas | None = None) -> bool:
    """Whether every base profile at h = lcm(m, n) is resolvable in principle.

    Coverage is read off the catalogue data, so shipping new explicit base
    files extends the solver to new cycle-length pairs without code changes.
    Registered-open keys do not disqualify a pair; they only carve out the
    documented unsupported counts.
    """
    atlas = atlas or get_default_atlas()
    h = lcm(m, n)
    for rp in range(h):
        sp = h - 1 - rp
        key = AtlasKey.of(h, m, n, rp, sp)
        entry = atlas.lookup(key)
        if entry is not None:
            continue  # verified or recorded open
        if rp == 0 or sp == 0:
            continue  # pure profiles are generatable
        if h % 2 == 1 and rp % 2 == 0 and sp % 2 == 0:
            continue  # doubled undirected solution
        if (key.m, key.n) == (8, 16) and rp % 2 == 1:
            continue  # order-16 composite
        return False
    return True


def composite_16_8_16(
    r: int, s: int | None = None, atlas: Atlas | None = None, time_limit: float = 120.0
) -> Factorization:
    """Order-16 entries with an odd number of 8-cycle factors.

    Blow up an all-Hamilton factorization of the order-8 host by two: six of
    the blown factors split into two 8-cycle or two 16-cycle factors each,
    and the seventh absorbs the within-pair digons, forming the gamma host,
    which contributes one 8-cycle and two 16-cycle factors.  This yields
    2*r0 + 1 eight-cycle factors for every r0 in 0..6.
    """
    if r % 2 == 0 or not (1 <= r <= 13):
        raise InvalidParameterError("composite handles odd r in 1..13 (even r is catalogued)")
    if s is not None and r + s != 15:
        raise InfeasibleParametersError("need r + s = 15 at v = 16")
    atlas = atlas or get_default_atlas()
    base8 = atlas.ensure_generated(AtlasKey(8, 4, 8, 0, 7), time_limit=time_limit).factorization
    host = complete_symmetric(16)
    r0 = (r - 1) // 2

    def coord_map(cycle_vertices):
        # gadget vertex level*8 + position -> blown flat label 2*base_vertex + level
        return {
            level * 8 + pos: 2 * base_v + level
            for level in (0, 1)
            for pos, base_v in enumerate(cycle_vertices)
        }

    factors = []
    hams = [f.cycles[0].vertices for f in base8.factors]
    gamma = gamma_factorization(8)
    factors.extend(map_vertices(gamma, coord_map(hams[0]), host).factors)
    for j, cyc in enumerate(hams[1:]):
        target = 8 if j < r0 else 16
        piece = blowup_cycle_factorization(8, target)
        factors.extend(map_vertices(piece, coord_map(cyc), host).factors)
    return _verified(host, factors, ProblemSpec(16, 8, 16, r, 15 - r))


def _diagonal_factors(base: Factorization, host, x: int, h: int) -> list:
    parts = [map_vertices(base, lambda u, t=t: u + t * h, host) for t in range(x)]
    return list(merge_parallel(parts, host).factors)


def even_hwp(
    m: int,
    n: int,
    x: int,
    r: int,
    s: int,
    atlas: Atlas | None = None,
    time_limit: float = 120.0,
) -> Factorization:
    """Solution on lcm(m,n)*x vertices for even cycle lengths m < n.

    Plan: a = min(2x-2, r // (h/2)) between-block pieces take length m and
    the block-diagonal base supplies the remaining r' = r - (h/2)a m-cycle
    factors; the proof arithmetic guarantees 0 <= r' <= h-1.
    """
    if m % 2 or n % 2 or m < 4 or n < 4 or m >= n:
        raise InvalidParameterError("even assembly needs even 4 <= m < n")
    if x < 1:
        raise InvalidParameterError("x must be >= 1")
    atlas = atlas or get_default_atlas()
    h = lcm(m, n)
    v = h * x
    spec = ProblemSpec(v, m, n, r, s)
    report = check_necessary(spec)
    if not report.met:
        raise InfeasibleParametersError("; ".join(report.violations()))
    if x == 1:
        return base_supply(m, n, r, atlas, time_limit)

    half = h // 2
    plan = plan_even(h, x, r)
    base = base_supply(m, n, plan.base_r, atlas, time_limit)

    host = complete_symmetric(v)
    factors = _diagonal_factors(base, host, x, h)

    pairing = kotzig_one_factorization(2 * x)
    for j, matching in enumerate(pairing.factors[1:]):
        length = plan.length_for_piece(j, m, n)
        piece = equipartite_cycle_factorization(half, 2, length, directed=True)
        parts = []
        for (p, q) in matching:
            mapping = {u: p * half + u for u in range(half)}
            mapping.update({half + u: q * half + u for u in range(half)})
            parts.append(map_vertices(piece, mapping, host))
        factors.extend(merge_parallel(parts, host).factors)
    return _verified(host, factors, spec)


def _odd_exceptions(m: int, n: int, atlas: Atlas) -> set[int]:
    h = lcm(m, n)
    out = set()
    for rp in range(h):
        key = AtlasKey.of(h, m, n, rp, h - 1 - rp)
        entry = atlas.lookup(key)
        if entry is not None and entry.status == "unknown-open":
            out.add(rp)
    return out


def odd_hwp(
    m: int,
    n: int,
    x: int,
    r: int,
    s: int,
    atlas: Atlas | None = None,
    time_limit: float = 120.0,
) -> Factorization:
    """Solution on lcm(m,n)*x vertices for odd cycle lengths, odd x.

    Plan: a = min((3x-3)/2, r // (2h/3)) pieces take length m; when the
    residual base count lands on a recorded-open entry the plan shifts one
    more piece to length m when possible, otherwise the instance is
    unsupported by the catalogue.
    """
    if m % 2 == 0 or n % 2 == 0 or m >= n or m < 3:
        raise InvalidParameterError("odd assembly needs odd 3 <= m < n")
    h = lcm(m, n)
    if h % 3:
        raise InvalidParameterError("odd assembly needs 3 | lcm(m, n)")
    if x < 1 or x % 2 == 0:
        raise InvalidParameterError("odd assembly needs odd x >= 1")
    atlas = atlas or get_default_atlas()
    v = h * x
    spec = ProblemSpec(v, m, n, r, s)
    report = check_necessary(spec)
    if not report.met:
        raise InfeasibleParametersError("; ".join(report.violations()))
    if x == 1:
        return base_supply(m, n, r, atlas, time_limit)

    plan = plan_odd(h, x, r, _odd_exceptions(m, n, atlas))
    base = base_supply(m, n, plan.base_r, atlas, time_limit)

    host = complete_symmetric(v)
    factors = _diagonal_factors(base, host, x, h)

    third = h // 3
    resolution = relabel_with_class_first(kirkman_resolution(3 * x))
    for j, triangle_class in enumerate(resolution.factors[1:]):
        length = plan.length_for_piece(j, m, n)
        piece = equipartite_cycle_factorization(third, 3, length, directed=True)
        parts = []
        for tri in triangle_class:
            blocks = sorted(tri)
            mapping = {
                part * third + off: blocks[part] * third + off
                for part in range(3)
                for off in range(third)
            }
            parts.append(map_vertices(piece, mapping, host))
        factors.extend(merge_parallel(parts, host).factors)
    return _verified(host, factors, spec)
