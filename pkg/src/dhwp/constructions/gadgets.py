"""Cayley-digraph gadget factorizations used by the blow-up assemblies.

All three gadgets live on the group Z_2 x Z_m with the flat labelling
level*m + position:

* the doubled cycle host (connection set {(0,1), (1,1)}) factorizes into
  two directed m-cycle factors, or two directed 2m-cycle factors;
* the same host plus all verticals (connection set {(0,1), (1,0), (1,1)})
  factorizes into one m-cycle factor and two 2m-cycle factors;
* blowing up a complete-host digon factorization gives the 2x-2 digon
  factors that the even assembly expands into equipartite pieces.
"""

from __future__ import annotations

from ..digraph import Digraph, cayley_product, complete_symmetric, wreath_with_empty
from ..errors import InvalidParameterError
from ..model import Factorization, TwoFactor, verify_factorization
from .undirected import kotzig_one_factorization

__all__ = [
    "doubled_cycle_host",
    "gamma_host",
    "blowup_cycle_factorization",
    "blowup_cycle_factorization_shifted",
    "gamma_factorization",
    "pair_blowup_k2_factors",
]


def doubled_cycle_host(m: int) -> Digraph:
    """The directed m-cycle blown up by two: Cayley(Z_2 x Z_m; {(0,1),(1,1)})."""
    return cayley_product(2, m, [(0, 1), (1, 1)])


def gamma_host(m: int) -> Digraph:
    """Doubled cycle plus verticals: Cayley(Z_2 x Z_m; {(0,1),(1,0),(1,1)})."""
    return cayley_product(2, m, [(0, 1), (1, 0), (1, 1)])


def _flat(level: int, pos: int, m: int) -> int:
    return (level % 2) * m + pos % m


def _checked(host: Digraph, factors: list[TwoFactor]) -> Factorization:
    f = Factorization(host, tuple(factors))
    verdict = verify_factorization(host, f)
    assert verdict.valid, f"gadget factorization invalid: {verdict.first_failure}"
    return f


def blowup_cycle_factorization(m: int, target: int) -> Factorization:
    """Factor the doubled m-cycle into two C_m or two C_2m factors (even m).

    target=m: one factor of the two level-parallel cycles, one factor of the
    two alternating cycles.  target=2m: one 2m-cycle that runs along level 0
    and then level 1 (crossing at the wrap boundary), paired with its arc
    complement, which is the other 2m-cycle of the host.
    """
    if m < 2 or m % 2:
        raise InvalidParameterError("doubled-cycle factorization needs even m >= 2")
    if target not in (m, 2 * m):
        raise InvalidParameterError(f"target must be {m} or {2 * m}")
    host = doubled_cycle_host(m)

    if target == m:
        level0 = tuple(_flat(0, i, m) for i in range(m))
        level1 = tuple(_flat(1, i, m) for i in range(m))
        alt0 = tuple(_flat(i % 2, i, m) for i in range(m))
        alt1 = tuple(_flat(i % 2 + 1, i, m) for i in range(m))
        return _checked(
            host, [TwoFactor.of([level0, level1]), TwoFactor.of([alt0, alt1])]
        )

    around = tuple(_flat(0, i, m) for i in range(m)) + tuple(_flat(1, i, m) for i in range(m))
    first = TwoFactor.of([around])
    used = first.arc_set()
    leftover = [a for a in host.arcs() if a not in used]
    succ = dict(leftover)
    seq = [0]
    while True:
        nxt = succ[seq[-1]]
        if nxt == 0:
            break
        seq.append(nxt)
    second = TwoFactor.of([tuple(seq)])
    return _checked(host, [first, second])


def blowup_cycle_factorization_shifted(m: int) -> Factorization:
    """The shifted-copy 2m-cycle pair: the around-cycle and its (1,0)-translate.

    Returned unverified.  The translate reuses the level-path arcs of the
    original at every position, so the verifier rejects this pair; it is
    kept as a regression pin for that fact (the valid pairing is the arc
    complement used by :func:`blowup_cycle_factorization`).
    """
    if m < 2 or m % 2:
        raise InvalidParameterError("doubled-cycle factorization needs even m >= 2")
    host = doubled_cycle_host(m)
    around = tuple(_flat(0, i, m) for i in range(m)) + tuple(_flat(1, i, m) for i in range(m))
    shifted = tuple(_flat(1 + v // m, v % m, m) for v in around)
    return Factorization(host, (TwoFactor.of([around]), TwoFactor.of([shifted])))


def gamma_factorization(m: int) -> Factorization:
    """Factor the gamma host into one C_m factor and two C_2m factors.

    The m-cycle factor is the pair of level-parallel cycles; the first
    2m-cycle alternates vertical and diagonal steps starting at (0,0); the
    second is its (1,0)-translate.
    """
    if m < 2:
        raise InvalidParameterError("gamma factorization needs m >= 2")
    host = gamma_host(m)
    level0 = tuple(_flat(0, i, m) for i in range(m))
    level1 = tuple(_flat(1, i, m) for i in range(m))
    zig = []
    for i in range(m):
        zig.append(_flat(0, i, m))
        zig.append(_flat(1, i, m))
    shifted = tuple(_flat(1 + v // m, v % m, m) for v in zig)
    return _checked(
        host,
        [
            TwoFactor.of([level0, level1]),
            TwoFactor.of([tuple(zig)]),
            TwoFactor.of([shifted]),
        ],
    )


def pair_blowup_k2_factors(x: int) -> list[TwoFactor]:
    """Digon factorization of the complete x-host blown up by two.

    Kotzig's one-factorization of K_{2x} is labelled so its first factor is
    the consecutive pairing {2t, 2t+1}; that factor is exactly the missing
    within-block matching, so lifting the remaining 2x-2 matchings to digon
    factors covers the blown host completely.
    """
    if x < 2:
        raise InvalidParameterError("blow-up digon factorization needs x >= 2")
    ofact = kotzig_one_factorization(2 * x)
    host = wreath_with_empty(complete_symmetric(x), 2)
    factors = [
        TwoFactor.of([(a, b) for (a, b) in matching])
        for matching in ofact.factors[1:]
    ]
    check = verify_factorization(host, Factorization(host, tuple(factors)))
    assert check.valid, f"digon blow-up factors invalid: {check.first_failure}"
    return factors
