"""Minimum Hamming distance of (nega)cyclic codes of length p^s over GR(p^a, m).

The distance of a nonzero proper ideal is read off its Groebner form: the
last monic generator f_r has a canonical form whose leading (x+1)-exponent
i_0 indexes a distance table of the chain ring GR(p, m)[x]/(x^(p^s) -+ 1).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .ambient import AmbientElement, Kind, canonical_form, negacyclic_cyclic_map
from .ideals import Ideal, groebner_form


def _check_range(n: int, i: int):
    if not 0 <= i <= n:
        raise ValueError(f"i = {i} is outside [0, {n}]")


@functools.lru_cache(maxsize=None)
def _negacyclic_bands(p: int, s: int) -> tuple[tuple[int, int, int, dict], ...]:
    """(lo, hi, value, case) intervals covering [1, p^s - 1]."""
    n, top = p**s, p ** (s - 1)
    bands = []
    for beta in range(p - 1):
        bands.append((beta * top + 1, (beta + 1) * top, beta + 2, {"band": "beta", "beta": beta}))
    for k in range(1, s):
        base, step = n - p ** (s - k), p ** (s - k - 1)
        for t in range(1, p):
            bands.append((base + (t - 1) * step + 1, base + t * step, (t + 1) * p**k, {"band": "k,t", "k": k, "t": t}))
    _assert_tiling(bands, n)
    return tuple(bands)


@functools.lru_cache(maxsize=None)
def _cyclic_p2_bands(s: int) -> tuple[tuple[int, int, int, dict], ...]:
    n = 2**s
    bands = [(1, 2 ** (s - 1), 2, {"band": "first"})]
    for k in range(1, s):
        base = n - 2 ** (s - k)
        bands.append((base + 1, base + 2 ** (s - k - 1), 2 ** (k + 1), {"band": "k", "k": k}))
    _assert_tiling(bands, n)
    return tuple(bands)


def _assert_tiling(bands, n):
    nxt = 1
    for lo, hi, _, case in sorted(bands, key=lambda b: b[0]):
        if lo != nxt or hi < lo:
            raise AssertionError(f"distance table bands do not tile [1, {n - 1}] at {case}")
        nxt = hi + 1
    if nxt != n:
        raise AssertionError(f"distance table bands stop at {nxt - 1}, short of {n - 1}")


def _lookup(bands, n, i):
    if i == 0:
        return 1, {"band": "i=0"}
    if i == n:
        return 0, {"band": "i=n"}
    for lo, hi, value, case in bands:
        if lo <= i <= hi:
            return value, dict(case)
    raise AssertionError("unreachable: bands tile the range")  # pragma: no cover


def negacyclic_table_case(p: int, s: int, i: int) -> tuple[int, dict]:
    _check_range(p**s, i)
    return _lookup(_negacyclic_bands(p, s), p**s, i)


def cyclic_p2_table_case(s: int, i: int) -> tuple[int, dict]:
    _check_range(2**s, i)
    return _lookup(_cyclic_p2_bands(s), 2**s, i)


def chain_distance_negacyclic(p: int, s: int, i: int) -> int:
    """Minimum distance of <(x+1)^i> in GR(p, m)[x]/(x^(p^s) + 1)."""
    return negacyclic_table_case(p, s, i)[0]


def chain_distance_cyclic_p2(s: int, i: int) -> int:
    """Minimum distance of <(x+1)^i> in GR(2, m)[x]/(x^(2^s) - 1)."""
    return cyclic_p2_table_case(s, i)[0]


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    r: int | None = None
    j_r: int | None = None
    f_r: AmbientElement | None = None
    i_0: int | None = None
    table_case: dict = field(default_factory=dict)
    conjugated: bool = False

    def as_dict(self) -> dict:
        return {
            "distance": self.distance,
            "r": self.r,
            "j_r": self.j_r,
            "f_r": None if self.f_r is None else str(self.f_r),
            "i_0": self.i_0,
            "table_case": self.table_case,
            "conjugated": self.conjugated,
        }


def code_distance(I: Ideal) -> DistanceResult:
    """Exact minimum Hamming distance of the code I."""
    amb = I.ambient
    if I.is_zero():
        return DistanceResult(0, table_case={"table": None, "band": "zero ideal"})
    if I.is_unit():
        return DistanceResult(1, i_0=0, table_case={"table": None, "band": "unit ideal"})
    if amb.kind is Kind.CYCLIC and amb.p != 2:
        # x -> -x is a weight-preserving isomorphism onto the negacyclic ambient
        image = Ideal(amb.partner(), [negacyclic_cyclic_map(g) for g in I.generators])
        res = code_distance(image)
        return DistanceResult(res.distance, res.r, res.j_r, res.f_r, res.i_0, res.table_case, True)

    G = groebner_form(I)
    j_r, f_r = G.last
    lead = canonical_form(f_r).leading()
    assert lead.level == 0, "monic f_r must have a level-0 canonical term"
    i0 = lead.exponent
    if amb.kind is Kind.NEGACYCLIC:
        value, case = negacyclic_table_case(amb.p, amb.s, i0)
        case["table"] = "negacyclic"
    else:
        value, case = cyclic_p2_table_case(amb.s, i0)
        case["table"] = "cyclic_p2"
    case["i"] = i0
    return DistanceResult(value, G.r, j_r, f_r, i0, case)
