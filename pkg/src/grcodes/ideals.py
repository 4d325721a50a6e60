"""Codes as ideals: exact membership, generator reduction and the Groebner generator form."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .ambient import (
    Ambient,
    AmbientElement,
    EnumerationLimitError,
    canonical_form,
    max_enumeration,
)
from .galois_ring import GaloisRing, RingError
from .span import SpanBasis


def _to_vector(f: AmbientElement) -> np.ndarray:
    # columns ordered by descending degree, then by Galois-ring coordinate
    return f.arr[::-1].reshape(-1)


def _from_vectors(ambient: Ambient, vecs: np.ndarray) -> np.ndarray:
    return vecs.reshape(-1, ambient.n, ambient.m)[:, ::-1, :]


class Ideal:
    """The ideal of an ambient ring generated by ``generators``.

    Equality, ``<=`` and ``in`` are exact and computed from the Howell form
    of the additive span of all x^t y^u g.
    """

    def __init__(self, ambient: Ambient, generators: Iterable[AmbientElement]):
        gens = tuple(generators)
        if not gens:
            gens = (ambient.zero,)
        for g in gens:
            if g.ambient != ambient:
                raise RingError(f"generator {g!r} is not in {ambient!r}")
        self.ambient = ambient
        self.generators = gens

    @classmethod
    def parse(cls, ambient: Ambient, texts: Sequence[str]) -> "Ideal":
        return cls(ambient, [ambient.parse(t) for t in texts])

    @functools.cached_property
    def span(self) -> SpanBasis:
        amb = self.ambient
        basis = amb.ring.power_basis()
        rows = []
        for g in self.generators:
            if not g:
                continue
            scaled = [g * b for b in basis] if amb.m > 1 else [g]
            for h in scaled:
                for t in range(amb.n):
                    rows.append(_to_vector(h.shift(t)))
        return SpanBasis(amb.p, amb.a, amb.length, rows)

    def contains(self, f: AmbientElement) -> bool:
        if f.ambient != self.ambient:
            raise RingError(f"{f!r} is not in {self.ambient!r}")
        return self.span.contains(_to_vector(f))

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ambient != self.ambient:
            raise RingError("ideals live in different ambients")
        return self.span == other.span

    def __hash__(self):
        return hash((self.ambient, self.span))

    def __le__(self, other: "Ideal") -> bool:
        return self.span.issubset(other.span)

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self != other

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ambient, self.generators + other.generators)

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    @property
    def cardinality(self) -> int:
        return self.span.cardinality

    def is_zero(self) -> bool:
        return not self.span.rows

    def is_unit(self) -> bool:
        return self.contains(self.ambient.one)

    def element_array(self, bound: int | None = None) -> np.ndarray:
        """All elements as an (N, n, m) array."""
        bound = max_enumeration() if bound is None else bound
        if self.cardinality > bound:
            raise EnumerationLimitError(f"ideal has {self.cardinality} elements, above the bound {bound}")
        return _from_vectors(self.ambient, self.span.elements())


def contains(I: Ideal, f: AmbientElement) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


def enumerate_elements(I: Ideal, bound: int | None = None) -> frozenset[AmbientElement]:
    amb = I.ambient
    return frozenset(amb._wrap(a) for a in I.element_array(bound))


# ---------------------------------------------------------------------------
# reduction to at most a generators


def reduce_generators(I: Ideal) -> Ideal:
    """Rewrite the generators of I as at most ``a`` triangular ones.

    Level by level (powers of p), the generator whose canonical form starts
    at that level with the least (x+1)-exponent becomes the pivot, and its
    multiples clear that level from every other generator.  Ties go to the
    earliest generator.
    """
    amb = I.ambient
    fs = [g for g in I.generators if g]
    if not fs:
        return Ideal(amb, [amb.zero])
    z = amb.radical_generator
    pivots = []
    for level in range(amb.a):
        forms = [canonical_form(f) for f in fs]
        cands = [(cf.terms[0].exponent, idx) for idx, cf in enumerate(forms) if cf.terms[0].level == level]
        if not cands:
            continue
        exp0, idx0 = min(cands)
        pivot, lead0 = fs[idx0], forms[idx0].terms[0]
        unscale = lead0.alpha.inverse() * lead0.beta.inverse()
        rest = []
        for idx, (f, cf) in enumerate(zip(fs, forms)):
            if idx == idx0:
                continue
            t = cf.terms[0]
            if t.level == level:
                f = f - pivot * unscale * t.alpha * (z ** (t.exponent - exp0)) * t.beta
                assert f.p_content() > level, "pivot elimination left a term at the current level"
            if f:
                rest.append(f)
        pivots.append(pivot)
        fs = rest
    assert not fs, "generators survived past the last p-level"
    return Ideal(amb, pivots)


# ---------------------------------------------------------------------------
# polynomials in GR[x] (no quotient), as trimmed (L, m) int64 arrays


class _Poly:
    """Dense univariate polynomial helpers over a Galois ring."""

    def __init__(self, ring: GaloisRing):
        self.ring = ring
        self.q, self.p, self.a, self.m = ring.q, ring.p, ring.a, ring.m

    def trim(self, P: np.ndarray) -> np.ndarray:
        nz = np.flatnonzero(P.any(axis=1))
        return P[: nz[-1] + 1] if nz.size else P[:0]

    def add(self, P, Q, sign=1):
        L = max(len(P), len(Q))
        out = np.zeros((L, self.m), dtype=np.int64)
        out[: len(P)] += P
        out[: len(Q)] += sign * Q
        return self.trim(out % self.q)

    def scale_shift(self, P, c: np.ndarray, k: int):
        """c * x^k * P for a ring element c (raw coordinates)."""
        out = np.zeros((len(P) + k, self.m), dtype=np.int64)
        out[k:] = self.ring._ymul(P, c)
        return self.trim(out)

    def mul(self, P, Q):
        if not len(P) or not len(Q):
            return np.zeros((0, self.m), dtype=np.int64)
        out = np.zeros((len(P) + len(Q) - 1, self.m), dtype=np.int64)
        for i in range(len(P)):
            if P[i].any():
                out[i : i + len(Q)] = (out[i : i + len(Q)] + self.ring._ymul(Q, P[i])) % self.q
        return self.trim(out)

    def lead(self, P):
        """(degree, valuation v, unit u) with leading coefficient p^v u."""
        lc = P[-1]
        v = self.ring._valuation(lc)
        return len(P) - 1, v, lc // self.p**v

    def divides(self, lt1, lt2) -> bool:
        return lt1[0] <= lt2[0] and lt1[1] <= lt2[1]

    def top_reduce(self, h, basis, leads=None, cofactors=False):
        """Reduce h while some basis leading term divides its leading term.

        Returns the remainder, and with ``cofactors=True`` also the list of
        multipliers q_i with h = sum q_i b_i + remainder.
        """
        leads = [self.lead(b) for b in basis] if leads is None else leads
        cof = [np.zeros((0, self.m), dtype=np.int64) for _ in basis] if cofactors else None
        while len(h):
            lt = self.lead(h)
            for i, (b, lb) in enumerate(zip(basis, leads)):
                if self.divides(lb, lt):
                    c = self.ring._ymul(lt[2], self.ring._inverse(lb[2])) * self.p ** (lt[1] - lb[1]) % self.q
                    h = self.add(h, self.scale_shift(b, c, lt[0] - lb[0]), -1)
                    if cofactors:
                        mono = np.zeros((lt[0] - lb[0] + 1, self.m), dtype=np.int64)
                        mono[-1] = c
                        cof[i] = self.add(cof[i], mono)
                    break
            else:
                break
        return (h, cof) if cofactors else h

    def tail_reduce(self, h, basis, leads):
        """Clear every non-leading term of h that some basis leading term divides."""
        for e in range(len(h) - 2, -1, -1):
            if e >= len(h) - 1 or not h[e].any():
                continue
            lt = (e, self.ring._valuation(h[e]), None)
            for b, lb in zip(basis, leads):
                if self.divides(lb, lt):
                    u = h[e] // self.p ** lt[1]
                    c = self.ring._ymul(u, self.ring._inverse(lb[2])) * self.p ** (lt[1] - lb[1]) % self.q
                    h = self.add(h, self.scale_shift(b, c, e - lb[0]), -1)
                    break
        return h


def _strong_groebner(P: _Poly, gens: list[np.ndarray]) -> list[np.ndarray]:
    """Strong Groebner basis of the GR[x]-ideal generated by ``gens``.

    Buchberger completion with S-polynomials and annihilator polynomials
    p^(a-v) g; a new element is kept only when its top reduction is nonzero.
    """
    basis: list[np.ndarray] = []
    leads: list[tuple] = []
    todo = [g for g in gens if len(g)]
    todo.sort(key=len)
    while todo:
        h = P.top_reduce(todo.pop(0), basis, leads)
        if not len(h):
            continue
        lh = P.lead(h)
        for b, lb in zip(basis, leads):
            todo.append(_s_poly(P, h, lh, b, lb))
        if lh[1] > 0:
            todo.append(P.trim((h * P.p ** (P.a - lh[1])) % P.q))
        basis.append(h)
        leads.append(lh)
    return basis


def _s_poly(P: _Poly, f, lf, g, lg):
    d = max(lf[0], lg[0])
    v = max(lf[1], lg[1])
    cf = (P.ring._inverse(lf[2]) * P.p ** (v - lf[1])) % P.q
    cg = (P.ring._inverse(lg[2]) * P.p ** (v - lg[1])) % P.q
    return P.add(P.scale_shift(f, cf, d - lf[0]), P.scale_shift(g, cg, d - lg[0]), -1)


@dataclass(frozen=True)
class GroebnerForm:
    """Pairs (j_i, f_i) with I = <p^(j_0) f_0, ..., p^(j_r) f_r>, f_i monic, j_i increasing."""

    ambient: Ambient
    pairs: tuple[tuple[int, AmbientElement], ...]

    @property
    def r(self) -> int:
        return len(self.pairs) - 1

    def generators(self) -> list[AmbientElement]:
        return [f * self.ambient.p**j for j, f in self.pairs]

    def ideal(self) -> Ideal:
        return Ideal(self.ambient, self.generators())

    @property
    def last(self) -> tuple[int, AmbientElement]:
        return self.pairs[-1]

    def check_properties(self) -> list[tuple[str, bool, str]]:
        """Independent checks of the five defining properties.

        Properties 1-3 are syntactic.  Property 4 is checked as membership in
        the ambient ring via the Howell backend; property 5 is checked in
        GR[x] itself by an explicit cofactor certificate.
        """
        amb = self.ambient
        js = [j for j, _ in self.pairs]
        fs = [f for _, f in self.pairs]
        degs = [f.degree() for f in fs]
        checks = []
        ok1 = all(0 <= j <= amb.a - 1 for j in js) and all(x < y for x, y in zip(js, js[1:]))
        checks.append(("p1_levels_increasing", ok1, f"j = {js}"))
        one = amb.ring.one.arr
        ok2 = all(d >= 0 and np.array_equal(f.arr[d], one) for f, d in zip(fs, degs))
        checks.append(("p2_monic", ok2, ", ".join(str(f) for f in fs)))
        ok3 = amb.n > degs[0] and all(x > y for x, y in zip(degs, degs[1:]))
        checks.append(("p3_degrees_decreasing", ok3, f"n = {amb.n}, deg = {degs}"))

        bad4 = []
        for i in range(len(fs) - 1):
            target = fs[i] * amb.p ** js[i + 1]
            sub = Ideal(amb, [fs[k] * amb.p ** js[k] for k in range(i + 1, len(fs))])
            if not sub.contains(target):
                bad4.append(i)
        checks.append(("p4_nested_membership", not bad4, f"failing i = {bad4}" if bad4 else "all i"))

        ok5, detail5 = self.modulus_certificate()
        checks.append(("p5_modulus_membership", ok5, detail5))
        return checks

    def modulus_certificate(self) -> tuple[bool, str]:
        """Check p^(j_0)(x^n -+ 1) = sum_i c_i p^(j_i) f_i in GR[x] with explicit c_i."""
        amb = self.ambient
        P = _Poly(amb.ring)
        gens = [P.trim(g.arr.copy()) for g in self.generators()]
        target = _modulus_poly(amb) * amb.p ** self.pairs[0][0] % amb.q
        target = P.trim(target)
        rem, cof = P.top_reduce(target, gens, cofactors=True)
        if len(rem):
            return False, "division left a nonzero remainder"
        total = np.zeros((0, amb.m), dtype=np.int64)
        for c, g in zip(cof, gens):
            total = P.add(total, P.mul(c, g))
        ok = np.array_equal(total, target)
        return ok, "certificate verified" if ok else "certificate does not reproduce the target"


def _modulus_poly(amb: Ambient) -> np.ndarray:
    M = np.zeros((amb.n + 1, amb.m), dtype=np.int64)
    M[amb.n, 0] = 1
    M[0, 0] = (-amb.wrap) % amb.q
    return M


def groebner_form(I: Ideal) -> GroebnerForm:
    """Generators p^(j_i) f_i of I with the Groebner properties 1-5.

    A strong Groebner basis of the preimage of I in GR[x] (the generators
    together with x^n -+ 1) is computed, made minimal and tail-reduced; each
    remaining element is then p^v times a monic polynomial.
    """
    amb = I.ambient
    P = _Poly(amb.ring)
    M = _modulus_poly(amb)
    gens = [P.trim(g.arr.copy()) for g in I.generators if g]
    if not gens:
        raise ValueError("the zero ideal has no Groebner generator form")
    basis = _strong_groebner(P, gens + [M])
    leads = [P.lead(b) for b in basis]

    # minimal: drop elements whose leading term is divisible by another's
    keep = []
    for i, li in enumerate(leads):
        dominated = any(
            j != i and P.divides(lj, li) and ((lj[0], lj[1]) != (li[0], li[1]) or j < i)
            for j, lj in enumerate(leads)
        )
        if not dominated:
            keep.append(i)
    basis = [basis[i] for i in keep]
    leads = [leads[i] for i in keep]

    pairs = []
    for idx, (b, lb) in enumerate(zip(basis, leads)):
        if lb[0] >= amb.n:
            continue  # x^n -+ 1 itself; accounted for by property 5
        others = [basis[k] for k in range(len(basis)) if k != idx]
        other_leads = [leads[k] for k in range(len(basis)) if k != idx]
        b = P.tail_reduce(b, others, other_leads)
        b = P.trim((amb.ring._ymul(b, amb.ring._inverse(lb[2]))) % P.q)
        v = lb[1]
        if np.any(b % amb.p**v):
            raise AssertionError("reduced basis element is not p^v times a monic polynomial")
        f = np.zeros((amb.n, amb.m), dtype=np.int64)
        f[: len(b)] = b // amb.p**v
        pairs.append((v, amb._wrap(f)))
    pairs.sort(key=lambda jf: jf[0])
    return GroebnerForm(amb, tuple(pairs))
