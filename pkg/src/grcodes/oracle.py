"""Brute-force verification by enumeration.

Nothing here uses the Groebner form, canonical forms or distance tables;
ideals are handled purely as additive spans (Howell form) and element sets.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from .ambient import (
    Ambient,
    EnumerationLimitError,
    Kind,
    max_enumeration,
    negacyclic_cyclic_map,
    nilpotency_by_powering,
    nilpotency_index,
    reduce_mod_p,
    residue_to_torsion,
    torsion_to_residue,
    xplus1_valuation,
)
from .ideals import Ideal

DEFAULT_LATTICE_BOUND = 2**12


def lattice_bound() -> int:
    return int(os.environ.get("GR_CODES_MAX_LATTICE", DEFAULT_LATTICE_BOUND))


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "pass": bool(self.ok), "detail": self.detail}


def _weights(arrs: np.ndarray) -> np.ndarray:
    return arrs.any(axis=2).sum(axis=1)


def brute_distance(I: Ideal, bound: int | None = None) -> int:
    """Least weight of a nonzero element of I, by enumeration; 0 for the zero ideal."""
    w = _weights(I.element_array(bound))
    w = w[w > 0]
    return int(w.min()) if w.size else 0


def principal_ideals(ambient: Ambient, bound: int | None = None) -> list[Ideal]:
    """Every principal ideal, once each.

    The generators of <g> are exactly <g> minus <p g, z g> (the ambient is
    local with radical <p, z>), so each discovered ideal retires all of its
    generators at once.
    """
    bound = max_enumeration() if bound is None else bound
    elems = ambient.all_elements(bound)
    visited = np.zeros(len(elems), dtype=bool)
    z = ambient.radical_generator
    out = []
    pos = 0
    while True:
        rest = np.flatnonzero(~visited[pos:])
        if not rest.size:
            break
        pos += int(rest[0])
        g = ambient._wrap(elems[pos])
        I = Ideal(ambient, [g])
        inner = Ideal(ambient, [g * ambient.p, g * z])
        gens = np.setdiff1d(
            ambient.encode(I.element_array(ambient.size)), ambient.encode(inner.element_array(ambient.size))
        )
        visited[gens] = True
        visited[pos] = True
        out.append(I)
    return out


@dataclass
class LatticeReport:
    ambient: Ambient
    ideals: list[Ideal]
    leq: np.ndarray  # leq[i, j] iff ideals[i] <= ideals[j]
    edges: list[tuple[int, int]]  # (lower, upper) covering pairs
    distinguished: dict[str, int]
    principal: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.ideals)

    def index(self, I: Ideal) -> int:
        for k, J in enumerate(self.ideals):
            if J == I:
                return k
        raise KeyError(I)

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j] or self.leq[j, i])

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def as_dict(self) -> dict:
        return {
            "count": len(self.ideals),
            "ideals": [
                {
                    "index": k,
                    "generators": [str(g) for g in I.generators],
                    "cardinality": I.cardinality,
                    "principal": k in self.principal,
                }
                for k, I in enumerate(self.ideals)
            ],
            "edges": [list(e) for e in self.edges],
            "distinguished": dict(self.distinguished),
            "chain": self.is_chain(),
        }


def distinguished_ideals(ambient: Ambient) -> dict[str, Ideal]:
    p, a, n = ambient.p, ambient.a, ambient.n
    z = ambient.radical_generator
    return {
        "zero": Ideal(ambient, [ambient.zero]),
        "unit": Ideal(ambient, [ambient.one]),
        "radical": Ideal(ambient, [ambient.scalar(p), z]),
        "socle": Ideal(ambient, [(z ** (n - 1)) * p ** (a - 1)]),
        "p": Ideal(ambient, [ambient.scalar(p)]),
        "z": Ideal(ambient, [z]),
    }


def build_lattice(ambient: Ambient, bound: int | None = None) -> LatticeReport:
    """All ideals, as sums of principal ideals, with inclusion and covering edges."""
    bound = lattice_bound() if bound is None else bound
    if ambient.size > bound:
        raise EnumerationLimitError(f"{ambient!r} has {ambient.size} elements, above the lattice bound {bound}")
    principals = principal_ideals(ambient, ambient.size)
    found = {I.span: I for I in principals}
    frontier = list(principals)
    while frontier:
        nxt = []
        for I in frontier:
            for P in principals:
                K = I + P
                if K.span not in found:
                    found[K.span] = K
                    nxt.append(K)
        frontier = nxt
    ideals = sorted(found.values(), key=lambda I: (I.cardinality, I.span.rows))
    N = len(ideals)
    leq = np.zeros((N, N), dtype=bool)
    for i, I in enumerate(ideals):
        for j, J in enumerate(ideals):
            leq[i, j] = i == j or (I.cardinality < J.cardinality and J.cardinality % I.cardinality == 0 and I <= J)
    strict = leq & ~np.eye(N, dtype=bool)
    edges = []
    for i in range(N):
        for j in range(N):
            if strict[i, j] and not (strict[i] & strict[:, j]).any():
                edges.append((i, j))
    keys = {I.span: k for k, I in enumerate(ideals)}
    dist = {name: keys[I.span] for name, I in distinguished_ideals(ambient).items()}
    principal = sorted(keys[I.span] for I in principals)
    return LatticeReport(ambient, ideals, leq, edges, dist, principal)


# ---------------------------------------------------------------------------
# structure checks


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    M = M.copy() % p
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r, c]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = (M[rank] * pow(int(M[rank, c]), -1, p)) % p
        for r in range(rows):
            if r != rank and M[r, c]:
                M[r] = (M[r] - M[r, c] * M[rank]) % p
        rank += 1
    return rank


def _is_unit_by_rank(f, basis) -> bool:
    # f is a unit iff multiplication by f is bijective iff its matrix is invertible mod p
    M = np.stack([(f * b).arr.reshape(-1) for b in basis])
    return _rank_mod_p(M, f.ambient.p) == len(basis)


def _is_nilpotent(f) -> bool:
    amb = f.ambient
    power, e = f, 1
    while e < amb.n * amb.a:
        power, e = power * power, 2 * e
    return not power


@dataclass
class StructureReport:
    ambient: Ambient
    checks: list[Check]
    nilpotency: int
    lattice: LatticeReport

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_structure(ambient: Ambient, lattice: LatticeReport | None = None, bound: int | None = None) -> StructureReport:
    """Check the local, socle, non-chain, nilpotency and a-generation claims by enumeration."""
    lat = build_lattice(ambient, bound) if lattice is None else lattice
    p, a, n = ambient.p, ambient.a, ambient.n
    z = ambient.radical_generator
    d = distinguished_ideals(ambient)
    elems = ambient.all_elements(ambient.size)
    codes = ambient.encode(elems)
    basis = [ambient.monomial(k, c) for k in range(n) for c in ambient.ring.power_basis()]
    checks = []

    # (a) local ring with radical <p, z>
    rad_codes = np.sort(ambient.encode(d["radical"].element_array(ambient.size)))
    nonunits, not_nilpotent = [], 0
    for code, arr in zip(codes, elems):
        f = ambient._wrap(arr)
        if not _is_unit_by_rank(f, basis):
            nonunits.append(code)
            if not _is_nilpotent(f):
                not_nilpotent += 1
    same = np.array_equal(np.sort(np.array(nonunits, dtype=rad_codes.dtype)), rad_codes)
    checks.append(Check("radical_is_nonunits", same, f"{len(nonunits)} non-units, |<p,z>| = {rad_codes.size}"))
    checks.append(Check("nonunits_nilpotent", not_nilpotent == 0, f"{not_nilpotent} non-nilpotent non-units"))

    # (b) socle = Ann(radical), minimal, contained in every nonzero ideal
    killed_by_p = (elems * p % ambient.q == 0).all(axis=(1, 2))
    ann = [c for c, arr, kp in zip(codes, elems, killed_by_p) if kp and not (ambient._wrap(arr) * z)]
    soc_codes = np.sort(ambient.encode(d["socle"].element_array(ambient.size)))
    checks.append(
        Check("socle_is_annihilator", np.array_equal(np.sort(np.array(ann, dtype=soc_codes.dtype)), soc_codes),
              f"|Ann(rad)| = {len(ann)}, |socle| = {soc_codes.size}")
    )
    s_idx, z_idx = lat.distinguished["socle"], lat.distinguished["zero"]
    minimal = (z_idx, s_idx) in lat.edges and not any(
        lat.leq[k, s_idx] for k in range(len(lat)) if k not in (z_idx, s_idx)
    )
    checks.append(Check("socle_minimal", minimal, f"socle has {lat.ideals[s_idx].cardinality} elements"))
    contains_socle = all(lat.leq[s_idx, k] for k in range(len(lat)) if k != z_idx)
    checks.append(Check("socle_in_every_nonzero_ideal", contains_socle, f"{len(lat)} ideals"))

    # (c) not a chain ring (odd negacyclic or p = 2 cyclic, a > 1), otherwise a chain
    if expansion_lemma_applies(ambient) or (a > 1 and p != 2):
        p_in_z = d["z"].contains(ambient.scalar(p))
        z_in_p = d["p"].contains(z)
        checks.append(Check("p_not_in_<z>", not p_in_z, f"{p} in <{z}>: {p_in_z}"))
        checks.append(Check("z_not_in_<p>", not z_in_p, f"{z} in <{p}>: {z_in_p}"))
        r_idx = lat.distinguished["radical"]
        checks.append(Check("radical_not_principal", r_idx not in lat.principal,
                            f"{len(lat.principal)} principal ideals"))
    else:
        # a = 1 gives exactly the n + 1 ideals <z^i>; p = 2 negacyclic is a chain ring too
        size_ok = len(lat) == n + 1 if a == 1 else True
        checks.append(Check("chain_ring", lat.is_chain() and size_ok, f"{len(lat)} ideals"))

    # (d) nilpotency
    direct = nilpotency_by_powering(z)
    closed = nilpotency_index(ambient)
    checks.append(Check("nilpotency_index", direct == closed, f"powering {direct}, closed form {closed}"))

    # (e) every ideal needs at most a generators
    worst = 0
    for k in range(len(lat)):
        subs = [lat.ideals[i] for i in lat.principal if lat.leq[i, k]]
        need = None
        for size in range(1, a + 1):
            for combo in itertools.combinations(subs, size):
                total = combo[0]
                for c in combo[1:]:
                    total = total + c
                if total == lat.ideals[k]:
                    need = size
                    break
            if need:
                break
        worst = max(worst, need if need else a + 1)
    checks.append(Check("at_most_a_generators", worst <= a, f"max generators needed {worst}, a = {a}"))
    return StructureReport(ambient, checks, direct, lat)


# ---------------------------------------------------------------------------
# lemmas checked numerically


def verify_binomial_lemma(p: int, n_max: int) -> list[Check]:
    """p^(n - l) | C(p^n, k) for 1 <= k <= p^n / 2, l = v_p(k), for all n <= n_max."""
    checks = []
    for n in range(1, n_max + 1):
        N = p**n
        c = 1
        bad = []
        for k in range(1, N // 2 + 1):
            c = c * (N - k + 1) // k
            l, kk = 0, k
            while kk % p == 0:
                kk //= p
                l += 1
            if c % p ** (n - l):
                bad.append(k)
        checks.append(Check(f"binomial_p{p}_n{n}", not bad, f"{N // 2} values of k" + (f", failures {bad[:5]}" if bad else "")))
    return checks


def expansion_lemma_applies(ambient: Ambient) -> bool:
    return ambient.a > 1 and ((ambient.p != 2 and ambient.kind is Kind.NEGACYCLIC) or
                              (ambient.p == 2 and ambient.kind is Kind.CYCLIC))


def verify_expansion_lemma(ambient: Ambient) -> list[Check]:
    """(x+1)^(p^s + t (p-1) p^(s-1)) = p^(t+1) b_t with b_t mod p of (x+1)-valuation p^(s-1)."""
    if not expansion_lemma_applies(ambient):
        return []
    p, a, s = ambient.p, ambient.a, ambient.s
    z = ambient.xplus1
    zn = z ** (p**s)
    checks = [Check("(x+1)^n_divisible_by_p", zn.p_content() >= 1, f"p-content {zn.p_content()}")]
    for t in range(a - 1):
        e = z ** (p**s + t * (p - 1) * p ** (s - 1))
        content = e.p_content()
        ok = content == t + 1
        detail = f"p-content {content}"
        if ok:
            val = xplus1_valuation(reduce_mod_p(e.divide_p_power(t + 1)))
            ok = val == p ** (s - 1)
            detail += f", residue (x+1)-valuation {val}"
        checks.append(Check(f"expansion_t{t}", ok, detail))
    return checks


def verify_isometries(ambient: Ambient, bound: int = 2**16) -> list[Check]:
    """Weight preservation of x -> -x (odd p) and of p^(a-1) R ~ GR(p,m)[x]/(x^n -+ 1), exhaustively."""
    checks = []
    if ambient.p != 2:
        elems = ambient.all_elements(bound)
        imgs = np.stack([negacyclic_cyclic_map(ambient._wrap(e)).arr for e in elems])
        checks.append(Check("conjugation_preserves_weight", bool((_weights(elems) == _weights(imgs)).all()),
                            f"{len(elems)} elements"))
        back = np.stack([negacyclic_cyclic_map(ambient.partner()._wrap(e)).arr for e in imgs])
        checks.append(Check("conjugation_is_involution", bool((back == elems).all()), ""))
    res = ambient.residue_ambient()
    small = res.all_elements(bound)
    ok, bij = True, set()
    for h in small:
        g = residue_to_torsion(res._wrap(h), ambient)
        ok &= g.weight() == int(h.any(axis=1).sum())
        ok &= np.array_equal(torsion_to_residue(g).arr, h)
        bij.add(g)
    checks.append(Check("torsion_isometry", bool(ok) and len(bij) == len(small),
                        f"{len(small)} elements of p^(a-1) R"))
    return checks
