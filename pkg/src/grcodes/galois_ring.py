"""Exact arithmetic in Galois rings GR(p^a, m) = Z_{p^a}[y]/(f(y)).

Elements are stored as ``m`` integer coordinates in ``[0, p^a)`` with respect
to the power basis ``1, y, ..., y^(m-1)`` of the residue class of ``y``.  The
Galois-ring variable is printed as ``y`` so it never collides with the code
variable ``x`` of the ambient rings.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .polytext import parse_int_poly

DEFAULT_MAX_RING_SIZE = 2**20


class RingError(ValueError):
    """Invalid ring parameters or mixing elements of different rings."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def p_valuation(n: int, p: int) -> int:
    """Exponent of the largest power of ``p`` dividing the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _fp_rem(f: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of f by monic g over F_p (constant term first)."""
    f = [c % p for c in f]
    dg = len(g) - 1
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if c:
            for i in range(dg + 1):
                f[k - dg + i] = (f[k - dg + i] - c * g[i]) % p
    f = f[:dg] if dg > 0 else []
    while f and f[-1] == 0:
        f.pop()
    return f


def is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2 over F_p."""
    f = [c % p for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_rem(f, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic degree-m polynomial irreducible mod p.

    Candidates are compared lexicographically on (c_0, c_1, ..., c_{m-1}).
    """
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(low) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise RingError(f"no irreducible polynomial of degree {m} mod {p}")  # pragma: no cover


def max_ring_size_from_env(default: int = DEFAULT_MAX_RING_SIZE) -> int:
    value = os.environ.get("GR_CODES_MAX_RING")
    return int(value) if value else default


class GaloisRing:
    """The Galois ring GR(p^a, m) with a fixed basic irreducible modulus.

    Use :func:`make_ring` rather than instantiating directly; it validates
    the parameters and caches instances.
    """

    def __init__(self, p: int, a: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.a = a
        self.m = m
        self.q = p**a
        self.size = self.q**m
        self.modulus = modulus
        self._mod_low = np.array(modulus[:m], dtype=np.int64)
        self.zero = GRElement(self, (0,) * m)
        self.one = GRElement(self, (1,) + (0,) * (m - 1))
        self.teichmuller = self._teichmuller_set()
        self._teich_by_residue = {tuple(int(c) % p for c in t.coeffs): t for t in self.teichmuller}

    # identity --------------------------------------------------------------

    def _key(self):
        return (self.p, self.a, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GR({self.p}^{self.a},1)"
        return f"GR({self.p}^{self.a},{self.m}) mod {self.modulus_str()}"

    def modulus_str(self, var: str = "y") -> str:
        from .polytext import format_poly

        return format_poly(list(self.modulus), lambda c: str(c % self.q), var=var)

    # raw vector arithmetic ---------------------------------------------------
    # Raw values are int64 arrays whose last axis has length m; leading axes
    # broadcast.  All results are reduced into [0, q).

    def _yreduce(self, out: np.ndarray) -> np.ndarray:
        """Reduce a (..., 2m-1) array of y-coefficients modulo the modulus."""
        q, m = self.q, self.m
        out = out % q
        for k in range(out.shape[-1] - 1, m - 1, -1):
            c = out[..., k].copy()
            out[..., k - m : k] = (out[..., k - m : k] - c[..., None] * self._mod_low) % q
        return out[..., :m]

    def _ymul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        q, m = self.q, self.m
        if m == 1:
            return (u * v) % q
        shape = np.broadcast_shapes(u.shape[:-1], v.shape[:-1]) + (2 * m - 1,)
        out = np.zeros(shape, dtype=np.int64)
        for i in range(m):
            for j in range(m):
                out[..., i + j] += (u[..., i] * v[..., j]) % q
        return self._yreduce(out)

    def _pow(self, u: np.ndarray, k: int) -> np.ndarray:
        result = np.zeros_like(u)
        result[..., 0] = 1
        base = u
        while k:
            if k & 1:
                result = self._ymul(result, base)
            base = self._ymul(base, base)
            k >>= 1
        return result

    def _valuation(self, u: np.ndarray) -> int:
        nz = [int(c) for c in u if c]
        if not nz:
            return self.a
        return min(p_valuation(c, self.p) for c in nz)

    def _is_unit(self, u: np.ndarray) -> bool:
        return bool(np.any(u % self.p))

    def _inverse(self, u: np.ndarray) -> np.ndarray:
        if not self._is_unit(u):
            raise ZeroDivisionError(f"{self.element(u)} is not a unit in {self}")
        # order of the unit group is p^((a-1)m) (p^m - 1)
        order = self.p ** ((self.a - 1) * self.m) * (self.p**self.m - 1)
        return self._pow(u, order - 1)

    # construction ------------------------------------------------------------

    def element(self, value) -> "GRElement":
        """Coerce an int, a coordinate sequence or a GRElement into this ring."""
        if isinstance(value, GRElement):
            if value.ring != self:
                raise RingError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return GRElement(self, (int(value) % self.q,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.q for c in value]
        if len(coeffs) != self.m:
            raise RingError(f"expected {self.m} coordinates, got {len(coeffs)}")
        return GRElement(self, tuple(coeffs))

    def power_basis(self) -> tuple["GRElement", ...]:
        """The Z_{p^a}-basis 1, y, ..., y^(m-1)."""
        return tuple(
            GRElement(self, tuple(int(i == k) for i in range(self.m))) for k in range(self.m)
        )

    def elements(self) -> Iterator["GRElement"]:
        for coeffs in itertools.product(range(self.q), repeat=self.m):
            yield GRElement(self, coeffs)

    def residue_ring(self) -> "GaloisRing":
        """GR(p, m) with the modulus reduced mod p."""
        return make_ring(self.p, 1, self.m, tuple(c % self.p for c in self.modulus))

    def _teichmuller_set(self) -> tuple["GRElement", ...]:
        pm = self.p**self.m
        found = []
        for residue in itertools.product(range(self.p), repeat=self.m):
            t = np.array(residue, dtype=np.int64)
            for _ in range(self.a + 1):
                nxt = self._pow(t, pm)
                if np.array_equal(nxt, t):
                    break
                t = nxt
            else:  # pragma: no cover - guaranteed by the finite local structure
                raise AssertionError("Teichmuller iteration did not converge")
            found.append(GRElement(self, tuple(int(c) for c in t)))
        return tuple(found)

    def teichmuller_of(self, r: "GRElement") -> "GRElement":
        """The Teichmuller element congruent to r mod p."""
        return self._teich_by_residue[tuple(c % self.p for c in r.coeffs)]

    # public operations ------------------------------------------------------

    def p_adic_expansion(self, r: "GRElement") -> tuple["GRElement", ...]:
        r = self.element(r)
        cur = r.arr
        digits = []
        for _ in range(self.a):
            t = self._teich_by_residue[tuple(int(c) % self.p for c in cur)]
            digits.append(t)
            cur = ((cur - t.arr) % self.q) // self.p
        return tuple(digits)

    def from_p_adic(self, digits: Sequence["GRElement"]) -> "GRElement":
        total = self.zero
        for i, d in enumerate(digits):
            total = total + d * (self.p**i)
        return total

    def valuation(self, r: "GRElement") -> int:
        """p-content of r: the k with r = p^k * unit, or a for r = 0."""
        return self._valuation(self.element(r).arr)

    def is_unit(self, r: "GRElement") -> bool:
        return self._is_unit(self.element(r).arr)

    def inverse(self, r: "GRElement") -> "GRElement":
        r = self.element(r)
        inv = self._inverse(r.arr)
        return GRElement(self, tuple(int(c) for c in inv))


@dataclass(frozen=True, eq=True)
class GRElement:
    ring: GaloisRing
    coeffs: tuple[int, ...]

    @property
    def arr(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _other(self, other) -> "GRElement":
        if isinstance(other, GRElement):
            if other.ring != self.ring:
                raise RingError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.element(int(other))
        return NotImplemented

    def _wrap(self, arr) -> "GRElement":
        return GRElement(self.ring, tuple(int(c) for c in arr))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap((self.arr + o.arr) % self.ring.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap((self.arr - o.arr) % self.ring.q)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._wrap((-self.arr) % self.ring.q)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring._ymul(self.arr, o.arr))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.inverse(self) ** (-k)
        return self._wrap(self.ring._pow(self.arr, k))

    def __bool__(self):
        return any(self.coeffs)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self)

    def inverse(self) -> "GRElement":
        return self.ring.inverse(self)

    def __str__(self):
        c = self.coeffs
        if not any(c[1:]):
            return str(c[0])
        from .polytext import format_poly

        return "(" + format_poly(list(c), var="y") + ")"

    def __repr__(self):
        return f"GRElement({self}, {self.ring!r})"


@functools.lru_cache(maxsize=None)
def _cached_ring(p, a, m, modulus):
    return GaloisRing(p, a, m, modulus)


def make_ring(p: int, a: int, m: int, modulus=None, max_size: int | None = None) -> GaloisRing:
    """Build GR(p^a, m).

    ``modulus`` may be omitted (a default basic irreducible is chosen), given
    as integer coefficients with the constant term first, or as text such as
    ``"x^2+x+1"``.  Rings with more than ``max_size`` elements are refused.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise RingError(f"p = {p} is not a prime")
    if a < 1:
        raise RingError(f"a = {a} must be at least 1")
    if m < 1:
        raise RingError(f"m = {m} must be at least 1")
    p, a, m = int(p), int(a), int(m)
    limit = max_ring_size_from_env() if max_size is None else max_size
    if p ** (a * m) > limit:
        raise RingError(f"GR({p}^{a},{m}) has {p}^{a * m} elements, above the size limit {limit}")
    q = p**a
    if modulus is None:
        mod = default_modulus(p, m)
    else:
        if isinstance(modulus, str):
            modulus = parse_int_poly(modulus)
        mod = [int(c) % q for c in modulus]
        while len(mod) > 1 and mod[-1] == 0:
            mod.pop()
        if len(mod) - 1 != m:
            raise RingError(f"modulus has degree {len(mod) - 1}, expected {m}")
        if mod[-1] != 1:
            raise RingError("modulus must be monic")
        if not is_irreducible_mod_p(mod, p):
            raise RingError(f"modulus {modulus} is not basic irreducible (reducible mod {p})")
        mod = tuple(mod)
    return _cached_ring(p, a, m, tuple(mod))
