"""The ambient rings GR(p^a, m)[x]/(x^{p^s} + 1) and GR(p^a, m)[x]/(x^{p^s} - 1).

An :class:`AmbientElement` keeps its coefficients as a read-only ``(n, m)``
int64 array: row ``i`` holds the Galois-ring coordinates of the coefficient
of ``x^i``.
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .galois_ring import GaloisRing, GRElement, RingError, make_ring
from .polytext import format_poly, parse_int_poly

DEFAULT_MAX_ENUMERATION = 2**20


def max_enumeration(default: int = DEFAULT_MAX_ENUMERATION) -> int:
    """Enumeration bound, overridable through ``GR_CODES_MAX_ENUM``."""
    value = os.environ.get("GR_CODES_MAX_ENUM")
    return int(value) if value else default


class EnumerationLimitError(RuntimeError):
    """An exhaustive operation would exceed the configured enumeration bound."""


class Kind(str, enum.Enum):
    NEGACYCLIC = "negacyclic"
    CYCLIC = "cyclic"


class Ambient:
    """GR(p^a, m)[x]/(x^n -+ 1) with n = p^s."""

    def __init__(self, ring: GaloisRing, s: int, kind: Kind):
        self.ring = ring
        self.s = s
        self.kind = Kind(kind)
        self.p, self.a, self.m, self.q = ring.p, ring.a, ring.m, ring.q
        self.n = ring.p**s
        # x^n is identified with -1 (negacyclic) or +1 (cyclic)
        self.wrap = -1 if self.kind is Kind.NEGACYCLIC else 1
        self.length = self.n * self.m
        self.zero = self._wrap(np.zeros((self.n, self.m), dtype=np.int64))
        self.one = self.scalar(1)
        self.x = self.monomial(1)

    def _key(self):
        return (self.ring, self.s, self.kind)

    def __eq__(self, other):
        return isinstance(other, Ambient) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        sign = "+" if self.kind is Kind.NEGACYCLIC else "-"
        return f"{self.ring!r}[x]/(x^{self.n}{sign}1)"

    @property
    def size(self) -> int:
        return self.ring.size**self.n

    @property
    def root(self) -> int:
        """The c in {1, -1} with x^n -+ 1 = (x - c)^n mod p."""
        return -1 if self.kind is Kind.NEGACYCLIC else 1

    @property
    def radical_generator(self) -> "AmbientElement":
        """x + 1, or x - 1 in odd-characteristic cyclic ambients where x + 1 is a unit."""
        if self.kind is Kind.CYCLIC and self.p != 2:
            return self.x - 1
        return self.x + 1

    @property
    def radical_root(self) -> int:
        """The c with radical_generator = x - c."""
        return 1 if self.kind is Kind.CYCLIC and self.p != 2 else -1

    @property
    def xplus1(self) -> "AmbientElement":
        return self.x + 1

    # construction --------------------------------------------------------------

    def _wrap(self, arr: np.ndarray) -> "AmbientElement":
        return AmbientElement(self, arr)

    def scalar(self, c) -> "AmbientElement":
        arr = np.zeros((self.n, self.m), dtype=np.int64)
        arr[0] = self.ring.element(c).arr
        return self._wrap(arr)

    def monomial(self, k: int, c=1) -> "AmbientElement":
        arr = np.zeros((self.n, self.m), dtype=np.int64)
        sign = self.wrap ** (k // self.n)
        arr[k % self.n] = (sign * self.ring.element(c).arr) % self.q
        return self._wrap(arr)

    def element(self, coeffs: Sequence) -> "AmbientElement":
        """Build sum c_k x^k from GR elements, ints or coordinate tuples (constant first).

        Sequences longer than n are reduced with x^n = -+1.
        """
        arr = np.zeros((self.n, self.m), dtype=np.int64)
        for k, c in enumerate(coeffs):
            sign = self.wrap ** (k // self.n)
            arr[k % self.n] += sign * self.ring.element(c).arr
        return self._wrap(arr % self.q)

    def from_array(self, arr) -> "AmbientElement":
        arr = np.asarray(arr, dtype=np.int64).reshape(self.n, self.m) % self.q
        return self._wrap(arr)

    def from_int_poly(self, coeffs: Sequence[int]) -> "AmbientElement":
        arr = np.zeros((self.n, self.m), dtype=np.int64)
        for k, c in enumerate(coeffs):
            sign = self.wrap ** (k // self.n)
            arr[k % self.n, 0] = (arr[k % self.n, 0] + sign * (int(c) % self.q)) % self.q
        return self._wrap(arr)

    def parse(self, text: str) -> "AmbientElement":
        """Parse text such as ``"(x+1)^2+3*(x+1)"``; coefficients are reduced mod p^a."""
        return self.from_int_poly(parse_int_poly(text))

    def partner(self) -> "Ambient":
        """Same ring and length, opposite kind."""
        other = Kind.CYCLIC if self.kind is Kind.NEGACYCLIC else Kind.NEGACYCLIC
        return make_ambient(self.ring, self.s, other)

    def residue_ambient(self) -> "Ambient":
        """The a = 1 ambient GR(p, m)[x]/(x^n -+ 1) of the same kind."""
        return make_ambient(self.ring.residue_ring(), self.s, self.kind)

    # raw arithmetic ------------------------------------------------------------

    def _mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        n, m, q = self.n, self.m, self.q
        if m == 1:
            full = np.convolve(A[:, 0], B[:, 0])
            out = full[:n].copy()
            out[: n - 1] += self.wrap * full[n:]
            return (out % q).reshape(n, 1)
        full = np.zeros((2 * n - 1, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            if not A[:, i].any():
                continue
            for j in range(m):
                if B[:, j].any():
                    full[:, i + j] += np.convolve(A[:, i], B[:, j]) % q
        full = self.ring._yreduce(full)
        out = full[:n].copy()
        out[: n - 1] += self.wrap * full[n:]
        return out % q

    def _shift(self, A: np.ndarray, k: int = 1) -> np.ndarray:
        """Multiply by x^k (a signed cyclic rotation)."""
        k %= 2 * self.n if self.wrap == -1 else self.n
        out = A
        for _ in range(k // self.n):
            out = (self.wrap * out) % self.q
        k %= self.n
        if k == 0:
            return out.copy()
        res = np.empty_like(out)
        res[k:] = out[: self.n - k]
        res[:k] = (self.wrap * out[self.n - k :]) % self.q
        return res

    # enumeration ---------------------------------------------------------------

    def encode(self, arrs: np.ndarray) -> np.ndarray:
        """Integer keys for a batch of (N, n, m) coefficient arrays."""
        flat = arrs.reshape(arrs.shape[0], -1)
        weights = self.q ** np.arange(flat.shape[1], dtype=object)
        if self.size < 2**62:
            weights = weights.astype(np.int64)
        return flat @ weights

    def all_elements(self, bound: int | None = None) -> np.ndarray:
        """All elements as an (N, n, m) array, N = |ambient|."""
        bound = max_enumeration() if bound is None else bound
        if self.size > bound:
            raise EnumerationLimitError(f"{self!r} has {self.size} elements, above the bound {bound}")
        idx = np.arange(self.size, dtype=np.int64)
        digits = (idx[:, None] // (self.q ** np.arange(self.length, dtype=np.int64))) % self.q
        return digits.reshape(self.size, self.n, self.m)


class AmbientElement:
    __slots__ = ("ambient", "arr")

    def __init__(self, ambient: Ambient, arr: np.ndarray):
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        self.ambient = ambient
        self.arr = arr

    # comparison / hashing
    def __eq__(self, other):
        if not isinstance(other, AmbientElement):
            return NotImplemented
        return self.ambient == other.ambient and np.array_equal(self.arr, other.arr)

    def __hash__(self):
        return hash((self.ambient, self.arr.tobytes()))

    def __bool__(self):
        return bool(self.arr.any())

    @property
    def coeffs(self) -> tuple[GRElement, ...]:
        ring = self.ambient.ring
        return tuple(GRElement(ring, tuple(int(c) for c in row)) for row in self.arr)

    def __str__(self):
        return format_poly(list(self.coeffs), str)

    def __repr__(self):
        return f"<{self} in {self.ambient!r}>"

    # arithmetic
    def _coerce(self, other) -> np.ndarray | None:
        if isinstance(other, AmbientElement):
            if other.ambient != self.ambient:
                raise RingError(f"cannot combine elements of {self.ambient!r} and {other.ambient!r}")
            return other.arr
        if isinstance(other, (int, np.integer, GRElement)):
            return None
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def _new(self, arr) -> "AmbientElement":
        return AmbientElement(self.ambient, arr)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            o = self.ambient.scalar(other).arr
        return self._new((self.arr + o) % self.ambient.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            o = self.ambient.scalar(other).arr
        return self._new((self.arr - o) % self.ambient.q)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._new((-self.arr) % self.ambient.q)

    def __mul__(self, other):
        o = self._coerce(other)
        amb = self.ambient
        if o is None:
            c = amb.ring.element(other).arr
            return self._new(amb.ring._ymul(self.arr, c))
        return self._new(amb._mul(self.arr, o))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        amb = self.ambient
        result = amb.one.arr
        base = self.arr
        while k:
            if k & 1:
                result = amb._mul(result, base)
            base = amb._mul(base, base)
            k >>= 1
        return self._new(result)

    def shift(self, k: int = 1) -> "AmbientElement":
        """x^k * self."""
        return self._new(self.ambient._shift(self.arr, k))

    # structure
    def weight(self) -> int:
        return weight(self)

    def degree(self) -> int:
        """Degree of the representative of degree < n; -1 for zero."""
        rows = np.flatnonzero(self.arr.any(axis=1))
        return int(rows[-1]) if rows.size else -1

    def p_content(self) -> int:
        """Largest k <= a with p^k dividing every coefficient."""
        return self.ambient.ring._valuation(self.arr.reshape(-1))

    def divide_p_power(self, k: int) -> "AmbientElement":
        """self / p^k with coordinates in [0, p^(a-k)); requires p^k | self."""
        pk = self.ambient.p**k
        if np.any(self.arr % pk):
            raise ValueError(f"{self} is not divisible by p^{k}")
        return self._new(self.arr // pk)

    def evaluate(self, c: int) -> GRElement:
        """Value at the integer point x = c."""
        ring = self.ambient.ring
        powers = np.array([pow(c, i, ring.q) for i in range(self.ambient.n)], dtype=np.int64)
        return ring.element((powers @ self.arr) % ring.q)

    def is_unit(self) -> bool:
        return is_unit(self)

    def inverse(self) -> "AmbientElement":
        return inverse(self)


# ---------------------------------------------------------------------------
# module-level operations


@functools.lru_cache(maxsize=None)
def _cached_ambient(ring, s, kind):
    return Ambient(ring, s, kind)


def make_ambient(ring: GaloisRing, s: int, kind=Kind.NEGACYCLIC, *, exhaustive: bool = False,
                 max_size: int | None = None) -> Ambient:
    """The ambient ring of (nega)cyclic codes of length p^s over ``ring``.

    With ``exhaustive=True`` the ambient must be small enough to enumerate.
    """
    if s < 1:
        raise RingError("s must be at least 1 (s = 0 is the trivial length-1 case)")
    amb = _cached_ambient(ring, int(s), Kind(kind))
    if exhaustive:
        bound = max_enumeration() if max_size is None else max_size
        if amb.size > bound:
            raise EnumerationLimitError(f"{amb!r} has {amb.size} elements, above the bound {bound}")
    return amb


def ambient_from_params(p: int, a: int, m: int, s: int, kind=Kind.NEGACYCLIC, modulus=None) -> Ambient:
    return make_ambient(make_ring(p, a, m, modulus), s, kind)


def weight(f: AmbientElement) -> int:
    """Number of nonzero coefficients of the degree < n representative."""
    return int(np.count_nonzero(f.arr.any(axis=1)))


def _taylor_shift(arr: np.ndarray, c: int, q: int) -> np.ndarray:
    """Coefficients of g(y) = f(y + c) for f given by ``arr`` (degree < n, no wrap)."""
    n = arr.shape[0]
    res = np.zeros_like(arr)
    for k in range(n - 1, -1, -1):
        # res <- res * (y + c) + arr[k]
        shifted = np.zeros_like(res)
        shifted[1:] = res[:-1]
        res = (shifted + c * res) % q
        res[0] = (res[0] + arr[k]) % q
    return res


def xplus1_expansion(f: AmbientElement) -> tuple[GRElement, ...]:
    """The a_i with f = sum_i a_i (x+1)^i, i < n."""
    return f.ambient.element(xplus1_coefficients(f)).coeffs


def xplus1_coefficients(f: AmbientElement) -> np.ndarray:
    """Array form of :func:`xplus1_expansion`: f(x) = sum a_i (x+1)^i means a(y) = f(y - 1)."""
    return _taylor_shift(f.arr, -1, f.ambient.q)


def from_xplus1(ambient: Ambient, coeffs) -> AmbientElement:
    """Inverse of :func:`xplus1_expansion`."""
    arr = np.zeros((ambient.n, ambient.m), dtype=np.int64)
    for i, c in enumerate(coeffs):
        arr[i] = ambient.ring.element(c).arr if not isinstance(c, np.ndarray) else c
    return ambient._wrap(_taylor_shift(arr % ambient.q, 1, ambient.q))


def xplus1_valuation(f: AmbientElement) -> int:
    """Index of the first nonzero coefficient in the (x+1)-expansion; n for f = 0."""
    rows = np.flatnonzero(xplus1_coefficients(f).any(axis=1))
    return int(rows[0]) if rows.size else f.ambient.n


def is_unit(f: AmbientElement) -> bool:
    # x - root lies in the radical, so f is a unit iff f(root) is
    return f.evaluate(f.ambient.root).is_unit()


def inverse(f: AmbientElement) -> AmbientElement:
    """Multiplicative inverse by Newton iteration g <- g (2 - f g)."""
    amb = f.ambient
    c = f.evaluate(amb.root)
    if not c.is_unit():
        raise ZeroDivisionError(f"{f} is not a unit")
    g = amb.scalar(c.inverse())
    for _ in range(64):
        err = amb.one - f * g
        if not err:
            return g
        g = g * (amb.one + err)
    raise AssertionError("Newton inversion did not converge")  # pragma: no cover


def nilpotency_index(ambient: Ambient) -> int:
    """Least N with z^N = 0 for z = ``ambient.radical_generator``.

    Closed forms: p^s a - p^(s-1) (a-1) for odd p (negacyclic, and cyclic via
    x -> -x, where z = x - 1); (a+1) 2^(s-1) for p = 2 cyclic; p^s for a = 1.
    The remaining chain-ring case (p = 2 negacyclic, a > 1) is computed by
    direct powering.
    """
    p, a, s = ambient.p, ambient.a, ambient.s
    if a == 1:
        return p**s
    if p != 2:
        return p**s * a - p ** (s - 1) * (a - 1)
    if ambient.kind is Kind.CYCLIC:
        return (a + 1) * 2 ** (s - 1)
    return nilpotency_by_powering(ambient.radical_generator)


def nilpotency_by_powering(z: AmbientElement) -> int:
    """Least N with z^N = 0, by repeated multiplication."""
    amb = z.ambient
    power = amb.one
    for k in range(1, amb.n * amb.a + 2):
        power = power * z
        if not power:
            return k
    raise ValueError(f"{z} is not nilpotent")


def negacyclic_cyclic_map(f: AmbientElement) -> AmbientElement:
    """The isomorphism x -> -x between the negacyclic and cyclic ambients (odd p)."""
    amb = f.ambient
    if amb.p == 2:
        raise RingError("x -> -x is not an isomorphism between the two ambients for p = 2")
    target = amb.partner()
    signs = np.where(np.arange(amb.n) % 2 == 1, -1, 1)[:, None]
    return target._wrap((signs * f.arr) % amb.q)


def reduce_mod_p(f: AmbientElement) -> AmbientElement:
    """Coefficientwise reduction into the a = 1 ambient."""
    target = f.ambient.residue_ambient()
    return target._wrap(f.arr % f.ambient.p)


def torsion_to_residue(g: AmbientElement) -> AmbientElement:
    """The module isomorphism p^(a-1) R -> GR(p,m)[x]/(x^n -+ 1), p^(a-1) f -> f mod p."""
    a = g.ambient.a
    return reduce_mod_p(g.divide_p_power(a - 1))


def residue_to_torsion(h: AmbientElement, ambient: Ambient) -> AmbientElement:
    """Inverse of :func:`torsion_to_residue`, landing in ``ambient``."""
    if h.ambient != ambient.residue_ambient():
        raise RingError(f"{h!r} is not in the residue ambient of {ambient!r}")
    return ambient._wrap((ambient.p ** (ambient.a - 1) * h.arr) % ambient.q)


# ---------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True)
class CanonicalTerm:
    level: int  # power of p
    exponent: int  # power of (x+1)
    beta: GRElement  # nonzero Teichmuller element
    alpha: AmbientElement  # unit

    def value(self) -> AmbientElement:
        amb = self.alpha.ambient
        return (amb.radical_generator ** self.exponent) * self.alpha * (self.beta * amb.p**self.level)


@dataclass(frozen=True)
class CanonicalForm:
    """f = sum_k beta_k p^k z^(i_k) alpha_k with levels increasing, exponents decreasing."""

    ambient: Ambient
    terms: tuple[CanonicalTerm, ...]

    def reassemble(self) -> AmbientElement:
        total = self.ambient.zero
        for t in self.terms:
            total = total + t.value()
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> CanonicalTerm:
        return self.terms[0]

    def term_at(self, level: int) -> CanonicalTerm | None:
        for t in self.terms:
            if t.level == level:
                return t
        return None

    def describe(self) -> list[dict]:
        return [
            {"level": t.level, "exponent": t.exponent, "beta": str(t.beta), "alpha": str(t.alpha)}
            for t in self.terms
        ]

    def __str__(self):
        if not self.terms:
            return "0"
        z = self.ambient.radical_generator
        return " + ".join(f"{t.beta}*p^{t.level}*({z})^{t.exponent}*({t.alpha})" for t in self.terms)


def canonical_form(f: AmbientElement) -> CanonicalForm:
    """Decompose f as sum_k beta_k p^k z^(i_k) alpha_k, z = ``radical_generator``.

    z is x+1 except in odd-characteristic cyclic ambients, where it is x-1.
    Built from the double expansion f = sum_{i,j} zeta_ij p^j z^i: level j
    contributes beta_j = zeta_(i_j, j) at its least exponent i_j, and a level
    whose exponent is not below every lower kept exponent is folded into the
    unit of the nearest kept level beneath it.
    """
    amb = f.ambient
    ring = amb.ring
    c = amb.radical_root
    z = amb.radical_generator
    coeffs = _taylor_shift(f.arr, c, amb.q)
    digits = [ring.p_adic_expansion(ring.element(row)) for row in coeffs]  # digits[i][j]

    raw = []  # (level, exponent, beta, alpha)
    for j in range(amb.a):
        present = [i for i in range(amb.n) if digits[i][j]]
        if not present:
            continue
        i0 = present[0]
        beta = digits[i0][j]
        binv = beta.inverse()
        h = np.zeros((amb.n, amb.m), dtype=np.int64)
        for i in present:
            h[i - i0] = (binv * digits[i][j]).arr
        raw.append([j, i0, beta, amb._wrap(_taylor_shift(h, -c, amb.q))])

    kept: list[list] = []
    for level, exp, beta, alpha in raw:
        if kept and kept[-1][1] <= exp:
            k1, e1, b1, a1 = kept[-1]
            fold = (z ** (exp - e1)) * alpha * ((beta * b1.inverse()) * amb.p ** (level - k1))
            kept[-1][3] = a1 + fold
        else:
            kept.append([level, exp, beta, alpha])

    # exponents come from a degree < n expansion, so they never reach the nilpotency index
    terms = tuple(CanonicalTerm(k, e, b, al) for k, e, b, al in kept)
    return CanonicalForm(amb, terms)
