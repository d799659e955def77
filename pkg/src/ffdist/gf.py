"""Arithmetic in GF(p^s) for odd prime powers, plus vectors over it.

Elements are indexed 0..q-1 by the base-p value of their coefficient vector
(constant coefficient least significant), so the prime field embeds as
0..p-1 with index == value.  All field operations go through precomputed
tables, which is the right trade-off at desk scale (q <= ~1000): building
the tables costs O(q^2) polynomial multiplications once, after which every
downstream character sum is a pair of list lookups.

The defining modulus is chosen deterministically (smallest monic irreducible
polynomial of degree s in base-p coefficient order) so that GF(9), GF(25),
GF(27), ... are identical across runs and platforms.  A user-supplied
modulus overrides the scan and is validated for irreducibility.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .cyclotomic import check_odd_prime

DEFAULT_CAP = 10**6
_MAX_Q = 2048  # table-based arithmetic; larger fields are out of scope


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists in ascending degree
# ---------------------------------------------------------------------------

def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_rem(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """f mod g with g nonzero; g need not be monic."""
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _poly_trim(f)
    return f


def _poly_gcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    a, b = list(f), list(g)
    while b:
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    out = [1]
    b = _poly_rem(base, mod, p)
    while e:
        if e & 1:
            out = _poly_rem(_poly_mul(out, b, p), mod, p)
        b = _poly_rem(_poly_mul(b, b, p), mod, p)
        e >>= 1
    return out


def poly_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) via gcd(X^{p^e} - X, f) for e <= deg(f)/2."""
    f = _poly_trim(list(f))
    s = len(f) - 1
    if s < 1:
        return False
    if s == 1:
        return True
    x = [0, 1]
    t = list(x)
    for _ in range(s // 2):
        t = _poly_powmod(t, p, f, p)
        diff = _poly_trim([(a - b) % p for a, b in
                           zip(t + [0] * len(x), x + [0] * len(t))])
        if len(_poly_gcd(diff, f, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree s over GF(p).

    Candidates are scanned by increasing base-p value of the non-leading
    coefficients (constant coefficient least significant).
    """
    if s == 1:
        return (0, 1)
    for n in range(p**s):
        coeffs = []
        v = n
        for _ in range(s):
            v, r = divmod(v, p)
            coeffs.append(r)
        cand = coeffs + [1]
        if poly_is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {s} over GF({p})")


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class FieldElement:
    """An element of a Field, identified by its enumeration index."""

    __slots__ = ("field", "index")

    def __init__(self, field: "Field", index: int) -> None:
        self.field = field
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.index_to_coeffs(self.index)

    @property
    def is_zero(self) -> bool:
        return self.index == 0

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        o = self._other(other)
        return self.field.elements[self.field._add[self.index][o.index]]

    __radd__ = __add__

    def __neg__(self):
        return self.field.elements[self.field._neg[self.index]]

    def __sub__(self, other):
        o = self._other(other)
        return self.field.elements[self.field._add[self.index][self.field._neg[o.index]]]

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._other(other)
        return self.field.elements[self.field._mul[self.index][o.index]]

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        inv = self.field._inv[self.index]
        if inv is None:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self.field.elements[inv]

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __pow__(self, n: int) -> "FieldElement":
        return self.field.power(self, n)

    def trace(self) -> int:
        """Absolute trace, a residue in [0, p)."""
        return self.field._trace[self.index]

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int):
            return self.field is not None and self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.index))

    def __repr__(self) -> str:
        if self.field.s == 1:
            return f"GF({self.field.q}):{self.index}"
        return f"GF({self.field.q}):{self.coeffs}"


class Field:
    """GF(p^s) for an odd prime p, with dense arithmetic tables."""

    def __init__(self, p: int, s: int, modulus: Optional[Sequence[int]] = None) -> None:
        check_odd_prime(p)
        if not isinstance(s, int) or s < 1:
            raise ValueError(f"extension degree must be >= 1, got {s!r}")
        q = p**s
        if q > _MAX_Q:
            raise ValueError(f"field GF({q}) exceeds supported size {_MAX_Q}")
        self.p = p
        self.s = s
        self.q = q
        if modulus is None:
            self.modulus = smallest_irreducible(p, s)
        else:
            mod = tuple(c % p for c in modulus)
            if s == 1:
                if mod != (0, 1):
                    raise ValueError("for s=1 the modulus must be X")
            elif len(mod) != s + 1 or mod[-1] != 1 or not poly_is_irreducible(mod, p):
                raise ValueError(f"modulus {modulus!r} is not monic irreducible of degree {s}")
            self.modulus = mod
        self._build_tables()
        self.elements = tuple(FieldElement(self, i) for i in range(q))
        self.zero = self.elements[0]
        self.one = self.elements[1]

    # -- construction helpers ---------------------------------------------

    def index_to_coeffs(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def coeffs_to_index(self, coeffs: Iterable[int]) -> int:
        i = 0
        for c in reversed(list(coeffs)):
            i = i * self.p + c % self.p
        return i

    def _build_tables(self) -> None:
        p, s, q = self.p, self.s, self.q
        coeff = [self.index_to_coeffs(i) for i in range(q)]
        mod = list(self.modulus)

        self._neg = [self.coeffs_to_index((-c) % p for c in coeff[i]) for i in range(q)]
        self._add = [
            [self.coeffs_to_index((a + b) % p for a, b in zip(coeff[i], coeff[j]))
             for j in range(q)]
            for i in range(q)
        ]
        mul = []
        for i in range(q):
            fi = _poly_trim(list(coeff[i]))
            row = []
            for j in range(q):
                prod = _poly_mul(fi, _poly_trim(list(coeff[j])), p)
                if s > 1:
                    prod = _poly_rem(prod, mod, p)
                else:
                    prod = [prod[0] % p] if prod else []
                row.append(self.coeffs_to_index(prod + [0] * (s - len(prod))))
            mul.append(row)
        self._mul = mul

        inv: list[Optional[int]] = [None] * q
        for i in range(1, q):
            if inv[i] is None:
                for j in range(1, q):
                    if mul[i][j] == 1:
                        inv[i], inv[j] = j, i
                        break
        self._inv = inv

        # absolute trace Tr(a) = sum of a^{p^e} for e < s; lands in GF(p)
        trace = []
        for i in range(q):
            acc, frob = 0, i
            for _ in range(s):
                acc = self._add[acc][frob]
                frob = self._pow_index(frob, p)
            trace.append(acc)  # index of a prime-subfield element equals its value
        self._trace = trace

        half = (q - 1) // 2
        quad = [0] * q
        for i in range(1, q):
            e = self._pow_index(i, half)
            quad[i] = 1 if e == 1 else -1
        self._quad = quad

    def _pow_index(self, i: int, n: int) -> int:
        out, base = 1, i
        while n:
            if n & 1:
                out = self._mul[out][base]
            base = self._mul[base][base]
            n >>= 1
        return out

    # -- public operations -------------------------------------------------

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise ValueError(f"element index {index} outside [0, {self.q})")
        return self.elements[index]

    def from_int(self, n: int) -> FieldElement:
        """Embed an integer through the prime subfield."""
        return self.elements[n % self.p]

    def power(self, a: FieldElement, n: int) -> FieldElement:
        if n < 0:
            return self.power(a.inverse(), -n)
        return self.elements[self._pow_index(a.index, n)]

    def quad_char(self, a: FieldElement) -> int:
        """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0."""
        return self._quad[a.index]

    def __repr__(self) -> str:
        return f"Field(p={self.p}, s={self.s}, modulus={self.modulus})"

    # identity hashing: fields are shared singletons obtained via make_field
    __hash__ = object.__hash__
    __eq__ = object.__eq__


@lru_cache(maxsize=None)
def make_field(p: int, s: int = 1) -> Field:
    """Construct (and cache) GF(p^s) with the deterministic modulus."""
    return Field(p, s)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^s with p an odd prime, or raise ValueError."""
    if q < 3:
        raise ValueError(f"{q} is not an odd prime power")
    p = q
    for c in range(2, math.isqrt(q) + 1):
        if q % c == 0:
            p = c
            break
    s = 0
    r = q
    while r % p == 0:
        r //= p
        s += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    check_odd_prime(p)
    return p, s


# ---------------------------------------------------------------------------
# vectors over the field
# ---------------------------------------------------------------------------

class Point:
    """A d-tuple over GF(q), stored as a tuple of element indices."""

    __slots__ = ("field", "idx")

    def __init__(self, field: Field, coords) -> None:
        idx = tuple(c.index if isinstance(c, FieldElement) else int(c) for c in coords)
        if not idx:
            raise ValueError("points must have dimension >= 1")
        if any(not 0 <= i < field.q for i in idx):
            raise ValueError(f"coordinate index out of range for GF({field.q})")
        self.field = field
        self.idx = idx

    @property
    def d(self) -> int:
        return len(self.idx)

    @property
    def coords(self) -> tuple[FieldElement, ...]:
        return tuple(self.field.elements[i] for i in self.idx)

    def _check(self, other: "Point") -> None:
        if not isinstance(other, Point):
            raise TypeError("expected a Point")
        if other.field is not self.field or other.d != self.d:
            raise ValueError("points live in different spaces")

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        add, neg = self.field._add, self.field._neg
        return Point(self.field, (add[a][neg[b]] for a, b in zip(self.idx, other.idx)))

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        add = self.field._add
        return Point(self.field, (add[a][b] for a, b in zip(self.idx, other.idx)))

    def dot(self, other: "Point") -> FieldElement:
        self._check(other)
        add, mul = self.field._add, self.field._mul
        acc = 0
        for a, b in zip(self.idx, other.idx):
            acc = add[acc][mul[a][b]]
        return self.field.elements[acc]

    def norm(self) -> FieldElement:
        """Sum of squared coordinates."""
        add, mul = self.field._add, self.field._mul
        acc = 0
        for a in self.idx:
            acc = add[acc][mul[a][a]]
        return self.field.elements[acc]

    def zero_count(self) -> int:
        """Number of zero coordinates."""
        return sum(1 for a in self.idx if a == 0)

    def enumeration_index(self) -> int:
        i = 0
        for a in self.idx:
            i = i * self.field.q + a
        return i

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.field is other.field and self.idx == other.idx

    def __hash__(self) -> int:
        return hash((id(self.field), self.idx))

    def __repr__(self) -> str:
        return f"Point{self.idx}"


def vector_ops(x: Point, y: Point) -> tuple[FieldElement, FieldElement, int]:
    """(x . y, ||x||, Z(x)) in one call."""
    return x.dot(y), x.norm(), x.zero_count()


def point_from_index(field: Field, d: int, index: int) -> Point:
    coords = []
    for _ in range(d):
        index, r = divmod(index, field.q)
        coords.append(r)
    return Point(field, reversed(coords))


def enumerate_vectors(field: Field, d: int, cap: int = DEFAULT_CAP) -> list[Point]:
    """All q^d points in lexicographic order (first coordinate most significant)."""
    n = field.q**d
    if n > cap:
        raise ValueError(f"enumeration of {n} points exceeds cap {cap}")
    return [point_from_index(field, d, i) for i in range(n)]
