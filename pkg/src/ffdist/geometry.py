"""The k-norm, zero-pattern strata of F_q^d, spheres, and their transforms.

The k-norm of x is the ordinary sum of squares when x has at most k-1 zero
coordinates and 0 otherwise; spheres S_k^t are its level sets.  The Fourier
transform of a sphere indicator is available through two independent routes:
brute-force summation over the sphere, and the closed form
q^{-d-1} (A(m,t) + B(m)) assembled from Gauss sums, which is exposed only
for t != 0 (the derivation discards a term that vanishes only then).

Sums over coordinate subsets I of a fixed size are evaluated as elementary
symmetric functions of per-coordinate factors, since every factor depends
only on its own coordinate; this is exactly the subset expansion, just
computed in O(d^2) instead of O(2^d) products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Sequence

from .characters import CharacterTable
from .cyclotomic import Cyclotomic
from .fourier import PointSet
from .gf import DEFAULT_CAP, Field, FieldElement, Point, enumerate_vectors


@dataclass(frozen=True)
class SphereSpec:
    """A sphere {x : ||x||_k = t}."""

    k: int
    t: FieldElement

    def validate(self, d: int) -> None:
        if not 1 <= self.k <= d:
            raise ValueError(f"k must lie in [1, {d}], got {self.k}")


class IndexSubset:
    """A subset of coordinate positions {1, ..., d} (1-based, as printed)."""

    __slots__ = ("d", "members")

    def __init__(self, d: int, members: Iterable[int]) -> None:
        ms = frozenset(members)
        if not all(1 <= i <= d for i in ms):
            raise ValueError(f"members must lie in [1, {d}]")
        self.d = d
        self.members = ms

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __repr__(self) -> str:
        return f"IndexSubset(d={self.d}, {sorted(self.members)})"


def k_norm(x: Point, k: int) -> FieldElement:
    """||x||_k: the sum of squares if Z(x) <= k-1, else 0."""
    if not 1 <= k <= x.d:
        raise ValueError(f"k must lie in [1, {x.d}], got {k}")
    if x.zero_count() <= k - 1:
        return x.norm()
    return x.field.zero


def slice_set(field: Field, d: int, subset: IndexSubset, cap: int = DEFAULT_CAP) -> PointSet:
    """F_I: points whose nonzero coordinates are exactly the positions in I."""
    if subset.d != d:
        raise ValueError("subset dimension mismatch")
    nonzero = {i - 1 for i in subset.members}
    pts = [x for x in enumerate_vectors(field, d, cap)
           if {i for i, c in enumerate(x.idx) if c != 0} == nonzero]
    return PointSet(field, d, pts)


@lru_cache(maxsize=None)
def stratum(field: Field, d: int, alpha: int, cap: int = DEFAULT_CAP) -> PointSet:
    """N_alpha: points with exactly alpha zero coordinates."""
    if not 0 <= alpha <= d:
        raise ValueError(f"alpha must lie in [0, {d}], got {alpha}")
    pts = [x for x in enumerate_vectors(field, d, cap) if x.zero_count() == alpha]
    return PointSet(field, d, pts)


@lru_cache(maxsize=None)
def sphere_points(field: Field, d: int, k: int, t: FieldElement,
                  cap: int = DEFAULT_CAP) -> PointSet:
    SphereSpec(k, t).validate(d)
    pts = [x for x in enumerate_vectors(field, d, cap) if k_norm(x, k) == t]
    return PointSet(field, d, pts)


# ---------------------------------------------------------------------------
# stratum character sums (Lemma-style closed form vs brute force)
# ---------------------------------------------------------------------------

def _elementary_symmetric(factors: Sequence) -> List:
    """[e_0, ..., e_n] of the given factors (ints or Cyclotomics)."""
    es: list = [1]
    for f in factors:
        es.append(f * es[-1])
        for j in range(len(es) - 2, 0, -1):
            es[j] = es[j] + f * es[j - 1]
    return es


def _zero_pattern_factors(field: Field, m: Point) -> list[int]:
    # per-coordinate factor of the s = 0 branch: (q-1) at a zero, -1 otherwise
    return [field.q - 1 if c == 0 else -1 for c in m.idx]


def _quadratic_factors(table: CharacterTable, s: FieldElement, m: Point) -> list[Cyclotomic]:
    # per-coordinate factor eta(s) G_1 chi(-m_i^2 / 4s) - 1 of the s != 0 branch
    f = table.field
    g1 = table.gauss_standard()
    eta_s = f.quad_char(s)
    inv4s = (f.from_int(4) * s).inverse()
    out = []
    for c in m.coords:
        out.append(eta_s * g1 * table.chi(-(c * c) * inv4s) - 1)
    return out


def stratum_sum_brute(table: CharacterTable, d: int, alpha: int, s: FieldElement,
                      m: Point, cap: int = DEFAULT_CAP) -> Cyclotomic:
    """sum over x in N_alpha of chi(s ||x|| - m.x), by direct enumeration."""
    from collections import Counter

    f = table.field
    counts: Counter = Counter()
    for x in stratum(f, d, alpha, cap):
        counts[(s * x.norm() - m.dot(x)).trace()] += 1
    return table.chi_sum(counts)


def lemma31_sum(table: CharacterTable, d: int, alpha: int, s: FieldElement,
                m: Point) -> Cyclotomic:
    """The same stratum sum via the closed form.

    For s != 0 each subset contributes a product of Gauss-sum factors; for
    s = 0 it contributes (q-1)^{Z(m_I)} (-1)^{|I| - Z(m_I)}.  The empty
    subset (alpha = d) contributes 1 in both branches.
    """
    if not 0 <= alpha <= d:
        raise ValueError(f"alpha must lie in [0, {d}], got {alpha}")
    p = table.field.p
    if s.is_zero:
        factors: Sequence = _zero_pattern_factors(table.field, m)
    else:
        factors = _quadratic_factors(table, s, m)
    value = _elementary_symmetric(factors)[d - alpha]
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.from_rational(p, value)
    return value


# ---------------------------------------------------------------------------
# the sphere transform: A(m, t) + B(m)
# ---------------------------------------------------------------------------

def _square_class(field: Field, m: Point) -> tuple[int, ...]:
    # the transform is symmetric under coordinate permutations and sign
    # flips, so it only depends on the multiset of squared coordinates
    return tuple(sorted(field._mul[c][c] for c in m.idx))


def _a_inner(table: CharacterTable, m: Point, k: int) -> list[Cyclotomic]:
    """For each nonzero s (by index 1..q-1): sum over alpha < k of the
    subset sums of the quadratic factors.  Cached per square-class."""
    f = table.field
    d = m.d
    key = ("a", d, k, _square_class(f, m))
    cached = table.a_inner_cache.get(key)
    if cached is not None:
        return cached
    out = []
    for si in range(1, f.q):
        es = _elementary_symmetric(_quadratic_factors(table, f.elements[si], m))
        acc = Cyclotomic.zero(f.p)
        for alpha in range(k):
            acc = acc + es[d - alpha]
        out.append(acc)
    table.a_inner_cache[key] = out
    return out


def a_term(table: CharacterTable, m: Point, t: FieldElement, k: int) -> Cyclotomic:
    """A(m, t): the oscillatory part of the sphere transform (t != 0 only)."""
    if t.is_zero:
        raise ValueError("A(m, t) is defined only for t != 0")
    f = table.field
    SphereSpec(k, t).validate(m.d)
    inner = _a_inner(table, m, k)
    acc = Cyclotomic.zero(f.p)
    trace, mul, neg = f._trace, f._mul, f._neg
    for si in range(1, f.q):
        acc = acc + inner[si - 1].times_root(trace[neg[mul[si][t.index]]])
    return acc


def b_term_alpha_range(field: Field, m: Point, alpha_lo: int, alpha_hi: int) -> int:
    """sum over alpha in [alpha_lo, alpha_hi] of the s = 0 subset sums."""
    d = m.d
    es = _elementary_symmetric(_zero_pattern_factors(field, m))
    return sum(es[d - alpha] for alpha in range(alpha_lo, alpha_hi + 1))


def b_term(field: Field, m: Point, k: int) -> int:
    """B(m): the combinatorial part of the sphere transform (an integer)."""
    SphereSpec(k, field.one).validate(m.d)
    return b_term_alpha_range(field, m, 0, k - 1)


def sphere_ft(table: CharacterTable, m: Point, spec: SphereSpec, mode: str = "closed",
              cap: int = DEFAULT_CAP) -> Cyclotomic:
    """Fourier coefficient of the sphere indicator at frequency m.

    mode="brute" sums chi(-x.m) over the sphere; mode="closed" evaluates
    q^{-d-1} (A(m,t) + B(m)) and requires t != 0.
    """
    f = table.field
    d = m.d
    spec.validate(d)
    if mode == "brute":
        from collections import Counter

        counts: Counter = Counter()
        for x in sphere_points(f, d, spec.k, spec.t, cap):
            counts[(-m.dot(x)).trace()] += 1
        return table.chi_sum(counts) * Fraction(1, f.q**d)
    if mode != "closed":
        raise ValueError(f"mode must be 'closed' or 'brute', got {mode!r}")
    if spec.t.is_zero:
        raise ValueError("the closed form is valid only for t != 0; use mode='brute'")
    key = ("sft", d, spec.k, spec.t.index, _square_class(f, m))
    cached = table.sphere_cache.get(key)
    if cached is None:
        total = a_term(table, m, spec.t, spec.k) + b_term(f, m, spec.k)
        cached = total * Fraction(1, f.q ** (d + 1))
        table.sphere_cache[key] = cached
    return cached


def subsets_by_size(d: int, size: int) -> list[tuple[int, ...]]:
    """0-based coordinate subsets of the given size, lexicographic."""
    return list(combinations(range(d), size))
