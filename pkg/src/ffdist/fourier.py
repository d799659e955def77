"""Normalized discrete Fourier transform on F_q^d over exact cyclotomic values.

fhat(m) = q^{-d} sum_x f(x) chi(-x.m), with the naive O(q^{2d}) evaluation:
at desk scale exactness beats speed, and F_q^d has no radix structure to
exploit.  Indicator transforms take a fast path that only histograms trace
residues over the support.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .cyclotomic import Cyclotomic, Rational
from .gf import DEFAULT_CAP, Field, Point, enumerate_vectors

Value = Union[Cyclotomic, int, Fraction]


class PointSet:
    """A finite subset of F_q^d with deterministic (index-sorted) iteration."""

    __slots__ = ("field", "d", "points", "_index_set")

    def __init__(self, field: Field, d: int, members: Iterable[Point]) -> None:
        if d < 1:
            raise ValueError("dimension must be >= 1")
        seen: dict[tuple[int, ...], Point] = {}
        for pt in members:
            if not isinstance(pt, Point) or pt.field is not field or pt.d != d:
                raise ValueError(f"{pt!r} does not belong to GF({field.q})^{d}")
            seen[pt.idx] = pt
        self.field = field
        self.d = d
        self.points = tuple(sorted(seen.values(), key=lambda p: p.idx))
        self._index_set = frozenset(seen)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt: Point) -> bool:
        return isinstance(pt, Point) and pt.idx in self._index_set

    def indicator(self, pt: Point) -> int:
        return 1 if pt in self else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.field is other.field and self.d == other.d
                and self._index_set == other._index_set)

    def __hash__(self) -> int:
        return hash((id(self.field), self.d, self._index_set))

    def __repr__(self) -> str:
        return f"PointSet(q={self.field.q}, d={self.d}, size={len(self)})"


class FourierTable:
    """A complete table of Fourier coefficients m -> fhat(m)."""

    __slots__ = ("field", "d", "values")

    def __init__(self, field: Field, d: int, values: Mapping[Point, Cyclotomic]) -> None:
        if len(values) != field.q**d:
            raise ValueError("Fourier table must cover all q^d frequencies")
        self.field = field
        self.d = d
        self.values = dict(values)

    def __getitem__(self, m: Point) -> Cyclotomic:
        return self.values[m]

    def items(self):
        return self.values.items()


def dft(field: Field, d: int, f: Mapping[Point, Value], cap: int = DEFAULT_CAP) -> FourierTable:
    """Transform of a function given by its support (absent points are 0)."""
    domain = enumerate_vectors(field, d, cap)
    p = field.p
    scale = Fraction(1, field.q**d)
    support = [(x, v) for x, v in f.items() if v]
    rational = all(isinstance(v, (int, Fraction)) for _, v in support)
    neg = field._neg
    values: dict[Point, Cyclotomic] = {}
    for m in domain:
        if rational:
            counts: Counter = Counter()
            for x, v in support:
                counts[field._trace[neg[x.dot(m).index]]] += v
            acc = Cyclotomic.from_counts(p, counts)
        else:
            acc = Cyclotomic.zero(p)
            for x, v in support:
                term = v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(p, v)
                acc = acc + term.times_root(field._trace[neg[x.dot(m).index]])
        values[m] = acc * scale
    return FourierTable(field, d, values)


def dft_indicator(E: PointSet, cap: int = DEFAULT_CAP) -> FourierTable:
    """Ehat(m) = q^{-d} sum over x in E of chi(-x.m)."""
    field = E.field
    domain = enumerate_vectors(field, E.d, cap)
    scale = Fraction(1, field.q**E.d)
    trace, neg = field._trace, field._neg
    values: dict[Point, Cyclotomic] = {}
    for m in domain:
        counts: Counter = Counter()
        for x in E:
            counts[trace[neg[x.dot(m).index]]] += 1
        values[m] = Cyclotomic.from_counts(field.p, counts) * scale
    return FourierTable(field, E.d, values)


def inverse_dft(table: FourierTable, cap: int = DEFAULT_CAP) -> dict[Point, Cyclotomic]:
    """f(x) = sum_m chi(m.x) fhat(m); exact inverse of dft."""
    field = table.field
    domain = enumerate_vectors(field, table.d, cap)
    p = field.p
    qd = field.q**table.d
    trace = field._trace
    # scaling by q^d clears the transform's normalization, so indicator-style
    # tables accumulate in plain ints; the scale is divided back out at the end
    items = []
    all_int = True
    for m, v in table.items():
        if v:
            sv = v * qd
            all_int = all_int and all(isinstance(c, int) for c in sv.coeffs)
            items.append((m, sv.coeffs))
    scale = Fraction(1, qd)
    if not all_int:
        items = [(m, v.coeffs) for m, v in table.items() if v]
        scale = 1
    out: dict[Point, Cyclotomic] = {}
    for x in domain:
        acc: list[Rational] = [0] * p
        for m, c in items:
            j = trace[m.dot(x).index]
            for i, ci in enumerate(c):
                if ci:
                    k = i + j
                    if k >= p:
                        k -= p
                    acc[k] += ci
        out[x] = Cyclotomic(p, acc) * scale
    return out


def spectral_energy(E: PointSet, cap: int = DEFAULT_CAP) -> dict[Point, Cyclotomic]:
    """|Ehat(m)|^2 = Ehat(m) * conj(Ehat(m)), kept exact per frequency."""
    table = dft_indicator(E, cap)
    return {m: v * v.conjugate() for m, v in table.items()}


def plancherel_check(E: PointSet, cap: int = DEFAULT_CAP) -> tuple[Fraction, Fraction]:
    """(sum_m |Ehat(m)|^2, q^{-d} |E|); the two must be equal exactly."""
    field = E.field
    total = Cyclotomic.zero(field.p)
    for v in spectral_energy(E, cap).values():
        total = total + v
    return total.rational_value(), Fraction(len(E), field.q**E.d)
