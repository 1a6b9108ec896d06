"""The generic v-adic pairing-filtration engine.

A pairing of two free modules over the formal power series ring in v is
recorded by its Gram matrix with entries truncated at a fixed order N.  The
induced filtration -- step i collects the vectors pairing into v^i times
everything -- is governed entirely by the Smith form of the matrix over the
valuation ring: if the matrix is equivalent to diag(v^{d_1}, ..., v^{d_r}),
then the image of step i in the v=0 specialization has dimension
#{k : d_k >= i}, so the layer dimensions are the histogram of the d_k.

Everything is exact: coefficients are rationals, elimination always pivots
on an entry of minimal valuation, and a computation that cannot certify a
pivot at the working truncation raises instead of guessing.

The graded-sequence model packages the structural story behind such
filtrations when they come from an h-polynomial sum(n_i v^i): one
elementary sequence

    (free)[-i]  --v^i-->  (free)[i]  -->>  (truncated)[i]

per unit of n_i with i > 0, plus a free rank n_0 matched on both sides.
Each truncated cokernel piece carries the symmetric degree multiset
{i-1, i-3, ..., 1-i}, and the model's diagonal pairing matrix reproduces
the layer dimensions i -> n_i on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    InsufficientTruncationError,
    NegativeCoefficientError,
    ParityError,
    RankDeficientError,
)
from .laurent import LaurentPoly

__all__ = [
    "PSeries",
    "PSeriesMatrix",
    "smith_valuations",
    "pairing_layer_dims",
    "GradedSequenceModel",
    "gysin_model",
    "default_truncation",
]


class PSeries:
    """A power series in v, exact modulo v^N, with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, truncation: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if truncation is not None:
            if len(cs) > truncation:
                raise ValueError("more coefficients than the truncation order")
            cs += [Fraction(0)] * (truncation - len(cs))
        if not cs:
            raise ValueError("truncation order must be positive")
        self.coeffs = tuple(cs)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, truncation: int) -> "PSeries":
        cs = [Fraction(0)] * truncation
        for e, c in p.items():
            if e < 0:
                raise ValueError("power series cannot carry negative exponents")
            if e < truncation:
                cs[e] = Fraction(c)
        return cls(cs)

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient; None means >= truncation."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    @property
    def is_zero_mod_truncation(self) -> bool:
        return self.valuation() is None

    def _check(self, other: "PSeries") -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("mixed truncation orders")

    def __add__(self, other: "PSeries") -> "PSeries":
        self._check(other)
        return PSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "PSeries") -> "PSeries":
        self._check(other)
        return PSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "PSeries") -> "PSeries":
        self._check(other)
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return PSeries(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        body = LaurentPoly(
            {e: c.numerator for e, c in enumerate(self.coeffs) if c.denominator == 1 and c}
        ).canonical_str()
        exact = all(c.denominator == 1 for c in self.coeffs)
        shown = body if exact else str(list(self.coeffs))
        return f"PSeries({shown} + O(v^{len(self.coeffs)}))"


class PSeriesMatrix:
    """A rectangular matrix of power series with one uniform truncation."""

    def __init__(self, entries: Sequence[Sequence[PSeries]]):
        rows = [tuple(row) for row in entries]
        width = len(rows[0]) if rows else 0
        trunc = None
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for x in row:
                if trunc is None:
                    trunc = x.truncation
                elif x.truncation != trunc:
                    raise ValueError("mixed truncation orders")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = width
        self.truncation = trunc if trunc is not None else 0

    @classmethod
    def from_polys(
        cls, grid: Sequence[Sequence[LaurentPoly]], truncation: int | None = None
    ) -> "PSeriesMatrix":
        if truncation is None:
            truncation = default_truncation(grid)
        return cls(
            [[PSeries.from_laurent(p, truncation) for p in row] for row in grid]
        )

    @classmethod
    def diagonal_powers(cls, exponents: Sequence[int], truncation: int | None = None) -> "PSeriesMatrix":
        """diag(v^d) for the given exponents."""
        if truncation is None:
            truncation = max(exponents, default=0) + 2
        n = len(exponents)
        zero = LaurentPoly.zero()
        grid = [
            [LaurentPoly.term(1, exponents[i]) if i == j else zero for j in range(n)]
            for i in range(n)
        ]
        return cls.from_polys(grid, truncation)

    def __repr__(self) -> str:
        return f"PSeriesMatrix({self.rows}x{self.cols}, N={self.truncation})"


def default_truncation(grid: Sequence[Sequence[LaurentPoly]]) -> int:
    """Sum of the entry degrees plus two; generous enough for any Smith form."""
    total = 0
    for row in grid:
        for p in row:
            d = p.degree()
            if d is not None and d > 0:
                total += d
    return total + 2


def smith_valuations(matrix: PSeriesMatrix) -> list[int]:
    """Elementary-divisor valuations {d_k} of the matrix over the v-adic ring.

    The matrix must have full row rank over the fraction field and every
    valuation must be resolvable below the truncation; otherwise
    RankDeficientError resp. InsufficientTruncationError is raised.
    """
    n = matrix.truncation
    if matrix.rows == 0:
        return []
    # integer coefficient lists, clearing denominators row by row (a nonzero
    # rational scalar is a unit of the valuation ring, so valuations survive)
    work: list[list[list[int]]] = []
    for row in matrix.entries:
        denom = lcm(*(c.denominator for x in row for c in x.coeffs)) if row else 1
        work.append([[int(c * denom) for c in x.coeffs] for x in row])
    live_rows = list(range(matrix.rows))
    live_cols = list(range(matrix.cols))
    eff = n
    base = 0
    vals: list[int] = []

    def val(entry: list[int]) -> int | None:
        for i in range(eff):
            if entry[i]:
                return i
        return None

    while live_rows:
        if not live_cols:
            raise RankDeficientError(
                f"{len(live_rows)} row(s) left with no pivot column available"
            )
        d_min, pivot = None, None
        for i in live_rows:
            for j in live_cols:
                d = val(work[i][j])
                if d is not None and (d_min is None or d < d_min):
                    d_min, pivot = d, (i, j)
                    if d == 0:
                        break
            if d_min == 0:
                break
        if d_min is None:
            raise InsufficientTruncationError(
                f"all remaining entries vanish modulo v^{base + eff}; "
                "raise the truncation"
            )
        if d_min:
            base += d_min
            eff -= d_min
            if eff <= 0:
                raise InsufficientTruncationError(
                    f"cannot certify a pivot below v^{n}; raise the truncation"
                )
            for i in live_rows:
                for j in live_cols:
                    del work[i][j][:d_min]
        pi, pj = pivot
        vals.append(base)
        p = work[pi][pj]
        for i in live_rows:
            if i == pi:
                continue
            a = work[i][pj]
            if val(a) is None:
                continue
            # unit row operation: row_i := p * row_i - a * row_pi
            newrow = []
            for j in live_cols:
                newrow.append(_conv_sub(p, work[i][j], a, work[pi][j], eff))
            g = 0
            for entry in newrow:
                for c in entry:
                    g = gcd(g, c)
            if g > 1:
                newrow = [[c // g for c in entry] for entry in newrow]
            for j, entry in zip(live_cols, newrow):
                work[i][j] = entry
        live_rows.remove(pi)
        live_cols.remove(pj)
    return sorted(vals)


def _conv_sub(p: list[int], x: list[int], a: list[int], y: list[int], eff: int) -> list[int]:
    """(p*x - a*y) truncated to eff coefficients."""
    out = [0] * eff
    for i in range(eff):
        pi = p[i]
        if pi:
            for j in range(eff - i):
                if x[j]:
                    out[i + j] += pi * x[j]
        ai = a[i]
        if ai:
            for j in range(eff - i):
                if y[j]:
                    out[i + j] -= ai * y[j]
    return out


def pairing_layer_dims(matrix: PSeriesMatrix) -> dict[int, int]:
    """Layer dimensions of the induced filtration: i -> #{k : d_k = i}."""
    dims: dict[int, int] = {}
    for d in smith_valuations(matrix):
        dims[d] = dims.get(d, 0) + 1
    return dims


# --------------------------------------------------------------------------
# the graded-sequence model
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedSequenceModel:
    """Direct sum of elementary graded sequences, in generator-degree form.

    ``costalk_degrees`` are the generator degrees of the sub (one entry +i
    per piece i, plus a 0 per unit of matched free rank), ``stalk_degrees``
    the generator degrees of the ambient module (-i per piece, plus the
    matched zeros), and ``cokernel_pieces`` the multiset of positive i for
    which a truncated piece of length i appears.
    """

    costalk_degrees: tuple[int, ...]
    stalk_degrees: tuple[int, ...]
    cokernel_pieces: tuple[int, ...]

    def cokernel_degrees(self) -> tuple[int, ...]:
        """Degree multiset of the cokernel: {i-1, i-3, ..., 1-i} per piece."""
        out: list[int] = []
        for i in self.cokernel_pieces:
            out.extend(range(i - 1, -i, -2))
        return tuple(sorted(out))

    def is_lefschetz_selfdual(self) -> bool:
        """Whether every cokernel piece has a degree multiset symmetric
        about zero (the structural shadow of hard Lefschetz)."""
        for i in self.cokernel_pieces:
            degs = sorted(range(i - 1, -i, -2))
            if degs != sorted(-d for d in degs):
                return False
        return True

    def pairing_matrix(self, truncation: int | None = None) -> PSeriesMatrix:
        """The model Gram matrix diag(v^d) over the costalk generators."""
        return PSeriesMatrix.diagonal_powers(self.costalk_degrees, truncation)

    def layer_dims(self) -> dict[int, int]:
        return pairing_layer_dims(self.pairing_matrix())


def gysin_model(h: LaurentPoly, ldiff: int) -> GradedSequenceModel:
    """Build the graded-sequence model of an h-polynomial.

    Each term n_i v^i with i > 0 contributes n_i elementary sequences of
    weight i; a constant term contributes matched free rank on both sides.
    The coefficients must be non-negative, supported in [0, ldiff] with the
    parity of ldiff.
    """
    pieces: list[int] = []
    free_rank = 0
    for e, c in h.items():
        if c < 0:
            raise NegativeCoefficientError(f"coefficient {c} of v^{e} is negative")
        if e < 0 or e > ldiff or (ldiff - e) % 2:
            raise ParityError(
                f"exponent {e} incompatible with length difference {ldiff}"
            )
        if e == 0:
            free_rank = c
        else:
            pieces.extend([e] * c)
    pieces.sort()
    costalk = tuple([0] * free_rank + pieces)
    stalk = tuple(sorted([0] * free_rank + [-i for i in pieces]))
    model = GradedSequenceModel(costalk, stalk, tuple(pieces))
    if not model.is_lefschetz_selfdual():
        raise AssertionError("cokernel piece failed selfduality")
    return model
