"""Shared fixtures-by-hand and independent test oracles.

The oracles here deliberately avoid the production code paths they check:
Bruhat order is re-derived from the subword property, and filtration layer
counts are re-derived from ranks of block-linearized integer matrices.
"""

from __future__ import annotations

import random
from fractions import Fraction

from coxkl import CoxeterSystem, Element, LaurentPoly, PSeriesMatrix, build_system
from coxkl.hecke import ClassicalKLTable, KLTable

_SYSTEMS: dict[str, CoxeterSystem] = {}
_KL: dict[str, KLTable] = {}
_CLASSICAL: dict[str, ClassicalKLTable] = {}


def system(label: str) -> CoxeterSystem:
    if label not in _SYSTEMS:
        _SYSTEMS[label] = build_system(label)
    return _SYSTEMS[label]


def kl_table(label: str) -> KLTable:
    if label not in _KL:
        _KL[label] = KLTable(system(label))
    return _KL[label]


def classical_table(label: str) -> ClassicalKLTable:
    if label not in _CLASSICAL:
        _CLASSICAL[label] = ClassicalKLTable(system(label))
    return _CLASSICAL[label]


def comparable_pairs(label: str):
    from coxkl import bruhat_leq

    els = system(label).elements()
    for x in els:
        for y in els:
            if y.length <= x.length and bruhat_leq(y, x):
                yield y, x


# --------------------------------------------------------------------------
# Bruhat oracle: the subword property
# --------------------------------------------------------------------------

def subword_closure(x: Element) -> set:
    """Keys of all elements represented by subwords of a reduced word of x."""
    sys = x.system
    word = x.reduced_word()
    out = {sys.identity.key}
    for mask in range(1, 1 << len(word)):
        w = sys.identity
        for pos, s in enumerate(word):
            if mask >> pos & 1:
                w = w * sys.generator(s)
        out.add(w.key)
    return out


def subword_leq(y: Element, x: Element) -> bool:
    return y.key in subword_closure(x)


# --------------------------------------------------------------------------
# filtration oracle: rank drop of block-linearized matrices
# --------------------------------------------------------------------------

def int_matrix_rank(mat: list[list[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank, r, prev = 0, 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def _int_entry_grid(matrix: PSeriesMatrix) -> list[list[list[int]]]:
    grid = []
    for row in matrix.entries:
        denom = 1
        for x in row:
            for c in x.coeffs:
                denom = denom * c.denominator // __import__("math").gcd(denom, c.denominator)
        grid.append([[int(c * denom) for c in x.coeffs] for x in row])
    return grid


def linearized_rank(matrix: PSeriesMatrix, i: int) -> int:
    """Rank over Q of the matrix acting modulo v^i, linearized over the field.

    Row blocks are v^t * (row k) for 0 <= t < i; the rank difference
    r_i - r_{i-1} is the minimal generator count of the image module, so
    rows - (r_i - r_{i-1}) counts the elementary divisors with d_k >= i.
    """
    if i == 0:
        return 0
    grid = _int_entry_grid(matrix)
    lin = []
    for k in range(matrix.rows):
        for t in range(i):
            flat = []
            for j in range(matrix.cols):
                coeffs = grid[k][j]
                flat.extend(
                    coeffs[u - t] if 0 <= u - t < len(coeffs) else 0 for u in range(i)
                )
            lin.append(flat)
    return int_matrix_rank(lin)


def rank_drop_layer_count(matrix: PSeriesMatrix, i: int) -> int:
    """#{k : d_k >= i} by the rank-drop oracle (no Smith elimination)."""
    if i == 0:
        return matrix.rows
    return matrix.rows - (linearized_rank(matrix, i) - linearized_rank(matrix, i - 1))


def random_filtration_matrix(rng: random.Random) -> PSeriesMatrix:
    """A random power-series matrix with a bias toward positive valuations."""
    rows = rng.randint(1, 6)
    cols = rng.randint(rows, 6)
    grid = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            val = rng.choice((0, 0, 0, 0, 1, 1, 2, 3))
            coeffs = {}
            for e in range(val, 5):
                if rng.random() < 0.7:
                    coeffs[e] = rng.randint(-4, 4)
            row.append(LaurentPoly(coeffs))
        grid.append(row)
    return PSeriesMatrix.from_polys(grid, 16)


def random_laurent(rng: random.Random, span: int = 4, bound: int = 6) -> LaurentPoly:
    return LaurentPoly(
        {e: rng.randint(-bound, bound) for e in range(-span, span + 1) if rng.random() < 0.5}
    )


def poly_det(grid: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by cofactor expansion (tiny matrices only)."""
    n = len(grid)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return grid[0][0]
    out = LaurentPoly.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = grid[0][j] * poly_det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out
