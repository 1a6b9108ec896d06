"""Finite Coxeter systems with exact arithmetic.

Crystallographic types are realized through their action on the root
lattice: an element is stored as the integer matrix of images of the simple
roots, which doubles as a canonical hashable key and makes descent queries
O(rank).  Dihedral types I2(m) use alternating normal-form words instead,
so no irrational arithmetic is ever needed.  Types H3 and H4 are rejected.

Finite-type recognition of a raw Coxeter matrix goes through the
classification of connected positive-definite diagrams, which is an exact
integer computation equivalent to positive-definiteness of the cosine form.

Generator indexing is 1-based in every public interface.  Elements
serialize as their lexicographically smallest reduced word, e.g. "2132";
the empty string denotes the identity.  Weights are stored in the basis of
fundamental weights with exact rational coordinates and serialize as
comma-separated rationals, e.g. "0,-1/2".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import (
    InfiniteTypeError,
    NotDominantError,
    OwnerMismatchError,
    UnsupportedSystemError,
)

__all__ = [
    "CoxeterSystem",
    "Element",
    "Weight",
    "build_system",
    "bruhat_leq",
    "enumerate_elements",
    "longest_element",
    "dot_action",
    "isotropy_groups",
    "integral_root_data",
    "subsystem_presentation",
    "parse_word",
    "format_word",
]

Vector = tuple[int, ...]
Key = tuple  # matrix of column vectors (crystallographic) or word (dihedral)


# --------------------------------------------------------------------------
# classification of finite Coxeter diagrams
# --------------------------------------------------------------------------

_EXCEPTIONAL = {
    "E6": (51840, 36),
    "E7": (2903040, 63),
    "E8": (696729600, 120),
    "F4": (1152, 24),
    "G2": (12, 6),
    "H3": (120, 15),
    "H4": (14400, 60),
}


@dataclass(frozen=True)
class DiagramComponent:
    """One connected component of a Coxeter diagram, already classified."""

    label: str
    nodes: tuple[int, ...]
    order: int
    n_positive: int
    crystallographic: bool


def _component_data(label: str, nodes: tuple[int, ...]) -> DiagramComponent:
    family, rank = label[0], label[1:]
    if family == "I":
        m = int(label[3:-1])
        return DiagramComponent(label, nodes, 2 * m, m, m in (3, 4, 6))
    n = int(rank)
    if family == "A":
        return DiagramComponent(label, nodes, factorial(n + 1), n * (n + 1) // 2, True)
    if family in ("B", "C"):
        return DiagramComponent(label, nodes, 2**n * factorial(n), n * n, True)
    if family == "D":
        return DiagramComponent(label, nodes, 2 ** (n - 1) * factorial(n), n * (n - 1), True)
    order, npos = _EXCEPTIONAL[label]
    return DiagramComponent(label, nodes, order, npos, family != "H")


def classify_coxeter_matrix(matrix: Sequence[Sequence[int]]) -> list[DiagramComponent]:
    """Split a Coxeter matrix into components and classify each one.

    Raises InfiniteTypeError when a component is not of finite type.  H3 and
    H4 are classified (they are finite) but flagged non-crystallographic;
    rejecting them is the caller's business.
    """
    n = len(matrix)
    for i in range(n):
        if len(matrix[i]) != n:
            raise ValueError("Coxeter matrix must be square")
        if matrix[i][i] != 1:
            raise ValueError("Coxeter matrix must have 1 on the diagonal")
        for j in range(n):
            mij = matrix[i][j]
            if not isinstance(mij, int) or (i != j and mij < 2):
                raise InfiniteTypeError(
                    "Coxeter matrix entries off the diagonal must be integers >= 2"
                )
            if matrix[j][i] != mij:
                raise ValueError("Coxeter matrix must be symmetric")

    seen: set[int] = set()
    components: list[DiagramComponent] = []
    for start in range(n):
        if start in seen:
            continue
        nodes = [start]
        seen.add(start)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j not in seen and matrix[i][j] >= 3:
                    seen.add(j)
                    nodes.append(j)
                    queue.append(j)
        nodes.sort()
        components.append(_classify_component(matrix, tuple(nodes)))
    return components


def _classify_component(matrix, nodes: tuple[int, ...]) -> DiagramComponent:
    k = len(nodes)
    if k == 1:
        return _component_data("A1", nodes)
    edges = [
        (i, j, matrix[i][j])
        for ai, i in enumerate(nodes)
        for j in nodes[ai + 1 :]
        if matrix[i][j] >= 3
    ]
    if len(edges) != k - 1:
        raise InfiniteTypeError("Coxeter diagram component contains a cycle")
    if k == 2:
        m = edges[0][2]
        label = {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
        return _component_data(label, nodes)

    degree = {i: 0 for i in nodes}
    for i, j, _ in edges:
        degree[i] += 1
        degree[j] += 1
    big = sorted(m for _, _, m in edges if m > 3)
    branch = [i for i in nodes if degree[i] >= 3]

    if not big:
        if not branch:
            return _component_data(f"A{k}", nodes)
        if len(branch) == 1 and degree[branch[0]] == 3:
            legs = sorted(_leg_lengths(edges, branch[0]))
            if legs[0] == legs[1] == 1:
                return _component_data(f"D{k}", nodes)
            if legs == [1, 2, 2] and k == 6:
                return _component_data("E6", nodes)
            if legs == [1, 2, 3] and k == 7:
                return _component_data("E7", nodes)
            if legs == [1, 2, 4] and k == 8:
                return _component_data("E8", nodes)
        raise InfiniteTypeError("branched simply-laced diagram is not of finite type")

    if branch or len(big) > 1:
        raise InfiniteTypeError("diagram with a multiple edge must be a path")
    ends = [i for i in nodes if degree[i] == 1]
    path = _path_order(edges, ends[0])
    marks = [matrix[path[t]][path[t + 1]] for t in range(k - 1)]
    m = big[0]
    if m == 4:
        if marks[0] == 4 or marks[-1] == 4:
            return _component_data(f"B{k}", nodes)
        if k == 4 and marks[1] == 4:
            return _component_data("F4", nodes)
        raise InfiniteTypeError("interior 4-edge diagram is not of finite type")
    if m == 5 and (marks[0] == 5 or marks[-1] == 5) and k in (3, 4):
        return _component_data(f"H{k}", nodes)
    raise InfiniteTypeError(f"diagram with an {m}-edge of rank {k} is not of finite type")


def _leg_lengths(edges, center: int) -> list[int]:
    adjacency: dict[int, list[int]] = {}
    for i, j, _ in edges:
        adjacency.setdefault(i, []).append(j)
        adjacency.setdefault(j, []).append(i)
    lengths = []
    for first in adjacency[center]:
        prev, cur, steps = center, first, 1
        while True:
            nxt = [t for t in adjacency[cur] if t != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            steps += 1
        lengths.append(steps)
    return lengths


def _path_order(edges, end: int) -> list[int]:
    adjacency: dict[int, list[int]] = {}
    for i, j, _ in edges:
        adjacency.setdefault(i, []).append(j)
        adjacency.setdefault(j, []).append(i)
    order, prev, cur = [end], None, end
    while True:
        nxt = [t for t in adjacency[cur] if t != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


# --------------------------------------------------------------------------
# preset Cartan matrices
# --------------------------------------------------------------------------

def _preset_cartan(family: str, n: int) -> list[list[int]]:
    a = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def chain(pairs):
        for i, j in pairs:
            a[i][j] = a[j][i] = -1

    if family == "A":
        chain((i, i + 1) for i in range(n - 1))
    elif family == "B":
        if n < 2:
            raise ValueError("B requires rank >= 2")
        chain((i, i + 1) for i in range(n - 2))
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
    elif family == "C":
        if n < 2:
            raise ValueError("C requires rank >= 2")
        chain((i, i + 1) for i in range(n - 2))
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
    elif family == "D":
        if n < 3:
            raise ValueError("D requires rank >= 3")
        chain((i, i + 1) for i in range(n - 2))
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        chain([(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)])
    elif family == "F":
        if n != 4:
            raise ValueError("F requires rank 4")
        chain([(0, 1), (2, 3)])
        a[1][2] = -1
        a[2][1] = -2
    elif family == "G":
        if n != 2:
            raise ValueError("G requires rank 2")
        a[0][1] = -3
        a[1][0] = -1
    else:
        raise ValueError(f"unknown family {family!r}")
    return a


_TYPE_RE = re.compile(r"^([ABCDEFG])(\d+)$")
_DIHEDRAL_RE = re.compile(r"^I2\((\d+)\)$")


# --------------------------------------------------------------------------
# the system
# --------------------------------------------------------------------------

class CoxeterSystem:
    """A finite Coxeter system (W, S).

    Immutable after construction (memo tables only ever gain entries whose
    values are uniquely determined, so concurrent readers are safe).  Build
    instances through :func:`build_system` or the ``from_*`` classmethods.
    """

    def __init__(self):
        raise TypeError("use build_system() or a CoxeterSystem.from_* classmethod")

    @classmethod
    def _new(cls) -> "CoxeterSystem":
        self = cls.__new__(cls)
        self._elements = None
        self._bruhat_memo = {}
        self._len_cache = {}
        self._refl_cache = {}
        self._caches = {}
        return self

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_type(cls, label: str) -> "CoxeterSystem":
        label = label.strip().upper().replace(" ", "")
        m = _DIHEDRAL_RE.match(label)
        if m:
            order = int(m.group(1))
            if order < 3:
                raise ValueError("I2(m) requires m >= 3")
            return cls._build_dihedral(order, label)
        m = _TYPE_RE.match(label)
        if not m:
            raise ValueError(f"unrecognized type label {label!r}")
        family, n = m.group(1), int(m.group(2))
        if n < 1:
            raise ValueError("rank must be positive")
        return cls._build_crystallographic(_preset_cartan(family, n), label)

    @classmethod
    def from_coxeter_matrix(cls, matrix: Sequence[Sequence[int]]) -> "CoxeterSystem":
        matrix = [list(row) for row in matrix]
        components = classify_coxeter_matrix(matrix)
        if any(c.label in ("H3", "H4") for c in components):
            raise UnsupportedSystemError(
                "types H3/H4 need irrational root data and are not supported"
            )
        if all(c.crystallographic for c in components):
            cartan = _cartan_from_coxeter(matrix)
            label = "x".join(c.label for c in components)
            return cls._build_crystallographic(cartan, label)
        if len(components) == 1 and len(matrix) == 2:
            m = matrix[0][1]
            return cls._build_dihedral(m, f"I2({m})")
        raise UnsupportedSystemError(
            "a non-crystallographic dihedral factor can only be built standalone"
        )

    @classmethod
    def from_cartan_matrix(
        cls, cartan: Sequence[Sequence[int]], label: str | None = None
    ) -> "CoxeterSystem":
        cartan = [list(row) for row in cartan]
        coxeter = _coxeter_from_cartan(cartan)
        components = classify_coxeter_matrix(coxeter)
        if label is None:
            label = "x".join(c.label for c in components)
        return cls._build_crystallographic(cartan, label)

    @classmethod
    def _build_crystallographic(cls, cartan, label) -> "CoxeterSystem":
        self = cls._new()
        self.crystallographic = True
        self.m = None
        self.cartan = tuple(tuple(row) for row in cartan)
        self.rank = len(cartan)
        self.coxeter_matrix = tuple(tuple(row) for row in _coxeter_from_cartan(cartan))
        self._components = classify_coxeter_matrix(self.coxeter_matrix)
        self.type_label = label
        self._generate_roots()
        self._cartan_inv = _invert_rational(self.cartan)
        cols = tuple(tuple(1 if k == j else 0 for k in range(self.rank)) for j in range(self.rank))
        self.identity = Element(self, cols, 0)
        self.generators = tuple(
            Element(self, self._simple_reflection_cols(j), 1) for j in range(self.rank)
        )
        return self

    @classmethod
    def _build_dihedral(cls, m: int, label: str) -> "CoxeterSystem":
        self = cls._new()
        self.crystallographic = False
        self.cartan = None
        self.m = m
        self.rank = 2
        self.coxeter_matrix = ((1, m), (m, 1))
        self._components = classify_coxeter_matrix(self.coxeter_matrix)
        self.type_label = label
        self._dihedral_tables(m)
        self.identity = Element(self, (), 0)
        self.generators = (Element(self, (1,), 1), Element(self, (2,), 1))
        return self

    # -- crystallographic internals ---------------------------------------

    def _generate_roots(self) -> None:
        rank, cartan = self.rank, self.cartan
        simple = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
        found = set(simple)
        frontier = list(simple)
        expected = sum(c.n_positive for c in self._components)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(rank):
                    pairing = sum(cartan[i][j] * root[j] for j in range(rank))
                    img = list(root)
                    img[i] -= pairing
                    img_t = tuple(img)
                    if img_t not in found and all(c >= 0 for c in img_t):
                        found.add(img_t)
                        nxt.append(img_t)
            frontier = nxt
            if len(found) > expected:
                raise InfiniteTypeError("root generation exceeded the finite-type bound")
        if len(found) != expected:
            raise InfiniteTypeError("root system does not close up at the expected count")
        roots = sorted(found, key=lambda r: (sum(r), r))
        self.positive_roots = tuple(roots)
        self._root_index = {r: i for i, r in enumerate(roots)}

        # symmetrizers d_i with d_i * a_ij = d_j * a_ji, solved along the diagram
        d: list[Fraction | None] = [None] * rank
        for start in range(rank):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(rank):
                    if i != j and cartan[i][j] and d[j] is None:
                        d[j] = d[i] * cartan[i][j] / cartan[j][i]
                        stack.append(j)
        self._sym = tuple(d)  # type: ignore[arg-type]

        coroots = []
        for root in roots:
            half_norm = Fraction(0)
            for j in range(rank):
                if root[j]:
                    for k in range(rank):
                        if root[k]:
                            half_norm += root[j] * root[k] * d[j] * cartan[j][k]
            half_norm /= 2
            coroot = tuple(Fraction(c) * dj / half_norm for c, dj in zip(root, d))
            if any(x.denominator != 1 for x in coroot):
                raise InfiniteTypeError("non-integral coroot: Cartan matrix is invalid")
            coroots.append(tuple(int(x) for x in coroot))
        self.coroots = tuple(coroots)

    def _simple_reflection_cols(self, i: int) -> Key:
        """Matrix columns of s_i acting on the root lattice (0-based i)."""
        rank, cartan = self.rank, self.cartan
        cols = []
        for j in range(rank):
            col = [1 if k == j else 0 for k in range(rank)]
            col[i] -= cartan[i][j]
            cols.append(tuple(col))
        return tuple(cols)

    def reflection(self, root_index: int) -> "Element":
        """The reflection in the positive root with the given index."""
        self._require_crystallographic()
        el = self._refl_cache.get(root_index)
        if el is None:
            rank, cartan = self.rank, self.cartan
            root = self.positive_roots[root_index]
            coroot = self.coroots[root_index]
            cols = []
            for j in range(rank):
                pairing = sum(coroot[k] * cartan[k][j] for k in range(rank))
                cols.append(
                    tuple((1 if k == j else 0) - pairing * root[k] for k in range(rank))
                )
            el = Element(self, tuple(cols))
            self._refl_cache[root_index] = el
        return el

    def _act(self, cols: Key, vec: Sequence) -> tuple:
        rank = self.rank
        out = [0] * rank
        for j, c in enumerate(vec):
            if c:
                col = cols[j]
                for k in range(rank):
                    out[k] += c * col[k]
        return tuple(out)

    # -- dihedral internals ------------------------------------------------

    def _dihedral_tables(self, m: int) -> None:
        # elements of the dihedral group encoded as (a, b) = t^a * s1^b
        # with t = s1*s2, subject to s1*t*s1 = t^-1
        word_of: dict[tuple[int, int], tuple[int, ...]] = {(0, 0): ()}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for ab in frontier:
                word = word_of[ab]
                for s in (1, 2):
                    prod = _dihedral_mult(ab, _DIHEDRAL_GEN[s], m)
                    cand = word + (s,)
                    if prod not in word_of:
                        word_of[prod] = cand
                        nxt.append(prod)
                    elif len(word_of[prod]) == len(cand) and cand < word_of[prod]:
                        word_of[prod] = cand  # canonical long word starts with 1
            frontier = nxt
        self._ab_to_word = word_of
        self._word_to_ab = {w: ab for ab, w in word_of.items()}

    # -- shared API ----------------------------------------------------------

    def _require_crystallographic(self) -> None:
        if not self.crystallographic:
            raise UnsupportedSystemError(
                f"operation requires a crystallographic system, not {self.type_label}"
            )

    @property
    def order(self) -> int:
        """|W|, from the classification (no enumeration)."""
        n = 1
        for c in self._components:
            n *= c.order
        return n

    @property
    def n_positive_roots(self) -> int:
        return sum(c.n_positive for c in self._components)

    @property
    def longest_length(self) -> int:
        return self.n_positive_roots

    def generator(self, i: int) -> "Element":
        """The simple reflection s_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")
        return self.generators[i - 1]

    def element(self, word: str | Iterable[int]) -> "Element":
        """The product of simple reflections along a word."""
        if isinstance(word, str):
            word = parse_word(word)
        w = self.identity
        for i in word:
            w = w * self.generator(i)
        return w

    def descriptor(self) -> str:
        """Canonical text descriptor used to key caches."""
        if self.type_label is not None:
            return self.type_label
        return "cox:" + json.dumps([list(r) for r in self.coxeter_matrix])

    def elements(self) -> tuple["Element", ...]:
        """All |W| elements, breadth-first by length (deterministic order)."""
        return self.element_table().elements

    def longest_element(self) -> "Element":
        table = self.element_table()
        return table.elements[-1]

    def element_table(self) -> "ElementTable":
        if self._elements is None:
            self._elements = ElementTable(self)
        return self._elements

    # -- weights ---------------------------------------------------------------

    def weight(self, coords: str | Iterable) -> "Weight":
        self._require_crystallographic()
        if isinstance(coords, str):
            parts = coords.split(",") if coords else []
            coords = [Fraction(p.strip()) for p in parts]
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return Weight(self, coords)

    def rho(self) -> "Weight":
        """The weight with all fundamental coordinates equal to 1."""
        return self.weight([1] * self.rank)

    def weight_from_root_coords(self, coords: Iterable) -> "Weight":
        self._require_crystallographic()
        x = [Fraction(c) for c in coords]
        fw = tuple(
            sum((self.cartan[k][j] * x[j] for j in range(self.rank)), Fraction(0))
            for k in range(self.rank)
        )
        return Weight(self, fw)

    def _fw_to_root(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        inv = self._cartan_inv
        return tuple(
            sum((inv[j][k] * coords[k] for k in range(self.rank)), Fraction(0))
            for j in range(self.rank)
        )

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.descriptor()})"


_DIHEDRAL_GEN = {1: (0, 1), 2: (-1, 1)}


def _dihedral_mult(ab, cd, m: int) -> tuple[int, int]:
    a, b = ab
    c, d = cd
    return ((a + (c if b == 0 else -c)) % m, b ^ d)


def _cartan_from_coxeter(matrix) -> list[list[int]]:
    n = len(matrix)
    off = {3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}
    cartan = [[2 * (i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = matrix[i][j]
            if m > 2:
                cartan[i][j], cartan[j][i] = off[m]
    return cartan


def _coxeter_from_cartan(cartan) -> list[list[int]]:
    n = len(cartan)
    prod_to_m = {0: 2, 1: 3, 2: 4, 3: 6}
    out = [[1] * n for _ in range(n)]
    for i in range(n):
        if cartan[i][i] != 2:
            raise ValueError("Cartan matrix must have 2 on the diagonal")
        for j in range(n):
            if i == j:
                continue
            if cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise ValueError("invalid Cartan matrix")
            p = cartan[i][j] * cartan[j][i]
            if p not in prod_to_m:
                raise InfiniteTypeError("Cartan matrix is not of finite type")
            out[i][j] = prod_to_m[p]
    return out


def _invert_rational(matrix) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(i == k) for k in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------

class Element:
    """A group element with a canonical hashable key.

    Two elements are equal iff they belong to the same system and their
    canonical keys agree.  Lengths, descent sets, inverses and reduced words
    are computed on demand and cached.
    """

    __slots__ = ("system", "key", "_len", "_hash", "_inv", "_word")

    def __init__(self, system: CoxeterSystem, key: Key, length: int | None = None):
        self.system = system
        self.key = key
        self._len = length
        self._hash = None
        self._inv = None
        self._word = None

    # -- basics ------------------------------------------------------------

    @property
    def length(self) -> int:
        if self._len is None:
            cached = self.system._len_cache.get(self.key)
            if cached is None:
                cached = self._compute_length()
                self.system._len_cache[self.key] = cached
            self._len = cached
        return self._len

    def _compute_length(self) -> int:
        sys = self.system
        if not sys.crystallographic:
            return len(self.key)
        count = 0
        for root in sys.positive_roots:
            img = sys._act(self.key, root)
            if any(c < 0 for c in img):
                count += 1
        return count

    @property
    def is_identity(self) -> bool:
        if self.system.crystallographic:
            return self.key == self.system.identity.key
        return not self.key

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system:
            raise OwnerMismatchError("elements belong to different systems")
        sys = self.system
        if sys.crystallographic:
            cols = tuple(sys._act(self.key, col) for col in other.key)
            return Element(sys, cols)
        ab = _dihedral_mult(
            sys._word_to_ab[self.key], sys._word_to_ab[other.key], sys.m
        )
        return Element(sys, sys._ab_to_word[ab])

    def inverse(self) -> "Element":
        if self._inv is None:
            sys = self.system
            if sys.crystallographic:
                inv_cols = _invert_rational(tuple(zip(*self.key)))
                # key columns are images of simple roots; the matrix whose
                # rows we inverted is the action matrix, so transpose back
                cols = tuple(
                    tuple(int(inv_cols[k][j]) for k in range(sys.rank))
                    for j in range(sys.rank)
                )
                self._inv = Element(sys, cols)
            else:
                a, b = sys._word_to_ab[self.key]
                ab = (a, 1) if b else ((-a) % sys.m, 0)
                self._inv = Element(sys, sys._ab_to_word[ab])
            self._inv._inv = self
        return self._inv

    # -- descents ------------------------------------------------------------

    @property
    def right_descents(self) -> frozenset[int]:
        """{i : l(w s_i) < l(w)}, 1-based."""
        sys = self.system
        if sys.crystallographic:
            return frozenset(
                j + 1 for j in range(sys.rank) if any(c < 0 for c in self.key[j])
            )
        if not self.key:
            return frozenset()
        if len(self.key) == sys.m:
            return frozenset((1, 2))
        return frozenset((self.key[-1],))

    @property
    def left_descents(self) -> frozenset[int]:
        """{i : l(s_i w) < l(w)}, 1-based."""
        sys = self.system
        if sys.crystallographic:
            return self.inverse().right_descents
        if not self.key:
            return frozenset()
        if len(self.key) == sys.m:
            return frozenset((1, 2))
        return frozenset((self.key[0],))

    # -- words ------------------------------------------------------------------

    def reduced_word(self) -> tuple[int, ...]:
        """The lexicographically smallest reduced word (1-based indices)."""
        if self._word is None:
            if not self.system.crystallographic:
                self._word = self.key
            else:
                word = []
                m = self.inverse()
                while True:
                    descents = m.right_descents
                    if not descents:
                        break
                    s = min(descents)
                    word.append(s)
                    m = m * self.system.generator(s)
                self._word = tuple(word)
        return self._word

    def word_str(self) -> str:
        return format_word(self.reduced_word(), self.system.rank)

    # -- comparison ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.system is other.system and self.key == other.key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self) -> str:
        word = self.word_str() or "e"
        return f"Element({word!r}, {self.system.descriptor()})"


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a word: concatenated digits, or comma-separated for indices >= 10."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return tuple(int(ch) for ch in text)


def format_word(word: Sequence[int], rank: int) -> str:
    if rank >= 10:
        return ",".join(str(i) for i in word)
    return "".join(str(i) for i in word)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

class ElementTable:
    """Indexed enumeration of a finite system with multiplication tables.

    Elements are ordered by length, ties broken by canonical key, so the
    indexing is deterministic.  All entries are uniquely determined by the
    system; concurrent duplicate construction would be wasteful but safe.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        elements: list[Element] = [system.identity]
        index: dict[Key, int] = {system.identity.key: 0}
        lengths: list[int] = [0]
        frontier = [system.identity]
        depth = 0
        while frontier:
            depth += 1
            new: dict[Key, Element] = {}
            for w in frontier:
                for s in system.generators:
                    u = w * s
                    if u.key not in index and u.key not in new:
                        new[u.key] = u
            frontier = [new[k] for k in sorted(new)]
            for u in frontier:
                u._len = depth
                index[u.key] = len(elements)
                elements.append(u)
                lengths.append(depth)
        self.elements = tuple(elements)
        self.index = index
        self.length = tuple(lengths)
        n = len(elements)
        gens = system.generators
        self.rmult = tuple(
            tuple(index[(elements[i] * s).key] for s in gens) for i in range(n)
        )
        self.lmult = tuple(
            tuple(index[(s * elements[i]).key] for s in gens) for i in range(n)
        )

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, w: Element) -> int:
        return self.index[w.key]

    def left_descent_indices(self, i: int) -> list[int]:
        """0-based generator indices s with l(s w) < l(w)."""
        li, lm = self.length, self.lmult[i]
        return [s for s in range(self.system.rank) if li[lm[s]] < li[i]]


def enumerate_elements(system: CoxeterSystem) -> tuple[Element, ...]:
    return system.elements()


def longest_element(system: CoxeterSystem) -> Element:
    w0 = system.longest_element()
    full = frozenset(range(1, system.rank + 1))
    if w0.right_descents != full:
        raise AssertionError("longest element does not have a full descent set")
    return w0


def build_system(descriptor) -> CoxeterSystem:
    """Build a finite Coxeter system from a type label or a Coxeter matrix."""
    if isinstance(descriptor, str):
        return CoxeterSystem.from_type(descriptor)
    return CoxeterSystem.from_coxeter_matrix(descriptor)


# --------------------------------------------------------------------------
# Bruhat order
# --------------------------------------------------------------------------

def bruhat_leq(y: Element, x: Element) -> bool:
    """Whether y <= x in Bruhat order.

    Implements the descent recursion: for s with sx < x, we have y <= x iff
    (sy <= sx when sy < y) or (y <= sx when sy > y); memoized per system.
    """
    if y.system is not x.system:
        raise OwnerMismatchError("elements belong to different systems")
    memo = y.system._bruhat_memo
    gens = y.system.generators

    def rec(y: Element, x: Element) -> bool:
        if y.key == x.key:
            return True
        if y.length >= x.length:
            return False
        if y.is_identity:
            return True
        key = (y.key, x.key)
        cached = memo.get(key)
        if cached is None:
            s = gens[min(x.left_descents) - 1]
            sx = s * x
            sy = s * y
            cached = rec(sy, sx) if sy.length < y.length else rec(y, sx)
            memo[key] = cached
        return cached

    return rec(y, x)


# --------------------------------------------------------------------------
# weights, the dot action and isotropy groups
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """A rational weight in the basis of fundamental weights."""

    system: CoxeterSystem
    coords: tuple[Fraction, ...]

    def pairing(self, root_index: int) -> Fraction:
        """<lambda, alpha^vee> for the positive root with the given index."""
        coroot = self.system.coroots[root_index]
        return sum((c * m for c, m in zip(self.coords, coroot)), Fraction(0))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.system, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.system, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.system, tuple(-a for a in self.coords))

    def _check(self, other: "Weight") -> None:
        if other.system is not self.system:
            raise OwnerMismatchError("weights belong to different systems")

    def __repr__(self) -> str:
        return f"Weight({self.serialize()!r}, {self.system.descriptor()})"


def dot_action(w: Element, weight: Weight) -> Weight:
    """w . lambda = w(lambda + rho) - rho, exactly."""
    sys = w.system
    sys._require_crystallographic()
    if weight.system is not sys:
        raise OwnerMismatchError("weight belongs to a different system")
    shifted = [c + 1 for c in weight.coords]
    x = sys._fw_to_root(shifted)
    y = sys._act(w.key, x)
    fw = [
        sum((sys.cartan[k][j] * y[j] for j in range(sys.rank)), Fraction(0)) - 1
        for k in range(sys.rank)
    ]
    return Weight(sys, tuple(fw))


def _canonical_simple_system(system: CoxeterSystem, indices: Iterable[int]) -> list[int]:
    """Canonical simple system of a reflection-closed set of positive roots.

    A member alpha is simple iff its reflection sends no other member to a
    negative root, i.e. the only positive root of the subsystem inverted by
    s_alpha is alpha itself.
    """
    indices = sorted(set(indices))
    roots = [system.positive_roots[i] for i in indices]
    out = []
    for i in indices:
        s_alpha = system.reflection(i)
        inverted = sum(
            1 for r in roots if any(c < 0 for c in system._act(s_alpha.key, r))
        )
        if inverted == 1:
            out.append(i)
    return sorted(out, key=lambda i: system.positive_roots[i])


def integral_root_data(weight: Weight) -> tuple[list[int], list[int]]:
    """Positive-root indices with <lambda+rho, alpha^vee> integral resp. zero."""
    sys = weight.system
    sys._require_crystallographic()
    integral, zero = [], []
    for i in range(len(sys.positive_roots)):
        val = weight.pairing(i) + sum(sys.coroots[i])
        if val.denominator == 1:
            integral.append(i)
            if val == 0:
                zero.append(i)
    return integral, zero


def isotropy_groups(weight: Weight):
    """Generating reflections of the two isotropy groups of a weight.

    Returns ``(gens_integral, gens_stabilizer, integral_flag)`` where the
    first component generates the subgroup attached to the coset of the
    weight modulo the root lattice and the second generates the stabilizer
    under the dot action; the latter is always contained in the former.
    """
    sys = weight.system
    integral, zero = integral_root_data(weight)
    gens_bar = tuple(sys.reflection(i) for i in _canonical_simple_system(sys, integral))
    gens_stab = tuple(sys.reflection(i) for i in _canonical_simple_system(sys, zero))
    return gens_bar, gens_stab, weight.is_integral


def subsystem_presentation(
    system: CoxeterSystem, positive_root_indices: Iterable[int]
) -> tuple[CoxeterSystem, tuple[int, ...]]:
    """Re-present a reflection-closed root subsystem as its own Coxeter system.

    Returns the new system together with the ambient positive-root index of
    each of its simple roots (in generator order).  The input set must be
    stable under its own reflections up to sign.
    """
    system._require_crystallographic()
    indices = sorted(set(positive_root_indices))
    roots = {system.positive_roots[i] for i in indices}
    for i in indices:
        s_alpha = system.reflection(i)
        for r in roots:
            img = system._act(s_alpha.key, r)
            if any(c < 0 for c in img):
                img = tuple(-c for c in img)
            if img not in roots:
                raise ValueError("root subset is not reflection-closed")
    simple = _canonical_simple_system(system, indices)
    cartan = [
        [
            sum(
                system.coroots[i][k] * system.cartan[k][j] * system.positive_roots[jr][j]
                for k in range(system.rank)
                for j in range(system.rank)
            )
            for jr in simple
        ]
        for i in simple
    ]
    sub = CoxeterSystem.from_cartan_matrix(cartan)
    return sub, tuple(simple)
