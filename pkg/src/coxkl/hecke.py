"""The Iwahori-Hecke algebra over integer Laurent polynomials in v.

Conventions.  The standard basis {H_x} satisfies the quadratic relation

    H_s^2 = H_e + (v^-1 - v) H_s,

so right multiplication acts by H_x H_s = H_{xs} when l(xs) > l(x) and
H_x H_s = H_{xs} + (v^-1 - v) H_x otherwise (mirror rule on the left).  The
bar involution is the ring homomorphism with bar(v) = v^-1 and
bar(H_x) = (H_{x^-1})^-1; on a generator bar(H_s) = H_s + (v - v^-1) H_e.
The canonical basis element for x is the unique bar-invariant

    C(x) = H_x + sum_{y < x} h_{y,x} H_y       with h_{y,x} in v*Z[v],

computed by induction: pick s with sx < x, form C(s) C(sx) and subtract
mu(z, sx) C(z) over the z with sz < z, where mu is the coefficient of v^1
in h.  The classical polynomials in the q-convention are recovered through
h_{y,x}(v) = v^(l(x)-l(y)) P_{y,x}(v^-2).

A second, fully independent route to the same data goes through the
R-polynomial recursion and the bar-invariance identity

    q^(l(x)-l(y)) bar(P_{y,x}) = sum_{y <= z <= x} R_{y,z} P_{z,x},

solved downward on l(y) using the strict degree bound
deg_q P_{y,x} <= (l(x)-l(y)-1)/2.  The two routes never share code beyond
group arithmetic, which makes their agreement a meaningful check.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .coxeter import CoxeterSystem, Element, bruhat_leq
from .errors import OwnerMismatchError
from .laurent import LaurentPoly, P_to_h, h_to_P

__all__ = [
    "HeckeElement",
    "KLTable",
    "ClassicalKLTable",
    "std_mult_gen",
    "bar_involution",
    "kl_basis",
    "mu",
    "h_polynomial",
    "r_polynomials",
    "kl_polynomial_recursive",
]

Pairs = tuple[tuple[int, int], ...]  # (exponent, coefficient), ascending


# --------------------------------------------------------------------------
# elements of the algebra
# --------------------------------------------------------------------------

class HeckeElement:
    """A finite Z[v,v^-1]-linear combination of standard basis elements.

    Zero coefficients are never stored; equality is term-wise.
    """

    __slots__ = ("system", "terms")

    def __init__(self, system: CoxeterSystem, terms: dict[Element, LaurentPoly] | None = None):
        self.system = system
        self.terms: dict[Element, LaurentPoly] = {}
        if terms:
            for w, p in terms.items():
                if w.system is not system:
                    raise OwnerMismatchError("term element from a different system")
                if not p.is_zero:
                    self.terms[w] = p

    @classmethod
    def std_basis(cls, x: Element) -> "HeckeElement":
        return cls(x.system, {x: LaurentPoly.one()})

    @classmethod
    def zero(cls, system: CoxeterSystem) -> "HeckeElement":
        return cls(system)

    def coefficient(self, x: Element) -> LaurentPoly:
        return self.terms.get(x, LaurentPoly.zero())

    def support(self) -> list[Element]:
        return sorted(self.terms, key=lambda w: (w.length, w.key))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for w, p in other.terms.items():
            s = out.get(w)
            s = p if s is None else s + p
            if s.is_zero:
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElement(self.system, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for w, p in other.terms.items():
            s = out.get(w)
            s = -p if s is None else s - p
            if s.is_zero:
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElement(self.system, out)

    def scale(self, p: LaurentPoly | int) -> "HeckeElement":
        if isinstance(p, int):
            p = LaurentPoly.term(p)
        if p.is_zero:
            return HeckeElement(self.system)
        return HeckeElement(self.system, {w: q * p for w, q in self.terms.items()})

    def mult_gen(self, s: int, side: str = "right") -> "HeckeElement":
        """Multiply by the standard generator H_s on the given side."""
        return _mult_gen(self, s, side, canonical=False)

    def mult_kl_gen(self, s: int, side: str = "right") -> "HeckeElement":
        """Multiply by the canonical generator C(s) = H_s + v H_e."""
        return _mult_gen(self, s, side, canonical=True)

    def _check(self, other: "HeckeElement") -> None:
        if other.system is not self.system:
            raise OwnerMismatchError("operands live over different systems")

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.system is other.system and self.terms == other.terms

    def __hash__(self):
        raise TypeError("HeckeElement is not hashable")

    def __repr__(self) -> str:
        if self.is_zero:
            return "HeckeElement(0)"
        bits = [
            f"({p.canonical_str()})*H({w.word_str() or 'e'})"
            for w, p in sorted(self.terms.items(), key=lambda t: (t[0].length, t[0].key))
        ]
        return "HeckeElement(" + " + ".join(bits) + ")"


def _mult_gen(h: HeckeElement, s: int, side: str, canonical: bool) -> HeckeElement:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    sys = h.system
    gen = sys.generator(s)
    out: dict[Element, LaurentPoly] = {}

    def acc(w: Element, p: LaurentPoly) -> None:
        cur = out.get(w)
        cur = p if cur is None else cur + p
        if cur.is_zero:
            out.pop(w, None)
        else:
            out[w] = cur

    for w, p in h.terms.items():
        ws = w * gen if side == "right" else gen * w
        up = ws.length > w.length
        acc(ws, p)
        if canonical:
            # C(s) action: H_{ws} + v H_w upward, H_{ws} + v^-1 H_w downward
            acc(w, p.shifted(1 if up else -1))
        elif not up:
            acc(w, p.shifted(-1) - p.shifted(1))
    return HeckeElement(sys, out)


def std_mult_gen(h: HeckeElement, s: int, side: str = "right") -> HeckeElement:
    """Linear extension of the quadratic-relation action of H_s."""
    return h.mult_gen(s, side)


# --------------------------------------------------------------------------
# bar involution
# --------------------------------------------------------------------------

def _bar_rows(system: CoxeterSystem) -> dict:
    return system._caches.setdefault("hecke_bar_rows", {})


def _bar_std(x: Element) -> dict[Element, LaurentPoly]:
    """bar(H_x) as a term dictionary, memoized per system."""
    rows = _bar_rows(x.system)
    row = rows.get(x.key)
    if row is not None:
        return row
    if x.is_identity:
        row = {x: LaurentPoly.one()}
    else:
        s = min(x.left_descents)
        gen = x.system.generator(s)
        tail = _bar_std(gen * x)
        row = {}
        # bar(H_x) = bar(H_s) bar(H_{sx}) with bar(H_s) = H_s + (v - v^-1) H_e
        for y, p in tail.items():
            sy = gen * y
            up = sy.length > y.length
            cur = row.get(sy)
            row[sy] = p if cur is None else cur + p
            if up:
                q = p.shifted(1) - p.shifted(-1)
                cur = row.get(y)
                q = q if cur is None else cur + q
                if q.is_zero:
                    row.pop(y, None)
                else:
                    row[y] = q
        row = {y: p for y, p in row.items() if not p.is_zero}
    rows[x.key] = row
    return row


def bar_involution(h: HeckeElement) -> HeckeElement:
    """The bar involution: v -> v^-1 on coefficients, H_x -> (H_{x^-1})^-1."""
    out = HeckeElement.zero(h.system)
    for x, p in h.terms.items():
        row = HeckeElement(h.system, dict(_bar_std(x)))
        out = out + row.scale(p.bar())
    return out


# --------------------------------------------------------------------------
# canonical basis via the inductive algorithm
# --------------------------------------------------------------------------

class KLTable:
    """Memoized canonical-basis data for one system.

    Rows are keyed by the enumeration index of x and hold, for every y <= x,
    the polynomial h_{y,x} as an ascending (exponent, coefficient) tuple.
    Row values are uniquely determined, so concurrent duplicate computation
    is wasteful but harmless; lookups never mutate existing entries.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._t = system.element_table()
        self._rows: dict[int, dict[int, Pairs]] = {}
        self._mu_cache: dict[tuple[int, int], int] = {}

    # -- the induction ------------------------------------------------------

    def _row(self, xi: int) -> dict[int, Pairs]:
        row = self._rows.get(xi)
        if row is not None:
            return row
        t = self._t
        if t.length[xi] == 0:
            row = {xi: ((0, 1),)}
            self._rows[xi] = row
            return row
        s = min(t.left_descent_indices(xi))
        sxi = t.lmult[xi][s]
        base = self._row(sxi)
        out: dict[int, dict[int, int]] = {}

        def acc(yi: int, pairs: Pairs, shift: int, scale: int = 1) -> None:
            d = out.get(yi)
            if d is None:
                d = {}
                out[yi] = d
            for e, c in pairs:
                e += shift
                d[e] = d.get(e, 0) + c * scale

        length = t.length
        for yi, pairs in base.items():
            syi = t.lmult[yi][s]
            if length[syi] > length[yi]:
                acc(syi, pairs, 0)
                acc(yi, pairs, 1)
            else:
                acc(syi, pairs, 0)
                acc(yi, pairs, -1)
        for zi, pairs in base.items():
            m = 0
            for e, c in pairs:
                if e == 1:
                    m = c
                    break
            if m and length[t.lmult[zi][s]] < length[zi]:
                for yi2, pairs2 in self._row(zi).items():
                    acc(yi2, pairs2, 0, -m)

        row = {}
        ldiff_base = length[xi]
        for yi, d in out.items():
            pairs = tuple(sorted((e, c) for e, c in d.items() if c))
            if not pairs:
                continue
            self._validate(pairs, ldiff_base - length[yi], yi == xi)
            row[yi] = pairs
        self._rows[xi] = row
        return row

    @staticmethod
    def _validate(pairs: Pairs, ldiff: int, diagonal: bool) -> None:
        if diagonal:
            if pairs != ((0, 1),):
                raise AssertionError("diagonal canonical-basis coefficient is not 1")
            return
        if pairs[-1] != (ldiff, 1):
            raise AssertionError("top coefficient of h is not v^(length difference)")
        for e, c in pairs:
            if c < 0 or e < 1 or e > ldiff or (ldiff - e) % 2:
                raise AssertionError("h-polynomial violates its structural bounds")

    # -- public queries ---------------------------------------------------------

    def _index(self, w: Element) -> int:
        if w.system is not self.system:
            raise OwnerMismatchError("element belongs to a different system")
        return self._t.index_of(w)

    def h_polynomial(self, y: Element, x: Element) -> LaurentPoly:
        """h_{y,x}; the zero polynomial unless y <= x."""
        xi, yi = self._index(x), self._index(y)
        pairs = self._row(xi).get(yi)
        return LaurentPoly(pairs or ())

    def kl_polynomial(self, y: Element, x: Element) -> LaurentPoly:
        """P_{y,x} in the q-convention (zero unless y <= x)."""
        h = self.h_polynomial(y, x)
        return h_to_P(h, x.length - y.length)

    def mu(self, y: Element, x: Element) -> int:
        """The coefficient of v^1 in h_{y,x}."""
        key = (self._index(y), self._index(x))
        m = self._mu_cache.get(key)
        if m is None:
            m = self.h_polynomial(y, x).coefficient(1)
            self._mu_cache[key] = m
        return m

    def kl_basis(self, x: Element) -> HeckeElement:
        """The canonical basis element for x."""
        xi = self._index(x)
        els = self._t.elements
        return HeckeElement(
            self.system,
            {els[yi]: LaurentPoly(pairs) for yi, pairs in self._row(xi).items()},
        )

    def compute_all(self) -> None:
        for xi in range(len(self._t)):
            self._row(xi)

    def rows(self) -> Iterator[tuple[Element, Element, Pairs]]:
        """All computed (x, y, h-pairs) triples in canonical order."""
        els = self._t.elements
        for xi in sorted(self._rows, key=lambda i: (self._t.length[i], els[i].key)):
            row = self._rows[xi]
            for yi in sorted(row, key=lambda i: (self._t.length[i], els[i].key)):
                yield els[xi], els[yi], row[yi]

    def entry_count(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def load_row(self, x: Element, entries: Iterable[tuple[Element, Pairs]]) -> None:
        """Install a complete precomputed row for x (used by the cache)."""
        xi = self._index(x)
        row = {}
        for y, pairs in entries:
            pairs = tuple((int(e), int(c)) for e, c in pairs)
            row[self._index(y)] = pairs
            self._validate(pairs, x.length - y.length, y.key == x.key)
        self._rows[xi] = row


def kl_basis(x: Element, table: KLTable) -> HeckeElement:
    return table.kl_basis(x)


def mu(y: Element, x: Element, table: KLTable) -> int:
    return table.mu(y, x)


def h_polynomial(y: Element, x: Element, table: KLTable) -> LaurentPoly:
    return table.h_polynomial(y, x)


# --------------------------------------------------------------------------
# the classical route: R-polynomials and the downward induction
# --------------------------------------------------------------------------

class ClassicalKLTable:
    """R-polynomials and Kazhdan-Lusztig polynomials, the classical way.

    Everything here lives in the q-convention and never touches the
    canonical-basis induction above.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._r: dict[tuple, LaurentPoly] = {}
        self._p: dict[tuple, dict] = {}

    def r_polynomial(self, y: Element, x: Element) -> LaurentPoly:
        """R_{y,x} in q; zero unless y <= x."""
        if y.system is not self.system or x.system is not self.system:
            raise OwnerMismatchError("element belongs to a different system")
        if y.key == x.key:
            return LaurentPoly.one()
        if not bruhat_leq(y, x):
            return LaurentPoly.zero()
        key = (y.key, x.key)
        r = self._r.get(key)
        if r is None:
            s = self.system.generator(min(x.left_descents))
            sx, sy = s * x, s * y
            if sy.length < y.length:
                r = self.r_polynomial(sy, sx)
            else:
                q_minus_1 = LaurentPoly({1: 1, 0: -1})
                r = q_minus_1 * self.r_polynomial(y, sx) + LaurentPoly.term(1, 1) * self.r_polynomial(sy, sx)
            self._r[key] = r
        return r

    def kl_polynomial(self, y: Element, x: Element) -> LaurentPoly:
        """P_{y,x} in q, from bar invariance; zero unless y <= x."""
        if y.key == x.key:
            return LaurentPoly.one()
        if not bruhat_leq(y, x):
            return LaurentPoly.zero()
        col = self._p.setdefault(x.key, {x.key: LaurentPoly.one()})
        p = col.get(y.key)
        if p is not None:
            return p
        interval = [
            z
            for z in self.system.elements()
            if y.length < z.length <= x.length and bruhat_leq(y, z) and bruhat_leq(z, x)
        ]
        acc = LaurentPoly.zero()
        for z in interval:
            acc = acc + self.r_polynomial(y, z) * self.kl_polynomial(z, x)
        ldiff = x.length - y.length
        bound = (ldiff - 1) // 2
        p = LaurentPoly({j: acc.coefficient(ldiff - j) for j in range(bound + 1)})
        if p.coefficient(0) != 1:
            raise AssertionError("constant term of a Kazhdan-Lusztig polynomial is not 1")
        # consistency: acc must equal q^ldiff bar(P) - P exactly
        check = LaurentPoly(
            {ldiff - j: c for j, c in p.items()}
        ) - p
        if check != acc:
            raise AssertionError("bar-invariance identity failed in the downward induction")
        col[y.key] = p
        return p


def r_polynomials(system: CoxeterSystem) -> dict[tuple[Element, Element], LaurentPoly]:
    """R_{y,x} for every comparable pair y <= x of a finite system."""
    table = ClassicalKLTable(system)
    out = {}
    for x in system.elements():
        for y in system.elements():
            if y.length <= x.length and bruhat_leq(y, x):
                out[(y, x)] = table.r_polynomial(y, x)
    return out


def kl_polynomial_recursive(
    y: Element, x: Element, table: ClassicalKLTable | None = None
) -> LaurentPoly:
    """P_{y,x} by the classical recursion (independent of the canonical route)."""
    if table is None:
        table = ClassicalKLTable(y.system)
    return table.kl_polynomial(y, x)


def cross_contract(y: Element, x: Element, table: KLTable, classical: ClassicalKLTable) -> bool:
    """Whether both algorithms agree on the pair (y, x)."""
    h = table.h_polynomial(y, x)
    return h == P_to_h(classical.kl_polynomial(y, x), x.length - y.length)
