"""Character-level calculus on top of the canonical basis.

Products of canonical generators along a word (the characters of
wall-crossing composites), their decomposition back into the canonical
basis, one-step branching multiplicities, graded hom ranks against the
dual-standard family, and the tilting character attached to a parabolic
coset.  No bimodule or module category is ever constructed here; the
polynomials themselves are the whole interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coxeter import Element
from .errors import DescentError
from .hecke import HeckeElement, KLTable
from .laurent import LaurentPoly
from .parabolic import Coset, CosetTable

__all__ = [
    "StandardCharacter",
    "bs_character",
    "decompose_kl",
    "reconstruct",
    "branch_multiplicities",
    "nabla_hom_rank",
    "TiltingCharacter",
    "tilting_character",
]


@dataclass(frozen=True)
class StandardCharacter:
    """A shifted standard object: delta carries shift -l(y), nabla +l(y)."""

    element: Element
    flavor: str  # "delta" | "nabla"

    def __post_init__(self):
        if self.flavor not in ("delta", "nabla"):
            raise ValueError("flavor must be 'delta' or 'nabla'")

    @property
    def shift(self) -> int:
        return -self.element.length if self.flavor == "delta" else self.element.length

    @classmethod
    def delta(cls, y: Element) -> "StandardCharacter":
        return cls(y, "delta")

    @classmethod
    def nabla(cls, y: Element) -> "StandardCharacter":
        return cls(y, "nabla")


def bs_character(table: KLTable, word: Iterable[int]) -> HeckeElement:
    """Product of canonical generators along the word, in order.

    The empty word gives the identity H_e.
    """
    h = HeckeElement.std_basis(table.system.identity)
    for s in word:
        h = h.mult_kl_gen(s, side="right")
    return h


def decompose_kl(h: HeckeElement, table: KLTable) -> dict[Element, LaurentPoly]:
    """Expand h in the canonical basis by greedy elimination from the top.

    The expansion is unique; reconstruction through :func:`reconstruct`
    returns the input exactly.
    """
    rest = h
    out: dict[Element, LaurentPoly] = {}
    while not rest.is_zero:
        y = max(rest.terms, key=lambda w: (w.length, w.key))
        c = rest.terms[y]
        out[y] = c
        rest = rest - table.kl_basis(y).scale(c)
    return out


def reconstruct(mults: Mapping[Element, LaurentPoly], table: KLTable) -> HeckeElement:
    out = HeckeElement.zero(table.system)
    for y, c in mults.items():
        out = out + table.kl_basis(y).scale(c)
    return out


def branch_multiplicities(x: Element, s: int, table: KLTable) -> dict[Element, int]:
    """Multiplicities in C(x) C(s) beyond the leading C(xs), for xs > x.

    Every multiplicity is the integer mu(y, x), supported on y with ys < y.
    """
    xs = x * x.system.generator(s)
    if xs.length < x.length:
        raise DescentError(f"generator {s} is a right descent of {x.word_str() or 'e'}")
    mults = decompose_kl(table.kl_basis(x).mult_kl_gen(s, side="right"), table)
    lead = mults.pop(xs, None)
    if lead != LaurentPoly.one():
        raise AssertionError("product does not lead with multiplicity one")
    out: dict[Element, int] = {}
    for y, c in mults.items():
        if set(c.exponents()) - {0}:
            raise AssertionError("branching multiplicity is not constant")
        if s not in y.right_descents:
            raise AssertionError("branching support element lacks the descent")
        out[y] = c.coefficient(0)
    return out


def nabla_hom_rank(x: Element, y: Element, table: KLTable) -> LaurentPoly:
    """Graded rank of the hom space from the x-indexed object into the
    dual-standard object for y; equals h_{y,x}, zero when y is not below x."""
    return table.h_polynomial(y, x)


@dataclass(frozen=True)
class TiltingCharacter:
    """Canonical character attached to a coset, with the twist kept as
    metadata only: the twist permutes the ring action, not the graded
    multiplicities, so it changes no dimension output."""

    coset: Coset
    character: HeckeElement
    twist: Element


def tilting_character(xbar: Coset, table: CosetTable, kl: KLTable) -> TiltingCharacter:
    """The canonical basis element of the longest representative of xbar,
    tagged with the longest-element twist."""
    if table.by_id(xbar.coset_id) != xbar:
        raise ValueError("coset does not belong to the table")
    w0 = kl.system.longest_element()
    return TiltingCharacter(xbar, kl.kl_basis(xbar.longest), w0)
