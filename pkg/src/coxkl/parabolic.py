"""Standard parabolic subgroups and left coset bookkeeping.

For a subset I of the simple reflections, every left coset w W_I has a
unique shortest representative (no right descent inside I) and a unique
longest one (every member of I a right descent); they differ by the longest
element w_I of W_I, with lengths adding.  Coset identifiers are the
canonical keys of the shortest representatives, so they are stable across
runs.  Subsets I serialize as comma-separated generator indices, e.g.
"1,3"; the empty string is the regular case I = {}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coxeter import CoxeterSystem, Element
from .errors import OwnerMismatchError
from .laurent import LaurentPoly

__all__ = [
    "Coset",
    "CosetTable",
    "coset_decomposition",
    "coset_of",
    "poincare_poly",
    "parse_subset",
    "format_subset",
]


@dataclass(frozen=True)
class Coset:
    """One left coset w W_I with its two distinguished representatives."""

    shortest: Element
    longest: Element

    @property
    def coset_id(self):
        return self.shortest.key

    def __repr__(self) -> str:
        return f"Coset({self.shortest.word_str() or 'e'!s} W_I)"


class CosetTable:
    """The full decomposition of W into left cosets of a standard parabolic."""

    def __init__(self, system: CoxeterSystem, subset: Iterable[int]):
        self.owner = system
        self.subset = frozenset(subset)
        for i in self.subset:
            if not 1 <= i <= system.rank:
                raise ValueError(f"generator index {i} out of range")
        self.w_I = _subgroup_longest(system, self.subset)
        buckets: dict = {}
        for w in system.elements():
            rep = _shortest_in_coset(w, self.subset)
            buckets.setdefault(rep.key, rep)
        reps = sorted(buckets.values(), key=lambda w: (w.length, w.key))
        cosets = []
        for rep in reps:
            longest = rep * self.w_I
            if longest.length != rep.length + self.w_I.length:
                raise AssertionError("coset representative lengths do not add")
            cosets.append(Coset(rep, longest))
        self.cosets: tuple[Coset, ...] = tuple(cosets)
        self._by_id = {c.coset_id: c for c in self.cosets}
        if len(self.cosets) * _subgroup_order(system, self.subset) != system.order:
            raise AssertionError("coset count inconsistent with subgroup order")

    def __len__(self) -> int:
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def coset(self, w: Element) -> Coset:
        """The coset record containing w."""
        if w.system is not self.owner:
            raise OwnerMismatchError("element belongs to a different system")
        return self._by_id[_shortest_in_coset(w, self.subset).key]

    def by_id(self, coset_id) -> Coset:
        return self._by_id[coset_id]

    def __repr__(self) -> str:
        return (
            f"CosetTable({self.owner.descriptor()}, "
            f"I={format_subset(self.subset) or '{}'}, {len(self.cosets)} cosets)"
        )


def _shortest_in_coset(w: Element, subset: frozenset[int]) -> Element:
    while True:
        inside = w.right_descents & subset
        if not inside:
            return w
        w = w * w.system.generator(min(inside))


def _subgroup_elements(system: CoxeterSystem, subset: frozenset[int]) -> list[Element]:
    gens = [system.generator(i) for i in sorted(subset)]
    seen = {system.identity.key: system.identity}
    frontier = [system.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = w * s
                if u.key not in seen:
                    seen[u.key] = u
                    nxt.append(u)
        frontier = nxt
    return list(seen.values())

def _subgroup_order(system: CoxeterSystem, subset: frozenset[int]) -> int:
    return len(_subgroup_elements(system, subset))


def _subgroup_longest(system: CoxeterSystem, subset: frozenset[int]) -> Element:
    longest = system.identity
    for w in _subgroup_elements(system, subset):
        if w.length > longest.length:
            longest = w
    if w0_descents := longest.right_descents & subset:
        if w0_descents != subset:
            raise AssertionError("longest subgroup element misses a descent")
    return longest


def coset_decomposition(system: CoxeterSystem, subset: Iterable[int]) -> CosetTable:
    """Decompose W into left cosets of the standard parabolic W_I."""
    return CosetTable(system, subset)


def coset_of(w: Element, table: CosetTable):
    """The coset identifier of w W_I (canonical key of the shortest rep)."""
    return table.coset(w).coset_id


def poincare_poly(system: CoxeterSystem, subset: Iterable[int]) -> LaurentPoly:
    """The symmetric shift multiset of W_I as a Laurent polynomial:
    sum over z in W_I of v^(l(w_I) - 2 l(z))."""
    subset = frozenset(subset)
    members = _subgroup_elements(system, subset)
    top = max(w.length for w in members)
    coeffs: dict[int, int] = {}
    for z in members:
        e = top - 2 * z.length
        coeffs[e] = coeffs.get(e, 0) + 1
    return LaurentPoly(coeffs)


def parse_subset(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(p) for p in text.split(","))


def format_subset(subset: Iterable[int]) -> str:
    return ",".join(str(i) for i in sorted(subset))
