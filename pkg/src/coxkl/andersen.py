"""Layer dimensions of the hom filtration, end to end.

A block is the pair (ambient Coxeter system, singular subset I of its simple
reflections); an optional weight records where the block came from.  For a
pair of cosets the layer report collects the longest representatives x, y,
the polynomial pair (P in q, h in v), and the filtration layer dimensions
layer i = coefficient of v^i in h.  The filtration module provides the
independent cross-check: the graded-sequence model built from h must
reproduce exactly the same layers through its Smith valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .coxeter import (
    CoxeterSystem,
    Element,
    Weight,
    bruhat_leq,
    integral_root_data,
    subsystem_presentation,
)
from .errors import NotDominantError
from .filtration import gysin_model, pairing_layer_dims
from .hecke import KLTable
from .laurent import LaurentPoly, h_to_P
from .parabolic import Coset, CosetTable

__all__ = [
    "BlockDescriptor",
    "AndersenReport",
    "block_from_weight",
    "andersen_layers",
    "full_block_table",
    "cross_check",
]


@dataclass
class BlockDescriptor:
    """A block: ambient system plus the singular subset of its generators."""

    ambient: CoxeterSystem
    singular: frozenset[int] = frozenset()
    weight: Weight | None = None

    def __post_init__(self):
        self.singular = frozenset(self.singular)
        for i in self.singular:
            if not 1 <= i <= self.ambient.rank:
                raise ValueError(f"singular index {i} out of range")

    @cached_property
    def coset_table(self) -> CosetTable:
        return CosetTable(self.ambient, self.singular)

    @cached_property
    def kl_table(self) -> KLTable:
        return KLTable(self.ambient)

    def __repr__(self) -> str:
        sing = ",".join(str(i) for i in sorted(self.singular)) or "{}"
        return f"BlockDescriptor({self.ambient.descriptor()}, I={sing})"


@dataclass
class AndersenReport:
    """Layer dimensions for one ordered pair of cosets; pure data."""

    ybar: Coset
    xbar: Coset
    y: Element
    x: Element
    ldiff: int
    P: LaurentPoly
    h: LaurentPoly
    layers: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def to_dict(self) -> dict:
        return {
            "ybar": self.ybar.shortest.word_str(),
            "xbar": self.xbar.shortest.word_str(),
            "y": self.y.word_str(),
            "x": self.x.word_str(),
            "ldiff": self.ldiff,
            "P": self.P.canonical_str("q"),
            "h": self.h.canonical_str("v"),
            "layers": {str(i): d for i, d in sorted(self.layers.items())},
            "total": self.total,
        }


def block_from_weight(weight: Weight) -> BlockDescriptor:
    """Build the block of a dominant weight.

    The ambient system is the integrality subgroup re-presented through its
    canonical simple system; the singular subset collects the new simple
    reflections fixing the weight under the dot action.
    """
    sys = weight.system
    sys._require_crystallographic()
    shifted = [weight.pairing(i) + sum(sys.coroots[i]) for i in range(len(sys.positive_roots))]
    for i, val in enumerate(shifted):
        if val.denominator == 1 and val < 0:
            raise NotDominantError(
                f"<weight+rho, coroot> = {val} at root {sys.positive_roots[i]}"
            )
    integral = [i for i, val in enumerate(shifted) if val.denominator == 1]
    ambient, simple_roots = subsystem_presentation(sys, integral)
    singular = frozenset(
        k + 1 for k, ri in enumerate(simple_roots) if shifted[ri] == 0
    )
    return BlockDescriptor(ambient, singular, weight)


def _as_coset(block: BlockDescriptor, c) -> Coset:
    table = block.coset_table
    if isinstance(c, Coset):
        return table.by_id(c.coset_id)
    if isinstance(c, Element):
        return table.coset(c)
    if isinstance(c, str):
        return table.coset(block.ambient.element(c))
    raise TypeError(f"cannot interpret {c!r} as a coset")


def andersen_layers(block: BlockDescriptor, ybar, xbar) -> AndersenReport:
    """The layer report for an ordered pair of cosets of the block.

    Layer i carries the coefficient of v^i in h_{y,x} for the longest
    representatives; all layers vanish exactly when y is not below x.
    """
    yc, xc = _as_coset(block, ybar), _as_coset(block, xbar)
    y, x = yc.longest, xc.longest
    ldiff = x.length - y.length
    h = block.kl_table.h_polynomial(y, x)
    P = h_to_P(h, ldiff)
    layers = {e: c for e, c in h.items()}
    report = AndersenReport(
        ybar=yc,
        xbar=xc,
        y=y,
        x=x,
        ldiff=ldiff,
        P=P,
        h=h,
        layers=layers,
        total=P.coefficient_sum(),
    )
    _validate_report(report)
    return report


def _validate_report(report: AndersenReport) -> None:
    restated = LaurentPoly(
        {(report.ldiff - i) // 2: d for i, d in report.layers.items()}
    )
    if restated != report.P:
        raise AssertionError("layer dimensions do not restate P")
    for i, d in report.layers.items():
        if d <= 0 or i < 0 or i > report.ldiff or (report.ldiff - i) % 2:
            raise AssertionError("layer outside the parity window")


def full_block_table(block: BlockDescriptor) -> list[AndersenReport]:
    """One report per ordered coset pair with y <= x, deterministically
    ordered by (length, canonical key) of x, then of y."""
    cosets = sorted(
        block.coset_table.cosets, key=lambda c: (c.longest.length, c.longest.key)
    )
    out = []
    for xc in cosets:
        for yc in cosets:
            if bruhat_leq(yc.longest, xc.longest):
                out.append(andersen_layers(block, yc, xc))
    return out


def cross_check(report: AndersenReport) -> bool:
    """Run the report's h-polynomial through the graded-sequence model and
    compare the resulting Smith-valuation layers with the reported ones."""
    model = gysin_model(report.h, report.ldiff)
    if not model.is_lefschetz_selfdual():
        return False
    layers = pairing_layer_dims(model.pairing_matrix())
    return layers == report.layers
