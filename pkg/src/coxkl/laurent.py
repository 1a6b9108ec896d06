"""Sparse Laurent polynomials in one variable with exact integer coefficients.

A polynomial is a finite mapping exponent -> coefficient; zero coefficients
are never stored, so the zero polynomial is the empty mapping.  The same
class holds data in either of the two classical variables: the engine works
in ``v`` throughout, and ``q``-polynomials are just Laurent polynomials whose
exponent is read as the ``q``-power.  The two are tied together by the exact
re-indexing ``h_to_P`` / ``P_to_h`` below, which implements

    coefficient of q^j in P  =  coefficient of v^(ldiff - 2j) in h

for a fixed integer ``ldiff``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import ParityError

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "V",
    "bar_dual",
    "h_to_P",
    "P_to_h",
]


class LaurentPoly:
    """An integer-coefficient Laurent polynomial, immutable after creation.

    >>> p = LaurentPoly({1: 1, -1: 1})
    >>> (p * p).canonical_str()
    'v^-2 + 2 + v^2'
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if not isinstance(e, int) or not isinstance(a, int):
                raise TypeError("exponents and coefficients must be integers")
            if a:
                c[e] = c.get(e, 0) + a
                if not c[e]:
                    del c[e]
        self._c = c
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exponent: int = 0) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        # internal: trusts that c is normalized
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    # -- inspection ----------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms as (exponent, coefficient), ascending in the exponent."""
        return iter(sorted(self._c.items()))

    def coefficient(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def exponents(self) -> list[int]:
        return sorted(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int | None:
        """Top exponent, or None for the zero polynomial."""
        return max(self._c) if self._c else None

    def valuation(self) -> int | None:
        """Bottom exponent, or None for the zero polynomial."""
        return min(self._c) if self._c else None

    def coefficient_sum(self) -> int:
        """The value at 1."""
        return sum(self._c.values())

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        return LaurentPoly._raw(c)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) - a
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        return LaurentPoly._raw(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + a1 * a2
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiplication by v^k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1, i.e. exponent negation."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- text form --------------------------------------------------------

    def canonical_str(self, var: str = "v") -> str:
        """Canonical text form: terms sorted by ascending exponent.

        >>> LaurentPoly({2: 1, 0: 2, -2: 1}).canonical_str()
        'v^-2 + 2 + v^2'
        >>> LaurentPoly({0: -1, 1: 3}).canonical_str("q")
        '-1 + 3q'
        """
        if not self._c:
            return "0"
        parts: list[str] = []
        for e, a in sorted(self._c.items()):
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                pw = var if e == 1 else f"{var}^{e}"
                body = pw if mag == 1 else f"{mag}{pw}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if a > 0 else '-'} {body}")
        return " ".join(parts)

    _TERM_RE = re.compile(r"^(?:(\d+)\*?)?(?:V(?:\^(~?\d+))?)?$")

    @classmethod
    def parse(cls, text: str, var: str = "v") -> "LaurentPoly":
        """Parse the canonical text form (inverse of :meth:`canonical_str`).

        >>> LaurentPoly.parse("v^-2 + 2 + v^2") == LaurentPoly({2: 1, 0: 2, -2: 1})
        True
        """
        s = text.strip()
        if s in ("0", ""):
            return cls.zero()
        # protect exponent signs before splitting on +/-
        s = s.replace("^-", "^~").replace("^+", "^")
        s = s.replace("-", "+-")
        coeffs: dict[int, int] = {}
        n_terms = 0
        for chunk in s.split("+"):
            chunk = chunk.replace(" ", "")
            if not chunk:
                continue
            n_terms += 1
            sign = 1
            while chunk.startswith("-"):
                sign = -sign
                chunk = chunk[1:]
            m = cls._TERM_RE.match(chunk.replace(var, "V"))
            if not m or not chunk:
                raise ValueError(f"cannot parse polynomial term {chunk!r} in {text!r}")
            coeff_s, exp_s = m.group(1), m.group(2)
            has_var = "V" in chunk.replace(var, "V")
            coeff = int(coeff_s) if coeff_s is not None else 1
            if coeff_s is None and not has_var:
                raise ValueError(f"cannot parse polynomial term {chunk!r} in {text!r}")
            exp = 0
            if has_var:
                exp = int(exp_s.replace("~", "-")) if exp_s is not None else 1
            coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
        if not n_terms:
            raise ValueError(f"no polynomial terms in {text!r}")
        return cls(coeffs)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.canonical_str()!r})"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
V = LaurentPoly.term(1, 1)


def bar_dual(p: LaurentPoly) -> LaurentPoly:
    """Exponent negation v -> v^-1; an involutive ring homomorphism."""
    return p.bar()


def h_to_P(h: LaurentPoly, ldiff: int) -> LaurentPoly:
    """Re-index a v-polynomial into the q-convention.

    Every exponent i of ``h`` must satisfy i <= ldiff with ldiff - i even;
    the term a*v^i becomes a*q^((ldiff-i)/2).
    """
    c: dict[int, int] = {}
    for i, a in h._c.items():
        if i > ldiff or (ldiff - i) % 2:
            raise ParityError(
                f"exponent {i} incompatible with length difference {ldiff}"
            )
        c[(ldiff - i) // 2] = a
    return LaurentPoly._raw(c)


def P_to_h(P: LaurentPoly, ldiff: int) -> LaurentPoly:
    """Inverse of :func:`h_to_P`: the term a*q^j becomes a*v^(ldiff-2j)."""
    return LaurentPoly._raw({ldiff - 2 * j: a for j, a in P._c.items()})
