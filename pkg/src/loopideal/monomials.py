"""Exact arithmetic on monomials and monomial ideals.

A monomial is an exponent vector over a fixed number of variables
X1..Xn.  Variables are numbered from 1 in every public interface
(parsing, printing, variable sets); the exponent tuple itself is
0-indexed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class DimensionError(ValueError):
    """Raised when monomials from different ambient rings are combined."""


@dataclass(frozen=True, slots=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, i: int, n: int, power: int = 1) -> "Monomial":
        """The monomial X_i^power in n variables (i is 1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable X{i} outside X1..X{n}")
        e = [0] * n
        e[i - 1] = power
        return cls(tuple(e))

    @classmethod
    def from_vars(cls, variables: Iterable[int], n: int) -> "Monomial":
        """Product of the given (1-based) variables, with multiplicity."""
        e = [0] * n
        for i in variables:
            if not 1 <= i <= n:
                raise ValueError(f"variable X{i} outside X1..X{n}")
            e[i - 1] += 1
        return cls(tuple(e))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> frozenset[int]:
        """1-based indices of the variables occurring in the monomial."""
        return frozenset(i + 1 for i, e in enumerate(self.exponents) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def sort_key(self):
        # graded, then larger exponent of X1 first, then X2, ...
        return (self.degree, tuple(-e for e in self.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return quotient(self, other)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_monomial(self)


def _check(u: Monomial, v: Monomial) -> None:
    if u.n != v.n:
        raise DimensionError(f"ambient sizes differ: {u.n} vs {v.n}")


def divides(u: Monomial, v: Monomial) -> bool:
    _check(u, v)
    return all(a <= b for a, b in zip(u.exponents, v.exponents))


def gcd(u: Monomial, v: Monomial) -> Monomial:
    _check(u, v)
    return Monomial(tuple(map(min, u.exponents, v.exponents)))


def lcm(u: Monomial, v: Monomial) -> Monomial:
    _check(u, v)
    return Monomial(tuple(map(max, u.exponents, v.exponents)))


def quotient(u: Monomial, v: Monomial) -> Monomial:
    """u / v; v must divide u."""
    if not divides(v, u):
        raise ValueError(f"{v} does not divide {u}")
    return Monomial(tuple(a - b for a, b in zip(u.exponents, v.exponents)))


@dataclass(frozen=True, slots=True)
class MonomialIdeal:
    """A monomial ideal stored by its minimal generators in canonical order.

    Build instances with :func:`minimalize` (or :meth:`from_monomials`);
    the constructor trusts that ``gens`` is already minimal and sorted.
    """

    n: int
    gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], n: Optional[int] = None):
        return minimalize(monomials, n)

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, (Monomial.one(n),))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.degree == 0 for g in self.gens)

    def __contains__(self, u: Monomial) -> bool:
        return any(divides(g, u) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def degrees(self) -> set[int]:
        return {g.degree for g in self.gens}

    def is_equigenerated(self) -> bool:
        return len(self.degrees()) <= 1

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise DimensionError(f"ambient sizes differ: {self.n} vs {other.n}")
        return minimalize(self.gens + other.gens, self.n)

    def __str__(self) -> str:
        return format_ideal(self)


def minimalize(monomials: Iterable[Monomial], n: Optional[int] = None) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``monomials``."""
    ms = sorted(set(monomials), key=Monomial.sort_key)
    if n is None:
        if not ms:
            raise ValueError("ambient size needed for an empty generator list")
        n = ms[0].n
    for u in ms:
        if u.n != n:
            raise DimensionError(f"monomial {u} does not live in {n} variables")
    kept: list[Monomial] = []
    seen: list[tuple[int, tuple[int, ...]]] = []
    # sorted by degree, so a divisor is always seen before its multiples;
    # the support mask is a cheap necessary condition for divisibility
    for u in ms:
        e = u.exponents
        mask = sum(1 << k for k, a in enumerate(e) if a)
        if any(gm & ~mask == 0 and all(a <= b for a, b in zip(ge, e)) for gm, ge in seen):
            continue
        kept.append(u)
        seen.append((mask, e))
    return MonomialIdeal(n, tuple(kept))


def colon_by_monomial(ideal: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    """The colon ideal I : (u)."""
    return minimalize((quotient(g, gcd(g, u)) for g in ideal.gens), ideal.n)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.n != b.n:
        raise DimensionError(f"ambient sizes differ: {a.n} vs {b.n}")
    return minimalize((lcm(u, v) for u in a.gens for v in b.gens), a.n)


def intersect_all(ideals: Sequence[MonomialIdeal], n: int) -> MonomialIdeal:
    """Intersection of a family of ideals; the empty intersection is R."""
    result = MonomialIdeal.unit(n)
    for ideal in ideals:
        result = intersect(result, ideal)
    return result


def equals(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    return a.n == b.n and a.gens == b.gens


def is_generated_by_variables(ideal: MonomialIdeal) -> Optional[frozenset[int]]:
    """Set of (1-based) variables generating the ideal, or None.

    Only meaningful on the stored minimal form; the zero ideal is
    generated by the empty set of variables.
    """
    if any(g.degree != 1 for g in ideal.gens):
        return None
    return frozenset(i for g in ideal.gens for i in g.support())


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    return minimalize(
        (Monomial(tuple(min(1, e) for e in g.exponents)) for g in ideal.gens), ideal.n
    )


def prime_of(variables: Iterable[int], n: int) -> MonomialIdeal:
    """The monomial prime (X_i : i in variables)."""
    return minimalize((Monomial.var(i, n) for i in variables), n)


# -- textual syntax -------------------------------------------------------

_FACTOR = re.compile(r"^[xX](\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: Optional[int] = None) -> Monomial:
    """Parse ``X1*X3^2`` (``1`` for the unit).

    Without ``n`` the ambient size is the largest variable index seen.
    """
    text = text.strip()
    powers: dict[int, int] = {}
    if text != "1":
        for factor in text.split("*"):
            match = _FACTOR.match(factor.strip())
            if match is None:
                raise ValueError(f"cannot parse monomial factor {factor!r}")
            i = int(match.group(1))
            if i < 1:
                raise ValueError("variables are numbered from 1")
            powers[i] = powers.get(i, 0) + int(match.group(2) or 1)
    top = max(powers, default=0)
    if n is None:
        n = top
    elif top > n:
        raise DimensionError(f"X{top} outside X1..X{n}")
    e = [0] * n
    for i, p in powers.items():
        e[i - 1] = p
    return Monomial(tuple(e))


def parse_ideal(text: str, n: Optional[int] = None) -> MonomialIdeal:
    """Parse ``(X1*X3, X1*X2)``; ``(0)`` is the zero ideal."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"ideal must be parenthesised: {text!r}")
    body = text[1:-1].strip()
    if body == "0":
        if n is None:
            raise ValueError("ambient size needed for the zero ideal")
        return MonomialIdeal.zero(n)
    parts = [p for p in (s.strip() for s in body.split(",")) if p]
    if n is None:
        n = max(parse_monomial(p).n for p in parts)
    return minimalize((parse_monomial(p, n) for p in parts), n)


def format_monomial(u: Monomial) -> str:
    factors = []
    for i, e in enumerate(u.exponents, start=1):
        if e == 1:
            factors.append(f"X{i}")
        elif e > 1:
            factors.append(f"X{i}^{e}")
    return "*".join(factors) or "1"


def format_ideal(ideal: MonomialIdeal) -> str:
    if ideal.is_zero():
        return "(0)"
    return "(" + ", ".join(format_monomial(g) for g in ideal.gens) + ")"
