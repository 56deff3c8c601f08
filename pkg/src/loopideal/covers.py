"""Minimal vertex covers and ideals of vertex covers of graphs with loops.

A loop at v is covered only by v, so every cover of a graph with loops
contains all looped vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from .graphs import FamilyH, FamilyKPrime, LoopGraph, edge_ideal
from .monomials import (
    Monomial,
    MonomialIdeal,
    intersect,
    intersect_all,
    minimalize,
    prime_of,
    radical,
)

MAX_VERTICES = 20


class InvariantViolation(AssertionError):
    """Two independent computations that must agree did not."""


class UnsupportedCase(ValueError):
    """No closed form is available for the given descriptor."""


def _check_size(g: LoopGraph) -> None:
    if g.n > MAX_VERTICES:
        raise ValueError(f"cover enumeration is limited to {MAX_VERTICES} vertices, got {g.n}")


def is_vertex_cover(g: LoopGraph, cover: Iterable[int]) -> bool:
    cover = set(cover)
    return g.loops <= cover and all(i in cover or j in cover for i, j in g.edges)


def minimal_vertex_covers(g: LoopGraph) -> list[frozenset[int]]:
    """All minimal vertex covers, sorted by size then lexicographically."""
    _check_size(g)
    found: set[frozenset[int]] = set()
    edges = sorted(g.edges)

    def branch(chosen: frozenset[int]):
        for i, j in edges:
            if i not in chosen and j not in chosen:
                branch(chosen | {i})
                branch(chosen | {j})
                return
        # a cover; keep it only if every vertex has a private edge or a loop
        for v in chosen:
            if v in g.loops:
                continue
            if all(u in chosen for u in g.neighbours(v)):
                return
        found.add(chosen)

    branch(frozenset(g.loops))
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def alpha0(g: LoopGraph) -> int:
    """Vertex covering number."""
    return min(len(c) for c in minimal_vertex_covers(g))


def h_of(ideal: MonomialIdeal) -> int:
    """Smallest number of variables hitting every minimal generator."""
    if ideal.is_unit():
        raise ValueError("the unit ideal has no vertex cover")
    supports = [g.support() for g in ideal.gens]
    best = len(set().union(*supports)) if supports else 0

    def search(chosen: frozenset[int]):
        nonlocal best
        if len(chosen) >= best:
            return
        open_ = [s for s in supports if not s & chosen]
        if not open_:
            best = len(chosen)
            return
        for v in sorted(min(open_, key=len)):
            search(chosen | {v})

    search(frozenset())
    return best


def cover_monomial(cover: Iterable[int], n: int) -> Monomial:
    return Monomial.from_vars(sorted(set(cover)), n)


@dataclass(frozen=True)
class CoverIdealReport:
    ideal: MonomialIdeal
    covers: tuple[frozenset[int], ...]
    alpha0: int
    h: int

    def to_dict(self) -> dict:
        return {
            "ideal": str(self.ideal),
            "covers": [sorted(c) for c in self.covers],
            "alpha0": self.alpha0,
            "h": self.h,
        }


def cover_ideal_by_intersection(g: LoopGraph) -> MonomialIdeal:
    """The intersection of (X_i, X_j) over edges and (X_k) over loops."""
    n = g.n
    parts = [prime_of(sorted(e), n) for e in sorted(g.edges)]
    parts += [prime_of([k], n) for k in sorted(g.loops)]
    # intersect principal loop ideals first: keeps intermediate results small
    parts.sort(key=len)
    return intersect_all(parts, n)


def cover_ideal(g: LoopGraph) -> CoverIdealReport:
    n = g.n
    if g.loops == frozenset(range(1, n + 1)):
        covers = [frozenset(range(1, n + 1))]
        ideal = minimalize([cover_monomial(covers[0], n)], n)
    else:
        covers = minimal_vertex_covers(g)
        ideal = minimalize((cover_monomial(c, n) for c in covers), n)
    other = cover_ideal_by_intersection(g)
    if ideal != other:
        raise InvariantViolation(f"cover ideal {ideal} differs from intersection {other}")
    edges_ideal, _ = edge_ideal(g)
    h = h_of(edges_ideal) if not edges_ideal.is_zero() else 0
    a0 = min(len(c) for c in covers)
    if a0 != h:
        raise InvariantViolation(f"alpha0 = {a0} but h = {h}")
    return CoverIdealReport(ideal, tuple(covers), a0, h)


def decomposition_check(g: LoopGraph) -> bool:
    """Intersection of the minimal primes equals I(g), or its radical with loops."""
    ideal, _ = edge_ideal(g)
    primes = [prime_of(sorted(c), g.n) for c in minimal_vertex_covers(g)]
    meet = intersect_all(primes, g.n)
    target = ideal if not g.loops else radical(ideal)
    return meet == target


def is_minimal_prime(g: LoopGraph, variables: Iterable[int]) -> bool:
    """Whether (X_i : i in variables) is a minimal prime of I(g)."""
    variables = set(variables)
    ideal, _ = edge_ideal(g)

    def contains(vs):
        return all(g_.support() & vs for g_ in ideal.gens)

    return contains(variables) and not any(contains(variables - {v}) for v in variables)


# -- closed forms ------------------------------------------------------------

@dataclass(frozen=True)
class Complete:
    vertices: tuple[int, ...]
    n: Optional[int] = None


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]
    n: Optional[int] = None


@dataclass(frozen=True)
class CompleteWithLoops:
    vertices: tuple[int, ...]
    loops: frozenset[int]
    n: Optional[int] = None


@dataclass(frozen=True)
class StarWithLoops:
    center: int
    leaves: tuple[int, ...]
    loops: frozenset[int]
    n: Optional[int] = None


@dataclass(frozen=True)
class HOneStar:
    family: FamilyH


@dataclass(frozen=True)
class HAllStars:
    family: FamilyH


@dataclass(frozen=True)
class KPrimeGeneral:
    family: FamilyKPrime


@dataclass(frozen=True)
class HOuterLoops:
    """H with a loop on every vertex outside the core."""

    family: FamilyH


Descriptor = Union[
    Complete, Star, CompleteWithLoops, StarWithLoops, HOneStar, HAllStars, KPrimeGeneral,
    HOuterLoops,
]


def _product(vs: Iterable[int], n: int) -> Monomial:
    return Monomial.from_vars(sorted(set(vs)), n)


def _ambient(n: Optional[int], *groups: Iterable[int]) -> int:
    top = max((v for grp in groups for v in grp), default=0)
    return top if n is None else n


def _h_candidates(fam: FamilyH) -> list[frozenset[int]]:
    """The core and, per core vertex j, core minus j plus the leaves of j."""
    core = frozenset(fam.core)
    out = [core]
    for j in fam.core:
        out.append((core - {j}) | frozenset(fam.leaves(j)))
    return out


def closed_form_cover_ideal(desc: Descriptor) -> MonomialIdeal:
    """The ideal of vertex covers from the structural formula of each case."""
    if isinstance(desc, Complete):
        vs = tuple(desc.vertices)
        n = _ambient(desc.n, vs)
        if len(vs) < 2:
            raise UnsupportedCase("complete graph needs two vertices")
        return minimalize((_product(set(vs) - {v}, n) for v in vs), n)

    if isinstance(desc, Star):
        n = _ambient(desc.n, [desc.center], desc.leaves)
        return minimalize([_product(desc.leaves, n), _product([desc.center], n)], n)

    if isinstance(desc, CompleteWithLoops):
        vs = tuple(desc.vertices)
        n = _ambient(desc.n, vs)
        loops = frozenset(desc.loops)
        if not loops <= set(vs):
            raise UnsupportedCase("loops must lie on the complete graph")
        if loops == set(vs):
            return minimalize([_product(vs, n)], n)
        # every loop vertex stays; exactly one unlooped vertex is dropped
        return minimalize((_product(set(vs) - {v}, n) for v in vs if v not in loops), n)

    if isinstance(desc, StarWithLoops):
        n = _ambient(desc.n, [desc.center], desc.leaves)
        loops = frozenset(desc.loops)
        if not loops <= {desc.center, *desc.leaves}:
            raise UnsupportedCase("loops must lie on the star")
        looped_leaves = loops - {desc.center}
        if desc.center in loops:
            return minimalize([_product(looped_leaves | {desc.center}, n)], n)
        if looped_leaves == set(desc.leaves):
            return minimalize([_product(desc.leaves, n)], n)
        return minimalize(
            [_product(desc.leaves, n), _product(looped_leaves | {desc.center}, n)], n
        )

    if isinstance(desc, HOneStar):
        fam = desc.family
        with_star = [j for j in fam.core if fam.star_sizes[j - 1]]
        if len(with_star) != 1 or fam.m < 2:
            raise UnsupportedCase("H-one-star needs m >= 2 and exactly one non-empty star")
        (j,) = with_star
        core = set(fam.core)
        gens = [_product(core - {k}, fam.n) for k in fam.core if k != j]
        gens.append(_product((core - {j}) | set(fam.leaves(j)), fam.n))
        return minimalize(gens, fam.n)

    if isinstance(desc, HAllStars):
        fam = desc.family
        if not all(fam.star_sizes):
            raise UnsupportedCase("H-all-stars needs a star at every core vertex")
        return minimalize((_product(c, fam.n) for c in _h_candidates(fam)), fam.n)

    if isinstance(desc, KPrimeGeneral):
        fam = desc.family
        n = fam.n
        loops = fam.loop_vertices
        if loops == frozenset(range(1, n + 1)):
            return minimalize([_product(range(1, n + 1), n)], n)
        # each H cover picks up the looped vertices it misses
        return minimalize((_product(c | loops, n) for c in _h_candidates(fam.base)), n)

    if isinstance(desc, HOuterLoops):
        fam = desc.family
        if fam.n == fam.m:
            raise UnsupportedCase("H has no vertices outside the core")
        outer = range(fam.m + 1, fam.n + 1)
        core = set(fam.core)
        return minimalize((_product((core - {i}) | set(outer), fam.n) for i in fam.core), fam.n)

    raise UnsupportedCase(f"no closed form for {desc!r}")


def describe(g: LoopGraph) -> Descriptor:
    """Most specific closed-form case for a family graph."""
    fam = g.family_view()
    if fam is None:
        raise UnsupportedCase("graph carries no family structure")
    base = fam.base
    outer = frozenset(range(base.m + 1, base.n + 1))
    if outer and fam.loop_vertices == outer:
        return HOuterLoops(base)
    if fam.loop_vertices:
        return KPrimeGeneral(fam)
    stars = sum(1 for i in base.star_sizes if i)
    if stars == base.m:
        return HAllStars(base)
    if stars == 1 and base.m >= 2:
        return HOneStar(base)
    if stars == 0:
        return Complete(base.core, base.n)
    return KPrimeGeneral(fam)
