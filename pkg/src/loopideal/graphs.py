"""Graphs with loops, the complete-graph-plus-stars families, edge ideals.

Vertices are labelled 1..n.  In a family ``H(m; i_1..i_m)`` the core
K_m sits on 1..m and star j owns the next block of i_j leaf labels
after the blocks of stars 1..j-1.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .monomials import Monomial, MonomialIdeal, minimalize


class GraphError(ValueError):
    """Invalid labels, sizes or graph descriptions."""


@dataclass(frozen=True)
class FamilyH:
    """K_m on 1..m with a star of ``star_sizes[j-1]`` leaves centred at j."""

    m: int
    star_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "star_sizes", tuple(self.star_sizes))
        if self.m < 1 or len(self.star_sizes) != self.m:
            raise GraphError("need m >= 1 and exactly m star sizes")
        if any(i < 0 for i in self.star_sizes):
            raise GraphError("star sizes must be non-negative")
        if self.m == 1 and self.star_sizes[0] < 1:
            raise GraphError("H with m = 1 needs at least one leaf to be connected")

    @property
    def n(self) -> int:
        return self.m + sum(self.star_sizes)

    def leaves(self, j: int) -> tuple[int, ...]:
        """Leaf labels of the star centred at core vertex j."""
        start = self.m + sum(self.star_sizes[: j - 1])
        return tuple(range(start + 1, start + self.star_sizes[j - 1] + 1))

    def center_of(self, v: int) -> int:
        """Core vertex owning leaf ``v`` (a core vertex is its own center)."""
        if 1 <= v <= self.m:
            return v
        for j in range(1, self.m + 1):
            if v in self.leaves(j):
                return j
        raise GraphError(f"vertex {v} not in 1..{self.n}")

    @property
    def core(self) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    def ordered_edges(self) -> list[tuple[int, int]]:
        """Edges in the order of the linear-quotient chain."""
        out = [(1, leaf) for leaf in self.leaves(1)]
        for j in range(2, self.m + 1):
            out.extend((k, j) for k in range(j - 1, 0, -1))
            out.extend((j, leaf) for leaf in self.leaves(j))
        return out

    def graph(self) -> "LoopGraph":
        return LoopGraph(self.n, frozenset(self.ordered_edges()), frozenset(), family=self)


@dataclass(frozen=True)
class FamilyKPrime:
    """An H family with loops on arbitrary vertices.

    With every loop inside the core this is the family K.
    """

    base: FamilyH
    loop_vertices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "loop_vertices", frozenset(self.loop_vertices))
        bad = [v for v in self.loop_vertices if not 1 <= v <= self.base.n]
        if bad:
            raise GraphError(f"loop vertices {sorted(bad)} outside 1..{self.base.n}")

    @classmethod
    def K(cls, m: int, star_sizes: Sequence[int], loops: Iterable[int]) -> "FamilyKPrime":
        """Loops restricted to the core."""
        loops = frozenset(loops)
        if any(not 1 <= t <= m for t in loops):
            raise GraphError(f"K family loops must lie in the core 1..{m}")
        return cls(FamilyH(m, tuple(star_sizes)), loops)

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def star_sizes(self) -> tuple[int, ...]:
        return self.base.star_sizes

    def loops_in_core(self) -> bool:
        return all(t <= self.base.m for t in self.loop_vertices)

    def graph(self) -> "LoopGraph":
        return with_loops(self.base.graph(), self.loop_vertices)


@dataclass(frozen=True)
class LoopGraph:
    n: int
    edges: frozenset[tuple[int, int]]
    loops: frozenset[int] = frozenset()
    # structural metadata only; not part of equality
    family: Optional[FamilyH] = field(default=None, compare=False)

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise GraphError(f"edge {e} is a loop; pass it in loops")
            if not (1 <= i and j <= self.n):
                raise GraphError(f"edge {e} outside 1..{self.n}")
            edges.add((i, j))
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "loops", frozenset(self.loops))
        if any(not 1 <= v <= self.n for v in self.loops):
            raise GraphError(f"loop outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], loops: Iterable[int] = ()):
        edges = [tuple(e) for e in edges]
        normalised = [tuple(sorted(e)) for e in edges]
        if len(set(normalised)) != len(normalised):
            raise GraphError("multi-edges are not allowed")
        return cls(n, frozenset(normalised), frozenset(loops))

    def is_simple(self) -> bool:
        return not self.loops

    def neighbours(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def family_view(self) -> Optional[FamilyKPrime]:
        """The family this graph was built as, if its edges still match."""
        if self.family is None or self.family.n != self.n:
            return None
        if set(self.family.ordered_edges()) != self.edges:
            return None
        return FamilyKPrime(self.family, self.loops)

    def relabel(self, perm: dict[int, int]) -> "LoopGraph":
        return LoopGraph(
            self.n,
            frozenset(tuple(sorted((perm[i], perm[j]))) for i, j in self.edges),
            frozenset(perm[v] for v in self.loops),
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in sorted(self.edges)],
            "loops": sorted(self.loops),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LoopGraph":
        unknown = set(data) - {"n", "edges", "loops"}
        if unknown:
            raise GraphError(f"unknown graph keys: {sorted(unknown)}")
        try:
            return cls.from_edges(int(data["n"]), data.get("edges", []), data.get("loops", []))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph description: {exc}") from None


def dumps_graph(g: LoopGraph) -> str:
    return json.dumps(g.to_dict(), sort_keys=True)


def loads_graph(text: str) -> LoopGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise GraphError("graph file must hold an object")
    return LoopGraph.from_dict(data)


# -- builders ---------------------------------------------------------------

def build_complete(m: int) -> LoopGraph:
    if m < 1:
        raise GraphError("complete graph needs m >= 1")
    fam = FamilyH(m, (0,) * m) if m >= 2 else None
    return LoopGraph(m, frozenset(combinations(range(1, m + 1), 2)), family=fam)


def build_star(center: int, leaves: Iterable[int], n: Optional[int] = None) -> LoopGraph:
    leaves = sorted(set(leaves))
    if center in leaves:
        raise GraphError("the center cannot be its own leaf")
    if not leaves:
        raise GraphError("a star needs at least one leaf")
    n = max([center, *leaves]) if n is None else n
    return LoopGraph(n, frozenset(tuple(sorted((center, v))) for v in leaves))


def build_star_k(center: int, k: int) -> LoopGraph:
    """star_center(k): k vertices in total, the center plus k - 1 leaves."""
    if k < 2:
        raise GraphError("star(k) needs k >= 2 vertices")
    leaves = [v for v in range(1, k + 1) if v != center] if center <= k else list(range(1, k))
    return build_star(center, leaves)


def build_H(m: int, star_sizes: Sequence[int]) -> LoopGraph:
    return FamilyH(m, tuple(star_sizes)).graph()


def with_loops(g: LoopGraph, loop_vertices: Iterable[int]) -> LoopGraph:
    return LoopGraph(g.n, g.edges, g.loops | frozenset(loop_vertices), family=g.family)


def build_cycle(k: int) -> LoopGraph:
    if k < 3:
        raise GraphError("cycles need at least 3 vertices")
    return LoopGraph(k, frozenset(tuple(sorted((i, i % k + 1))) for i in range(1, k + 1)))


def build_path(k: int) -> LoopGraph:
    if k < 1:
        raise GraphError("paths need at least 1 vertex")
    return LoopGraph(k, frozenset((i, i + 1) for i in range(1, k)))


# -- edge ideals --------------------------------------------------------------

def edge_ideal(g: LoopGraph) -> tuple[MonomialIdeal, list[Monomial]]:
    """I(g) and its generators in order.

    Family graphs use the chain order (star 1, then per core vertex j the
    core edges X_{j-1}X_j .. X_1X_j and the star-j edges, loops last);
    anything else uses the canonical generator order.
    """
    n = g.n
    gens = [Monomial.from_vars(e, n) for e in g.edges]
    gens += [Monomial.var(v, n, 2) for v in g.loops]
    ideal = minimalize(gens, n) if gens else MonomialIdeal.zero(n)
    fam = g.family_view()
    if fam is None:
        return ideal, list(ideal.gens)
    ordered = [Monomial.from_vars(e, n) for e in fam.base.ordered_edges()]
    ordered += [Monomial.var(t, n, 2) for t in sorted(g.loops)]
    return ideal, ordered


# -- complements and chordality ---------------------------------------------

def complement(g: LoopGraph) -> LoopGraph:
    if g.loops:
        raise GraphError("complement is only defined here for simple graphs")
    every = set(combinations(range(1, g.n + 1), 2))
    return LoopGraph(g.n, frozenset(every - g.edges))


def lex_bfs(g: LoopGraph) -> list[int]:
    """Lexicographic breadth-first search order (partition refinement)."""
    adj = {v: g.neighbours(v) for v in range(1, g.n + 1)}
    partition: list[list[int]] = [list(range(1, g.n + 1))] if g.n else []
    order: list[int] = []
    while partition:
        v = partition[0].pop(0)
        if not partition[0]:
            partition.pop(0)
        order.append(v)
        refined: list[list[int]] = []
        for block in partition:
            inside = [u for u in block if u in adj[v]]
            outside = [u for u in block if u not in adj[v]]
            refined.extend(b for b in (inside, outside) if b)
        partition = refined
    return order


def is_perfect_elimination_order(g: LoopGraph, order: Sequence[int]) -> bool:
    """Each vertex's later neighbours must form a clique."""
    position = {v: k for k, v in enumerate(order)}
    edges = g.edges
    for v in order:
        later = sorted((u for u in g.neighbours(v) if position[u] > position[v]),
                       key=position.__getitem__)
        if not later:
            continue
        # it is enough to check against the earliest later neighbour
        w = later[0]
        for u in later[1:]:
            if tuple(sorted((w, u))) not in edges:
                return False
    return True


def is_chordal(g: LoopGraph) -> bool:
    if g.loops:
        raise GraphError("chordality is checked on simple graphs")
    return is_perfect_elimination_order(g, lex_bfs(g)[::-1])


def froberg_linear_resolution(g: LoopGraph) -> bool:
    """Linear resolution of I(g) by the complement-is-chordal criterion."""
    return is_chordal(complement(g))


# -- family DSL ---------------------------------------------------------------

_INTS = re.compile(r"^\s*\d+(\s*,\s*\d+)*\s*$")


def _ints(text: str, what: str) -> list[int]:
    if not _INTS.match(text):
        raise GraphError(f"bad integer list for {what}: {text!r}")
    return [int(x) for x in text.split(",")]


def parse_family(text: str) -> LoopGraph:
    """Parse the family DSL.

    Terms joined by ``+``: ``H(m=4; stars=1,3,1,2)``, ``K5``,
    ``star(c=2; leaves=6,7,8)``, ``cycle(5)``, ``path(4)`` and at most
    one ``loops(3,5,7,9)``.
    """
    terms = [t.strip() for t in text.split("+")]
    if not terms or not terms[0]:
        raise GraphError("empty family description")
    g = _parse_base(terms[0])
    for term in terms[1:]:
        match = re.fullmatch(r"loops\((.*)\)", term)
        if match is None:
            raise GraphError(f"only loops(...) may follow the base graph, got {term!r}")
        loops = _ints(match.group(1), "loops")
        if any(not 1 <= v <= g.n for v in loops):
            raise GraphError(f"loops {loops} outside 1..{g.n}")
        g = with_loops(g, loops)
    return g


def _parse_base(term: str) -> LoopGraph:
    compact = term.replace(" ", "")
    if match := re.fullmatch(r"H\(m=(\d+);stars=([\d,]+)\)", compact):
        return build_H(int(match.group(1)), _ints(match.group(2), "stars"))
    if match := re.fullmatch(r"K(\d+)", compact):
        return build_complete(int(match.group(1)))
    if match := re.fullmatch(r"star\(c=(\d+);leaves=([\d,]+)\)", compact):
        return build_star(int(match.group(1)), _ints(match.group(2), "leaves"))
    if match := re.fullmatch(r"cycle\((\d+)\)", compact):
        return build_cycle(int(match.group(1)))
    if match := re.fullmatch(r"path\((\d+)\)", compact):
        return build_path(int(match.group(1)))
    raise GraphError(f"unrecognised family term {term!r}")
