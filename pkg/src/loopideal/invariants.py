"""Dimension, projective dimension, depth and regularity of R/I.

Three routes: the closed formulas for the H and K families, a
linear-quotient certificate, and graded Betti numbers computed from the
Taylor complex over a prime field.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import linquot
from .covers import h_of
from .graphs import FamilyH, FamilyKPrime
from .monomials import MonomialIdeal

TAYLOR_CAP = 16


@dataclass(frozen=True)
class InvariantReport:
    n: int
    dim: int
    pd: int
    depth: int
    reg: int
    source: str  # formula | certificate | betti-oracle

    def __post_init__(self):
        if self.depth + self.pd != self.n:
            raise AssertionError(f"depth + pd = {self.depth + self.pd} != n = {self.n}")
        if not 0 <= self.depth <= self.dim <= self.n:
            raise AssertionError(f"expected 0 <= depth <= dim <= n, got {self}")

    def values(self) -> tuple[int, int, int, int]:
        return (self.dim, self.pd, self.depth, self.reg)

    def to_dict(self) -> dict:
        return {"n": self.n, "dim": self.dim, "pd": self.pd, "depth": self.depth,
                "reg": self.reg, "source": self.source}


def invariants_by_formula(family: Union[FamilyH, FamilyKPrime]) -> InvariantReport:
    if isinstance(family, FamilyKPrime):
        if not family.loops_in_core():
            raise ValueError("the formulas need every loop inside the core")
        looped = [family.star_sizes[t - 1] for t in family.loop_vertices]
        base = family.base
    else:
        looped, base = [], family
    if not all(base.star_sizes):
        # an empty star lets its center drop out of a smallest cover, so h < m
        raise ValueError("the formulas need a star at every core vertex")
    n, m = base.n, base.m
    if looped:
        pd = m + max(looped)
    else:
        pd = m + max(base.star_sizes) - 1
    return InvariantReport(n, n - m, pd, n - pd, 1, "formula")


def invariants_by_certificate(
    ideal: MonomialIdeal,
    certificate: Optional[linquot.QuotientCertificate] = None,
    strategy: str = "auto",
    budget: int = linquot.DEFAULT_BUDGET,
) -> InvariantReport:
    """Invariants read off a linear-quotient certificate.

    A supplied certificate is re-verified before use.
    """
    if ideal.is_zero():
        return _zero_report(ideal.n, "certificate")
    if not ideal.is_equigenerated():
        raise ValueError("certificate route needs an ideal generated in one degree")
    if certificate is None:
        certificate = linquot.find_order(ideal, strategy, budget)
        if certificate is None:
            raise ValueError(f"{ideal} has no linear quotients; use betti_oracle")
    elif set(certificate.gens) != set(ideal.gens) or not linquot.recheck(certificate):
        raise ValueError("certificate does not certify this ideal")
    n = ideal.n
    pd = certificate.q + 1
    return InvariantReport(n, n - h_of(ideal), pd, n - pd, ideal.gens[0].degree - 1,
                           "certificate")


def _zero_report(n: int, source: str) -> InvariantReport:
    return InvariantReport(n, n, 0, n, 0, source)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of R/I."""

    entries: dict[tuple[int, int], int] = field(hash=False)
    characteristic: int

    @property
    def pd(self) -> int:
        return max(i for (i, _), b in self.entries.items() if b)

    @property
    def reg(self) -> int:
        return max(j - i for (i, j), b in self.entries.items() if b)

    def is_linear(self, degree: int) -> bool:
        """Linear resolution of I: beta_{i,j}(R/I) = 0 unless j = i + degree - 1."""
        return all(j == i + degree - 1 for (i, j), b in self.entries.items() if b and i)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def format(self) -> str:
        """Rows i, columns j, then pd/reg summary lines."""
        items = {k: b for k, b in self.entries.items() if b}
        js = sorted({j for _, j in items})
        width = max([len(str(b)) for b in items.values()] + [len(str(j)) for j in js]) + 1
        lines = ["i\\j " + "".join(f"{j:>{width}}" for j in js)]
        for i in range(self.pd + 1):
            cells = "".join(
                f"{items[(i, j)] if (i, j) in items else '.':>{width}}" for j in js
            )
            lines.append(f"{i:>3} {cells}")
        lines.append(f"pd {self.pd}")
        lines.append(f"reg {self.reg}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items()) if b],
            "pd": self.pd,
            "reg": self.reg,
        }


def _rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    """Rank of a sparse matrix over GF(p); rows map column -> entry."""
    if p == 2:
        pivots: dict[int, int] = {}
        rank = 0
        for row in rows:
            v = 0
            for c, a in row.items():
                if a % 2:
                    v ^= 1 << c
            while v:
                top = v.bit_length() - 1
                if top in pivots:
                    v ^= pivots[top]
                else:
                    pivots[top] = v
                    rank += 1
                    break
        return rank
    pivots_p: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        v = {c: a % p for c, a in row.items() if a % p}
        while v:
            top = max(v)
            piv = pivots_p.get(top)
            if piv is None:
                inv = pow(v[top], p - 2, p)
                pivots_p[top] = {c: a * inv % p for c, a in v.items()}
                rank += 1
                break
            factor = v[top]
            for c, a in piv.items():
                x = (v.get(c, 0) - factor * a) % p
                if x:
                    v[c] = x
                else:
                    v.pop(c, None)
        # loop ends with v empty (dependent row) or after a new pivot
    return rank


def _lcm_table(ideal: MonomialIdeal) -> np.ndarray:
    """lcm of every subset of G(I), indexed by subset bitmask."""
    t, n = len(ideal.gens), ideal.n
    table = np.zeros((1 << t, n), dtype=np.int16)
    for k, g in enumerate(ideal.gens):
        block = 1 << k
        table[block:2 * block] = np.maximum(table[:block], np.asarray(g.exponents, np.int16))
    return table


def _row_keys(table: np.ndarray) -> list[int]:
    """Equal keys exactly for equal rows."""
    radix = table.max(axis=0).astype(np.int64) + 1
    if float(np.prod(radix.astype(float))) < 2.0 ** 62:
        weights = np.concatenate(([1], np.cumprod(radix[:-1]))).astype(np.int64)
        return (table.astype(np.int64) @ weights).tolist()
    # mixed radix would overflow; fall back to a row sort
    _, inverse = np.unique(table, axis=0, return_inverse=True)
    return inverse.ravel().tolist()


def betti_oracle(ideal: MonomialIdeal, characteristic: int = 2) -> BettiTable:
    """Betti numbers of R/I from the Taylor complex over GF(characteristic).

    Faces are subsets of G(I) labelled by their lcm.  After tensoring with
    the residue field only the boundary terms that keep the lcm survive,
    so the complex splits into one strand per multidegree; homology ranks
    of the strands are aggregated by total degree.
    """
    t = len(ideal.gens)
    if t > TAYLOR_CAP:
        raise ValueError(f"Taylor complex limited to {TAYLOR_CAP} generators, got {t}")
    if ideal.is_unit():
        return BettiTable({}, characteristic)
    table = _lcm_table(ideal)
    nf = 1 << t
    faces = np.arange(nf, dtype=np.int64)
    _, key = np.unique(np.asarray(_row_keys(table), dtype=np.int64), return_inverse=True)
    key = key.ravel()
    degree = table.sum(axis=1).astype(np.int64)
    # position of each face inside its strand, used as a column index
    order = np.argsort(key, kind="stable")
    starts = np.searchsorted(key[order], key[order])
    local = np.empty(nf, dtype=np.int64)
    local[order] = np.arange(nf) - starts

    size = np.zeros(nf, dtype=np.int64)
    rows_f, cols, signs = [], [], []
    for bit in range(t):
        has = (faces >> bit) & 1 == 1
        sub = faces ^ (1 << bit)
        keep = has & (key[sub] == key)
        rows_f.append(faces[keep])
        cols.append(local[sub[keep]])
        signs.append(np.where(size[keep] % 2 == 0, 1, -1))
        size += has
    rows_f = np.concatenate(rows_f).tolist()
    cols = np.concatenate(cols).tolist()
    signs = np.concatenate(signs).tolist()

    boundary: dict[int, dict[int, int]] = defaultdict(dict)
    for f, c, e in zip(rows_f, cols, signs):
        boundary[f][c] = e
    blocks: dict[tuple[int, int], list[dict[int, int]]] = defaultdict(list)
    key_l, size_l = key.tolist(), size.tolist()
    for f in sorted(boundary):
        blocks[(key_l[f], size_l[f])].append(boundary[f])

    betti: dict[tuple[int, int], int] = defaultdict(int)
    pairs, counts = np.unique(np.stack([size, degree]), axis=1, return_counts=True)
    for (s, j), c in zip(pairs.T.tolist(), counts.tolist()):
        betti[(s, j)] = c
    key_degree = np.zeros(int(key.max()) + 1, dtype=np.int64)
    key_degree[key] = degree
    key_degree = key_degree.tolist()
    for (k, s), rows in blocks.items():
        r = _rank_mod_p(rows, characteristic)
        j = key_degree[k]
        # the map from size s to size s-1 removes rank from both ends
        betti[(s, j)] -= r
        betti[(s - 1, j)] -= r
    betti = {k: b for k, b in betti.items() if b}
    return BettiTable(dict(betti), characteristic)


def invariants_from_betti(table: BettiTable, ideal: MonomialIdeal) -> InvariantReport:
    n = ideal.n
    if ideal.is_zero():
        return _zero_report(n, "betti-oracle")
    pd = table.pd
    return InvariantReport(n, n - h_of(ideal), pd, n - pd, table.reg, "betti-oracle")


@dataclass(frozen=True)
class RouteComparison:
    """Formula against certificate (and oracle when run) for one family."""

    formula: InvariantReport
    certificate: InvariantReport
    oracle: Optional[InvariantReport]
    gated: bool  # the formula is expected to hold

    @property
    def agree(self) -> bool:
        routes = [self.certificate] + ([self.oracle] if self.oracle else [])
        return all(r.values() == self.formula.values() for r in routes)

    @property
    def diverges(self) -> bool:
        return self.formula.values() != self.certificate.values()


def formula_gate(family: Union[FamilyH, FamilyKPrime]) -> bool:
    """Whether the K-family formula is expected to match the computed pd.

    It does when some looped core vertex carries a star within one leaf of
    the largest star.
    """
    if isinstance(family, FamilyH) or not family.loop_vertices:
        return True
    looped = max(family.star_sizes[t - 1] for t in family.loop_vertices)
    return looped >= max(family.star_sizes) - 1


def compare_routes(family: Union[FamilyH, FamilyKPrime], oracle: bool = True,
                   characteristic: int = 2) -> RouteComparison:
    from .graphs import edge_ideal

    graph = family.graph()
    ideal, ordered = edge_ideal(graph)
    cert = linquot.verify_order(ordered)
    by_cert = invariants_by_certificate(ideal, cert)
    by_oracle = None
    if oracle and len(ideal.gens) <= TAYLOR_CAP:
        by_oracle = invariants_from_betti(betti_oracle(ideal, characteristic), ideal)
    return RouteComparison(invariants_by_formula(family), by_cert, by_oracle,
                           formula_gate(family))
