"""Linear-quotient orders: verification, search, q(I) and linear resolution.

For an ordering u_1..u_t of G(I) the colon (u_1..u_{j-1}) : (u_j) is the
ideal generated by u_i / gcd(u_i, u_j), i < j.  It is generated by
variables exactly when every such quotient is divisible by one of the
quotients that are single variables; that test is done on support
bitmasks, so the search never builds ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import graphs
from .monomials import (
    Monomial,
    MonomialIdeal,
    colon_by_monomial,
    gcd,
    is_generated_by_variables,
    minimalize,
    quotient,
)

EXHAUSTIVE_CAP = 9
DEFAULT_BUDGET = 200_000


class BudgetExhausted(RuntimeError):
    """The search ran out of nodes before reaching a verdict."""

    def __init__(self, nodes: int):
        super().__init__(f"order search exhausted its budget after {nodes} nodes")
        self.nodes = nodes


class OrderFailure(ValueError):
    """The given order is not a linear-quotient order."""

    def __init__(self, position: int, colon: MonomialIdeal):
        super().__init__(f"colon at position {position} is {colon}, not generated by variables")
        self.position = position  # 1-based, as in u_1..u_t
        self.colon = colon


@dataclass(frozen=True)
class QuotientCertificate:
    order: tuple[int, ...]          # 0-based indices into the input generators
    gens: tuple[Monomial, ...]      # generators in certified order
    step_generators: tuple[frozenset[int], ...]  # positions 2..t

    @property
    def q_values(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.step_generators)

    @property
    def q(self) -> int:
        # max over an empty set is 0: a principal ideal has pd(R/I) = 1
        return max(self.q_values, default=0)

    def to_dict(self) -> dict:
        return {
            "order": [i + 1 for i in self.order],
            "steps": [sorted(s) for s in self.step_generators],
            "q": self.q,
        }


class _Pairs:
    """Pairwise quotient data for a fixed generator list."""

    def __init__(self, gens: Sequence[Monomial]):
        t = len(gens)
        self.t = t
        # supp[i][j]: support mask of u_i / gcd(u_i, u_j)
        # var[i][j]: bit of that quotient when it is a single variable, else 0
        self.supp = [[0] * t for _ in range(t)]
        self.var = [[0] * t for _ in range(t)]
        for i, u in enumerate(gens):
            for j, v in enumerate(gens):
                if i == j:
                    continue
                mask, deg = 0, 0
                for k, (a, b) in enumerate(zip(u.exponents, v.exponents)):
                    if a > b:
                        mask |= 1 << k
                        deg += a - b
                self.supp[i][j] = mask
                if deg == 1:
                    self.var[i][j] = mask

    def step(self, prior: Sequence[int], j: int) -> Optional[int]:
        """Variable mask of prior : u_j, or None if not variable-generated."""
        supp, var = self.supp, self.var
        vmask = 0
        for i in prior:
            vmask |= var[i][j]
        for i in prior:
            if not supp[i][j] & vmask:
                return None
        return vmask


def _mask_to_vars(mask: int) -> frozenset[int]:
    return frozenset(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def _require_minimal(gens: Sequence[Monomial]) -> None:
    if not gens:
        return
    if len(minimalize(gens).gens) != len(gens):
        raise ValueError("generators must be the minimal generators of their ideal")


def colon_step(prior: Sequence[Monomial], u: Monomial) -> MonomialIdeal:
    """(prior) : (u), as the minimalized sum of the principal colons."""
    if not prior:
        return MonomialIdeal.zero(u.n)
    return minimalize((quotient(p, gcd(p, u)) for p in prior), u.n)


def verify_order(gens: Sequence[Monomial]) -> QuotientCertificate:
    """Certificate for ``gens`` taken in the given order.

    Raises :class:`OrderFailure` at the first colon that is not generated
    by variables.
    """
    gens = list(gens)
    _require_minimal(gens)
    for a, b in zip(gens, gens[1:]):
        if a.degree > b.degree:
            raise ValueError("degrees along a linear-quotient order must not decrease")
    steps = []
    for j in range(1, len(gens)):
        colon = colon_step(gens[:j], gens[j])
        variables = is_generated_by_variables(colon)
        if variables is None:
            raise OrderFailure(j + 1, colon)
        steps.append(variables)
    return QuotientCertificate(tuple(range(len(gens))), tuple(gens), tuple(steps))


def recheck(cert: QuotientCertificate) -> bool:
    """Recompute every colon of a certificate from scratch."""
    for j, expected in enumerate(cert.step_generators, start=1):
        prior = MonomialIdeal.from_monomials(cert.gens[:j], cert.gens[0].n)
        colon = colon_by_monomial(prior, cert.gens[j])
        if is_generated_by_variables(colon) != expected:
            return False
    return True


def _certificate(gens: Sequence[Monomial], order: Sequence[int], masks: Sequence[int]):
    return QuotientCertificate(
        tuple(order),
        tuple(gens[i] for i in order),
        tuple(_mask_to_vars(m) for m in masks),
    )


def iter_orders(ideal: MonomialIdeal) -> Iterator[QuotientCertificate]:
    """Every degree-respecting linear-quotient order, depth first."""
    gens = list(ideal.gens)
    pairs = _Pairs(gens)
    t = len(gens)

    def extend(order: list[int], masks: list[int], used: int):
        if len(order) == t:
            yield _certificate(gens, order, masks)
            return
        lowest = min(gens[i].degree for i in range(t) if not used >> i & 1)
        for j in range(t):
            if used >> j & 1 or gens[j].degree != lowest:
                continue
            if order:
                mask = pairs.step(order, j)
                if mask is None:
                    continue
                masks.append(mask)
            order.append(j)
            yield from extend(order, masks, used | 1 << j)
            order.pop()
            if len(order):
                masks.pop()

    if t:
        yield from extend([], [], 0)


def find_order(
    ideal: MonomialIdeal,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> Optional[QuotientCertificate]:
    """A linear-quotient certificate for ``ideal``, or None if none exists.

    ``exhaustive`` walks every degree-respecting order (at most
    EXHAUSTIVE_CAP generators).  ``backtracking`` searches over sets of
    already placed generators, remembering sets that cannot be completed;
    it raises :class:`BudgetExhausted` rather than answering None when it
    runs out of nodes.  ``auto`` picks by generator count.
    """
    t = len(ideal.gens)
    if strategy == "auto":
        strategy = "exhaustive" if t <= EXHAUSTIVE_CAP else "backtracking"
    if strategy == "exhaustive":
        if t > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive search is capped at {EXHAUSTIVE_CAP} generators")
        return next(iter_orders(ideal), None)
    if strategy != "backtracking":
        raise ValueError(f"unknown strategy {strategy!r}")
    return _backtrack(ideal, budget)


def _backtrack(ideal: MonomialIdeal, budget: int) -> Optional[QuotientCertificate]:
    gens = list(ideal.gens)
    t = len(gens)
    if t == 0:
        return None
    pairs = _Pairs(gens)
    dead: set[int] = set()
    nodes = 0
    full = (1 << t) - 1

    def extend(order: list[int], masks: list[int], used: int) -> bool:
        nonlocal nodes
        if used == full:
            return True
        if used in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(nodes)
        lowest = min(gens[i].degree for i in range(t) if not used >> i & 1)
        for j in range(t):
            if used >> j & 1 or gens[j].degree != lowest:
                continue
            if order:
                mask = pairs.step(order, j)
                if mask is None:
                    continue
                masks.append(mask)
            order.append(j)
            if extend(order, masks, used | 1 << j):
                return True
            order.pop()
            if order:
                masks.pop()
        dead.add(used)
        return False

    order: list[int] = []
    masks: list[int] = []
    if extend(order, masks, 0):
        return _certificate(gens, order, masks)
    return None


def q_of(ideal: MonomialIdeal, strategy: str = "auto", budget: int = DEFAULT_BUDGET) -> int:
    cert = find_order(ideal, strategy, budget)
    if cert is None:
        raise ValueError(f"{ideal} has no linear quotients")
    return cert.q


@dataclass(frozen=True)
class LinearResolutionDecision:
    linear: bool
    kind: str  # linear-quotients | no-linear-quotients | betti | not-equigenerated | zero-ideal
    certificate: Optional[QuotientCertificate] = None
    froberg: Optional[bool] = None


def _edge_graph(ideal: MonomialIdeal) -> graphs.LoopGraph:
    return graphs.LoopGraph.from_edges(ideal.n, [sorted(g.support()) for g in ideal.gens])


def has_linear_resolution(
    ideal: MonomialIdeal,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    characteristic: int = 2,
) -> LinearResolutionDecision:
    """Decide whether ``ideal`` has a linear resolution.

    Linear quotients settle the question positively.  In degree two,
    linear resolution and linear quotients are equivalent, so a complete
    search failing settles it negatively; for squarefree quadrics the
    complement-chordality criterion is evaluated as well and must agree.
    Otherwise, or when the search runs out of budget, the Betti oracle
    decides.
    """
    if ideal.is_zero():
        return LinearResolutionDecision(True, "zero-ideal")
    if not ideal.is_equigenerated():
        return LinearResolutionDecision(False, "not-equigenerated")
    degree = ideal.gens[0].degree
    froberg = None
    if degree == 2 and ideal.is_squarefree():
        froberg = graphs.froberg_linear_resolution(_edge_graph(ideal))
    try:
        cert = find_order(ideal, strategy, budget)
    except BudgetExhausted:
        cert, exhausted = None, True
    else:
        exhausted = False
    if cert is not None or (degree <= 2 and not exhausted):
        linear = cert is not None
        if froberg is not None and froberg != linear:
            raise AssertionError(
                f"order search ({linear}) and chordality criterion ({froberg}) disagree on {ideal}"
            )
        kind = "linear-quotients" if linear else "no-linear-quotients"
        return LinearResolutionDecision(linear, kind, cert, froberg)

    from .invariants import betti_oracle

    table = betti_oracle(ideal, characteristic)
    return LinearResolutionDecision(table.is_linear(degree), "betti", None, froberg)
