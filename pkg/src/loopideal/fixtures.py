"""Named fixture graphs and the one-shot reproduction suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import covers, graphs, invariants, linquot, reestype
from .monomials import MonomialIdeal, parse_ideal


def H0() -> graphs.LoopGraph:
    return graphs.build_H(2, [1, 1])


def H2() -> graphs.LoopGraph:
    return graphs.build_H(2, [2, 1])


def K0() -> graphs.LoopGraph:
    return graphs.with_loops(H0(), {1})


def KBAD() -> graphs.LoopGraph:
    return graphs.with_loops(H0(), {3})


def EX9() -> graphs.LoopGraph:
    return graphs.build_H(4, [1, 3, 1, 2])


def EX11() -> graphs.LoopGraph:
    # K3 on 1..3 with stars of 3, 3, 2 leaves; loops on 3, 5, 7, 9
    return graphs.with_loops(graphs.build_H(3, [3, 3, 2]), {3, 5, 7, 9})


FIXTURES: dict[str, Callable[[], graphs.LoopGraph]] = {
    "H0": H0, "H2": H2, "K0": K0, "KBAD": KBAD, "EX9": EX9, "EX11": EX11,
}


@dataclass(frozen=True)
class Anchor:
    name: str
    description: str
    expected: str
    compute: Callable[[], str]


@dataclass(frozen=True)
class AnchorResult:
    name: str
    passed: bool
    expected: str
    got: str


def _cover_gens(g: graphs.LoopGraph) -> str:
    return str(covers.cover_ideal(g).ideal)


def _steps(g: graphs.LoopGraph, count: int) -> str:
    _, ordered = graphs.edge_ideal(g)
    cert = linquot.verify_order(ordered)
    return "; ".join(
        "(" + ", ".join(f"X{v}" for v in sorted(s)) + ")" for s in cert.step_generators[:count]
    )


def _order_exists(g: graphs.LoopGraph) -> str:
    ideal, _ = graphs.edge_ideal(g)
    return "exists" if linquot.find_order(ideal, "exhaustive") else "none"


def _q(g: graphs.LoopGraph) -> str:
    return str(linquot.q_of(graphs.edge_ideal(g)[0]))


def _formula(g: graphs.LoopGraph) -> str:
    fam = g.family_view()
    r = invariants.invariants_by_formula(fam if fam.loop_vertices else fam.base)
    return f"dim {r.dim} pd {r.pd} depth {r.depth} reg {r.reg}"


def _certificate(g: graphs.LoopGraph) -> str:
    r = invariants.invariants_by_certificate(graphs.edge_ideal(g)[0])
    return f"dim {r.dim} pd {r.pd} depth {r.depth} reg {r.reg}"


def _closed(desc) -> str:
    return str(covers.closed_form_cover_ideal(desc))


def _linear_type(ideal: MonomialIdeal, dmax: int) -> str:
    return reestype.is_linear_type_upto(ideal, dmax).label


def default_anchors() -> list[Anchor]:
    return [
        Anchor("cover-ideal-K4-stars", "ideal of vertex covers of K4 + stars (1,3,1,2) (EX9)",
               "(X1*X2*X3*X4, X1*X2*X4*X9, X2*X3*X4*X5, X1*X2*X3*X10*X11, X1*X3*X4*X6*X7*X8)",
               lambda: _cover_gens(EX9())),
        Anchor("cover-ideal-K3-stars-loops", "ideal of vertex covers of K3 + stars (3,3,2) + loops {3,5,7,9} (EX11)",
               "(X1*X2*X3*X5*X7*X9, X1*X3*X5*X7*X8*X9, X2*X3*X4*X5*X6*X7*X9)",
               lambda: _cover_gens(EX11())),
        Anchor("quotient-chain-H2", "first colon steps of H(2; 2,1)",
               "(X3); (X3, X4); (X1)", lambda: _steps(H2(), 3)),
        Anchor("linear-quotients-H0", "I(H0) has linear quotients", "exists", lambda: _order_exists(H0())),
        Anchor("no-linear-quotients-outer-loop", "loop outside the core kills linear quotients", "none",
               lambda: _order_exists(KBAD())),
        Anchor("q-H2", "q(I(H)) = m + max i_j - 2 on H(2; 2,1)", "2", lambda: _q(H2())),
        Anchor("q-K0", "q(I(K)) = m + max looped i_j - 1 on K0", "2", lambda: _q(K0())),
        Anchor("invariants-formula-H2", "invariants of H(2; 2,1)", "dim 3 pd 3 depth 2 reg 1",
               lambda: _formula(H2())),
        Anchor("invariants-certificate-H2", "certificate route on H(2; 2,1)",
               "dim 3 pd 3 depth 2 reg 1", lambda: _certificate(H2())),
        Anchor("invariants-formula-K0", "invariants of K0", "dim 2 pd 3 depth 1 reg 1",
               lambda: _formula(K0())),
        Anchor("invariants-certificate-EX9", "certificate route on EX9",
               "dim 7 pd 6 depth 5 reg 1", lambda: _certificate(EX9())),
        Anchor("cover-ideal-K3", "ideal of vertex covers of K3", "(X1*X2, X1*X3, X2*X3)",
               lambda: _closed(covers.Complete((1, 2, 3)))),
        Anchor("cover-ideal-K4-all-loops", "K4 with loops on every vertex", "(X1*X2*X3*X4)",
               lambda: _closed(covers.CompleteWithLoops((1, 2, 3, 4), frozenset({1, 2, 3, 4})))),
        Anchor("cover-ideal-star", "star with center 1 and leaves 2,3,4", "(X1, X2*X3*X4)",
               lambda: _closed(covers.Star(1, (2, 3, 4)))),
        Anchor("cover-ideal-H0-outer-loops", "H0 with loops on all outer vertices",
               "(X1*X3*X4, X2*X3*X4)",
               lambda: _closed(covers.HOuterLoops(graphs.FamilyH(2, (1, 1))))),
        Anchor("linear-type-H0", "I_c(H0) of linear type up to degree 3",
               "verified-to-3", lambda: _linear_type(covers.cover_ideal(H0()).ideal, 3)),
        Anchor("linear-type-EX9", "I_c(EX9) of linear type up to degree 2",
               "verified-to-2", lambda: _linear_type(covers.cover_ideal(EX9()).ideal, 2)),
        Anchor("linear-type-EX11", "I_c(EX11) of linear type up to degree 2",
               "verified-to-2", lambda: _linear_type(covers.cover_ideal(EX11()).ideal, 2)),
        Anchor("negative-control", "(X1^2, X1*X2, X2^2) is not of linear type",
               "counterexample T1*T3 - T2^2",
               lambda: _linear_type(parse_ideal("(X1^2, X1*X2, X2^2)"), 2)),
    ]


def paper_suite(anchors: Optional[Sequence[Anchor]] = None) -> list[AnchorResult]:
    results = []
    for anchor in anchors if anchors is not None else default_anchors():
        try:
            got = anchor.compute()
        except Exception as exc:  # a crash is a failed anchor, not an aborted suite
            got = f"error: {type(exc).__name__}: {exc}"
        results.append(AnchorResult(anchor.name, got == anchor.expected, anchor.expected, got))
    return results

