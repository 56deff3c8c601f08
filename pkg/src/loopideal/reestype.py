"""Degree-bounded check that a monomial ideal is of linear type.

For I = (f_1..f_s) the symmetric algebra is presented by
J = (g_ij), g_ij = f_ij T_j - f_ji T_i with f_ij = f_i / gcd(f_i, f_j),
and the Rees algebra by N = ker(T_i -> f_i t).  Both are binomial ideals,
homogeneous in the T-degree, so a Groebner basis of J truncated at T-degree
d decides membership of every element of N of T-degree at most d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .monomials import Monomial, MonomialIdeal, gcd, minimalize, quotient

MAX_GENERATORS = 8
MAX_DEGREE = 4
DEFAULT_BUDGET = 10_000_000


class CoefficientError(AssertionError):
    """A coefficient left {-1, 0, 1}; cancellations must be term for term."""


@dataclass(frozen=True, slots=True)
class BiTerm:
    x: tuple[int, ...]
    t: tuple[int, ...]
    sign: int = 1

    @property
    def bidegree(self) -> tuple[int, int]:
        return (sum(self.x), sum(self.t))

    def monomial(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.x, self.t)

    def with_sign(self, sign: int) -> "BiTerm":
        return BiTerm(self.x, self.t, sign)

    def format(self) -> str:
        factors = [_power("X", i, e) for i, e in enumerate(self.x, 1) if e]
        factors += [_power("T", i, e) for i, e in enumerate(self.t, 1) if e]
        return "*".join(factors) or "1"


def _power(name: str, i: int, e: int) -> str:
    return f"{name}{i}" if e == 1 else f"{name}{i}^{e}"


@dataclass(frozen=True, slots=True)
class Binomial:
    """lead + tail with lead > tail; tail is None for a monomial element."""

    lead: BiTerm
    tail: Optional[BiTerm]

    def terms(self) -> list[BiTerm]:
        return [self.lead] + ([self.tail] if self.tail else [])

    def format(self) -> str:
        out = ("-" if self.lead.sign < 0 else "") + self.lead.format()
        if self.tail:
            out += (" - " if self.tail.sign < 0 else " + ") + self.tail.format()
        return out

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class TermOrder:
    """Block order: T-part first, lex with T_s > ... > T_1; then the X-part
    by degree, ties broken lex with X_n > ... > X_1."""

    n: int
    s: int

    def key(self, term: BiTerm):
        return (term.t[::-1], sum(term.x), term.x[::-1])

    def greater(self, a: BiTerm, b: BiTerm) -> bool:
        return self.key(a) > self.key(b)


def make_order(s: int, n: int) -> TermOrder:
    return TermOrder(n, s)


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(max, a, b))


def _scale(term: BiTerm, x: tuple[int, ...], t: tuple[int, ...], sign: int) -> BiTerm:
    return BiTerm(_mul(term.x, x), _mul(term.t, t), term.sign * sign)


def _combine(terms: Sequence[BiTerm], order: TermOrder) -> Optional[Binomial]:
    """Collect like terms and normalise to a positive leading coefficient."""
    coeffs: dict = {}
    for term in terms:
        key = term.monomial()
        coeffs[key] = coeffs.get(key, 0) + term.sign
    live = []
    for (x, t), c in coeffs.items():
        if c not in (-1, 0, 1):
            raise CoefficientError(f"coefficient {c} on {BiTerm(x, t).format()}")
        if c:
            live.append(BiTerm(x, t, c))
    if not live:
        return None
    live.sort(key=order.key, reverse=True)
    if live[0].sign < 0:
        live = [term.with_sign(-term.sign) for term in live]
    return Binomial(live[0], live[1] if len(live) > 1 else None)


def make_binomial(a: BiTerm, b: Optional[BiTerm], order: TermOrder) -> Optional[Binomial]:
    return _combine([a] + ([b] if b else []), order)


def sym_relations(f: Sequence[Monomial], order: Optional[TermOrder] = None) -> list[Binomial]:
    """g_ij = f_ij T_j - f_ji T_i for i < j, in (i, j) order."""
    f = list(f)
    if not f:
        raise ValueError("need at least one generator")
    if any(u.degree == 0 for u in f) or len(minimalize(f).gens) != len(f):
        raise ValueError("generators must be minimal and non-constant")
    s, n = len(f), f[0].n
    order = order or make_order(s, n)
    out = []
    for i, j in combinations(range(s), 2):
        fij = quotient(f[i], gcd(f[i], f[j]))
        fji = quotient(f[j], gcd(f[i], f[j]))
        tj = tuple(int(k == j) for k in range(s))
        ti = tuple(int(k == i) for k in range(s))
        g = make_binomial(BiTerm(fij.exponents, tj, 1), BiTerm(fji.exponents, ti, -1), order)
        if g is not None:
            out.append(g)
    return out


def leading_term_contract(f: Sequence[Monomial], order: TermOrder) -> bool:
    """lead(g_ij) = f_ij T_j for every i < j."""
    f = list(f)
    s = len(f)
    for (i, j), g in zip(combinations(range(s), 2), sym_relations(f, order)):
        fij = quotient(f[i], gcd(f[i], f[j]))
        expected = (fij.exponents, tuple(int(k == j) for k in range(s)))
        if g.lead.monomial() != expected or g.lead.sign != 1:
            return False
    return True


_IRREDUCIBLE = object()


def _reduce_once(h: Binomial, basis: Sequence[Binomial], order: TermOrder, target: BiTerm):
    """Rewrite ``target`` (a term of h) with the first basis element dividing it.

    Returns the new element (None when it vanished) or _IRREDUCIBLE.
    """
    for g in basis:
        if _divides(g.lead.x, target.x) and _divides(g.lead.t, target.t):
            cx, ct = _div(target.x, g.lead.x), _div(target.t, g.lead.t)
            factor = target.sign  # g.lead has sign +1
            terms = [term for term in h.terms() if term is not target]
            if g.tail is not None:
                terms.append(_scale(g.tail, cx, ct, -factor))
            return _combine(terms, order)
    return _IRREDUCIBLE


def normal_form(h: Optional[Binomial], basis: Sequence[Binomial], order: TermOrder,
                full: bool = False) -> Optional[Binomial]:
    """Reduce h by ``basis``, first reducer in list order wins.

    With ``full`` the tail is reduced as well; rewriting the tail only
    produces smaller terms, so the lead is unaffected.
    """
    while h is not None:
        step = _reduce_once(h, basis, order, h.lead)
        if step is _IRREDUCIBLE:
            break
        h = step
    while full and h is not None and h.tail is not None:
        step = _reduce_once(h, basis, order, h.tail)
        if step is _IRREDUCIBLE:
            break
        h = step
    return h


def s_polynomial(f: Binomial, g: Binomial, order: TermOrder) -> Optional[Binomial]:
    lx, lt = _lcm(f.lead.x, g.lead.x), _lcm(f.lead.t, g.lead.t)
    terms = []
    if f.tail is not None:
        terms.append(_scale(f.tail, _div(lx, f.lead.x), _div(lt, f.lead.t), 1))
    if g.tail is not None:
        terms.append(_scale(g.tail, _div(lx, g.lead.x), _div(lt, g.lead.t), -1))
    return _combine(terms, order) if terms else None


def _coprime(a: BiTerm, b: BiTerm) -> bool:
    return all(not (x and y) for x, y in zip(a.x + a.t, b.x + b.t))


def buchberger(gens: Sequence[Binomial], order: TermOrder,
               max_tdeg: Optional[int] = None) -> list[Binomial]:
    """Reduced Groebner basis of the binomials ``gens``.

    With ``max_tdeg`` only S-pairs whose lcm has T-degree at most that
    bound are processed, which yields the basis up to that T-degree when
    the input is T-homogeneous.
    """
    basis: list[Binomial] = []
    for g in gens:
        if g is not None and g.tail is not None and g.lead.bidegree[1] != g.tail.bidegree[1]:
            raise ValueError(f"{g} is not T-homogeneous")
        h = normal_form(g, basis, order)
        if h is not None:
            basis.append(h)

    def pair_key(p):
        a, b = basis[p[0]], basis[p[1]]
        lt = _lcm(a.lead.t, b.lead.t)
        lead = BiTerm(_lcm(a.lead.x, b.lead.x), lt)
        return (sum(lt), order.key(lead), p)

    pairs = [(i, j) for i, j in combinations(range(len(basis)), 2)]
    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        a, b = basis[i], basis[j]
        if _coprime(a.lead, b.lead):
            continue
        if max_tdeg is not None and sum(_lcm(a.lead.t, b.lead.t)) > max_tdeg:
            continue
        h = normal_form(s_polynomial(a, b, order), basis, order)
        if h is not None:
            basis.append(h)
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
    return _interreduce(basis, order)


def _interreduce(basis: list[Binomial], order: TermOrder) -> list[Binomial]:
    minimal: list[Binomial] = []
    for k, g in enumerate(basis):
        for m, h in enumerate(basis):
            if m == k or not (_divides(h.lead.x, g.lead.x) and _divides(h.lead.t, g.lead.t)):
                continue
            # equal leads: keep the earlier element
            if h.lead.monomial() != g.lead.monomial() or m < k:
                break
        else:
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        h = normal_form(g, minimal[:k] + minimal[k + 1:], order, full=True)
        if h is not None:
            reduced.append(h)
    reduced.sort(key=lambda g: order.key(g.lead))
    return reduced


def phi_image(term: BiTerm, f: Sequence[Monomial]) -> tuple[int, ...]:
    """Exponent vector of x_part * prod f_i^{t_i} (the power of t is |t|)."""
    out = list(term.x)
    for i, e in enumerate(term.t):
        if e:
            for k, a in enumerate(f[i].exponents):
                out[k] += e * a
    return tuple(out)


def in_kernel(b: Binomial, f: Sequence[Monomial]) -> bool:
    if b.tail is None:
        return False
    return (phi_image(b.lead, f) == phi_image(b.tail, f)
            and sum(b.lead.t) == sum(b.tail.t))


def _compositions(d: int, s: int) -> Iterator[tuple[int, ...]]:
    if s == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, s - 1):
            yield (first,) + rest


def toric_kernel_upto(f: Sequence[Monomial], dmax: int,
                      order: Optional[TermOrder] = None,
                      budget: int = DEFAULT_BUDGET) -> list[Binomial]:
    """Primitive binomials of N with T-degree at most ``dmax``.

    For every pair of T-monomials of equal degree with disjoint supports,
    the X-parts are the smallest cofactors making the two images equal.
    """
    f = list(f)
    s, n = len(f), f[0].n
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    if math.comb(s + dmax, dmax) ** 2 > budget:
        raise ValueError(f"kernel enumeration for s={s}, dmax={dmax} exceeds the budget")
    order = order or make_order(s, n)
    seen = set()
    out = []
    for d in range(1, dmax + 1):
        monos = list(_compositions(d, s))
        for alpha, beta in combinations(monos, 2):
            if any(a and b for a, b in zip(alpha, beta)):
                continue
            p = phi_image(BiTerm((0,) * n, alpha), f)
            q = phi_image(BiTerm((0,) * n, beta), f)
            xa = tuple(max(b - a, 0) for a, b in zip(p, q))
            xb = tuple(max(a - b, 0) for a, b in zip(p, q))
            rel = make_binomial(BiTerm(xa, alpha, 1), BiTerm(xb, beta, -1), order)
            key = (rel.lead.monomial(), rel.tail.monomial())
            if key not in seen:
                seen.add(key)
                out.append(rel)
    return out


@dataclass(frozen=True)
class LinearTypeVerdict:
    verified: bool
    dmax: int
    basis_size: int
    checked: int
    counterexample: Optional[Binomial]
    leading_contract: bool      # lead(g_ij) = f_ij T_j for all relations
    initial_in_H: bool          # every basis lead lies in (f_ij T_j)
    basis_is_relations: bool    # no element beyond the g_ij was needed

    @property
    def label(self) -> str:
        if self.verified:
            return f"verified-to-{self.dmax}"
        return f"counterexample {self.counterexample}"

    def to_dict(self) -> dict:
        return {
            "verdict": "verified" if self.verified else "counterexample",
            "dmax": self.dmax,
            "basis_size": self.basis_size,
            "checked": self.checked,
            "counterexample": str(self.counterexample) if self.counterexample else None,
            "leading_contract": self.leading_contract,
            "initial_in_H": self.initial_in_H,
            "basis_is_relations": self.basis_is_relations,
        }


def is_linear_type_upto(ideal: MonomialIdeal, dmax: int,
                        budget: int = DEFAULT_BUDGET) -> LinearTypeVerdict:
    f = list(ideal.gens)
    if not f or ideal.is_unit():
        raise ValueError("need a proper non-zero ideal")
    if len(f) > MAX_GENERATORS or dmax > MAX_DEGREE:
        raise ValueError(
            f"linear-type check limited to {MAX_GENERATORS} generators and degree {MAX_DEGREE}"
        )
    s, n = len(f), ideal.n
    order = make_order(s, n)
    relations = sym_relations(f, order)
    contract = leading_term_contract(f, order)
    kernel = toric_kernel_upto(f, dmax, order, budget)
    basis = buchberger(relations, order, max_tdeg=dmax)
    counterexample = None
    for rel in kernel:
        if normal_form(rel, basis, order) is not None:
            counterexample = rel
            break
    h_leads = []
    for i, j in combinations(range(s), 2):
        fij = quotient(f[i], gcd(f[i], f[j]))
        h_leads.append((fij.exponents, tuple(int(k == j) for k in range(s))))
    initial_in_H = all(
        any(_divides(hx, g.lead.x) and _divides(ht, g.lead.t) for hx, ht in h_leads)
        for g in basis
    )
    relation_leads = {g.lead.monomial() for g in relations}
    return LinearTypeVerdict(
        verified=counterexample is None,
        dmax=dmax,
        basis_size=len(basis),
        checked=len(kernel),
        counterexample=counterexample,
        leading_contract=contract,
        initial_in_H=initial_in_H,
        basis_is_relations=all(g.lead.monomial() in relation_leads for g in basis),
    )
