"""Buchberger's algorithm and the ideal operations built on it.

Everything here works on exact rational polynomials from :mod:`.poly`.
Pairs are chosen by the normal strategy (smallest lcm first) and pruned with
the Gebauer-Moeller criteria, which include Buchberger's coprime test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .poly import (
    Monomial,
    Polynomial,
    TermOrder,
    VarTable,
    VarTableMismatch,
    ZeroPolynomialError,
    _mask,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    normal_form,
    reduce,
)

RAW = "raw"
GROEBNER = "groebner"
REDUCED = "reduced-groebner"
_STATUSES = (RAW, GROEBNER, REDUCED)


class NotGroebnerError(ValueError):
    pass


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal, tagged with how much is known about them."""

    generators: Tuple[Polynomial, ...]
    vars: VarTable
    order: TermOrder
    status: str = RAW

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.order.nvars != len(self.vars):
            raise VarTableMismatch("term order does not match the variable table")
        for g in gens:
            if g.vars != self.vars:
                raise VarTableMismatch("generator over a different variable table")
            if not g:
                raise ZeroPolynomialError("generators must be nonzero")

    @classmethod
    def of(cls, gens: Iterable[Polynomial], vars: VarTable, order: TermOrder = None) -> "IdealBasis":
        """Raw basis; zero generators are dropped."""
        if order is None:
            order = TermOrder.grevlex(vars)
        return cls(tuple(g for g in gens if g), vars, order, RAW)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def rendered(self) -> List[str]:
        return [g.render(self.order) for g in self.generators]

    def as_set(self) -> frozenset:
        return frozenset(self.generators)

    def with_order(self, order: TermOrder) -> "IdealBasis":
        return IdealBasis(self.generators, self.vars, order, RAW)


# -- internal generator records ------------------------------------------------


class _Gen:
    __slots__ = ("terms", "lm", "lc", "tail", "mask")

    def __init__(self, terms: Dict[Monomial, Fraction], key):
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc != 1:
            terms = {m: c / lc for m, c in terms.items()}
        self.terms = terms
        self.lm = lm
        self.lc = Fraction(1)
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.mask = _mask(lm)


def _spoly(f: _Gen, g: _Gen) -> Dict[Monomial, Fraction]:
    lcm = mono_lcm(f.lm, g.lm)
    qf = mono_div(lcm, f.lm)
    qg = mono_div(lcm, g.lm)
    out: Dict[Monomial, Fraction] = {}
    for m, c in f.tail:
        out[mono_mul(m, qf)] = c
    for m, c in g.tail:
        mm = mono_mul(m, qg)
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _memo_key(order: TermOrder):
    cache: Dict[Monomial, tuple] = {}
    base = order.key

    def key(m):
        k = cache.get(m)
        if k is None:
            k = cache[m] = base(m)
        return k

    return key


def _buchberger(polys: Sequence[Dict[Monomial, Fraction]], key) -> List[_Gen]:
    recs: List[_Gen] = []
    active: List[int] = []
    pairs: List[Tuple[int, int, Monomial]] = []

    def update(ih: int) -> None:
        nonlocal active, pairs
        mh = recs[ih].lm
        cand = list(active)
        keep: List[int] = []
        while cand:
            ig = cand.pop(0)
            mg = recs[ig].lm
            if mono_coprime(mh, mg):
                keep.append(ig)
                continue
            lcm_hg = mono_lcm(mh, mg)
            dominated = any(mono_divides(mono_lcm(mh, recs[ip].lm), lcm_hg) for ip in cand) or any(
                mono_divides(mono_lcm(mh, recs[ip].lm), lcm_hg) for ip in keep
            )
            if not dominated:
                keep.append(ig)
        new_pairs = [
            (ig, ih, mono_lcm(recs[ig].lm, mh)) for ig in keep if not mono_coprime(mh, recs[ig].lm)
        ]
        kept = []
        for ig1, ig2, lcm12 in pairs:
            if (
                not mono_divides(mh, lcm12)
                or mono_lcm(recs[ig1].lm, mh) == lcm12
                or mono_lcm(mh, recs[ig2].lm) == lcm12
            ):
                kept.append((ig1, ig2, lcm12))
        pairs = kept + new_pairs
        active = [ig for ig in active if not mono_divides(mh, recs[ig].lm)] + [ih]

    for terms in polys:
        if not terms:
            continue
        r = normal_form(terms, [recs[i] for i in active], key)
        if not r:
            continue
        recs.append(_Gen(r, key))
        update(len(recs) - 1)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (sum(pairs[k][2]), key(pairs[k][2])))
        i, j, _ = pairs.pop(best)
        s = _spoly(recs[i], recs[j])
        if not s:
            continue
        r = normal_form(s, [recs[k] for k in active], key)
        if r:
            recs.append(_Gen(r, key))
            update(len(recs) - 1)
    return [recs[i] for i in active]


def _interreduce(gens: List[_Gen], key) -> List[Dict[Monomial, Fraction]]:
    # drop generators whose leading monomial is a multiple of another's
    gens = sorted(gens, key=lambda g: key(g.lm))
    minimal: List[_Gen] = []
    for g in gens:
        if not any(mono_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = normal_form(dict(g.tail), others, key)
        tail[g.lm] = Fraction(1)
        out.append(tail)
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return out


def _check_basis(I: IdealBasis) -> None:
    if not isinstance(I, IdealBasis):
        raise TypeError("expected an IdealBasis")


# -- public operations -------------------------------------------------------


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """(lcm/LT(f))*f - (lcm/LT(g))*g with the leading terms cancelling."""
    f._check_vars(g)
    if not f or not g:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    cf, mf = f.leading_term(order)
    cg, mg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(1 / cf, mono_div(lcm, mf)) - g.mul_term(1 / cg, mono_div(lcm, mg))


def buchberger(I: IdealBasis) -> IdealBasis:
    """A Groebner basis of the ideal generated by ``I`` (monic generators)."""
    _check_basis(I)
    key = _memo_key(I.order)
    recs = _buchberger([g.terms for g in I.generators], key)
    gens = tuple(Polynomial._raw(I.vars, r.terms) for r in recs)
    return IdealBasis(gens, I.vars, I.order, GROEBNER)


def is_groebner(I: IdealBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = list(I.generators)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            s = s_polynomial(gens[a], gens[b], I.order)
            if s and reduce(s, gens, I.order):
                return False
    return True


def reduce_basis(I: IdealBasis) -> IdealBasis:
    """The reduced Groebner basis: monic, and each generator is reduced
    with respect to the others."""
    _check_basis(I)
    if I.status == REDUCED:
        return I
    if I.status == RAW and not is_groebner(I):
        raise NotGroebnerError("reduce_basis needs a Groebner basis; run buchberger first")
    key = _memo_key(I.order)
    recs = [_Gen(dict(g.terms), key) for g in I.generators]
    gens = tuple(Polynomial._raw(I.vars, t) for t in _interreduce(recs, key))
    return IdealBasis(gens, I.vars, I.order, REDUCED)


def reduced_groebner(I: IdealBasis) -> IdealBasis:
    """buchberger followed by reduce_basis."""
    if I.status == REDUCED:
        return I
    key = _memo_key(I.order)
    if I.status == GROEBNER:
        recs = [_Gen(dict(g.terms), key) for g in I.generators]
    else:
        recs = _buchberger([g.terms for g in I.generators], key)
    gens = tuple(Polynomial._raw(I.vars, t) for t in _interreduce(recs, key))
    return IdealBasis(gens, I.vars, I.order, REDUCED)


def _indices(vars: VarTable, drop: Iterable[Union[int, str]]) -> frozenset:
    out = set()
    for d in drop:
        if isinstance(d, str):
            out.add(vars.index(d))
        else:
            if not 0 <= d < len(vars):
                raise IndexError(f"variable index {d} out of range")
            out.add(d)
    return frozenset(out)


def eliminate(I: IdealBasis, drop: Iterable[Union[int, str]]) -> IdealBasis:
    """Reduced Groebner basis of I intersected with K[vars minus drop].

    The result lives over the smaller variable table and is ordered by the
    restriction of ``I.order``.
    """
    _check_basis(I)
    drop = _indices(I.vars, drop)
    keep = [i for i in range(len(I.vars)) if i not in drop]
    small = VarTable(I.vars.names[i] for i in keep)
    small_order = I.order.restricted(keep)
    if not drop:
        return reduced_groebner(I)
    elim = reduced_groebner(I.with_order(I.order.eliminating(drop)))
    gens = tuple(g.restrict(small) for g in elim.generators if not (g.support() & drop))
    return IdealBasis(gens, small, small_order, REDUCED)


def saturate(I: IdealBasis, f: Polynomial) -> IdealBasis:
    """Reduced Groebner basis of I : f^infinity.

    Adjoins a fresh variable w with the relation w*f - 1 and eliminates w.
    """
    _check_basis(I)
    if f.vars != I.vars:
        raise VarTableMismatch("saturating polynomial over a different table")
    if not f:
        raise ZeroPolynomialError("cannot saturate by zero")
    w = I.vars.fresh_name("w_")
    big = I.vars.extend([w])
    if I.order.kind == "block":
        order = TermOrder("block", (len(I.vars),) + I.order.priority, frozenset([len(I.vars)]), "grevlex")
    else:
        order = I.order.extended(1, front=True)
    gens = [g.embed(big) for g in I.generators]
    gens.append(Polynomial.variable(big, w) * f.embed(big) - 1)
    elim = reduced_groebner(IdealBasis.of(gens, big, order))
    wi = len(I.vars)
    out = [g.restrict(I.vars) for g in elim.generators if wi not in g.support()]
    result = IdealBasis(tuple(out), I.vars, I.order, RAW)
    if I.order.kind == "block":
        return reduced_groebner(result)
    return IdealBasis(result.generators, I.vars, I.order, REDUCED)


def contains(I: IdealBasis, f: Polynomial) -> bool:
    """Ideal membership via normal form against a Groebner basis."""
    _check_basis(I)
    if f.vars != I.vars:
        raise VarTableMismatch("polynomial over a different table")
    if not f:
        return True
    gb = I if I.status != RAW else buchberger(I)
    return not reduce(f, gb.generators, gb.order)


def same_ideal(I: IdealBasis, J: IdealBasis) -> bool:
    """Equality of ideals by comparing reduced bases under I's order."""
    if I.vars != J.vars:
        return False
    a = reduced_groebner(I)
    b = reduced_groebner(J.with_order(I.order) if J.order != I.order else J)
    return a.as_set() == b.as_set()
