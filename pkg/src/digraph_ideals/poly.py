"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives over a :class:`VarTable` and stores its terms as a dict
from exponent tuples to :class:`fractions.Fraction`.  Term orders are
separate objects; they turn an exponent tuple into a sort key, so the same
polynomial can be viewed under lex, grevlex or a block elimination order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Fraction
Coefficient = Union[int, Fraction]

LESS, EQUAL, GREATER = -1, 0, 1


class VarTableMismatch(ValueError):
    """Raised when two operands live over different variable tables."""


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class PolynomialParseError(ValueError):
    pass


class VarTable:
    """Ordered, immutable list of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not name:
                raise ValueError(f"bad variable name {name!r}")
            if name in index:
                raise ValueError(f"duplicate variable name {name!r}")
            index[name] = i
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("VarTable is immutable")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarTable({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def extend(self, names: Iterable[str]) -> "VarTable":
        return VarTable(self.names + tuple(names))

    def fresh_name(self, stem: str) -> str:
        """A name starting with ``stem`` that is not yet in the table."""
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name

    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def monomial(self, powers: Dict[str, int]) -> Monomial:
        exps = [0] * len(self.names)
        for name, k in powers.items():
            exps[self.index(name)] += k
        return tuple(exps)


# -- monomial helpers --------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def mono_degree(a: Monomial) -> int:
    return sum(a)


# -- term orders -------------------------------------------------------------

_KINDS = ("lex", "grevlex", "block")


@dataclass(frozen=True)
class TermOrder:
    """A term order on monomials over ``len(priority)`` variables.

    ``priority`` lists variable indices from largest to smallest.  For a
    ``block`` order the variables in ``front`` are compared first with
    grevlex; ties are broken on the remaining variables using ``tail``
    (``"lex"`` or ``"grevlex"``).  Any monomial containing a front variable
    therefore beats every monomial free of them, which is what elimination
    needs.
    """

    kind: str
    priority: Tuple[int, ...]
    front: frozenset = frozenset()
    tail: str = "grevlex"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown term order kind {self.kind!r}")
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError("priority must be a permutation of variable indices")
        if self.kind == "block":
            if self.tail not in ("lex", "grevlex"):
                raise ValueError(f"unknown tail order {self.tail!r}")
            if not set(self.front) <= set(self.priority):
                raise ValueError("front block names unknown variables")

    @classmethod
    def lex(cls, vars: VarTable, names: Optional[Sequence[str]] = None) -> "TermOrder":
        return cls("lex", _priority(vars, names))

    @classmethod
    def grevlex(cls, vars: VarTable, names: Optional[Sequence[str]] = None) -> "TermOrder":
        return cls("grevlex", _priority(vars, names))

    @property
    def nvars(self) -> int:
        return len(self.priority)

    @cached_property
    def key(self):
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        prio = self.priority
        if self.kind == "lex":
            return lambda m: tuple([m[i] for i in prio])
        if self.kind == "grevlex":
            rev = prio[::-1]
            return lambda m: (sum(m), tuple([-m[i] for i in rev]))
        head = [i for i in prio if i in self.front]
        rest = [i for i in prio if i not in self.front]
        head_rev = head[::-1]
        if self.tail == "lex":
            def key(m):
                return (sum([m[i] for i in head]), tuple([-m[i] for i in head_rev]),
                        tuple([m[i] for i in rest]))
        else:
            rest_rev = rest[::-1]

            def key(m):
                return (sum([m[i] for i in head]), tuple([-m[i] for i in head_rev]),
                        sum([m[i] for i in rest]), tuple([-m[i] for i in rest_rev]))
        return key

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != self.nvars or len(b) != self.nvars:
            raise VarTableMismatch("monomial length does not match the term order")
        ka, kb = self.key(a), self.key(b)
        return LESS if ka < kb else GREATER if ka > kb else EQUAL

    def eliminating(self, front: Iterable[int]) -> "TermOrder":
        """Block order with ``front`` first; the rest keeps this order."""
        front = frozenset(front)
        tail = self.tail if self.kind == "block" else self.kind
        return TermOrder("block", self.priority, front, tail)

    def restricted(self, keep: Sequence[int]) -> "TermOrder":
        """This order restricted to the variables ``keep`` (old indices),
        re-indexed so ``keep[k]`` becomes variable ``k``."""
        new_index = {old: k for k, old in enumerate(keep)}
        prio = tuple(new_index[i] for i in self.priority if i in new_index)
        if self.kind == "block":
            front = frozenset(new_index[i] for i in self.front if i in new_index)
            if not front:
                return TermOrder(self.tail, prio)
            return TermOrder("block", prio, front, self.tail)
        return TermOrder(self.kind, prio)

    def extended(self, extra: int, *, front: bool = False) -> "TermOrder":
        """Append ``extra`` new variables (indices after the current ones).

        With ``front=True`` the new variables become an elimination block
        ahead of everything else.
        """
        n = self.nvars
        new = tuple(range(n, n + extra))
        if front:
            tail = self.tail if self.kind == "block" else self.kind
            if self.kind == "block" and self.front:
                raise ValueError("cannot stack two elimination blocks")
            return TermOrder("block", new + self.priority, frozenset(new), tail)
        return TermOrder(self.kind, self.priority + new, self.front, self.tail)

    def describe(self, vars: VarTable) -> str:
        names = " > ".join(vars.names[i] for i in self.priority)
        if self.kind == "block":
            front = [vars.names[i] for i in self.priority if i in self.front]
            return f"block({', '.join(front)} | {self.tail}) {names}"
        return f"{self.kind} {names}"


def _priority(vars: VarTable, names: Optional[Sequence[str]]) -> Tuple[int, ...]:
    if names is None:
        return tuple(range(len(vars)))
    prio = tuple(vars.index(n) for n in names)
    if sorted(prio) != list(range(len(vars))):
        raise ValueError("variable priority must list every variable exactly once")
    return prio


def compare_monomials(a: Monomial, b: Monomial, order: TermOrder) -> int:
    return order.compare(a, b)


# -- polynomials -------------------------------------------------------------


def _as_fraction(c: Coefficient) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Immutable polynomial over a :class:`VarTable`.

    ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarTable, terms: Optional[Dict[Monomial, Coefficient]] = None):
        clean: Dict[Monomial, Fraction] = {}
        n = len(vars)
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise VarTableMismatch("monomial length does not match the variable table")
            c = _as_fraction(c)
            if c:
                clean[tuple(mono)] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, vars: VarTable, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors

    @classmethod
    def zero(cls, vars: VarTable) -> "Polynomial":
        return cls._raw(vars, {})

    @classmethod
    def constant(cls, vars: VarTable, c: Coefficient) -> "Polynomial":
        return cls(vars, {vars.one(): c})

    @classmethod
    def variable(cls, vars: VarTable, name: str) -> "Polynomial":
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls._raw(vars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, vars: VarTable, powers: Dict[str, int], c: Coefficient = 1) -> "Polynomial":
        return cls(vars, {vars.monomial(powers): c})

    @classmethod
    def binomial(cls, vars: VarTable, pos: Monomial, neg: Monomial) -> "Polynomial":
        """x^pos - x^neg."""
        return cls(vars, {pos: 1}) - cls(vars, {neg: 1})

    @classmethod
    def parse(cls, text: str, vars: VarTable) -> "Polynomial":
        return parse_polynomial(text, vars)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def support(self) -> frozenset:
        """Indices of variables that occur in some term."""
        used = set()
        for m in self.terms:
            used.update(i for i, k in enumerate(m) if k)
        return frozenset(used)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self, order: TermOrder) -> List[Tuple[Fraction, Monomial]]:
        """Terms as (coefficient, monomial), largest first."""
        self._check_order(order)
        return [(self.terms[m], m) for m in sorted(self.terms, key=order.key, reverse=True)]

    def leading_term(self, order: TermOrder) -> Tuple[Fraction, Monomial]:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        self._check_order(order)
        m = max(self.terms, key=order.key)
        return self.terms[m], m

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[1]

    def monic(self, order: TermOrder) -> "Polynomial":
        if not self.terms:
            return self
        c, _ = self.leading_term(order)
        if c == 1:
            return self
        return self._raw(self.vars, {m: a / c for m, a in self.terms.items()})

    def _check_order(self, order: TermOrder) -> None:
        if order.nvars != len(self.vars):
            raise VarTableMismatch("term order and polynomial use different variable tables")

    def _check_vars(self, other: "Polynomial") -> None:
        if self.vars is not other.vars and self.vars != other.vars:
            raise VarTableMismatch(f"{self.vars!r} vs {other.vars!r}")

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_vars(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return self._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return self._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.vars)
            return self._raw(self.vars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = terms.get(m, 0) + c1 * c2
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return self._raw(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, c: Fraction, mono: Monomial) -> "Polynomial":
        return self._raw(self.vars, {mono_mul(m, mono): a * c for m, a in self.terms.items()})

    # equality

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, frozenset(self.terms.items()))))
        return self._hash

    # embedding between tables

    def embed(self, target: VarTable) -> "Polynomial":
        """The same polynomial over a table that contains all our variables."""
        pos = [target.index(n) for n in self.vars.names]
        n = len(target)
        terms = {}
        for m, c in self.terms.items():
            exps = [0] * n
            for i, k in zip(pos, m):
                exps[i] = k
            terms[tuple(exps)] = c
        return self._raw(target, terms)

    def restrict(self, target: VarTable) -> "Polynomial":
        """Drop to a sub-table; every used variable must be present there."""
        src = self.vars
        keep = [src.index(n) for n in target.names]
        for i in self.support():
            if src.names[i] not in target:
                raise VarTableMismatch(f"variable {src.names[i]!r} is not in the target table")
        return self._raw(target, {tuple(m[i] for i in keep): c for m, c in self.terms.items()})

    # text

    def render(self, order: Optional[TermOrder] = None) -> str:
        if order is None:
            order = TermOrder.grevlex(self.vars)
        return render_terms(self.sorted_terms(order), self.vars)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


def render_monomial(m: Monomial, vars: VarTable) -> str:
    parts = []
    for name, k in zip(vars.names, m):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(terms: Sequence[Tuple[Fraction, Monomial]], vars: VarTable) -> str:
    if not terms:
        return "0"
    out = []
    for idx, (c, m) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        body = render_monomial(m, vars)
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a}*{body}"
        if idx == 0:
            out.append(f"-{text}" if sign == "-" else text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()])|(?P<name>[A-Za-z_][A-Za-z0-9_.']*))")


def parse_polynomial(text: str, vars: VarTable) -> Polynomial:
    """Parse ``text`` such as ``"e1*e2 - 3/2*e3^2 + 1"``.

    Products may be written with ``*`` or by juxtaposition (``e1e2``); a run
    of letters and digits is split greedily into the longest known variable
    names.
    """
    tokens = _tokenize(text, vars)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> Polynomial:
        kind, val = peek()
        neg = False
        if kind == "op" and val in "+-":
            take()
            neg = val == "-"
        result = term()
        if neg:
            result = -result
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term() -> Polynomial:
        result = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                result = result * power()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                result = result * power()
            else:
                return result

    def power() -> Polynomial:
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            kind, val = take() if pos < len(tokens) else (None, None)
            if kind != "num" or "/" in val:
                raise PolynomialParseError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom() -> Polynomial:
        if pos >= len(tokens):
            raise PolynomialParseError("unexpected end of input")
        kind, val = take()
        if kind == "num":
            return Polynomial.constant(vars, Fraction(val))
        if kind == "name":
            return Polynomial.variable(vars, val)
        if val == "(":
            inner = expr()
            if pos >= len(tokens) or tokens[pos] != ("op", ")"):
                raise PolynomialParseError("missing ')'")
            take()
            return inner
        raise PolynomialParseError(f"unexpected {val!r}")

    if not tokens:
        raise PolynomialParseError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise PolynomialParseError(f"trailing input at token {tokens[pos][1]!r}")
    return result


def _tokenize(text: str, vars: VarTable) -> List[Tuple[str, str]]:
    tokens = []
    i = 0
    text = text.strip()
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise PolynomialParseError(f"cannot parse {text[i:]!r}")
        i = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
        else:
            tokens.extend(("name", n) for n in _split_names(m.group("name"), vars))
    return tokens


def _split_names(word: str, vars: VarTable) -> List[str]:
    if word in vars:
        return [word]
    out = []
    i = 0
    while i < len(word):
        for j in range(len(word), i, -1):
            if word[i:j] in vars:
                out.append(word[i:j])
                i = j
                break
        else:
            raise PolynomialParseError(f"unknown variable in {word!r}")
    return out


# -- division ----------------------------------------------------------------


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Normal form of ``f`` modulo ``basis`` by the division algorithm.

    The first divisor in list order is used at every step, so the result is
    deterministic; it is independent of the list only when ``basis`` is a
    Groebner basis.
    """
    f._check_order(order)
    for g in basis:
        f._check_vars(g)
        if not g:
            raise ZeroPolynomialError("cannot divide by the zero polynomial")
    divisors = [_Divisor(g, order) for g in basis]
    return Polynomial._raw(f.vars, normal_form(f.terms, divisors, order.key))


class _Divisor:
    __slots__ = ("lm", "lc", "tail", "mask")

    def __init__(self, g: Polynomial, order: TermOrder):
        c, m = g.leading_term(order)
        self.lm = m
        self.lc = c
        self.tail = [(mm, a) for mm, a in g.terms.items() if mm != m]
        self.mask = _mask(m)


def _mask(m: Monomial) -> int:
    bits = 0
    for i, k in enumerate(m):
        if k:
            bits |= 1 << i
    return bits


def normal_form(terms: Dict[Monomial, Fraction], divisors, key) -> Dict[Monomial, Fraction]:
    """Fully reduce a term dict against divisor records (lm, lc, tail, mask)."""
    p = dict(terms)
    r: Dict[Monomial, Fraction] = {}
    while p:
        lm = max(p, key=key)
        c = p.pop(lm)
        lmask = _mask(lm)
        for d in divisors:
            if d.mask & ~lmask or not mono_divides(d.lm, lm):
                continue
            q = mono_div(lm, d.lm)
            f = c / d.lc
            for m, a in d.tail:
                mm = mono_mul(m, q)
                v = p.get(mm, 0) - f * a
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
            break
        else:
            r[lm] = c
    return r
