"""Toric ideals of integer matrices.

Variables are indexed by the columns of the matrix: column ``j`` sends
``X_j`` to the Laurent monomial ``prod_i t_i^{M[i][j]}``.  Two independent
constructions are offered:

* :func:`toric_by_elimination` eliminates the ``t`` variables (and their
  inverses ``z``) from ``X_j - t^{M_j}``, ``t_i z_i - 1``;
* :func:`toric_by_saturation` starts from the lattice ideal of an integer
  kernel basis and saturates at each variable in turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .groebner import IdealBasis, eliminate, reduced_groebner, saturate
from .poly import Polynomial, TermOrder, VarTable


@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(tuple(tuple(r) for r in rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def apply(self, v: Sequence[int]) -> Tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match the matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


def rank(M: IntMatrix) -> int:
    """Rank over the rationals (exact Gaussian elimination)."""
    return rational_rank([list(r) for r in M.rows])


def rational_rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(a)) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for k in range(r + 1, len(a)):
            if a[k][c]:
                f = a[k][c] / a[r][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def integer_kernel_basis(M: IntMatrix) -> List[Tuple[int, ...]]:
    """A Z-basis of ``{u in Z^ncols : M u = 0}``.

    Unimodular row operations bring ``[M^T | I]`` to echelon form; the
    identity part of the rows whose ``M^T`` part vanished spans the integer
    kernel exactly, not just a sublattice of finite index.
    """
    m, n = M.nrows, M.ncols
    work = [list(M.column(j)) + [int(k == j) for k in range(n)] for j in range(n)]
    r = 0
    for c in range(m):
        if r == n:
            break
        while True:
            nz = [k for k in range(r, n) if work[k][c]]
            if not nz:
                break
            p = min(nz, key=lambda k: abs(work[k][c]))
            work[r], work[p] = work[p], work[r]
            clean = True
            for k in range(r + 1, n):
                if work[k][c]:
                    q = work[k][c] // work[r][c]
                    work[k] = [x - q * y for x, y in zip(work[k], work[r])]
                    if work[k][c]:
                        clean = False
            if clean:
                r += 1
                break
    basis = [row[m:] for row in work[r:]]
    return _tidy(basis)


def _tidy(basis: List[List[int]]) -> List[Tuple[int, ...]]:
    # greedy pairwise size reduction keeps binomial degrees small
    def norm(v):
        return sum(abs(x) for x in v)

    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for s in (1, -1):
                    w = [a - s * b for a, b in zip(basis[i], basis[j])]
                    if norm(w) < norm(basis[i]):
                        basis[i] = w
                        changed = True
    out = []
    for v in basis:
        lead = next((x for x in v if x), 0)
        out.append(tuple(-x for x in v) if lead < 0 else tuple(v))
    out.sort(key=lambda v: (sum(abs(x) for x in v), [-abs(x) for x in v], [-x for x in v]))
    return out


def lattice_ideal(F: Sequence[Sequence[int]], vars: VarTable, order: Optional[TermOrder] = None) -> IdealBasis:
    """The ideal generated by x^{u+} - x^{u-} for u in F."""
    if order is None:
        order = TermOrder.grevlex(vars)
    gens = []
    for u in F:
        if len(u) != len(vars):
            raise ValueError("lattice vector length does not match the variable table")
        pos = tuple(max(x, 0) for x in u)
        neg = tuple(max(-x, 0) for x in u)
        g = Polynomial.binomial(vars, pos, neg)
        if g:
            gens.append(g.monic(order))
    return IdealBasis.of(gens, vars, order)


def _aux_names(vars: VarTable, m: int, aux: Optional[Tuple[Sequence[str], Sequence[str]]]):
    if aux is None:
        tnames = [f"t{i + 1}" for i in range(m)]
        znames = [f"z{i + 1}" for i in range(m)]
    else:
        tnames, znames = list(aux[0]), list(aux[1])
        if len(tnames) != m or len(znames) != m:
            raise ValueError("need one auxiliary name pair per matrix row")
    taken = set(vars.names)
    out = []
    for name in tnames + znames:
        base, k = name, 0
        while name in taken:
            k += 1
            name = f"_{base}" if k == 1 else f"_{base}{k}"
        taken.add(name)
        out.append(name)
    return out[:m], out[m:]


def extended_toric_ideal(
    M: IntMatrix,
    vars: VarTable,
    order: Optional[TermOrder] = None,
    aux: Optional[Tuple[Sequence[str], Sequence[str]]] = None,
) -> IdealBasis:
    """Generators X_j - t^{M_j+} z^{M_j-} and t_i z_i - 1, raw.

    The auxiliary variables follow ``vars`` in the table and come last in
    the variable priority.
    """
    if len(vars) != M.ncols:
        raise ValueError("one variable per matrix column is required")
    if order is None:
        order = TermOrder.grevlex(vars)
    m, n = M.nrows, M.ncols
    tnames, znames = _aux_names(vars, m, aux)
    big = vars.extend(tnames + znames)
    big_order = order.extended(2 * m)
    nb = len(big)
    gens = []
    for j in range(n):
        img = [0] * nb
        for i in range(m):
            a = M[i, j]
            if a > 0:
                img[n + i] = a
            elif a < 0:
                img[n + m + i] = -a
        x = [0] * nb
        x[j] = 1
        gens.append(Polynomial.binomial(big, tuple(x), tuple(img)))
    for i in range(m):
        tz = [0] * nb
        tz[n + i] = tz[n + m + i] = 1
        gens.append(Polynomial.binomial(big, tuple(tz), (0,) * nb))
    return IdealBasis.of([g.monic(big_order) for g in gens], big, big_order)


def toric_by_elimination(
    M: IntMatrix,
    vars: VarTable,
    order: Optional[TermOrder] = None,
    aux: Optional[Tuple[Sequence[str], Sequence[str]]] = None,
) -> IdealBasis:
    """Reduced Groebner basis of the toric ideal of ``M`` via elimination."""
    ext = extended_toric_ideal(M, vars, order, aux)
    return eliminate(ext, range(len(vars), len(ext.vars)))


def toric_by_saturation(M: IntMatrix, vars: VarTable, order: Optional[TermOrder] = None) -> IdealBasis:
    """Reduced Groebner basis of the toric ideal of ``M`` via the lattice
    ideal of its integer kernel, saturated at X_1, ..., X_n in order."""
    if len(vars) != M.ncols:
        raise ValueError("one variable per matrix column is required")
    J = lattice_ideal(integer_kernel_basis(M), vars, order)
    for name in vars.names:
        J = saturate(J, Polynomial.variable(vars, name))
    return reduced_groebner(J)


def is_toric_binomial(g: Polynomial) -> bool:
    """True for x^a - x^b (up to sign) with disjoint supports."""
    if len(g) != 2:
        return False
    (m1, c1), (m2, c2) = g.terms.items()
    if c1 != -c2 or abs(c1) != 1:
        return False
    return all(not (a and b) for a, b in zip(m1, m2))
