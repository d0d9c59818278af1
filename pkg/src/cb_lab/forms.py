"""Degree-r monomial bases, evaluation matrices and exact rank/kernel profiles.

The evaluation matrix of a point set has one row per point holding the
values of every degree-r monomial at that point (graded-lex order, leading
variable first).  Its kernel is the space of degree-r forms vanishing on
the whole set, which is what makes the Cayley-Bacharach condition a rank
statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import linalg
from .fields import FieldSpec
from .projective import PointSet, ProjPoint


@dataclass(frozen=True)
class MonomialBasis:
    """All exponent vectors of total degree r in n+1 variables, graded-lex order."""

    n: int
    r: int
    monomials: tuple

    def __len__(self) -> int:
        return len(self.monomials)


def _exponents(nvars: int, total: int):
    if nvars == 1:
        yield (total,)
        return
    for e in range(total, -1, -1):
        for rest in _exponents(nvars - 1, total - e):
            yield (e,) + rest


@lru_cache(maxsize=64)
def monomial_basis(n: int, r: int) -> MonomialBasis:
    """The degree-r monomial basis on P^n; count is binomial(n+r, r)."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    monos = tuple(_exponents(n + 1, r))
    assert len(monos) == comb(n + r, r)
    return MonomialBasis(n, r, monos)


def evaluation_row(coords, basis: MonomialBasis, field: FieldSpec):
    """Values of every basis monomial at one coordinate vector."""
    pows = [[field.one()] for _ in coords]
    for i, c in enumerate(coords):
        col = pows[i]
        for _ in range(basis.r):
            col.append(field.mul(col[-1], c))
    row = []
    for expo in basis.monomials:
        val = field.one()
        for i, e in enumerate(expo):
            if e:
                val = field.mul(val, pows[i][e])
        row.append(val)
    return tuple(row)


@dataclass(frozen=True)
class EvalMatrix:
    """Rows = points of gamma, columns = degree-r monomials in graded-lex order."""

    field: FieldSpec
    basis: MonomialBasis
    rows: tuple

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.basis)


def eval_matrix(gamma: PointSet, r: int) -> EvalMatrix:
    """Evaluation matrix of gamma for degree-r forms (deterministic in the
    point order and the fixed monomial order)."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    basis = monomial_basis(gamma.ambient_dim, r)
    rows = tuple(evaluation_row(pt.coords, basis, gamma.field) for pt in gamma)
    return EvalMatrix(gamma.field, basis, rows)


@dataclass(frozen=True)
class RankProfile:
    """Exact rank and the canonical kernel basis (forms vanishing on gamma)."""

    rank: int
    kernel_basis: tuple

    @property
    def corank(self) -> int:
        return len(self.kernel_basis)


def rank_kernel(m: EvalMatrix) -> RankProfile:
    """Rank and reduced-echelon kernel basis of an evaluation matrix."""
    ker = linalg.kernel(m.rows, m.ncols, m.field)
    return RankProfile(m.ncols - len(ker), tuple(tuple(v) for v in ker))


def evaluate_form(coeffs, basis: MonomialBasis, pt: ProjPoint):
    """Value of the form sum(c_j * monomial_j) at a point."""
    row = evaluation_row(pt.coords, basis, pt.field)
    return linalg.dot(coeffs, row, pt.field)


def form_to_json(coeffs, basis: MonomialBasis, field: FieldSpec):
    """Human-auditable sparse form: nonzero coefficients with exponent vectors."""
    return [
        {"exponents": list(expo), "coeff": field.encode(c)}
        for expo, c in zip(basis.monomials, coeffs)
        if c != 0
    ]


def form_from_json(terms, basis: MonomialBasis, field: FieldSpec):
    lookup = {tuple(t["exponents"]): field.decode(t["coeff"]) for t in terms}
    return tuple(lookup.get(expo, field.zero()) for expo in basis.monomials)
