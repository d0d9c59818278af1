"""Independent oracles and small utilities shared by the test modules.

These deliberately avoid the library's fast paths: rank via determinant
minors, CB via the per-point rank definition, covers via exhaustive
combinations, intersections via the direct common-cone linear system.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from cb_lab import (
    FieldSpec,
    PointSet,
    ProjPoint,
    eval_matrix,
)
from cb_lab.linalg import rref


def det_oracle(rows, field):
    """Determinant by Laplace expansion (exact, slow, independent)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = field.zero()
    sign = field.one()
    for j in range(n):
        if rows[0][j] != 0:
            minor = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
            term = field.mul(rows[0][j], det_oracle(minor, field))
            acc = field.add(acc, field.mul(sign, term))
        sign = field.neg(sign)
    return acc


def rank_oracle(rows, field):
    """Rank as the size of the largest nonsingular square minor."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    for size in range(min(nrows, ncols), 0, -1):
        for ris in itertools.combinations(range(nrows), size):
            for cis in itertools.combinations(range(ncols), size):
                sub = [[rows[i][j] for j in cis] for i in ris]
                if det_oracle(sub, field) != 0:
                    return size
    return 0


def fraction_ge_rref(rows):
    """Plain Gaussian elimination with Fractions (oracle for the Bareiss path)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    piv_cols = []
    pr = 0
    for c in range(ncols):
        pivot = next((i for i in range(pr, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        lead = m[pr][c]
        m[pr] = [x / lead for x in m[pr]]
        for i in range(nrows):
            if i != pr and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
        piv_cols.append(c)
        pr += 1
        if pr == nrows:
            break
    return [tuple(r) for r in m[:pr]], piv_cols


def is_cb_by_definition(gamma: PointSet, r: int) -> bool:
    """The definitional rank characterization, one elimination per point."""
    if len(gamma) == 0 or r == 0:
        return True
    full = rank_oracle_fast(eval_matrix(gamma, r).rows, gamma.field)
    for i in range(len(gamma)):
        sub = eval_matrix(gamma.without(i), r).rows
        if rank_oracle_fast(sub, gamma.field) != full:
            return False
    return True


def rank_oracle_fast(rows, field):
    """Rank via rref but through its own call (distinct from the left-kernel path)."""
    return len(rref(rows, field)[0])


def intersection_dim_oracle(f1, f2):
    """dim of the cone intersection by solving [A^T | -B^T] for common vectors."""
    field = f1.field
    ncols = f1.ambient_dim + 1
    a, b = len(f1.basis), len(f2.basis)
    sys_rows = []
    for i in range(ncols):
        row = [f1.basis[k][i] for k in range(a)]
        row += [field.neg(f2.basis[k][i]) for k in range(b)]
        sys_rows.append(row)
    from cb_lab.linalg import kernel

    sols = kernel(sys_rows, a + b, field)
    # common vectors x = u . basis1; their span is the intersection cone
    vecs = []
    for sol in sols:
        x = [field.zero()] * ncols
        for k in range(a):
            if sol[k] != 0:
                for j in range(ncols):
                    x[j] = field.add(x[j], field.mul(sol[k], f1.basis[k][j]))
        vecs.append(x)
    basis, _ = rref(vecs, field)
    return len(basis) - 1 if basis else -1


def cover_oracle(gamma: PointSet, candidates, d: int, max_length: int) -> bool:
    """Exhaustive multisets-of-candidates cover check (repetition never helps)."""
    usable = [c for c in candidates if c.flat.dim <= d]
    full = (1 << len(gamma)) - 1
    if full == 0:
        return True
    for size in range(1, max_length + 1):
        for combo in itertools.combinations(usable, size):
            if sum(c.flat.dim for c in combo) > d:
                continue
            mask = 0
            for c in combo:
                mask |= c.mask
            if mask == full:
                return True
    return False


def random_point_set(field: FieldSpec, n: int, count: int, rng: random.Random) -> PointSet:
    pts = []
    seen = set()
    while len(pts) < count:
        if field.is_prime_field:
            coords = tuple(rng.randrange(field.p) for _ in range(n + 1))
        else:
            coords = tuple(Fraction(rng.randint(-9, 9)) for _ in range(n + 1))
        if all(c == 0 for c in coords):
            continue
        pt = ProjPoint(field, coords)
        if pt.coords in seen:
            continue
        seen.add(pt.coords)
        pts.append(pt)
    return PointSet(field, n, tuple(pts))


def random_invertible_matrix(field: FieldSpec, n: int, rng: random.Random):
    from cb_lab.linalg import rank

    while True:
        rows = [
            [
                rng.randrange(field.p)
                if field.is_prime_field
                else Fraction(rng.randint(-5, 5))
                for _ in range(n + 1)
            ]
            for _ in range(n + 1)
        ]
        if rank(rows, field) == n + 1:
            return rows
