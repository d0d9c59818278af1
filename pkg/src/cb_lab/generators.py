"""Seeded, deterministic generators for the example families.

"General position" over a finite field is probabilistic, so each generator
resamples until a checkable genericity certificate holds (distinct points,
exact intersection counts, skew/split configurations) and raises
ResampleBudgetExceededError when the budget runs out.  Identical GenSpec
inputs always produce identical output bytes.

Families:
  rnc               m points on the rational normal curve t -> [1:t:...:t^k]
  skew_lines        d pairwise-skew (split) lines in P^(2d-1) with sampled points
  two_plane_conics  points on smooth conics in a split pair of 2-planes in P^5
  plane_curve_ci    the full transverse intersection of two plane curves
  elliptic_quartic  points on a quadric-pair intersection curve in P^3
  on_configuration  uniform sampler on the planes of a given configuration
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import (
    DegenerateConicError,
    FieldTooSmallError,
    InvalidFieldError,
    ResampleBudgetExceededError,
)
from .fields import PRIME, FieldSpec
from .forms import evaluation_row, monomial_basis
from .projective import (
    Flat,
    PlaneConfiguration,
    PointSet,
    ProjPoint,
    enumerate_points,
    intersect,
    is_split,
    span,
)

RESAMPLE_BUDGET = 60
INNER_BUDGET = 400

FAMILIES = (
    "rnc",
    "skew_lines",
    "two_plane_conics",
    "plane_curve_ci",
    "elliptic_quartic",
    "on_configuration",
)

# Degree pairs the plane-curve intersection generator can certify: equal
# degrees go through a pencil with d*e-1 base points (the last base point of
# a rational pencil is rational), unequal ones sample points on a line or a
# conic and solve for the second curve.
SUPPORTED_CI_DEGREES = ((2, 2), (3, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4))


@dataclass(frozen=True)
class GenSpec:
    """A reproducible generator request: family, integer params, field, seed."""

    family: str
    params: tuple  # sorted (name, value) pairs; values are ints or int tuples
    field: FieldSpec
    seed: int
    config: PlaneConfiguration | None = None  # only for on_configuration

    @classmethod
    def make(cls, family, params: dict, field, seed, config=None) -> GenSpec:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        norm = []
        for key in sorted(params):
            val = params[key]
            norm.append((key, tuple(val) if isinstance(val, (list, tuple)) else int(val)))
        return cls(family, tuple(norm), field, int(seed), config)

    def param_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params}

    def to_json(self) -> dict:
        obj = {
            "family": self.family,
            "params": self.param_dict(),
            "field": self.field.to_json(),
            "seed": self.seed,
        }
        if self.config is not None:
            obj["config"] = self.config.to_json()
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> GenSpec:
        cfg = None
        if "config" in obj:
            cfg = PlaneConfiguration.from_json(obj["config"])
        return cls.make(
            obj["family"], obj["params"], FieldSpec.from_json(obj["field"]),
            obj["seed"], cfg,
        )


def generate(spec: GenSpec):
    """Run the family generator; returns (PointSet, PlaneConfiguration | None)."""
    p = spec.param_dict()
    if spec.family == "rnc":
        return gen_rnc(p["k"], p["m"], spec.field, spec.seed), None
    if spec.family == "skew_lines":
        return gen_skew_lines(p["d"], tuple(p["counts"]), spec.field, spec.seed)
    if spec.family == "two_plane_conics":
        return gen_two_plane_conics(p["points_per_conic"], spec.field, spec.seed)
    if spec.family == "plane_curve_ci":
        return gen_plane_curve_ci(p["deg_d"], p["deg_e"], spec.field, spec.seed), None
    if spec.family == "elliptic_quartic":
        return gen_elliptic_quartic(p["m"], spec.field, spec.seed), None
    if spec.family == "on_configuration":
        if spec.config is None:
            raise ValueError("on_configuration needs an embedded config")
        return (
            gen_on_configuration(spec.config, tuple(p["counts"]), spec.field, spec.seed),
            spec.config,
        )
    raise ValueError(f"unknown family {spec.family!r}")


# ---------------------------------------------------------------------------
# Shared sampling helpers
# ---------------------------------------------------------------------------


def _rand_element(field: FieldSpec, rng: random.Random):
    if field.kind == PRIME:
        return rng.randrange(field.p)
    return field.coerce(rng.randint(-99, 99))


def _rand_point(field: FieldSpec, n: int, rng: random.Random) -> ProjPoint:
    while True:
        coords = tuple(_rand_element(field, rng) for _ in range(n + 1))
        if any(c != 0 for c in coords):
            return ProjPoint(field, coords)


def _distinct_params(field: FieldSpec, count: int, rng: random.Random):
    """count distinct scalars, seeded (field elements or small integers)."""
    if field.kind == PRIME:
        if count > field.p:
            raise FieldTooSmallError(f"need {count} distinct elements of {field}")
        return rng.sample(range(field.p), count)
    lo, hi = -5 * count - 5, 5 * count + 5
    return [field.coerce(t) for t in rng.sample(range(lo, hi + 1), count)]


def _combine(field: FieldSpec, coeffs, rows):
    n = len(rows[0])
    out = [field.zero()] * n
    for c, row in zip(coeffs, rows):
        if c != 0:
            for j in range(n):
                out[j] = field.add(out[j], field.mul(c, row[j]))
    return out


# ---------------------------------------------------------------------------
# Rational normal curves
# ---------------------------------------------------------------------------


def gen_rnc(k: int, m: int, field: FieldSpec, seed: int) -> PointSet:
    """m distinct points on the degree-k rational normal curve in P^k.

    Certificate: distinct parameter values (hence distinct points).  Over
    GF(p) the curve has p+1 rational points; the point at infinity is used
    only when m = p+1.
    """
    if k < 1 or m < 1:
        raise ValueError("need k >= 1 and m >= 1")
    rng = random.Random(seed)
    infinity = False
    if field.kind == PRIME:
        if m > field.p + 1:
            raise FieldTooSmallError(f"the curve has only {field.p + 1} points over {field}")
        if m == field.p + 1:
            ts = list(range(field.p))
            infinity = True
        else:
            ts = rng.sample(range(field.p), m)
    else:
        ts = _distinct_params(field, m, rng)
    pts = []
    for t in ts:
        coords = [field.one()]
        for _ in range(k):
            coords.append(field.mul(coords[-1], t))
        pts.append(ProjPoint(field, coords))
    if infinity:
        coords = [field.zero()] * k + [field.one()]
        pts.append(ProjPoint(field, coords))
    return PointSet(field, k, tuple(pts))


# ---------------------------------------------------------------------------
# Skew lines
# ---------------------------------------------------------------------------


def _line_points(line: Flat, count: int, rng: random.Random):
    """count distinct points on a line, via the parameters of its two basis rows."""
    field = line.field
    b0, b1 = line.basis
    if field.kind == PRIME:
        total = field.p + 1
        if count > total:
            raise FieldTooSmallError(f"a line has only {total} points over {field}")
        params = rng.sample(range(total), count)
        pts = []
        for t in params:
            if t == field.p:
                pts.append(ProjPoint(field, b1))
            else:
                pts.append(ProjPoint(field, _combine(field, (field.one(), t), (b0, b1))))
        return pts
    params = _distinct_params(field, count, rng)
    return [ProjPoint(field, _combine(field, (field.one(), t), (b0, b1))) for t in params]


def gen_skew_lines(d: int, counts, field: FieldSpec, seed: int):
    """d pairwise-skew lines in P^(2d-1) and counts[i] sampled points on line i.

    Certificate: every line has dimension one and the configuration is split
    (for d = 1 a single line is trivially split).  Skewness makes the sampled
    points automatically distinct across lines.
    """
    counts = tuple(int(c) for c in counts)
    if d < 1 or len(counts) != d or any(c < 1 for c in counts):
        raise ValueError("need d >= 1 and one positive count per line")
    n = 2 * d - 1
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        lines = []
        for _i in range(d):
            a, b = _rand_point(field, n, rng), _rand_point(field, n, rng)
            if a.coords == b.coords:
                break
            lines.append(span([a, b]))
        if len(lines) < d or any(ln.dim != 1 for ln in lines):
            continue
        if len(set(lines)) != d:
            continue
        cfg = PlaneConfiguration(tuple(lines))
        if d > 1 and not is_split(cfg):
            continue
        pts = []
        for ln, cnt in zip(lines, counts):
            pts.extend(_line_points(ln, cnt, rng))
        return PointSet(field, n, tuple(pts)), cfg
    raise ResampleBudgetExceededError("could not sample a split line configuration")


# ---------------------------------------------------------------------------
# Conics
# ---------------------------------------------------------------------------


def _conic_through_origin_point(field: FieldSpec, rng: random.Random):
    """A smooth plane conic through (1:0:0): Gram matrix and its point list.

    The conic is x^T G x = 0 with symmetric G, G[0][0] = 0; smoothness is
    det(G) != 0 (needs odd characteristic).  Points come from the lines
    through the base point, so over GF(p) the full list has p+1 entries in a
    deterministic order.
    """
    if field.kind == PRIME and field.p == 2:
        raise FieldTooSmallError("smooth-conic sampling needs odd characteristic")
    b, c = _rand_element(field, rng), _rand_element(field, rng)
    dd, e, f = (_rand_element(field, rng) for _ in range(3))
    # det of [[0,b,c],[b,dd,e],[c,e,f]]
    det = field.sub(
        field.mul(field.mul(field.coerce(2), b), field.mul(c, e)),
        field.add(field.mul(field.mul(b, b), f), field.mul(field.mul(c, c), dd)),
    )
    if det == 0:
        raise DegenerateConicError("singular Gram matrix")
    gram = ((field.zero(), b, c), (b, dd, e), (c, e, f))

    def quad(v):
        acc = field.zero()
        for i in range(3):
            row = gram[i]
            s = field.zero()
            for j in range(3):
                if v[j] != 0:
                    s = field.add(s, field.mul(row[j], v[j]))
            if v[i] != 0:
                acc = field.add(acc, field.mul(v[i], s))
        return acc

    base = ProjPoint(field, (field.one(), field.zero(), field.zero()))

    def second_point(v):
        # Line {base + t v}: roots of t * (2 b.G.v + t v.G.v).
        fv = quad(v)
        bgv = field.add(field.mul(gram[0][1], v[1]), field.mul(gram[0][2], v[2]))
        if fv == 0:
            return ProjPoint(field, v)  # the direction itself lies on the conic
        t = field.div(field.neg(field.mul(field.coerce(2), bgv)), fv)
        if t == 0:
            return None  # tangent at the base point
        return ProjPoint(field, (field.one(), field.mul(t, v[1]), field.mul(t, v[2])))

    def directions():
        if field.kind == PRIME:
            for s in range(field.p):
                yield (field.zero(), field.one(), field.coerce(s))
            yield (field.zero(), field.zero(), field.one())
        else:
            step = 0
            while True:
                yield (field.zero(), field.one(), field.coerce(step))
                if step > 0:
                    yield (field.zero(), field.one(), field.coerce(-step))
                step += 1

    def points(limit):
        seen = {base.coords}
        out = [base]
        for v in directions():
            pt = second_point(v)
            if pt is not None and pt.coords not in seen:
                seen.add(pt.coords)
                out.append(pt)
            if len(out) >= limit:
                break
        return out

    return gram, quad, points


def gen_two_plane_conics(points_per_conic: int, field: FieldSpec, seed: int):
    """Sampled points on smooth conics inside a split pair of 2-planes in P^5.

    Certificate: both planes have dimension two and are disjoint (skew, hence
    split for two planes); each conic has a nonsingular Gram matrix; points
    are distinct.  With 8 points per conic the output has 16 points.
    """
    if points_per_conic < 1:
        raise ValueError("need at least one point per conic")
    if field.kind == PRIME and points_per_conic > field.p + 1:
        raise FieldTooSmallError(f"a conic has only {field.p + 1} points over {field}")
    n = 5
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        planes = []
        for _i in range(2):
            tri = [_rand_point(field, n, rng) for _ in range(3)]
            fl = span(tri)
            if fl.dim == 2:
                planes.append(fl)
        if len(planes) != 2 or planes[0] == planes[1]:
            continue
        if intersect(planes[0], planes[1]) is not None:
            continue
        try:
            all_pts = []
            for plane in planes:
                _gram, _quad, points = _conic_through_origin_point(field, rng)
                if field.kind == PRIME:
                    local = points(field.p + 1)
                    if len(local) < points_per_conic:
                        raise DegenerateConicError("conic too small")
                    local = rng.sample(local, points_per_conic)
                else:
                    local = points(points_per_conic)
                    local = local[:points_per_conic]
                for lp in local:
                    all_pts.append(ProjPoint(field, _combine(field, lp.coords, plane.basis)))
            cfg = PlaneConfiguration(tuple(planes))
            return PointSet(field, n, tuple(all_pts)), cfg
        except DegenerateConicError:
            continue
    raise ResampleBudgetExceededError("could not sample split planes with smooth conics")


# ---------------------------------------------------------------------------
# Plane curve complete intersections
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _plane_rows(field: FieldSpec, r: int):
    """Degree-r evaluation rows for every point of P^2(GF(p)), cached."""
    pts = enumerate_points(field, 2)
    basis = monomial_basis(2, r)
    return tuple(pts), tuple(evaluation_row(pt.coords, basis, field) for pt in pts)


def _pencil_ci(deg: int, field: FieldSpec, rng: random.Random):
    """Common zeros of two members of the pencil through deg*deg - 1 base points."""
    pts, rows = _plane_rows(field, deg)
    nbase = deg * deg - 1
    base_idx = rng.sample(range(len(pts)), nbase)
    basis = monomial_basis(2, deg)
    ker = linalg.kernel([rows[i] for i in base_idx], len(basis), field)
    if len(ker) < 2:
        return None
    f_vec, g_vec = ker[0], ker[1]
    zeros = []
    for pt, row in zip(pts, rows):
        if linalg.dot(f_vec, row, field) == 0 and linalg.dot(g_vec, row, field) == 0:
            zeros.append(pt)
    return zeros


def _curve_then_points(deg_lo: int, deg_hi: int, field: FieldSpec, rng: random.Random):
    """Points on a degree-deg_lo curve, cut out exactly by a degree-deg_hi form."""
    need = deg_lo * deg_hi
    if deg_lo == 1:
        vec = tuple(_rand_element(field, rng) for _ in range(3))
        if all(v == 0 for v in vec):
            return None
        param = linalg.kernel([vec], 3, field)
        b0, b1 = param
        curve_pts = [ProjPoint(field, _combine(field, (field.one(), t), (b0, b1)))
                     for t in field.elements()]
        curve_pts.append(ProjPoint(field, b1))
    else:
        try:
            _gram, _quad, points = _conic_through_origin_point(field, rng)
        except DegenerateConicError:
            return None
        curve_pts = points(field.p + 1)
    if len(curve_pts) < need:
        return None
    chosen = rng.sample(curve_pts, need)
    basis = monomial_basis(2, deg_hi)
    rows_by_pt = {pt.coords: evaluation_row(pt.coords, basis, field) for pt in curve_pts}
    ker = linalg.kernel([rows_by_pt[pt.coords] for pt in chosen], len(basis), field)
    g_vec = None
    for vec in ker:
        # Skip forms containing the whole curve (they vanish on > deg_lo*deg_hi
        # of its points, which a proper intersection cannot).
        if any(linalg.dot(vec, rows_by_pt[pt.coords], field) != 0 for pt in curve_pts):
            g_vec = vec
            break
    if g_vec is None:
        return None
    return [pt for pt in curve_pts if linalg.dot(g_vec, rows_by_pt[pt.coords], field) == 0]


def gen_plane_curve_ci(deg_d: int, deg_e: int, field: FieldSpec, seed: int) -> PointSet:
    """The deg_d * deg_e distinct intersection points of two plane curves.

    Transversality certificate: the common zero count over GF(p) equals
    deg_d * deg_e exactly; otherwise the draw is resampled.  Such a set is
    CB(deg_d + deg_e - 3) classically.
    """
    lo, hi = sorted((int(deg_d), int(deg_e)))
    if lo + hi - 3 < 0:
        raise ValueError(f"degrees ({deg_d},{deg_e}) give a negative CB degree")
    if (lo, hi) not in SUPPORTED_CI_DEGREES:
        raise ValueError(f"unsupported degree pair ({deg_d},{deg_e})")
    if field.kind != PRIME:
        raise InvalidFieldError("plane-curve intersections need a prime field")
    need = lo * hi
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        zeros = _pencil_ci(lo, field, rng) if lo == hi else _curve_then_points(lo, hi, field, rng)
        if zeros is not None and len(zeros) == need:
            return PointSet(field, 2, tuple(zeros))
    raise ResampleBudgetExceededError(
        f"no transverse ({deg_d},{deg_e}) intersection within budget"
    )


# ---------------------------------------------------------------------------
# Elliptic quartic in P^3
# ---------------------------------------------------------------------------


def _sqrt_table(p: int) -> dict:
    table = {}
    for x in range((p + 1) // 2 + 1):
        table.setdefault(x * x % p, x)
    return table


def _quadric_points(q_vec, field: FieldSpec, sqrts: dict):
    """Rational points of one quadric in P^3, by solving for the last coordinate."""
    p = field.p
    basis = monomial_basis(3, 2)

    def ev(coords):
        return linalg.dot(q_vec, evaluation_row(coords, basis, field), field)

    alpha = ev((0, 0, 0, 1))
    inv2 = pow(2, p - 2, p) if p != 2 else None
    pts = []
    prefixes = (
        [(1, a, b) for a in range(p) for b in range(p)]
        + [(0, 1, b) for b in range(p)]
        + [(0, 0, 1)]
    )
    for pre in prefixes:
        gamma = ev(pre + (0,))
        beta = (ev(pre + (1,)) - gamma - alpha) % p
        if alpha == 0:
            if beta == 0:
                roots = range(p) if gamma == 0 else ()
            else:
                roots = ((-gamma * pow(beta, p - 2, p)) % p,)
        else:
            if p == 2:
                roots = tuple(w for w in range(2) if (alpha * w * w + beta * w + gamma) % 2 == 0)
            else:
                disc = (beta * beta - 4 * alpha * gamma) % p
                if disc == 0:
                    roots = ((-beta * inv2 * pow(alpha, p - 2, p)) % p,)
                elif disc in sqrts:
                    rt = sqrts[disc]
                    denom = inv2 * pow(alpha, p - 2, p)
                    roots = (((-beta + rt) * denom) % p, ((-beta - rt) * denom) % p)
                else:
                    roots = ()
        for w in roots:
            pts.append(pre + (w,))
    if alpha == 0:
        pts.append((0, 0, 0, 1))
    return pts


def _has_three_collinear(pts, field: FieldSpec) -> bool:
    counts = {}
    coords = [list(pt.coords) for pt in pts]
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            key_rows, _ = linalg.rref([coords[i], coords[j]], field)
            key = tuple(key_rows)
            counts[key] = counts.get(key, 0) + 1
            if counts[key] >= 3:  # C(3,2) pairs on one line
                return True
    return False


def gen_elliptic_quartic(m: int, field: FieldSpec, seed: int) -> PointSet:
    """m points on the intersection curve of two random quadrics in P^3.

    Certificate: at least m distinct rational points and no three collinear
    (a line in the curve would put p+1 collinear points in it).  The CB(2)
    verdict of the sampled points is the caller's final genericity signal.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    if field.kind != PRIME or field.p < 3:
        raise InvalidFieldError("elliptic-quartic sampling needs an odd prime field")
    rng = random.Random(seed)
    sqrts = _sqrt_table(field.p)
    nmono = len(monomial_basis(3, 2))
    for _ in range(RESAMPLE_BUDGET):
        q1 = tuple(rng.randrange(field.p) for _ in range(nmono))
        q2 = tuple(rng.randrange(field.p) for _ in range(nmono))
        if all(c == 0 for c in q1) or all(c == 0 for c in q2):
            continue
        basis = monomial_basis(3, 2)
        on_q1 = _quadric_points(q1, field, sqrts)
        curve = []
        seen = set()
        for coords in on_q1:
            if linalg.dot(q2, evaluation_row(coords, basis, field), field) == 0:
                pt = ProjPoint(field, coords)
                if pt.coords not in seen:
                    seen.add(pt.coords)
                    curve.append(pt)
        if len(curve) < m:
            continue
        if _has_three_collinear(curve, field):
            continue
        chosen = rng.sample(curve, m)
        return PointSet(field, 3, tuple(chosen))
    raise ResampleBudgetExceededError("no usable quadric-pair curve within budget")


# ---------------------------------------------------------------------------
# Sampling on a given configuration
# ---------------------------------------------------------------------------


def gen_on_configuration(
    cfg: PlaneConfiguration, counts, field: FieldSpec, seed: int
) -> PointSet:
    """counts[i] distinct points on plane i of cfg (distinct globally)."""
    counts = tuple(int(c) for c in counts)
    if len(counts) != cfg.length or any(c < 1 for c in counts):
        raise ValueError("need one positive count per plane")
    if field != cfg.field:
        raise InvalidFieldError("field must match the configuration's field")
    rng = random.Random(seed)
    seen = set()
    out = []
    for plane, cnt in zip(cfg.planes, counts):
        rows = plane.basis
        k = len(rows)
        if field.kind == PRIME:
            total = (field.p ** k - 1) // (field.p - 1)
            if cnt > total:
                raise FieldTooSmallError(f"plane has only {total} points over {field}")
        placed = 0
        for _ in range(INNER_BUDGET * cnt):
            coeffs = tuple(_rand_element(field, rng) for _ in range(k))
            if all(c == 0 for c in coeffs):
                continue
            pt = ProjPoint(field, _combine(field, coeffs, rows))
            if pt.coords in seen:
                continue
            seen.add(pt.coords)
            out.append(pt)
            placed += 1
            if placed == cnt:
                break
        if placed < cnt:
            raise FieldTooSmallError("could not place the requested distinct points")
    return PointSet(field, cfg.ambient_dim, tuple(out))
