"""Example-family generators: determinism, certificates, structural checks."""

import itertools
import json

import pytest

from cb_lab import (
    FieldSpec,
    GenSpec,
    PlaneConfiguration,
    PointSet,
    eval_matrix,
    exists_cover,
    gen_elliptic_quartic,
    gen_on_configuration,
    gen_plane_curve_ci,
    gen_rnc,
    gen_skew_lines,
    gen_two_plane_conics,
    generate,
    is_cb,
    is_split,
    rank_kernel,
    span,
    verify_cover,
)
from cb_lab.errors import FieldTooSmallError, InvalidFieldError
from cb_lab.linalg import rank

from helpers import rank_oracle


def _pointset_bytes(ps: PointSet) -> str:
    return json.dumps(ps.to_json(), sort_keys=True)


def test_generators_deterministic(gf101):
    specs = [
        GenSpec.make("rnc", {"k": 3, "m": 8}, gf101, 7),
        GenSpec.make("skew_lines", {"d": 2, "counts": [5, 5]}, gf101, 7),
        GenSpec.make("two_plane_conics", {"points_per_conic": 8}, gf101, 7),
        GenSpec.make("plane_curve_ci", {"deg_d": 3, "deg_e": 3}, gf101, 7),
        GenSpec.make("elliptic_quartic", {"m": 9}, gf101, 7),
    ]
    for spec in specs:
        a, _ = generate(spec)
        b, _ = generate(spec)
        assert _pointset_bytes(a) == _pointset_bytes(b), spec.family
        back = GenSpec.from_json(spec.to_json())
        c, _ = generate(back)
        assert _pointset_bytes(a) == _pointset_bytes(c)


def test_rnc_small(gf101):
    ps = gen_rnc(1, 3, gf101, seed=1)
    assert len(ps) == 3 and ps.ambient_dim == 1


def test_rnc_on_curve_structure(gf101):
    # 2x2 minors of [x0..x_{k-1}; x1..x_k] vanish exactly on the curve
    ps = gen_rnc(3, 8, gf101, seed=7)
    for pt in ps:
        c = pt.coords
        for i in range(3):
            for j in range(3):
                assert gf101.sub(
                    gf101.mul(c[i], c[j + 1]), gf101.mul(c[i + 1], c[j])
                ) == 0


def test_rnc_general_linear_position(gf101):
    ps = gen_rnc(3, 8, gf101, seed=7)
    rows = ps.coord_rows()
    for quad in itertools.combinations(range(8), 4):
        assert rank_oracle([rows[i] for i in quad], gf101) == 4


def test_rnc_conic_cb2(gf101):
    ps = gen_rnc(2, 6, gf101, seed=2)
    assert is_cb(ps, 2).verdict


def test_rnc_field_too_small():
    gf5 = FieldSpec.prime(5)
    assert len(gen_rnc(2, 6, gf5, seed=1)) == 6  # p + 1 points, uses infinity
    with pytest.raises(FieldTooSmallError):
        gen_rnc(2, 7, gf5, seed=1)


def test_rnc_rational():
    q = FieldSpec.rational()
    ps = gen_rnc(2, 10, q, seed=3)
    assert len(ps) == 10 and ps.ambient_dim == 2


def test_skew_lines_families(gf101):
    pts, cfg = gen_skew_lines(2, (5, 5), gf101, seed=3)
    assert len(pts) == 10 and is_split(cfg)
    assert is_cb(pts, 3).verdict
    single, cfg1 = gen_skew_lines(1, (4,), gf101, seed=2)
    assert span(list(single)).dim == 1  # collinear
    pts3, cfg3 = gen_skew_lines(3, (7, 7, 7), gf101, seed=5)
    assert len(pts3) == 21 and pts3.ambient_dim == 5
    assert is_cb(pts3, 5).verdict
    for pl, cnt in zip(cfg3.planes, (7, 7, 7)):
        assert sum(1 for pt in pts3 if pl.contains(pt)) == cnt


def test_two_plane_conics_structure(gf101):
    pts, cfg = gen_two_plane_conics(8, gf101, seed=4)
    assert len(pts) == 16 and is_split(cfg)
    assert is_cb(pts, 3).verdict
    for pl in cfg.planes:
        on_plane = PointSet(gf101, 5, tuple(pt for pt in pts if pl.contains(pt)))
        assert len(on_plane) == 8
        # conic certificate: 8 coplanar points imposing only 5 conditions on
        # quadrics, with no 3 collinear
        assert rank_kernel(eval_matrix(on_plane, 2)).rank == 5
        rows = on_plane.coord_rows()
        for tri in itertools.combinations(range(8), 3):
            assert rank([rows[i] for i in tri], gf101) == 3


def test_two_plane_conics_shapes(gf101):
    pts, cfg = gen_two_plane_conics(1, gf101, seed=9)
    assert len(pts) == 2 and is_split(cfg)


def test_plane_curve_ci_counts_and_cb(gf101):
    for (a, b), r in (((2, 2), 1), ((2, 3), 2), ((3, 3), 3), ((1, 3), 1)):
        ps = gen_plane_curve_ci(a, b, gf101, seed=11)
        assert len(ps) == a * b
        assert is_cb(ps, r).verdict, (a, b)


def test_plane_curve_ci_rejects(gf101):
    with pytest.raises(ValueError):
        gen_plane_curve_ci(1, 1, gf101, seed=0)  # degree r would be negative
    with pytest.raises(ValueError):
        gen_plane_curve_ci(4, 4, gf101, seed=0)  # no certificate at this size
    with pytest.raises(InvalidFieldError):
        gen_plane_curve_ci(2, 2, FieldSpec.rational(), seed=0)


def test_elliptic_quartic(gf101):
    ps = gen_elliptic_quartic(9, gf101, seed=2)
    assert len(ps) == 9 and ps.ambient_dim == 3
    small = gen_elliptic_quartic(4, gf101, seed=2)
    assert len(small) == 4
    rows = ps.coord_rows()
    for tri in itertools.combinations(range(9), 3):
        assert rank([rows[i] for i in tri], gf101) == 3  # no 3 collinear


def test_elliptic_quartic_points_on_two_quadrics(gf101):
    # the sampled points impose dependent conditions: two independent
    # quadrics (the defining pair) survive in the kernel
    ps = gen_elliptic_quartic(9, gf101, seed=2)
    assert rank_kernel(eval_matrix(ps, 2)).corank >= 2


def test_on_configuration(gf101):
    line = span([p for p in PointSet.from_coords(gf101, [[1, 0, 0], [0, 1, 0]])])
    cfg = PlaneConfiguration((line,))
    ps = gen_on_configuration(cfg, (4,), gf101, seed=6)
    assert len(ps) == 4 and span(list(ps)).dim == 1
    pts, cfg2 = gen_skew_lines(2, (2, 2), gf101, seed=3)
    sampled = gen_on_configuration(cfg2, (2, 2), gf101, seed=8)
    assert verify_cover(sampled, cfg2)
    plane = span(list(PointSet.from_coords(gf101, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])))
    cfg3 = PlaneConfiguration((plane,))
    a = gen_on_configuration(cfg3, (7,), gf101, seed=5)
    b = gen_on_configuration(cfg3, (7,), gf101, seed=5)
    assert _pointset_bytes(a) == _pointset_bytes(b)


def test_on_configuration_field_too_small():
    gf3 = FieldSpec.prime(3)
    line = span(list(PointSet.from_coords(gf3, [[1, 0, 0], [0, 1, 0]])))
    with pytest.raises(FieldTooSmallError):
        gen_on_configuration(PlaneConfiguration((line,)), (5,), gf3, seed=1)


def test_tightness_pair_quick(gf101):
    # (d, r) = (1, 2): 6 points on a conic are CB(2) but never on one line
    gamma = gen_rnc(2, 6, gf101, seed=13)
    assert is_cb(gamma, 2).verdict
    res = exists_cover(gamma, 1, 1)
    assert not res.found and res.proof_of_minimality


def test_genspec_validation(gf101):
    with pytest.raises(ValueError):
        GenSpec.make("unknown_family", {}, gf101, 0)
    spec = GenSpec.make("on_configuration", {"counts": [2]}, gf101, 0)
    with pytest.raises(ValueError):
        generate(spec)  # missing embedded configuration
