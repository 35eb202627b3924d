import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import rationals
from reldyn.errors import DegeneratePair, DimensionMismatch, EmptyInput
from reldyn.minkowski import (
    DEGENERATE,
    Line,
    Point,
    Segment,
    Worldline,
    common_line,
    euclid_len,
    is_parallel,
    is_slope_one,
    length_ratio,
    mink_dist,
    mink_len,
    mink_square,
)
from reldyn.quantity import Quantity, sqrt

Q = Quantity
P = Point.of


def points(d):
    return st.lists(rationals, min_size=d, max_size=d).map(Point)


def test_point_parts():
    p = P(1, 2, 3)
    assert p.time == 1
    assert p.space == P(2, 3)
    assert p.dim == 3
    assert P(1, 2) + P(3, 4) == P(4, 6)
    assert P(1, 2) * 2 == P(2, 4)
    assert P(1, 2) / 2 == P("1/2", 1)
    with pytest.raises(DimensionMismatch):
        P(1, 2) + P(1, 2, 3)


def test_euclid_len():
    assert euclid_len((0, 0, 0, 0)) == 0
    assert euclid_len((3, 4)) == 5
    assert euclid_len((1, 1)) == sqrt(2)


def test_mink_len_examples():
    assert mink_len(P(1, 0, 0, 0)) == 1
    assert mink_len(P(1, 1, 0, 0)) == 0
    assert mink_len(P(0, 1, 0, 0)) == -1


def test_mink_dist_examples():
    p = P(3, 1)
    assert mink_dist(p, p) == 0
    assert mink_dist(P(2, 0), P(1, 0)) == 1
    # (3/5)^2 - 1 = -16/25
    assert mink_dist(P(0, 0), P("3/5", 1)) == Q("-4/5")
    with pytest.raises(DimensionMismatch):
        mink_dist(P(0, 0), P(0, 0, 0))


def test_slope_one_examples():
    assert is_slope_one(P(0, 0), P(1, 1))
    assert is_slope_one(P(0, 0, 0), P(5, 3, 4))
    assert not is_slope_one(P(0, 0), P(2, 1))
    with pytest.raises(DegeneratePair):
        is_slope_one(P(1, 1), P(1, 1))


def test_contains_examples():
    seg = Segment(P(0, 0), P(2, 2))
    assert seg.contains(P(1, 1))
    assert not seg.contains(P(3, 3))
    assert Line(P(0, 0), P(1, "3/5")).contains(P(5, 3))
    with pytest.raises(DimensionMismatch):
        Line(P(0, 0), P(1, 1)).contains(P(1, 1, 1))


def test_line_equality_is_point_set_equality():
    assert Line(P(0, 0), P(1, 1)) == Line(P(2, 2), P(-3, -3))
    assert Line(P(0, 0), P(1, 1)) != Line(P(0, 1), P(1, 1))


def test_common_line_examples():
    line = common_line([[P(0, 0), P(1, 1), P(2, 2)]])
    assert line == Line(P(0, 0), P(1, 1))
    assert common_line([[P(0, 0), P(1, 1), P(1, 0)]]) is None
    line = common_line([Segment(P(0, 0), P(1, 2)), Segment(P(1, 2), P(3, 6))])
    assert is_parallel(line.direction, P(1, 2))
    assert common_line([[P(1, 1)], P(1, 1)]) is DEGENERATE
    with pytest.raises(EmptyInput):
        common_line([])


def test_worldline_normalization_and_bounds():
    # ray through (1, 2) with velocity 1/2, starting at t = 1
    w = Worldline(P(1, 2), P(2, 1), lo=0)
    assert w.direction == P(1, "1/2")
    assert w.lo == 1 and w.hi is None
    assert w.start() == P(1, 2)
    assert w.kind == "ray"
    assert w.contains(P(3, 3))
    assert not w.contains(P(-1, 1))
    assert w.velocity == P("1/2")
    assert w.point_at_time(5) == P(5, 4)
    assert w.point_at_time(0) is None


def test_worldline_segment_and_full():
    w = Worldline(P(0, 0), P(1, 0), lo=-1, hi=1)
    assert w.kind == "segment"
    assert w.contains(P(1, 0)) and not w.contains(P("3/2", 0))
    full = Worldline(P(0, 0), P(1, 0))
    assert full.kind == "full-line"
    assert full == Worldline(P(5, 0), P(-2, 0))


def test_horizontal_worldline_has_no_velocity():
    w = Worldline(P(1, 0), P(0, 1))
    assert w.horizontal
    assert w.velocity is None


def test_length_ratio():
    assert length_ratio(P(2, 4), P(1, 2)) == 2
    assert length_ratio(P(-1, -2), P(2, 4)) == Q("1/2")


# ---------------------------------------------------------------- properties


@given(points(4))
def test_mink_len_sign_trichotomy(p):
    s = mink_square(p).sign()
    assert mink_len(p).sign() == s


@given(points(3), points(3))
def test_mink_dist_symmetric(p, q):
    assert mink_dist(p, q) == mink_dist(q, p)


@given(points(3), points(3))
def test_slope_one_iff_zero_distance(p, q):
    assume(p != q)
    assert is_slope_one(p, q) == mink_dist(p, q).is_zero()


@given(st.lists(points(3), min_size=1, max_size=5))
def test_common_line_contains_inputs(pts):
    line = common_line([pts])
    if line is None or line is DEGENERATE:
        return
    assert all(line.contains(p) for p in pts)


@given(points(3), points(3), rationals, rationals)
def test_collinear_points_share_a_line(p, v, a, b):
    assume(not v.is_zero())
    pts = [p, p + v * Q(a), p + v * Q(b), p + v]
    line = common_line([pts])
    assert line is not None and line is not DEGENERATE
