import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reldyn.axioms.generators import ModelBuilder, random_standard_model
from reldyn.errors import ParseError, UnknownId, UnknownObserver, ValidationError
from reldyn.minkowski import Point, Worldline
from reldyn.quantity import Quantity
from reldyn.scenario import (
    Body,
    CollisionEvent,
    Scenario,
    dumps,
    load_scenario,
    loads,
    observer_worldline,
    save_scenario,
    time_axis,
    validate_frame,
)
from reldyn.transforms import AffineMap, PoincareMap, boost_for_velocity, worldview_transform

Q = Quantity
P = Point.of


def simple(d=4):
    """World observer k, a body b moving at 3/5 along x, one at rest at x = 1."""
    ident = PoincareMap.identity(d)
    pad = (0,) * (d - 2)
    bodies = [
        Body("k", "observer", observer_worldline(ident)),
        Body("b", "inertial", Worldline(Point.zero(d), P(1, "3/5", *pad))),
        Body("r", "inertial", Worldline(P(0, 1, *pad), P(1, 0, *pad), lo=-2, hi=8)),
        Body("ph", "photon", Worldline(Point.zero(d), P(1, 1, *pad))),
    ]
    masses = {("k", "b"): Q("5/4"), ("k", "r"): Q(1), ("k", "ph"): Q(2), ("k", "k"): Q(1)}
    return Scenario(d, bodies, {"k": ident}, masses)


def test_wl_examples():
    s = simple()
    assert s.wl("k", "k") == time_axis(4)
    assert s.wl("k", "b") == Worldline(Point.zero(4), P(1, "3/5", 0, 0))
    s.frames["h"] = boost_for_velocity((Q("3/5"), 0, 0))
    s.bodies["h"] = Body("h", "observer", observer_worldline(s.frames["h"]))
    assert s.wl("h", "b").velocity.is_zero()
    with pytest.raises(UnknownId):
        s.wl("k", "nope")
    with pytest.raises(UnknownObserver):
        s.wl("nope", "b")


def test_ev_examples():
    s = simple()
    assert s.ev("k", P(0, 5, 5, 5)) == set()
    assert s.ev("k", P(0, 0, 0, 0)) == {"k", "b", "ph"}


def test_ev_at_collision_vertex():
    mb = ModelBuilder(4)
    k = mb.observer()
    b, c, d = mb.collision((1, (Q("3/5"),)), (1, None), vertex=(2, 1, 0, 0), frame=k, rest_observers=False)
    s = mb.build()
    assert {b, c, d} <= s.ev(k, P(2, 1, 0, 0))


def test_ev_frame_coherence():
    s = random_standard_model(random.Random(11), 4)
    k, h = s.observers[:2]
    w = worldview_transform(s, k, h)
    for c in s.collisions:
        p = s.frames[k].apply(c.vertex)
        assert s.ev(k, p) == s.ev(h, w.apply(p))


def test_loc_examples():
    s = simple()
    assert s.loc("k", "r", 5) == P(5, 1, 0, 0)
    assert s.loc("k", "r", 9) is None
    horiz = Scenario(2, [Body("x", "plain", Worldline(P(1, 0), P(0, 1)))], {"k": PoincareMap.identity(2)})
    assert horiz.loc("k", "x", 1) is None


def test_velocity_and_speed():
    s = simple()
    assert s.velocity("k", "k") == (0, 0, 0)
    assert s.velocity("k", "b") == (Q("3/5"), 0, 0)
    assert s.speed("k", "b") == Q("3/5")
    assert s.speed("k", "ph") == 1


def test_rest_mass():
    s = simple()
    assert s.rest_mass("ph") is None
    assert s.rest_mass("r") == 1
    assert s.rest_mass("b") is None
    # a second observer at rest with r that disagrees on its mass
    f = PoincareMap.translation_by(P(0, -1, 0, 0))
    s.frames["k2"] = f
    s.bodies["k2"] = Body("k2", "observer", observer_worldline(f))
    for b in s.bodies:
        s.masses[("k2", b)] = Q(2)
    assert s.rest_mass("r") is None


def test_validate_examples():
    s = random_standard_model(random.Random(2), 4)
    assert validate_frame(s) == []
    s2 = simple()
    s2.masses[("k", "b")] = Q(0)
    kinds = [(v.kind, v.detail) for v in validate_frame(s2)]
    assert ("MassNotPositive", ("k", "b")) in kinds
    s3 = simple()
    s3.frames["k"] = PoincareMap.translation_by(P(0, 1, 0, 0))
    assert [v.kind for v in validate_frame(s3)] == ["AxSelfViolation"]
    s4 = simple()
    del s4.masses[("k", "r")]
    assert [v.kind for v in validate_frame(s4)] == ["MassRelNotTotal"]
    s5 = simple()
    s5.frames["k"] = AffineMap([[1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert "FrameNotInvertible" in [v.kind for v in validate_frame(s5)]


def test_no_observer_faster_than_light():
    s = random_standard_model(random.Random(3), 4)
    for k in s.observers:
        for h in s.observers:
            assert s.speed(k, h) < 1


def test_save_load_round_trip(tmp_path):
    s = random_standard_model(random.Random(4), 4)
    path = tmp_path / "s.json"
    save_scenario(s, path)
    t = load_scenario(path)
    assert t == s
    assert dumps(t) == path.read_text()


def test_bad_literal_reports_position():
    text = dumps(simple()).replace('"5/4"', '"sqrt(-1)"', 1)
    with pytest.raises(ParseError) as err:
        loads(text)
    line = text.splitlines()[err.value.line - 1]
    assert "sqrt(-1)" in line
    assert line[err.value.column - 1 :].startswith('"sqrt(-1)"') or line[err.value.column - 1 :].startswith("sqrt(-1)")


def test_garbage_is_parse_error():
    with pytest.raises(ParseError) as err:
        loads("{ not json")
    assert err.value.line == 1
    with pytest.raises(ParseError):
        loads(json.dumps({"dimension": 3}))


def test_missing_mass_is_validation_error():
    data = json.loads(dumps(simple()))
    data["masses"] = [m for m in data["masses"] if m["body"] != "r"]
    with pytest.raises(ValidationError) as err:
        loads(json.dumps(data))
    assert [v.kind for v in err.value.violations] == ["MassRelNotTotal"]


def test_collision_event_stored_once():
    c = CollisionEvent((0, 0, 0), ["a", "b"], ["d"])
    assert c.incoming == ("a", "b") and c.vertex == P(0, 0, 0)


@given(st.integers(min_value=0, max_value=10**6), st.sampled_from([3, 4]))
def test_round_trip_property(seed, d):
    s = random_standard_model(random.Random(seed), d)
    text = dumps(s)
    t = loads(text)
    assert t == s
    assert dumps(t) == text


@given(st.integers(min_value=0, max_value=10**6))
def test_frame_coherence_property(seed):
    s = random_standard_model(random.Random(seed), 3, photons=False)
    k, *rest = s.observers
    for h in rest[:2]:
        w = worldview_transform(s, k, h)
        for b in list(s.bodies)[:4]:
            assert s.wl(h, b) == s.wl(k, b).map(w)
