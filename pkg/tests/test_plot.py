import random

import pytest

from reldyn.axioms import ModelBuilder, generate_standard_model, random_standard_model
from reldyn.errors import UnknownObserver
from reldyn.plot import axis_index, axis_name, parse_axes, render_svg
from reldyn.quantity import Quantity
from reldyn.scenario import Scenario

Q = Quantity


def test_axis_names():
    assert parse_axes("t,x") == (0, 1)
    assert parse_axes("y, t") == (2, 0)
    assert axis_index("z") == 3 and axis_name(3) == "z"
    assert axis_name(5) == "x5"
    with pytest.raises(ValueError):
        parse_axes("t")
    with pytest.raises(ValueError):
        parse_axes("t,t")


def test_render_is_deterministic():
    s = random_standard_model(random.Random(3), 4)
    a = render_svg(s)
    assert a == render_svg(s)
    assert a == render_svg(random_standard_model(random.Random(3), 4))
    assert "<svg" in a and a.rstrip().endswith("</svg>")


def test_empty_scenario_draws_axes_only():
    svg = render_svg(Scenario(3))
    assert svg.count("<line") == 2
    worldlines = svg.split('<g id="worldlines"')[1].split("</g>")[0]
    assert "<line" not in worldlines and "<polyline" not in worldlines


def test_dropped_axes_listed():
    s = generate_standard_model(4, collisions=[(1, (Q("3/5"),), 1, (Q("-3/5"),))])
    assert "dropped axes: y, z" in render_svg(s, axes=(0, 1))
    assert "dropped axes: x, z" in render_svg(s, axes=(0, 2))
    assert "dropped axes: y<" in render_svg(generate_standard_model(3))


def test_observer_choice():
    mb = ModelBuilder(3)
    k = mb.observer()
    h = mb.observer((Q("3/5"),), relative_to=k)
    s = mb.build()
    assert render_svg(s, k) != render_svg(s, h)
    assert h in render_svg(s, h)
    with pytest.raises(UnknownObserver):
        render_svg(s, "ghost")
