"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import json
import random
import time
from fractions import Fraction
from itertools import permutations

import pytest

from reldyn import dynamics as dyn
from reldyn.axioms import (
    CHECKS,
    Verdict,
    check_ax_ph,
    check_cons_mass,
    check_cons_moment,
    generate_cons_mass_counterexample,
    generate_cons_moment_counterexample,
    random_mass_formula_model,
    random_standard_model,
    run_equivalence_batch,
    verify_mass_formula,
    verify_mass_formula_construction,
)
from reldyn.cli import main
from reldyn.minkowski import Point, is_slope_one, mink_dist, mink_len
from reldyn.quantity import Quantity, sqrt
from reldyn.scenario import dumps, load_scenario, loads, save_scenario
from reldyn.transforms import is_poincare, worldview_transform

Q = Quantity
H, W = Verdict.HOLDS, Verdict.WITNESSED


@pytest.fixture
def report(request, capsys):
    """Print one PASS/FAIL line per criterion, visible even under capture."""
    state = {}

    def start(n, label):
        state.update(n=n, label=label, t0=time.perf_counter())

    yield start
    elapsed = time.perf_counter() - state["t0"]
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {state['n']}: {state['label']} ({elapsed:.1f}s)")


def _rand_quantity(rng):
    a = Q(Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
    b = Q(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return a + b * sqrt(rng.choice((2, 3, 5, 6, 7)))


def _rand_nonneg(rng):
    return Q(Fraction(rng.randint(0, 50), rng.randint(1, 9))) + rng.randint(0, 3) * sqrt(rng.choice((2, 3, 5)))


def test_c1_field_identities(report):
    report(1, "10,000 field identities")
    rng = random.Random(20260101)
    t0 = time.perf_counter()
    for i in range(10_000):
        kind = i % 4
        if kind == 0:
            a, b, c = (_rand_quantity(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
        elif kind == 1:
            a, b, c = (_rand_quantity(rng) for _ in range(3))
            assert a * (b + c) == a * b + a * c
        elif kind == 2:
            a = _rand_nonneg(rng)
            r = sqrt(a)
            assert r * r == a and r >= 0
        else:
            a, b, c = (_rand_quantity(rng) for _ in range(3))
            if a == b:
                continue
            lo, hi = (a, b) if a < b else (b, a)
            assert lo + c < hi + c
            if c > 0:
                assert lo * c < hi * c
            elif c < 0:
                assert lo * c > hi * c
    assert time.perf_counter() - t0 < 30


def _rand_point(rng, d):
    return Point(Q(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(d))


def test_c2_worldview_is_poincare(report):
    report(2, "worldview transforms are Poincare on 100 models")
    t0 = time.perf_counter()
    pairs_checked = 0
    for i in range(100):
        d = 3 if i % 2 == 0 else 4
        rng = random.Random(f"poincare:{i}")
        s = random_standard_model(rng, d, photons=False)
        assert len(s.observers) >= 2
        for k, h in permutations(s.observers, 2):
            w = worldview_transform(s, k, h)
            assert is_poincare(w)
            for _ in range(20):
                p, q = _rand_point(rng, d), _rand_point(rng, d)
                assert mink_dist(w.apply(p), w.apply(q)) == mink_dist(p, q)
            pairs_checked += 1
    assert pairs_checked >= 100
    assert time.perf_counter() - t0 < 30


def _rand_subluminal(rng):
    while True:
        v = Q(Fraction(rng.randint(1, 19), rng.randint(2, 20)))
        if v < 1:
            return v


def test_c3_mass_formula(report):
    report(3, "mass formula on 100 models and 25 constructions")
    t0 = time.perf_counter()
    for i in range(100):
        s = random_mass_formula_model(random.Random(f"massformula:{i}"), 3 + i % 2)
        r = verify_mass_formula(s)
        assert r.verdict is H, r.text()
    rng = random.Random(25)
    pairs = [(Q(1), Q("3/5"))]
    pairs += [(Q(Fraction(rng.randint(1, 12), rng.randint(1, 4))), _rand_subluminal(rng)) for _ in range(24)]
    five = ("mass_ratio", "affine_ratio", "similar_triangles", "side_ratio", "dilation")
    for m0, v in pairs:
        r = verify_mass_formula_construction(m0, v)
        assert r.verdict is H, r.text()
        for key in five:
            assert r.parts[key].verdict is H, (m0, v, key)
        assert r.witnesses[0]["m(v)"] == m0 / sqrt(1 - v * v)
    first = verify_mass_formula_construction(1, Q("3/5"))
    assert first.witnesses[0]["m(v)"] == Q("5/4")
    assert time.perf_counter() - t0 < 60


def test_c4_equivalence_batch(report):
    report(4, "four conservation predicates agree on 1,000 scenarios")
    t0 = time.perf_counter()
    results = run_equivalence_batch(1000, seed=0)
    assert len(results) == 1000
    disagreements = [(i, label) for i, label, values in results if len(set(values.values())) != 1]
    assert disagreements == []
    labels = [label for _, label, _ in results]
    assert labels.count("valid") == 500
    assert {"mass", "velocity", "frame"} <= set(labels)
    # the predicates are not trivially constant
    assert {values["ConsFourMoment"] for _, _, values in results} == {True, False}
    assert time.perf_counter() - t0 < 120


FRAME_CHECKS = ("AxSelf", "AxEv", "AxSimDist", "AxSpeed", "AxCenter")
WITNESSED_CHECKS = ("AxPh", "AxThEx", "AxForallInecoll")


def _independence(s, failing):
    assert check_ax_ph(s).parts["universal"].verdict is H
    for name in FRAME_CHECKS:
        assert CHECKS[name](s).verdict is H, name
    for name in WITNESSED_CHECKS:
        assert CHECKS[name](s).verdict is W, name
    assert failing(s).verdict is Verdict.FAILS


def test_c5_independence_counterexamples(report):
    report(5, "ConsMass and ConsMoment counterexamples")
    _independence(generate_cons_mass_counterexample(), check_cons_mass)
    _independence(generate_cons_moment_counterexample(), check_cons_moment)


def test_c6_rest_mass_creation(report, capsys):
    report(6, "rest mass is created in inelastic collisions")
    assert main(["resolve", "1", "3/5", "1", "0"]) == 0
    out = capsys.readouterr().out
    rest_line = next(line for line in out.splitlines() if line.startswith("restMass"))
    assert "3*sqrt(2)/2" in rest_line and "2.12132" in rest_line
    r = dyn.resolve_collision((1, Q("3/5")), (1, 0))
    assert r.rest_mass == 3 * sqrt(2) / 2 and r.rest_mass > 2
    assert main(["demo", "emc2", "--v", "3/5"]) == 0
    out = capsys.readouterr().out
    assert "combined rest mass 5/2 > 2" in out and "NOT confirmed" not in out


def test_c7_mass_depends_on_observer(report):
    report(7, "relativistic mass ratio depends on the observer")
    rk, rh = dyn.mass_dependence_witness(1, 1, Q("3/5"), 0)
    assert rk == Q("5/4") and rh == 1 and rk != rh


def test_c8_round_trip_and_determinism(report, tmp_path, capsys):
    report(8, "save/load round trip and seeded determinism")
    for i in range(50):
        s = random_standard_model(random.Random(f"roundtrip:{i}"), 3 + i % 2)
        path = tmp_path / f"s{i}.json"
        save_scenario(s, path)
        t = load_scenario(path)
        assert t == s and dumps(t) == path.read_text()
        assert loads(dumps(t)) == s
    outputs = []
    path = tmp_path / "gen.json"
    for _ in range(2):
        assert main(["generate", "standard", str(path), "--seed", "11"]) == 0
        capsys.readouterr()
        assert main(["check", str(path), "--format", "summary"]) == 0
        check = capsys.readouterr().out
        assert main(["demo", "thm2-batch", "--batch", "10", "--seed", "11", "--format", "summary"]) == 0
        demo = capsys.readouterr().out
        outputs.append((path.read_bytes(), check, demo))
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0][1])["ok"] is True
    assert json.loads(outputs[0][2])


def test_c9_photon_conventions(report):
    report(9, "photon world-lines have slope one and null four-momentum")
    seen = 0
    for i in range(30):
        s = random_standard_model(random.Random(f"photon:{i}"), 3 + i % 2)
        photons = [b for b, body in s.bodies.items() if body.kind == "photon"]
        for k in s.observers:
            for b in photons:
                wl = s.wl(k, b)
                assert is_slope_one(wl.at(0), wl.at(1))
                assert mink_len(dyn.four_momentum(s, k, b)) == 0
                seen += 1
    assert seen > 0
