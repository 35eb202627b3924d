"""Axiom checkers over finite scenarios.

Universal statements over the (finite) body and observer sets are checked
exactly.  Statements quantifying over all of Q^d are either settled by the
way scenarios are built (frames are bijections, so events agree) or checked
on declared witness demands and reported as WitnessedOnly.
"""

from __future__ import annotations

import random
from typing import Callable, Dict, List

from .. import dynamics as dyn
from ..errors import NoMedianNeeded, UnknownAxiomName
from ..minkowski import DEGENERATE, Point, common_line, is_slope_one, mink_square
from ..quantity import ONE, ZERO, Quantity
from ..scenario import Scenario, time_axis
from ..transforms import AffineMap, median_observer_boost, worldview_transform
from .report import CheckReport, Verdict, combine

H, F, V, W = Verdict.HOLDS, Verdict.FAILS, Verdict.VACUOUS, Verdict.WITNESSED


def _vel_eq(u, v) -> bool:
    return u is not None and v is not None and len(u) == len(v) and all(a == b for a, b in zip(u, v))


def _frames_ok(s: Scenario) -> List[str]:
    return [k for k in s.observers if k in s.frames]


# ------------------------------------------------------------------ kinematics


def check_ax_self(s: Scenario) -> CheckReport:
    obs = _frames_ok(s)
    if not obs:
        return CheckReport("AxSelf", V, trace=["no observers"])
    axis = time_axis(s.dimension)
    bad = []
    for k in obs:
        w = s.wl(k, k)
        if w == axis:
            continue
        off = next((p for p in w.sample_points() if not p.space.is_zero()), None)
        if off is not None:
            bad.append({"observer": k, "point": off})
        else:
            # on the axis but not all of it
            t = (w.hi + ONE) if w.hi is not None else (w.lo - ONE)
            bad.append({"observer": k, "missing": Point((t,) + (ZERO,) * (s.dimension - 1))})
    if bad:
        return CheckReport("AxSelf", F, bad, [f"{len(bad)} observer(s) off their own time axis"])
    return CheckReport("AxSelf", H, trace=[f"{len(obs)} observer(s) checked"])


def check_ax_ph(s: Scenario) -> CheckReport:
    obs = _frames_ok(s)
    bad = []
    checked = 0
    for k in obs:
        for ph in s.photons:
            checked += 1
            if not mink_square(s.wl(k, ph).direction).is_zero():
                bad.append({"observer": k, "photon": ph, "direction": s.wl(k, ph).direction})
    if bad:
        universal = CheckReport("AxPh.universal", F, bad, ["photon world-line not of slope 1"])
    elif checked:
        universal = CheckReport("AxPh.universal", H, trace=[f"{checked} photon world-line(s) of slope 1"])
    else:
        universal = CheckReport("AxPh.universal", V, trace=["no photons"])

    pairs = s.witnesses.photon_pairs
    missing = []
    met = []
    for k, p, q in pairs:
        if k not in s.frames:
            missing.append({"observer": k, "p": p, "q": q, "reason": "unknown observer"})
            continue
        through = [ph for ph in s.photons if s.wl(k, ph).contains(p) and s.wl(k, ph).contains(q)]
        if p == q:
            continue
        if is_slope_one(p, q):
            if through:
                met.append({"observer": k, "p": p, "q": q, "photon": through[0]})
            else:
                missing.append({"observer": k, "p": p, "q": q})
        elif through:
            missing.append({"observer": k, "p": p, "q": q, "photon": through[0], "reason": "not slope 1"})
    if missing:
        existential = CheckReport("AxPh.existential", F, missing, ["witness pair without a photon"])
    elif met:
        existential = CheckReport("AxPh.existential", W, met, [f"{len(met)} declared pair(s) realized"])
    else:
        existential = CheckReport("AxPh.existential", V, trace=["no declared witness pairs"])
    parts = {"universal": universal, "existential": existential}
    return CheckReport(
        "AxPh",
        combine(p.verdict for p in parts.values()),
        universal.witnesses + existential.witnesses if F in (universal.verdict, existential.verdict) else [],
        parts=parts,
    )


def _sample_points(s: Scenario, k: str, n: int, seed: int) -> List[Point]:
    rng = random.Random(seed)
    pts = [s.frame(k).apply(c.vertex) for c in s.collisions]
    for b in s.bodies:
        pts.extend(s.wl(k, b).sample_points())
    for _ in range(n):
        pts.append(Point(Quantity(rng.randint(-40, 40)) / rng.randint(1, 8) for _ in range(s.dimension)))
    return pts


def check_ax_ev(s: Scenario, samples: int = 100, seed: int = 0) -> CheckReport:
    obs = _frames_ok(s)
    if len(obs) < 1:
        return CheckReport("AxEv", V, trace=["no observers"])
    singular = [k for k in obs if not s.frames[k].is_invertible()]
    if singular:
        return CheckReport("AxEv", F, [{"observer": k} for k in singular], ["frame map is not a bijection"])
    bad = []
    count = 0
    for k in obs:
        pts = _sample_points(s, k, samples, seed)
        evk = [s.ev(k, p) for p in pts]
        for h in obs:
            if h == k:
                continue
            w = worldview_transform(s, k, h)
            for p, e in zip(pts, evk):
                count += 1
                q = w.apply(p)
                if s.ev(h, q) != e:
                    bad.append({"k": k, "h": h, "p": p, "q": q})
                    break
    if bad:
        return CheckReport("AxEv", F, bad, ["events differ at corresponding points"])
    return CheckReport(
        "AxEv",
        H,
        trace=[
            "frames are bijections, so w(p) = F_h(F_k^-1(p)) carries every event",
            f"spot-checked {count} point correspondences",
        ],
    )


def _simultaneous_kernel(lin) -> List[tuple]:
    """Basis of {x in Q^(d-1): (L (0, x))_time = 0}."""
    row = lin[0][1:]
    n = len(row)
    piv = next((i for i, c in enumerate(row) if not c.is_zero()), None)
    basis = []
    for j in range(n):
        if j == piv:
            continue
        v = [ZERO] * n
        v[j] = ONE
        if piv is not None:
            v[piv] = -row[j] / row[piv]
        basis.append(tuple(v))
    return basis


def _sim_defect(lin, x) -> Quantity:
    """|(L(0,x))_space|^2 - |x|^2."""
    img = AffineMap._raw(lin, (ZERO,) * len(lin)).apply_linear(Point((ZERO, *x)))
    return img.space.norm2() - Point(x).norm2()


def check_ax_sim_dist(s: Scenario) -> CheckReport:
    obs = _frames_ok(s)
    if len(obs) < 2:
        return CheckReport("AxSimDist", V, trace=["fewer than two observers; k = h holds trivially"])
    bad = []
    for i, k in enumerate(obs):
        for h in obs[i + 1:]:
            try:
                w = worldview_transform(s, k, h)
            except Exception as exc:  # singular frame
                bad.append({"k": k, "h": h, "reason": str(exc)})
                continue
            basis = _simultaneous_kernel(w.linear)
            cands = list(basis)
            for a in range(len(basis)):
                for b in range(a + 1, len(basis)):
                    cands.append(tuple(x + y for x, y in zip(basis[a], basis[b])))
            for x in cands:
                defect = _sim_defect(w.linear, x)
                if not defect.is_zero():
                    p = Point.zero(s.dimension)
                    q = Point((ZERO, *x))
                    bad.append({"k": k, "h": h, "p": p, "q": q, "p'": w.apply(p), "q'": w.apply(q)})
                    break
    if bad:
        return CheckReport("AxSimDist", F, bad, ["simultaneous pair with different spatial distance"])
    return CheckReport(
        "AxSimDist", H, trace=["checked exactly on the space of doubly simultaneous displacements"]
    )


def check_ax_thex(s: Scenario) -> CheckReport:
    demands = s.witnesses.thex
    if not demands:
        return CheckReport("AxThEx", V, trace=["no declared demands"])
    met, unmet = [], []
    for k, p, q in demands:
        diff = p - q
        if k not in s.frames:
            unmet.append({"observer": k, "p": p, "q": q, "reason": "unknown observer"})
            continue
        if not (diff.space.norm2() < diff.time * diff.time and diff.time.sign() > 0):
            met.append({"observer": k, "p": p, "q": q, "note": "premise false"})
            continue
        found = None
        for h in _frames_ok(s):
            wl = s.wl(k, h)
            if wl.contains(p) and wl.contains(q):
                w = worldview_transform(s, k, h)
                if w.apply(q).time < w.apply(p).time:
                    found = h
                    break
        if found is None:
            unmet.append({"observer": k, "p": p, "q": q})
        else:
            met.append({"observer": k, "p": p, "q": q, "sent": found})
    if unmet:
        return CheckReport("AxThEx", F, unmet, ["requested observer not present"])
    return CheckReport("AxThEx", W, met, [f"{len(met)} demand(s) met"])


# ------------------------------------------------------------------ dynamics


def _triples(s: Scenario):
    for k in _frames_ok(s):
        for b, c, d, q in dyn.inecoll_triples(s, k):
            yield k, b, c, d, q


def check_ax_forall_inecoll(s: Scenario) -> CheckReport:
    demands = s.witnesses.forall_inecoll
    if not demands:
        return CheckReport("AxForallInecoll", V, trace=["no declared demands"])
    met, unmet = [], []
    rest = {}
    for k, v1, v2, m1, m2 in demands:
        v1, v2 = tuple(v1), tuple(v2)
        found = None
        if k in s.frames:
            for b, c, d, _ in dyn.inecoll_triples(s, k):
                for x, y in ((b, c), (c, b)):
                    if not (_vel_eq(s.velocity(k, x), v1) and _vel_eq(s.velocity(k, y), v2)):
                        continue
                    mx = rest.setdefault(x, s.rest_mass(x))
                    my = rest.setdefault(y, s.rest_mass(y))
                    if mx is not None and my is not None and mx == m1 and my == m2:
                        found = (x, y, d)
                        break
                if found:
                    break
        entry = {"observer": k, "v1": v1, "v2": v2, "m1": m1, "m2": m2}
        if found:
            entry["realized_by"] = list(found)
            met.append(entry)
        else:
            unmet.append(entry)
    if unmet:
        return CheckReport("AxForallInecoll", F, unmet, ["requested collision absent"])
    return CheckReport("AxForallInecoll", W, met, [f"{len(met)} demand(s) met"])


def check_ax_exists_inecoll(s: Scenario) -> CheckReport:
    demands = s.witnesses.exists_inecoll
    if not demands:
        return CheckReport("AxExistsInecoll", V, trace=["no declared demands"])
    met, unmet = [], []
    for k, a in demands:
        entry = {"observer": k, "body": a}
        m0 = s.rest_mass(a) if a in s.bodies else None
        if m0 is None:
            entry["note"] = "no rest mass; premise false"
            met.append(entry)
            continue
        sa = s.speed_squared(k, a)
        found = None
        for b, c, d, _ in dyn.inecoll_triples(s, k):
            for x, y in ((b, c), (c, b)):
                if (
                    s.rest_mass(x) == m0
                    and s.rest_mass(y) == m0
                    and s.speed_squared(k, x) == sa
                    and s.at_rest(k, y)
                ):
                    found = (x, y, d)
                    break
            if found:
                break
        if found:
            entry["realized_by"] = list(found)
            met.append(entry)
        else:
            unmet.append(entry)
    if unmet:
        return CheckReport("AxExistsInecoll", F, unmet, ["no matching collision"])
    return CheckReport("AxExistsInecoll", W, met, [f"{len(met)} demand(s) met"])


def _inecoll_under(s: Scenario, frame: AffineMap, b, c, d) -> bool:
    """inecoll for an observer with the given (hypothetical) frame map."""
    frames = dict(s.frames)
    frames["__median__"] = frame
    probe = Scenario(s.dimension, s.bodies.values(), frames, s.masses)
    return dyn.inecoll(probe, "__median__", b, c, d)


def check_ax_median(s: Scenario) -> CheckReport:
    in_scenario, constructed, bad = [], [], []
    obs = _frames_ok(s)
    for k, b, c, d, q in _triples(s):
        hit = None
        for h in obs:
            vb, vc = s.velocity(h, b), s.velocity(h, c)
            if vb is None or vc is None:
                continue
            if all((x + y).is_zero() for x, y in zip(vb, vc)) and dyn.inecoll(s, h, b, c, d):
                hit = h
                break
        entry = {"observer": k, "b": b, "c": c, "d": d}
        if hit is not None:
            entry["median_observer"] = hit
            in_scenario.append(entry)
            continue
        try:
            boost = median_observer_boost(s.velocity(k, b), s.velocity(k, c))
        except NoMedianNeeded:
            bad.append(entry)
            continue
        frame = boost.compose(s.frame(k))
        if _inecoll_under(s, frame, b, c, d):
            entry["constructed_frame"] = [[x.literal() for x in row] for row in frame.linear]
            constructed.append(entry)
        else:
            bad.append(entry)
    if bad:
        return CheckReport("AxMedian", F, bad, ["no frame makes the incoming velocities opposite"])
    if constructed:
        return CheckReport(
            "AxMedian",
            W,
            in_scenario + constructed,
            [f"{len(in_scenario)} median observer(s) present, {len(constructed)} constructed by boost"],
        )
    if in_scenario:
        return CheckReport("AxMedian", H, in_scenario, [f"{len(in_scenario)} collision(s) have a median observer"])
    return CheckReport("AxMedian", V, trace=["no inelastic collisions"])


def check_ax_speed(s: Scenario) -> CheckReport:
    rest = {b: s.rest_mass(b) for b in s.bodies}
    with_rest = [b for b in s.bodies if rest[b] is not None]
    bad = []
    pairs = 0
    for k in _frames_ok(s):
        speeds = {b: s.speed_squared(k, b) for b in with_rest}
        for i, b in enumerate(with_rest):
            for c in with_rest[i + 1:]:
                if speeds[b] is None or speeds[c] is None:
                    continue
                if rest[b] == rest[c] and speeds[b] == speeds[c]:
                    pairs += 1
                    if not (s.mass(k, b) == s.mass(k, c)):
                        bad.append(
                            {"observer": k, "b": b, "c": c, "m_b": s.mass(k, b), "m_c": s.mass(k, c)}
                        )
    if bad:
        return CheckReport("AxSpeed", F, bad, ["equal rest mass and speed, different mass"])
    if pairs == 0:
        return CheckReport("AxSpeed", V, trace=["no two bodies share rest mass and speed"])
    return CheckReport("AxSpeed", H, trace=[f"{pairs} matching pair(s) checked"])


def _collinear(items) -> bool:
    line = common_line(items)
    return line is not None


def check_ax_center(s: Scenario) -> CheckReport:
    bad, n = [], 0
    for k, b, c, d, q in _triples(s):
        n += 1
        if not _collinear([dyn.cen2_line(s, k, b, c), s.wl(k, d)]):
            bad.append({"observer": k, "b": b, "c": c, "d": d, "vertex": q})
    if bad:
        return CheckReport("AxCenter", F, bad, ["outgoing world-line leaves the center-line"])
    if n == 0:
        return CheckReport("AxCenter", V, trace=["no inelastic collisions"])
    return CheckReport("AxCenter", H, trace=[f"{n} collision(s) checked"])


def check_ax_center_plus(s: Scenario) -> CheckReport:
    bad, n = [], 0
    terms = {}
    for k, b, c, d, q in _triples(s):
        if k not in terms:
            terms[k] = {x: dyn.center_terms(s, k, x) for x in s.bodies}
        tk = terms[k]
        for a in s.bodies:
            n += 1
            three = dyn.combine_centers([tk[a], tk[b], tk[c]], s.dimension)
            two = dyn.combine_centers([tk[a], tk[d]], s.dimension)
            if not _collinear([three, two]):
                bad.append({"observer": k, "a": a, "b": b, "c": c, "d": d})
                break
    if bad:
        return CheckReport("AxCenterPlus", F, bad, ["three-body center-line not continued"])
    if n == 0:
        return CheckReport("AxCenterPlus", V, trace=["no inelastic collisions"])
    return CheckReport("AxCenterPlus", H, trace=[f"{n} (collision, body) pair(s) checked"])


def check_cons_mass(s: Scenario) -> CheckReport:
    bad, n = [], 0
    for k, b, c, d, q in _triples(s):
        n += 1
        lhs = s.mass(k, b) + s.mass(k, c)
        if not (lhs == s.mass(k, d)):
            bad.append({"observer": k, "b": b, "c": c, "d": d, "m_b+m_c": lhs, "m_d": s.mass(k, d)})
    if bad:
        return CheckReport("ConsMass", F, bad, ["relativistic mass not conserved"])
    if n == 0:
        return CheckReport("ConsMass", V, trace=["no inelastic collisions"])
    return CheckReport("ConsMass", H, trace=[f"{n} collision(s) checked"])


def _momentum(s, k, b):
    p = dyn.four_momentum(s, k, b)
    return None if p is None else p.space


def check_cons_moment(s: Scenario) -> CheckReport:
    bad, n = [], 0
    for k, b, c, d, q in _triples(s):
        n += 1
        pb, pc, pd = (_momentum(s, k, x) for x in (b, c, d))
        if pb is None or pc is None or pd is None or not (pb + pc == pd):
            bad.append({"observer": k, "b": b, "c": c, "d": d, "p_b+p_c": pb + pc if pb and pc else None, "p_d": pd})
    if bad:
        return CheckReport("ConsMoment", F, bad, ["linear momentum not conserved"])
    if n == 0:
        return CheckReport("ConsMoment", V, trace=["no inelastic collisions"])
    return CheckReport("ConsMoment", H, trace=[f"{n} collision(s) checked"])


def check_cons_four_moment(s: Scenario) -> CheckReport:
    bad, n = [], 0
    for k, b, c, d, q in _triples(s):
        n += 1
        pb, pc, pd = (dyn.four_momentum(s, k, x) for x in (b, c, d))
        if pb is None or pc is None or pd is None or not (pb + pc == pd):
            bad.append({"observer": k, "b": b, "c": c, "d": d, "P_d": pd})
    if bad:
        return CheckReport("ConsFourMoment", F, bad, ["four-momentum not conserved"])
    if n == 0:
        return CheckReport("ConsFourMoment", V, trace=["no inelastic collisions"])
    return CheckReport("ConsFourMoment", H, trace=[f"{n} collision(s) checked"])


# ------------------------------------------------------------------ registry

CHECKS: Dict[str, Callable[[Scenario], CheckReport]] = {
    "AxSelf": check_ax_self,
    "AxPh": check_ax_ph,
    "AxEv": check_ax_ev,
    "AxSimDist": check_ax_sim_dist,
    "AxThEx": check_ax_thex,
    "AxForallInecoll": check_ax_forall_inecoll,
    "AxExistsInecoll": check_ax_exists_inecoll,
    "AxMedian": check_ax_median,
    "AxSpeed": check_ax_speed,
    "AxCenter": check_ax_center,
    "AxCenterPlus": check_ax_center_plus,
    "ConsMass": check_cons_mass,
    "ConsMoment": check_cons_moment,
    "ConsFourMoment": check_cons_four_moment,
}

ALIASES = {
    "Ax∀inecoll": "AxForallInecoll",
    "Ax∃inecoll": "AxExistsInecoll",
    "AxCenter+": "AxCenterPlus",
    "AxCenter⁺": "AxCenterPlus",
}

SPEC_REL = ("AxSelf", "AxPh", "AxEv", "AxSimDist")
SPEC_REL_DYN = SPEC_REL + ("AxCenter", "AxSpeed", "AxForallInecoll", "AxThEx")


def resolve_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in CHECKS:
        raise UnknownAxiomName(name)
    return name


def run_check(s: Scenario, name: str) -> CheckReport:
    return CHECKS[resolve_name(name)](s)
