"""Verifiers for the mass formula, its geometric construction, and the
equivalence of the center-of-mass and conservation formulations."""

from __future__ import annotations

from ..errors import DimensionTooLow, PreconditionViolation
from ..minkowski import Line, Point, is_parallel, length_ratio
from ..quantity import ONE, ZERO, Quantity
from ..transforms import boost_for_velocity, median_observer_boost, time_dilation_factor
from . import checks
from .report import CheckReport, Verdict

H, F, V = Verdict.HOLDS, Verdict.FAILS, Verdict.VACUOUS


def _q(x):
    return x if isinstance(x, Quantity) else Quantity(x)


def verify_mass_formula(s) -> CheckReport:
    """m0(b) = sqrt(1 - v_k(b)^2) * m_k(b) for every observer and every body
    that has a rest mass."""
    if s.dimension < 3:
        raise DimensionTooLow("the mass formula is stated for d >= 3")
    bad, trace, n = [], [], 0
    for b in s.bodies:
        m0 = s.rest_mass(b)
        if m0 is None:
            trace.append(f"{b}: no rest mass, skipped")
            continue
        for k in s.observers:
            n += 1
            v2 = s.speed_squared(k, b)
            if v2 is None or not v2 < 1:
                bad.append({"observer": k, "body": b, "speed^2": v2, "m0": m0})
                continue
            rhs = (1 - v2).sqrt() * s.mass(k, b)
            if not (rhs == m0):
                bad.append({"observer": k, "body": b, "m0": m0, "sqrt(1-v^2)*m": rhs})
    if bad:
        return CheckReport("MassFormula", F, bad, trace)
    if n == 0:
        return CheckReport("MassFormula", V, trace=trace + ["no body with rest mass"])
    return CheckReport("MassFormula", H, trace=[f"{n} (observer, body) pair(s) satisfy the formula"] + trace)


def _sq(v: Point) -> Quantity:
    return v.norm2()


def _part(name, ok, **data) -> CheckReport:
    return CheckReport(name, H if ok else F, [data] if data else [])


def mass_formula_construction(m0, v):
    """The points and frames of the geometric derivation, in d = 3.

    k is the world frame; c rests at the spatial origin and ends at A = 0;
    b has velocity (v, 0) and ends at A too.  C and B are the events of c
    and b at k-time -1.  h is the median frame of b and c; the outgoing
    world-line is vertical for h and passes through A, so D is where it
    meets the segment BC.  The mass m(v) of b then follows from the
    center-of-mass condition at time -1.
    """
    m0, v = _q(m0), _q(v)
    A = Point.of(0, 0, 0)
    C = Point.of(-1, 0, 0)
    B = Point.of(-1, -v, 0)
    h = median_observer_boost((v, ZERO), (ZERO, ZERO))
    k_prime = boost_for_velocity((v, ZERO))
    A2, B2, C2 = h.apply(A), h.apply(B), h.apply(C)
    # D' on line B'C' with zero spatial part (the vertical line through A' = 0)
    bc = C2 - B2
    j = next(i for i in (1, 2) if not bc[i].is_zero())
    lam = -B2[j] / bc[j]
    D2 = B2 + bc * lam
    D = h.inverse().apply(D2)
    mv = m0 * length_ratio(C - D, B - D)
    # E' on A'D' with E'C' parallel to A'B'
    ad, ab = D2 - A2, B2 - A2
    # solve C' - (A' + mu*ad) = nu*ab in the (t, x) plane
    det = ad[0] * ab[1] - ad[1] * ab[0]
    rhs = C2 - A2
    mu = (rhs[0] * ab[1] - rhs[1] * ab[0]) / det
    E2 = A2 + ad * mu
    return {
        "A": A, "B": B, "C": C, "D": D,
        "A'": A2, "B'": B2, "C'": C2, "D'": D2, "E'": E2,
        "h": h, "k'": k_prime, "m(v)": mv, "m0": m0, "v": v,
    }


def verify_mass_formula_construction(m0, v) -> CheckReport:
    m0, v = _q(m0), _q(v)
    if v.is_zero():
        return CheckReport(
            "MassFormulaConstruction",
            H,
            [{"m(v)": m0}],
            ["v = 0: m(0) = m0 by the definition of rest mass; construction skipped"],
        )
    if not (ZERO < v < ONE) or m0.sign() <= 0:
        raise PreconditionViolation("need 0 < v < 1 and m0 > 0")
    c = mass_formula_construction(m0, v)
    A, B, C, D = c["A"], c["B"], c["C"], c["D"]
    A2, B2, C2, D2, E2 = c["A'"], c["B'"], c["C'"], c["D'"], c["E'"]
    mv = c["m(v)"]
    parts = {}

    # the normalizations fixed in the derivation
    kp = c["k'"]
    clocks_ok = (
        kp.apply(A).time.is_zero()
        and C.time == -1
        and kp.apply(B).time == -time_dilation_factor(v)
        and A2.time.is_zero()
    )
    parts["clocks"] = _part("clocks", clocks_ok, k_prime_at_B=kp.apply(B).time)

    # median frame: opposite velocities, outgoing line vertical through A'
    vb = (A2 - B2) / (A2 - B2).time
    vc = (A2 - C2) / (A2 - C2).time
    opposite = all((x + y).is_zero() for x, y in zip(vb.coords[1:], vc.coords[1:]))
    parts["median"] = _part("median", opposite and D2.space.is_zero(), velocity_b=vb, velocity_c=vc)

    # m(v)*|BD| = m0*|DC|: D is the center of mass at t = -1 and lies on [B, C]
    center = (B * mv + C * m0) / (mv + m0)
    on_segment = is_parallel(B - D, D - C)
    parts["mass_ratio"] = _part("mass ratio", center == D and on_segment, D=D, center=center, m_v=mv)

    # affine maps keep ratios on a line: |BD|/|CD| = |B'D'|/|C'D'|
    r = length_ratio(B - D, C - D)
    r2 = length_ratio(B2 - D2, C2 - D2)
    parts["affine_ratio"] = _part("affine ratio", r == r2, lhs=r, rhs=r2)

    # similar triangles B'D'A', C'D'E'
    ec2, ab2, ac2 = _sq(C2 - E2), _sq(B2 - A2), _sq(C2 - A2)
    par = is_parallel(C2 - E2, B2 - A2)
    parts["similar_triangles"] = _part("similar triangles", par and r2 * r2 * ec2 == ab2, E=E2, ratio_sq=r2 * r2)
    parts["isosceles"] = _part("|E'C'| = |A'C'|", ec2 == ac2, EC2=ec2, AC2=ac2)

    # |B'D'|/|C'D'| = |A'B'|/|A'C'|
    parts["side_ratio"] = _part("side ratio", r2 * r2 * ac2 == ab2, lhs_sq=r2 * r2, rhs_sq=ab2 / ac2)

    # |A'B'|/|A'C'| = sqrt(1 - v^2)
    parts["dilation"] = _part("time dilation", ab2 == ac2 * (1 - v * v), rhs_sq=ab2 / ac2)

    want = m0 / time_dilation_factor(v)
    parts["formula"] = _part("m(v) = m0/sqrt(1-v^2)", mv == want, m_v=mv, expected=want)

    ok = all(p.verdict is H for p in parts.values())
    return CheckReport(
        "MassFormulaConstruction",
        H if ok else F,
        [{"m0": m0, "v": v, "m(v)": mv}],
        [f"m(v) = {mv} (~{mv.approx(6)})"],
        parts,
    )


EQUIVALENT_FORMS = (
    ("AxCenterPlus", ("AxCenterPlus",)),
    ("ConsMass & ConsMoment", ("ConsMass", "ConsMoment")),
    ("ConsMass & AxCenter", ("ConsMass", "AxCenter")),
    ("ConsFourMoment", ("ConsFourMoment",)),
)


def equivalence_values(s) -> dict:
    cache = {}
    out = {}
    for label, names in EQUIVALENT_FORMS:
        val = True
        for n in names:
            if n not in cache:
                cache[n] = checks.CHECKS[n](s).holds
            val = val and cache[n]
        out[label] = val
    return out


def verify_conservation_equivalence(s) -> CheckReport:
    """The center-of-mass and conservation formulations must agree on s
    (given AxSelf)."""
    pre = checks.check_ax_self(s)
    if pre.verdict is F:
        raise PreconditionViolation("AxSelf does not hold; the equivalence assumes it")
    values = equivalence_values(s)
    agree = len(set(values.values())) == 1
    trace = [f"{k}: {v}" for k, v in values.items()]
    return CheckReport("ConservationEquivalence", H if agree else F, [] if agree else [values], trace)


def _batch_item(args):
    from .generators import equivalence_scenario

    i, seed, dimension = args
    label, s = equivalence_scenario(i, seed, dimension)
    values = equivalence_values(s)
    return i, label, values


def run_equivalence_batch(n: int, seed: int = 0, dimension: int = 3, workers: int = 1) -> list:
    """Evaluate the four formulations on scenarios 0..n-1 of the seeded batch.

    Returns (index, label, values) sorted by index.  Each scenario depends
    only on (seed, index), so ``workers`` changes speed but not results.
    """
    jobs = [(i, seed, dimension) for i in range(n)]
    if workers <= 1 or n < 2:
        return [_batch_item(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        out = list(pool.map(_batch_item, jobs, chunksize=max(1, n // (4 * workers))))
    return sorted(out, key=lambda r: r[0])
