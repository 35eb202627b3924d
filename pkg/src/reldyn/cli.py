"""Command-line front end.

Exit codes: 0 success / claim confirmed, 1 a check failed, 2 parse or
usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional

from . import dynamics as dyn
from .axioms import checks
from .axioms import generators as gen
from .axioms import theorems as thm
from .axioms.report import Verdict, _plain
from .errors import (
    ParseError,
    PreconditionViolation,
    RelDynError,
    SpeedNotSubluminal,
    UnknownAxiomName,
    UnknownObserver,
    ValidationError,
)
from .quantity import FloatQuantity, Quantity
from .scenario import load_scenario, save_scenario, validate_frame

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
APPROX_DIGITS = 5

DEMOS = ("thm1", "thm1-construction", "thm2-batch", "emc2", "massdepend", "counterexample")


@dataclass
class RunConfig:
    command: str
    paths: List[str] = field(default_factory=list)
    seed: int = 0
    batch: Optional[int] = None
    backend: str = "exact"
    format: str = "text"


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers


def _emit(cfg: RunConfig, text: str, summary) -> None:
    if cfg.format == "summary":
        print(json.dumps(_plain(summary), sort_keys=True, ensure_ascii=False, indent=1))
    else:
        print(text)


def _show(q) -> str:
    if isinstance(q, FloatQuantity):
        return f"{float(q):.{APPROX_DIGITS}g}"
    if q.is_rational():
        return q.literal()
    return f"{q.literal()} (~{q.approx(APPROX_DIGITS)})"


def _vec_text(v) -> str:
    return "(" + ", ".join(_show(c) for c in v) + ")"


def _number(text: str, backend: str):
    q = Quantity(text)
    return FloatQuantity(q) if backend == "float" else q


def _velocity(text: str, backend: str) -> tuple:
    return tuple(_number(part, backend) for part in text.split(","))


def _load(path: str, validate: bool = True):
    try:
        return load_scenario(path, validate=validate)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _need_exact(cfg: RunConfig) -> None:
    if cfg.backend != "exact":
        raise UsageError(f"--backend {cfg.backend} is only available for 'resolve'; verdicts need exact arithmetic")


# ------------------------------------------------------------------ commands


def cmd_validate(cfg: RunConfig, args) -> int:
    _need_exact(cfg)
    s = _load(args.path, validate=False)
    problems = validate_frame(s)
    summary = {"file": args.path, "valid": not problems, "violations": [str(v) for v in problems]}
    if problems:
        text = "\n".join([f"{args.path}: {len(problems)} violation(s)"] + [f"  {v}" for v in problems])
    else:
        text = f"{args.path}: valid ({len(s.bodies)} bodies, {len(s.observers)} observers, d = {s.dimension})"
    _emit(cfg, text, summary)
    return EXIT_FAIL if problems else EXIT_OK


def _check_names(names: List[str]) -> List[str]:
    if not names or names == ["all"]:
        return list(checks.CHECKS)
    out = []
    for n in names:
        for part in n.split(","):
            if part:
                out.append(checks.resolve_name(part))
    return out


def cmd_check(cfg: RunConfig, args) -> int:
    _need_exact(cfg)
    names = _check_names(args.axioms)
    s = _load(args.path)
    reports = [checks.CHECKS[n](s) for n in names]
    failed = any(r.verdict is Verdict.FAILS for r in reports)
    summary = {"file": args.path, "reports": [r.summary() for r in reports], "ok": not failed}
    _emit(cfg, "\n".join(r.text() for r in reports), summary)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_resolve(cfg: RunConfig, args) -> int:
    b = (_number(args.m0b, cfg.backend), _velocity(args.vb, cfg.backend))
    c = (_number(args.m0c, cfg.backend), _velocity(args.vc, cfg.backend))
    for m0, v in (b, c):
        total = sum((x * x for x in v), _number("0", cfg.backend))
        if not total < 1:
            raise SpeedNotSubluminal(f"speed of {_vec_text(v)} is not below 1")
    r = dyn.resolve_collision(b, c)
    summary = {
        "backend": cfg.backend,
        "mass": r.mass,
        "velocity": list(r.velocity),
        "rest_mass": r.rest_mass,
        "approx": {
            "mass": float(r.mass),
            "velocity": [float(x) for x in r.velocity],
            "rest_mass": float(r.rest_mass),
        },
    }
    if cfg.backend == "float":
        summary = {k: (float(v) if isinstance(v, FloatQuantity) else v) for k, v in summary.items()}
        summary["velocity"] = [float(x) for x in r.velocity]
    text = "\n".join(
        [
            f"mass      {_show(r.mass)}",
            f"velocity  {_vec_text(r.velocity)}",
            f"restMass  {_show(r.rest_mass)}",
        ]
    )
    _emit(cfg, text, summary)
    return EXIT_OK


def cmd_generate(cfg: RunConfig, args) -> int:
    _need_exact(cfg)
    rng = random.Random(cfg.seed)
    if args.kind == "standard":
        s = gen.random_standard_model(rng, args.dimension)
    elif args.kind == "cons-mass":
        s = gen.generate_cons_mass_counterexample(args.dimension)
    elif args.kind == "cons-moment":
        s = gen.generate_cons_moment_counterexample(args.dimension)
    else:
        s = gen.random_standard_model(rng, args.dimension, photons=False)
        s, _ = gen.corrupt_scenario(s, rng)
    save_scenario(s, args.output)
    print(f"wrote {args.output} ({len(s.bodies)} bodies, d = {s.dimension})")
    return EXIT_OK


def cmd_plot(cfg: RunConfig, args) -> int:
    _need_exact(cfg)
    from .plot import parse_axes, render_svg

    try:
        axes = parse_axes(args.axes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    s = _load(args.path)
    try:
        svg = render_svg(s, args.observer, axes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# ------------------------------------------------------------------ demos


def _demo_thm1(cfg: RunConfig, args):
    n = cfg.batch or 20
    rng = random.Random(f"massformula:{cfg.seed}")
    pairs, failed = 0, []
    for i in range(n):
        s = gen.random_mass_formula_model(rng, 3 + i % 2)
        r = thm.verify_mass_formula(s)
        pairs += sum(1 for b in s.bodies if s.rest_mass(b) is not None) * len(s.observers)
        if r.verdict is Verdict.FAILS:
            failed.append({"model": i, "witnesses": r.witnesses})
    ok = not failed
    lines = [
        "claim: m0(b) = sqrt(1 - v_k(b)^2) * m_k(b) for every observer k",
        f"parameters: models={n} seed={cfg.seed} dimensions=3,4 velocities=random rationals",
        f"checked {pairs} (observer, body) pairs exactly; {len(failed)} model(s) failed",
        "confirmed" if ok else "NOT confirmed",
    ]
    return ok, "\n".join(lines), {"demo": "thm1", "models": n, "seed": cfg.seed, "pairs": pairs, "failed": failed, "confirmed": ok}


def _demo_thm1_construction(cfg: RunConfig, args):
    m0, v = Quantity(args.m0 or "1"), Quantity(args.v or "3/5")
    r = thm.verify_mass_formula_construction(m0, v)
    c = thm.mass_formula_construction(m0, v) if not v.is_zero() else None
    lines = [
        "claim: the geometric construction gives m(v) = m0 / sqrt(1 - v^2)",
        f"parameters: m0={m0.literal()} v={v.literal()}",
    ]
    if c is not None:
        for key in ("A", "B", "C", "D", "D'", "E'"):
            lines.append(f"  {key:3} = {_vec_text(c[key])}")
        lines.append(f"  m(v) = {_show(c['m(v)'])}")
    lines.append(r.text())
    ok = r.verdict is not Verdict.FAILS
    lines.append("confirmed" if ok else "NOT confirmed")
    summary = {"demo": "thm1-construction", "m0": m0, "v": v, "report": r.summary(), "confirmed": ok}
    return ok, "\n".join(lines), summary


def _demo_thm2_batch(cfg: RunConfig, args):
    n = cfg.batch or 200
    rows = thm.run_equivalence_batch(n, seed=cfg.seed, dimension=3, workers=args.workers)
    tally = Counter()
    disagreements = []
    for i, label, values in rows:
        agree = len(set(values.values())) == 1
        tally[(label, "agree" if agree else "disagree", all(values.values()))] += 1
        if not agree:
            disagreements.append({"index": i, "label": label, "values": values})
    ok = not disagreements
    lines = [
        "claim: with AxSelf, AxCenterPlus <=> ConsMass & ConsMoment <=> ConsMass & AxCenter <=> ConsFourMoment",
        f"parameters: scenarios={n} seed={cfg.seed} d=3 (even index valid, odd index corrupted)",
    ]
    for (label, agree, value), count in sorted(tally.items()):
        lines.append(f"  {label:9} {agree:9} all={str(value):5} x{count}")
    lines.append(f"{len(disagreements)} disagreement(s)")
    lines.append("confirmed" if ok else "NOT confirmed")
    summary = {
        "demo": "thm2-batch",
        "scenarios": n,
        "seed": cfg.seed,
        "tally": {f"{a}/{b}/{c}": v for (a, b, c), v in sorted(tally.items())},
        "disagreements": disagreements,
        "confirmed": ok,
    }
    return ok, "\n".join(lines), summary


def _demo_emc2(cfg: RunConfig, args):
    m0, v = Quantity(args.m0 or "1"), Quantity(args.v or "3/5")
    r = dyn.resolve_collision((m0, (v,)), (m0, (-v,)))
    each = dyn.rel_mass_from_rest(m0, v)
    before = m0 + m0
    ok = r.rest_mass == each + each and r.rest_mass > before and r.velocity[0].is_zero()
    lines = [
        "claim: in an inelastic collision rest mass is created: m0(d) = m_k(b) + m_k(c) > m0(b) + m0(c)",
        f"parameters: m0={m0.literal()} for both bodies, velocities +{v.literal()} and -{v.literal()}",
        f"  m_k(b) = m_k(c) = {_show(each)}",
        f"  outgoing velocity {_vec_text(r.velocity)} (at rest)",
        f"  combined rest mass {_show(r.rest_mass)} > {_show(before)}",
        "confirmed" if ok else "NOT confirmed",
    ]
    summary = {
        "demo": "emc2",
        "m0": m0,
        "v": v,
        "relative_mass_each": each,
        "rest_mass_out": r.rest_mass,
        "rest_mass_in": before,
        "confirmed": ok,
    }
    return ok, "\n".join(lines), summary


def _demo_massdepend(cfg: RunConfig, args):
    m0b, m0c = Quantity(args.m0 or "1"), Quantity(args.m0c or "1")
    vb, vc = Quantity(args.v or "3/5"), Quantity(args.vc or "0")
    rk, rh = dyn.mass_dependence_witness(m0b, m0c, vb, vc)
    ok = not (rk == rh)
    lines = [
        "claim: the ratio of relativistic masses depends on the observer",
        f"parameters: m0(b)={m0b.literal()} m0(c)={m0c.literal()} v(b)={vb.literal()} v(c)={vc.literal()}",
        f"  m_k(b)/m_k(c) = {_show(rk)} in the collision frame k",
        f"  m_h(b)/m_h(c) = {_show(rh)} in the frame h where b and c move oppositely",
        "confirmed" if ok else "NOT confirmed",
    ]
    return ok, "\n".join(lines), {"demo": "massdepend", "ratio_k": rk, "ratio_h": rh, "confirmed": ok}


def _demo_counterexample(cfg: RunConfig, args):
    lines = ["claim: ConsMass and ConsMoment are independent of SpecRelDyn"]
    summary = {"demo": "counterexample"}
    ok = True
    for name, target, build in (
        ("cons-mass", "ConsMass", gen.generate_cons_mass_counterexample),
        ("cons-moment", "ConsMoment", gen.generate_cons_moment_counterexample),
    ):
        s = build()
        base = {n: checks.CHECKS[n](s) for n in checks.SPEC_REL_DYN}
        broken = checks.CHECKS[target](s)
        this_ok = all(r.verdict is not Verdict.FAILS for r in base.values()) and broken.verdict is Verdict.FAILS
        ok = ok and this_ok
        lines.append(f"{name} model (d = {s.dimension}):")
        for n, r in base.items():
            lines.append(f"  {n:16} {r.verdict.value}")
        lines.append(f"  {target:16} {broken.verdict.value}")
        for w in broken.witnesses[:2]:
            lines.append(f"    witness: {json.dumps(_plain(w), ensure_ascii=False)}")
        summary[name] = {
            "spec_rel_dyn": {n: r.verdict.value for n, r in base.items()},
            target: broken.summary(),
        }
    lines.append("confirmed" if ok else "NOT confirmed")
    summary["confirmed"] = ok
    return ok, "\n".join(lines), summary


_DEMOS = {
    "thm1": _demo_thm1,
    "thm1-construction": _demo_thm1_construction,
    "thm2-batch": _demo_thm2_batch,
    "emc2": _demo_emc2,
    "massdepend": _demo_massdepend,
    "counterexample": _demo_counterexample,
}


def cmd_demo(cfg: RunConfig, args) -> int:
    _need_exact(cfg)
    ok, text, summary = _DEMOS[args.name](cfg, args)
    _emit(cfg, text, summary)
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ parser

# lets "-1/2" and "-3/5,0" through as positional values
_NEGATIVE = re.compile(r"^-\d|^-\.\d|^-sqrt")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--batch", type=int, default=None, help="batch size for batch demos")
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--format", choices=("text", "summary", "svg"), default="text")

    p = _Parser(prog="reldyn", description="Exact checks for relativistic collision dynamics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", parents=[common], help="structural checks on a scenario file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("check", parents=[common], help="run axiom checks on a scenario file")
    c.add_argument("path")
    c.add_argument("axioms", nargs="*", help="check names, or 'all' (default)")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("resolve", parents=[common], help="outgoing body of an inelastic collision")
    r.add_argument("m0b")
    r.add_argument("vb", help="velocity: a number or comma-separated components")
    r.add_argument("m0c")
    r.add_argument("vc")
    r.set_defaults(func=cmd_resolve)

    d = sub.add_parser("demo", parents=[common], help="reproduce one of the results")
    d.add_argument("name", choices=DEMOS)
    d.add_argument("--m0", default=None)
    d.add_argument("--v", default=None)
    d.add_argument("--m0c", default=None, help="massdepend only")
    d.add_argument("--vc", default=None, help="massdepend only")
    d.add_argument("--workers", type=int, default=1, help="processes for thm2-batch")
    d.set_defaults(func=cmd_demo)

    pl = sub.add_parser("plot", parents=[common], help="SVG spacetime diagram")
    pl.add_argument("path")
    pl.add_argument("--observer", default=None, help="observer id (default: first observer)")
    pl.add_argument("--axes", default="t,x", help="vertical,horizontal axis names (default t,x)")
    pl.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    pl.set_defaults(func=cmd_plot)

    g = sub.add_parser("generate", parents=[common], help="write a generated scenario file")
    g.add_argument("kind", choices=("standard", "cons-mass", "cons-moment", "corrupted"))
    g.add_argument("output")
    g.add_argument("--dimension", type=int, default=4)
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"reldyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(args.command, [getattr(args, "path", "")], args.seed, args.batch, args.backend, args.format)
    if cfg.format == "svg" and args.command != "plot":
        print("reldyn: error: --format svg applies to 'plot' only", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(cfg, args)
    except (ParseError, UsageError, UnknownAxiomName) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownAxiomName) else exc
        if isinstance(exc, UnknownAxiomName):
            msg = f"unknown check {msg!r}; known: {', '.join(checks.CHECKS)}"
        print(f"reldyn: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"reldyn: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except UnknownObserver as exc:
        print(f"reldyn: error: unknown observer {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except (SpeedNotSubluminal, PreconditionViolation, RelDynError) as exc:
        print(f"reldyn: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
